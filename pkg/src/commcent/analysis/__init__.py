"""Graph, community and centrality computations."""
