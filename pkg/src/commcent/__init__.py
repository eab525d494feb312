"""Classical and community-aware centrality comparison tools."""

__version__ = "0.1.0"
