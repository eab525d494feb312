"""Data models for graphs, partitions, scores and reports."""
