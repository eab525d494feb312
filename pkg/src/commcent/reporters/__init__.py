"""Artifact generation modules."""
