"""Test suite for commcent."""
