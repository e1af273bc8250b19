"""Integration tests for the command line and the full pipeline."""
