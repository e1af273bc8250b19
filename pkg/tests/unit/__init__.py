"""Unit tests for individual components and functions."""
