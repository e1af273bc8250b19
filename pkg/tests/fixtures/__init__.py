"""Shared test fixtures and data factories."""
