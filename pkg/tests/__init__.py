"""Test suite for tethertraj.

This package contains all tests for the application, organized into:
- unit/: Unit tests per module
- integration/: Command line and end-to-end pipeline tests
- fixtures/: Shared test data factories and sample world files
"""
