"""Shared utilities module.

Common utilities, configuration management, logging, run counters and exceptions.
"""
