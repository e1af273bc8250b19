"""Configuration module for tethertraj.

This module contains Pydantic Settings models for environment-based configuration.
"""
