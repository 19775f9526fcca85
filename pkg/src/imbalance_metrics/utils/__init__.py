"""Utility functions for the complete package."""
