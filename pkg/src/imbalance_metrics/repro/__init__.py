"""Reproduction of the reference comparison tables and heat map data."""
