"""Paths that are useful throughout the project."""
from pathlib import Path


def get_config(file_name: str) -> Path:
    """Returns the path a config file.

    Returns:
        The path to a config file.
    """
    return Path(__file__).parent.parent / file_name


def get_reference_tables() -> Path:
    """Returns the path to the reference tables fixture

    Returns:
        The path to the reference tables fixture
    """
    return Path(__file__).parent.parent / "repro" / "reference_tables.yaml"
