"""The controller module handles all user interaction with the package (e.g. the command line)."""
