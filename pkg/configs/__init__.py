"""Project-wide default settings."""
