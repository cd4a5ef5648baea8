"""File-system repository implementations."""
