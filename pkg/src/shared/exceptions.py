"""Base exceptions shared by every bounded context."""


class DomainError(Exception):
    """Base exception for all domain errors."""
