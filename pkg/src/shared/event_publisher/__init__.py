"""Shared event publisher package."""
