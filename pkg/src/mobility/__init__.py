"""Mobility traces: ingest, reduction, home detection and demand counting."""
