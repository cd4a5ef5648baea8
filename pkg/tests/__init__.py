"""Tests for ev_charging_placement."""
