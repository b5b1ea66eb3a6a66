"""Tests for rgglab."""
