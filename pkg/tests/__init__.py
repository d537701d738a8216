"""Tests Module."""
