"""Test package for centra."""
