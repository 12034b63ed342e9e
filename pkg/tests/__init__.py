"""Test package for we-upload."""
