"""Pydantic schemas for certificates and the HTTP API."""
