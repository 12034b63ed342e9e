"""API router modules for the FastAPI application."""
