"""Dependencies for the FastAPI application."""
