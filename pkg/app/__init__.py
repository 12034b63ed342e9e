"""nV Thompson group library, command line and HTTP API."""
