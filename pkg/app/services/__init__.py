"""Services: generator table, word metric, path construction and validation."""
