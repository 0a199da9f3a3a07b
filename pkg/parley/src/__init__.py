"""parley simulation core and bundled data."""
