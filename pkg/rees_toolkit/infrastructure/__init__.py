"""File formats and serialization."""
