"""Exact arithmetic, generalized inverses, EP characterizations and verification."""
