"""Algorithms and services."""
