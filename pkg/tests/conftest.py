"""Pytest configuration for all tests."""

import logging

import pytest

from rees_toolkit.shared.logging import configure_logging


@pytest.fixture(autouse=True)
def quiet_logging():
    # CLI tests reconfigure the package logger; start every test from the same state
    configure_logging(logging.WARNING)
    yield
