"""Test helper functions and test data as functions used throughout the test suite."""
from .test_helpers import *  # noqa
