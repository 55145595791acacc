"""Tests for the padic-cauchy command line."""
