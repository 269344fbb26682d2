"""
Test package for cascade-invariants.
Contains both unit tests and integration tests.
"""