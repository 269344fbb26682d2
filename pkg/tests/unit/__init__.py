"""
Unit tests for cascade-invariants.
These tests exercise one module at a time on small algebras and run quickly.
"""