"""
Integration tests for cascade-invariants.
These tests run whole command lines and read the emitted reports back.
The verify-all runs over rank-three algebras are marked slow.
"""