"""
Cascade Invariants Package

Exact computer algebra for simple Lie algebras: root systems, the Kostant
cascade, coadjoint invariants of the maximal nilpotent and Borel subalgebras,
and a command-line verifier for their structural identities.
"""

__version__ = "0.1.0"
