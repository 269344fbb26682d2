"""
Lie module for the cascade-invariants package

Exact computer algebra for the simple Lie algebras A_n..G_2: root systems, the
Kostant cascade, the varpi'-decomposition table, Chevalley structure constants,
polynomial and rational Poisson algebras, the cascade reduction that produces
the coadjoint invariants of the nilpotent radical, the type-A spherical oracle
and the Borel-subalgebra checks.

All indices are 0-based; reports add 1 when presenting them.

Usage:
    from lie import *
"""

# Root Systems
from .rootsys import (
    RootSystem,
    Weight,
    build_root_system,
    cartan_matrix,
    diagram_automorphism_phi,
    highest_root,
    is_w0_minus_identity,
    w0_image,
)

# Cascade and k-table
from .cascade import Cascade, CascadeStep, kostant_cascade, singular_roots
from .weight_table import KTable, compute_ktable, varpi_prime

# Structure Constants and Poisson Algebras
from .liealg import StructureConstants, chevalley_constants, jacobi_defects
from .polyalg import Polynomial, PoissonContext, RationalFunction, make_context, poisson_bracket

# Invariants
from .reduction import (
    InvariantSet,
    assemble_Q,
    brute_force_invariants,
    cascade_invariants,
    compute_invariant_set,
    verify_ad_invariance,
)
from .spherical import check_S1_structure, compute_J, lowest_coefficient_P, spherical_expansion
from .borel import (
    borel_context,
    borel_field_invariants,
    borel_index_check,
    no_polynomial_invariants_check,
    orbit_level_set_check,
)

# Golden Tables
from .fixtures import check_against_golden, golden_table

__all__ = [
    # Root Systems
    'RootSystem',
    'Weight',
    'build_root_system',
    'cartan_matrix',
    'diagram_automorphism_phi',
    'highest_root',
    'is_w0_minus_identity',
    'w0_image',

    # Cascade and k-table
    'Cascade',
    'CascadeStep',
    'kostant_cascade',
    'singular_roots',
    'KTable',
    'compute_ktable',
    'varpi_prime',

    # Structure Constants and Poisson Algebras
    'StructureConstants',
    'chevalley_constants',
    'jacobi_defects',
    'Polynomial',
    'PoissonContext',
    'RationalFunction',
    'make_context',
    'poisson_bracket',

    # Invariants
    'InvariantSet',
    'assemble_Q',
    'brute_force_invariants',
    'cascade_invariants',
    'compute_invariant_set',
    'verify_ad_invariance',
    'check_S1_structure',
    'compute_J',
    'lowest_coefficient_P',
    'spherical_expansion',
    'borel_context',
    'borel_field_invariants',
    'borel_index_check',
    'no_polynomial_invariants_check',
    'orbit_level_set_check',

    # Golden Tables
    'check_against_golden',
    'golden_table',
]
