"""
Shared test fixtures for both unit and integration tests.
"""

import pytest
import tempfile
import shutil

from core.cli import parse_algebra_label
from lie.rootsys import build_root_system
from lie.polyalg import make_context
from lie.reduction import compute_invariant_set


@pytest.fixture(scope="session")
def a2():
    return build_root_system("A", 2)


@pytest.fixture(scope="session")
def a3():
    return build_root_system("A", 3)


@pytest.fixture(scope="session")
def b2():
    return build_root_system("B", 2)


@pytest.fixture(scope="session")
def g2():
    return build_root_system("G", 2)


@pytest.fixture(scope="session")
def a2_nilpotent(a2):
    """Poisson context of S(n) for A2: variables e01, e10, e11."""
    return make_context(a2, "nilpotent")


@pytest.fixture(scope="session")
def a2_borel(a2):
    """Poisson context of S(b) for A2: e01, e10, e11, h1, h2."""
    return make_context(a2, "borel")


class InvariantSets(dict):
    """Label -> InvariantSet, computed on first access."""

    def __missing__(self, label: str):
        type_label, rank = parse_algebra_label(label)
        self[label] = compute_invariant_set(build_root_system(type_label, rank))
        return self[label]


@pytest.fixture(scope="session")
def invariant_sets():
    """
    Cascade invariants keyed by algebra label, computed once per session.
    Each entry is the full InvariantSet with Z's, Q's and the k-table.
    """
    return InvariantSets()


@pytest.fixture(scope="function")
def temp_dir():
    """
    Create a temporary directory for test files.
    Automatically cleaned up after each test.
    """
    temp_path = tempfile.mkdtemp()
    yield temp_path
    shutil.rmtree(temp_path, ignore_errors=True)


# Markers for different test types
def pytest_configure(config):
    """Configure pytest markers."""
    config.addinivalue_line("markers", "integration: mark test as an integration test")
    config.addinivalue_line("markers", "unit: mark test as a unit test")
    config.addinivalue_line("markers", "slow: mark test as running exact checks on larger algebras")
