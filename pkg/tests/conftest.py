"""Test configuration and fixtures."""

import pytest

from atomspec.core.logging import setup_logging
from atomspec.models.ring import FiniteRing
from atomspec.services.ring_service import build_builtin, parse_ring_spec
from atomspec.services.spectrum_service import AtomSpectrum, atom_spectrum
from atomspec.utils.bitset import bits_of


def ideal(*ids: int) -> int:
    """Bitset of a right ideal given by element ids."""
    return bits_of(ids)


def ring_of(spec: str) -> FiniteRing:
    return build_builtin(parse_ring_spec(spec))


@pytest.fixture(scope="session", autouse=True)
def quiet_logging():
    """Keep test output free of log lines."""
    setup_logging(level="ERROR", json=False)


@pytest.fixture(scope="session")
def zmod4() -> FiniteRing:
    return ring_of("zmod:4")


@pytest.fixture(scope="session")
def zmod12() -> FiniteRing:
    return ring_of("zmod:12")


@pytest.fixture(scope="session")
def tri2() -> FiniteRing:
    """Lower triangular 2x2 matrices over F_2; (a, b, c) has id 4a + 2b + c."""
    return ring_of("tri2:2")


@pytest.fixture(scope="session")
def mat22() -> FiniteRing:
    return ring_of("mat:2:2")


@pytest.fixture(scope="session")
def zmod12_spectrum(zmod12: FiniteRing) -> AtomSpectrum:
    return atom_spectrum(zmod12)


@pytest.fixture(scope="session")
def tri2_spectrum(tri2: FiniteRing) -> AtomSpectrum:
    return atom_spectrum(tri2)


# Right ideals of tri2(2)
TRI2_ZERO = ideal(0)
TRI2_LOWER_LEFT = ideal(0, 2)  # [[0,0],[K,0]]
TRI2_P0 = ideal(0, 4)
TRI2_P1 = ideal(0, 6)
TRI2_M1 = ideal(0, 1, 2, 3)
TRI2_M2 = ideal(0, 2, 4, 6)

EVENS = ideal(0, 2, 4, 6, 8, 10)
THREES = ideal(0, 3, 6, 9)
