"""Test Serre subcategories and the bounded closure oracle."""

import pytest

from atomspec.core.config import override_caps
from atomspec.core.errors import CapExceededError, PreconditionError
from atomspec.services import module_service as ms
from atomspec.services import serre_service as ss
from atomspec.services import spectrum_service as sp
from tests.conftest import EVENS, THREES, TRI2_M1, TRI2_M2, ideal

pytestmark = pytest.mark.unit


def member_of_order(universe: ss.ClosureUniverse, order: int) -> int:
    matches = [i for i, m in enumerate(universe.members) if m.order == order]
    assert len(matches) == 1
    return matches[0]


class TestSerreLattice:
    def test_zmod12(self, zmod12_spectrum):
        lattice = ss.enumerate_serre(zmod12_spectrum)
        assert len(lattice.nodes) == 4
        assert lattice.covers == [(0, 1), (0, 2), (1, 3), (2, 3)]
        assert lattice.name(0) == "zero"
        assert lattice.name(3) == "mod R"
        assert lattice.name(1) == "<R/[0, 2, 4, 6, 8, 10]>"
        assert lattice.generators[3] == [EVENS, THREES]

    def test_tri2_has_four_subcategories(self, tri2_spectrum):
        lattice = ss.enumerate_serre(tri2_spectrum)
        assert len(lattice.nodes) == 4
        assert lattice.generators[1] == [TRI2_M1]
        assert lattice.generators[2] == [TRI2_M2]

    def test_from_generators(self, zmod12, zmod12_spectrum):
        category = ss.serre_from_generators(zmod12_spectrum, [ms.cyclic_quotient(zmod12, ideal(0, 4, 8))])
        assert category.open_set.atom_ids == [0]
        assert ss.serre_contains(category, ms.cyclic_quotient(zmod12, EVENS))
        assert not ss.serre_contains(category, ms.cyclic_quotient(zmod12, THREES))
        assert not ss.serre_contains(category, ms.regular_module(zmod12))

    def test_roundtrip(self, tri2_spectrum):
        for open_set in sp.enumerate_open_sets(tri2_spectrum):
            assert ss.asupp_roundtrip(tri2_spectrum, open_set.members)


class TestUniverse:
    def test_zmod4_universe(self, zmod4):
        universe = ss.build_universe(ms.regular_module(zmod4))
        assert sorted(m.order for m in universe.members) == [1, 2, 4]
        assert universe.members[universe.zero].is_zero
        z2, z4 = member_of_order(universe, 2), member_of_order(universe, 4)
        assert (z2, z4, z2) in universe.extension_triples
        assert ss.closure_oracle(universe, [z2]) == frozenset({universe.zero, z2, z4})

    def test_monoform_through_closure(self, zmod4):
        universe = ss.build_universe(ms.regular_module(zmod4))
        assert ss.closure_says_monoform(universe, member_of_order(universe, 2))
        assert not ss.closure_says_monoform(universe, member_of_order(universe, 4))

    def test_oracle_matches_supports(self, zmod12, zmod12_spectrum):
        universe = ss.build_universe(ms.regular_module(zmod12))
        assert sorted(m.order for m in universe.members) == [1, 2, 3, 4, 6, 12]
        supports = ss.member_supports(zmod12_spectrum, universe)
        for member in range(len(universe.members)):
            comparison = ss.compare_with_supports(zmod12_spectrum, universe, [member], supports)
            assert comparison.sound and comparison.complete

    def test_restricted_scope(self, zmod12):
        universe = ss.build_universe(ms.regular_module(zmod12))
        z4 = member_of_order(universe, 4)
        local = universe.restricted_to(z4)
        assert sorted(universe.members[m].order for m in local.scope) == [1, 2, 4]
        with pytest.raises(PreconditionError):
            ss.closure_oracle(local, [member_of_order(universe, 3)])

    def test_calculus(self, tri2):
        universe = ss.build_universe(ms.regular_module(tri2))
        report = ss.calculus_check(universe, samples=50, seed=3)
        assert report.passed, report.violations

    def test_power_ambient(self, zmod4):
        universe = ss.build_universe(ms.regular_module(zmod4), power=2)
        assert universe.ambient.order == 16
        with pytest.raises(PreconditionError):
            ss.build_universe(ms.regular_module(zmod4), power=4)

    def test_universe_caps(self, zmod12):
        with override_caps(max_universe_order=8):
            with pytest.raises(CapExceededError):
                ss.build_universe(ms.regular_module(zmod12))
