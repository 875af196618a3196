"""Test module constructions, lattices and invariants."""

import json

import pytest

from atomspec.core.config import override_caps
from atomspec.core.errors import CapExceededError, ModuleAxiomError, NotSubmoduleError, PreconditionError
from atomspec.services import module_service as ms
from atomspec.services.ring_service import zmod
from atomspec.utils.bitset import bits_of, ids_of
from tests.conftest import EVENS, THREES, TRI2_LOWER_LEFT, TRI2_M1, TRI2_M2, ideal

pytestmark = pytest.mark.unit


class TestLattice:
    def test_zmod12_lattice(self, zmod12):
        """One submodule per divisor of 12, sorted by size."""
        lattice = ms.submodule_lattice(ms.regular_module(zmod12))
        assert [s.size for s in lattice] == [1, 2, 3, 4, 6, 12]
        assert lattice[1].ids == [0, 6]
        assert lattice[3].ids == [0, 3, 6, 9]

    def test_tri2_has_seven_right_ideals(self, tri2):
        ideals = ms.right_ideals(tri2)
        assert len(ideals) == 7
        assert [s.ids for s in ideals] == [
            [0],
            [0, 2],
            [0, 4],
            [0, 6],
            [0, 1, 2, 3],
            [0, 2, 4, 6],
            list(range(8)),
        ]

    def test_lattice_cap(self):
        ring = zmod(12)
        with override_caps(max_lattice=3):
            with pytest.raises(CapExceededError) as exc:
                ms.lattice_bits(ms.regular_module(ring))
        assert exc.value.cap == "lattice"

    def test_maximal_right_ideals(self, zmod12, tri2):
        assert ms.maximal_right_ideals(zmod12) == [THREES, EVENS]
        assert ms.maximal_right_ideals(tri2) == [TRI2_M1, TRI2_M2]


class TestSubmodules:
    def test_not_closed_under_action(self, zmod12):
        with pytest.raises(NotSubmoduleError) as exc:
            ms.as_submodule(ms.regular_module(zmod12), [0, 5])
        assert exc.value.reason == "not closed under action"

    def test_missing_zero(self, zmod12):
        with pytest.raises(NotSubmoduleError) as exc:
            ms.as_submodule(ms.regular_module(zmod12), [6])
        assert exc.value.reason == "missing zero"

    def test_out_of_range(self, zmod12):
        with pytest.raises(NotSubmoduleError) as exc:
            ms.as_submodule(ms.regular_module(zmod12), [0, 12])
        assert exc.value.reason == "out of range"

    def test_generation(self, zmod12):
        regular = ms.regular_module(zmod12)
        assert ms.generated_submodule(regular, [4, 6]).members == EVENS
        cyclic = ms.cyclic_submodule(regular, 3)
        assert cyclic.members == THREES
        assert cyclic.generator == 3
        assert ms.submodule_sum(regular, ideal(0, 4, 8), ideal(0, 6)) == EVENS

    def test_socle(self, zmod12):
        assert ms.socle(ms.regular_module(zmod12)).members == ideal(0, 2, 4, 6, 8, 10)


class TestQuotients:
    def test_quotient_by_six(self, zmod12):
        regular = ms.regular_module(zmod12)
        quotient, projection, reps = ms.quotient_module(regular, ideal(0, 6))
        assert quotient.order == 6
        assert reps.tolist() == [0, 1, 2, 3, 4, 5]
        assert projection[7] == 1
        # isomorphic to the cyclic submodule 2R, whose generator has annihilator {0, 6}
        twice = ms.submodule_as_module(regular, ms.cyclic_bits(regular)[2]).module
        assert ms.element_annihilators(regular)[2] == ideal(0, 6)
        assert ms.is_isomorphic(quotient, twice)

    def test_subquotient(self, zmod12):
        regular = ms.regular_module(zmod12)
        assert ms.subquotient(regular, EVENS, ideal(0, 4, 8)).order == 2
        with pytest.raises(NotSubmoduleError):
            ms.subquotient(regular, ideal(0, 4, 8), EVENS)

    def test_cyclic_vs_annihilator(self, tri2):
        regular = ms.regular_module(tri2)
        for x in range(tri2.order):
            sub = ms.submodule_as_module(regular, ms.cyclic_bits(regular)[x]).module
            assert ms.is_isomorphic(sub, ms.cyclic_quotient(tri2, ms.element_annihilators(regular)[x]))

    def test_provenance(self, zmod12):
        assert ms.cyclic_quotient(zmod12, ideal(0, 6)).provenance == "R/[0, 6]"


class TestAnnihilators:
    def test_element_annihilators(self, zmod12):
        regular = ms.regular_module(zmod12)
        anns = ms.element_annihilators(regular)
        assert anns[0] == regular.full
        assert anns[1] == 1
        assert ids_of(anns[4]) == [0, 3, 6, 9]
        assert ms.annihilator(regular, 2).ids == [0, 6]

    def test_shares_subobject(self, zmod12):
        z2 = ms.cyclic_quotient(zmod12, EVENS)
        z3 = ms.cyclic_quotient(zmod12, THREES)
        z4 = ms.cyclic_quotient(zmod12, ideal(0, 4, 8))
        assert ms.shares_subobject(z2, z4)
        assert not ms.shares_subobject(z3, z4)
        for first, second in [(z2, z4), (z4, z2), (z3, z4), (z3, z3)]:
            assert ms.shares_subobject(first, second) == ms.shares_subobject_literal(first, second)

    def test_mismatched_rings(self, zmod12):
        with pytest.raises(PreconditionError):
            ms.shares_subobject(ms.regular_module(zmod12), ms.regular_module(zmod(4)))


class TestStructure:
    def test_uniform(self, zmod12):
        z4 = ms.cyclic_quotient(zmod12, ideal(0, 4, 8))
        z6 = ms.cyclic_quotient(zmod12, ideal(0, 6))
        assert ms.is_uniform(z4) and ms.is_uniform_pairwise(z4)
        assert not ms.is_uniform(z6) and not ms.is_uniform_pairwise(z6)

    def test_composition_factors_zmod12(self, zmod12):
        regular = ms.regular_module(zmod12)
        factors = ms.composition_factors(regular)
        assert factors == {EVENS: 2, THREES: 1}
        assert ms.composition_factors(regular, "radical") == factors

    def test_composition_factors_tri2(self, tri2):
        """Two copies of R/m1 and one of R/m2."""
        regular = ms.regular_module(tri2)
        assert ms.composition_factors(regular) == {TRI2_M1: 2, TRI2_M2: 1}
        assert ms.composition_factors(regular, "radical") == {TRI2_M1: 2, TRI2_M2: 1}
        assert ms.simple_handle(ms.submodule_as_module(regular, TRI2_LOWER_LEFT).module) == TRI2_M1

    def test_matrix_ring_is_semisimple_with_one_simple(self, mat22):
        regular = ms.regular_module(mat22)
        factors = ms.composition_factors(regular)
        assert list(factors.values()) == [2]
        assert len(ms.simple_module_classes(mat22)) == 1
        assert ms.socle(regular).is_full

    def test_unknown_strategy(self, zmod12):
        with pytest.raises(PreconditionError):
            ms.composition_series(ms.regular_module(zmod12), "sideways")


class TestConstructions:
    def test_direct_sum(self):
        ring = zmod(2)
        square = ms.direct_sum(ms.regular_module(ring), ms.regular_module(ring))
        assert square.order == 4
        assert len(ms.lattice_bits(square)) == 5
        assert not ms.is_uniform(square)
        assert ms.direct_power(ms.regular_module(ring), 3).order == 8

    def test_find_embedding(self, zmod12):
        z2 = ms.cyclic_quotient(zmod12, EVENS)
        z3 = ms.cyclic_quotient(zmod12, THREES)
        z4 = ms.cyclic_quotient(zmod12, ideal(0, 4, 8))
        phi = ms.find_embedding(z2, z4)
        assert phi is not None
        assert phi.tolist() == [0, 2]
        assert ms.find_embedding(z3, z4) is None

    def test_validate_module(self, zmod12):
        module = ms.validate_module(zmod12, zmod12.add, zmod12.mul, provenance="copy")
        assert module.order == 12
        act = zmod12.mul.copy()
        act[1, 1] = 2
        with pytest.raises(ModuleAxiomError) as exc:
            ms.validate_module(zmod12, zmod12.add, act)
        assert exc.value.axiom == "x·1 = x"
        assert exc.value.witness == (1,)

    def test_module_document_round_trip(self, zmod12):
        module = ms.cyclic_quotient(zmod12, ideal(0, 4, 8))
        data = ms.serialize_module(module)
        again = ms.parse_module_document(data, ring=zmod12)
        assert again.order == 4
        assert (again.act == module.act).all()
        assert json.loads(data)["ring"]["order"] == 12

    def test_module_document_over_other_ring(self, zmod12):
        data = ms.serialize_module(ms.regular_module(zmod(4)))
        with pytest.raises(PreconditionError):
            ms.parse_module_document(data, ring=zmod12)

    def test_bits_of_matches_submodule(self, zmod12):
        assert ms.as_submodule(ms.regular_module(zmod12), [0, 4, 8]).members == bits_of([0, 4, 8])
