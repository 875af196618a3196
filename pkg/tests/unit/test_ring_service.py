"""Test ring construction, validation and serialization."""

import json

import numpy as np
import pytest

from atomspec.core.config import override_caps
from atomspec.core.errors import CapExceededError, PreconditionError, RingAxiomError, RingFormatError
from atomspec.schemas.documents import FpAlgebraDocument
from atomspec.schemas.specs import ProdSpec, Tri2Spec, ZmodSpec
from atomspec.services.ring_service import (
    build_builtin,
    expand_fp_algebra,
    load_ring,
    parse_ring_document,
    parse_ring_spec,
    serialize_ring,
    validate_ring,
    zmod,
)

pytestmark = pytest.mark.unit


def zmod_tables(n: int):
    ids = np.arange(n)
    return (ids[:, None] + ids[None, :]) % n, (ids[:, None] * ids[None, :]) % n


class TestValidateRing:
    def test_modular_integers(self):
        add, mul = zmod_tables(12)
        ring = validate_ring(add.tolist(), mul.tolist(), 1)
        assert ring.order == 12
        assert ring.zero == 0
        assert ring.is_commutative

    def test_zero_multiplication_has_no_identity(self):
        """Tables of Z/2 with zero multiplication and one=1."""
        with pytest.raises(RingAxiomError) as exc:
            validate_ring([[0, 1], [1, 0]], [[0, 0], [0, 0]], 1)
        assert exc.value.axiom == "one is not identity"
        assert "one is not identity" in str(exc.value)

    def test_distributivity_witness(self):
        # 2*2 = 2 in Z/3 keeps associativity and breaks distributivity
        add, mul = zmod_tables(3)
        mul = mul.copy()
        mul[2, 2] = 2
        with pytest.raises(RingAxiomError) as exc:
            validate_ring(add, mul, 1)
        assert exc.value.axiom in {"multiplicative associativity", "left distributivity", "right distributivity"}
        assert len(exc.value.witness) == 3

    def test_additive_group_failure(self):
        with pytest.raises(RingAxiomError) as exc:
            validate_ring([[0, 1], [1, 1]], [[0, 0], [0, 1]], 1)
        assert exc.value.axiom.startswith("additive")

    def test_out_of_range_entry(self):
        with pytest.raises(RingAxiomError) as exc:
            validate_ring([[0, 1], [1, 2]], [[0, 0], [0, 1]], 1)
        assert exc.value.axiom == "add entry out of range"
        assert exc.value.witness == (1, 1)

    def test_order_cap(self):
        with override_caps(max_order=10):
            with pytest.raises(CapExceededError) as exc:
                zmod(12)
        assert exc.value.cap == "order"
        assert exc.value.reached == 12


class TestBuiltins:
    def test_zmod4(self):
        ring = build_builtin(ZmodSpec(n=4))
        assert ring.order == 4
        assert ring.one == 1

    def test_tri2(self):
        """Lower triangular matrices over F_2 with unit (1, 0, 1)."""
        ring = build_builtin(Tri2Spec(p=2))
        assert ring.order == 8
        assert ring.one == 5
        assert not ring.is_commutative
        # E21 * E11 = E21 but E11 * E21 = 0
        assert ring.mul[2, 4] == 2
        assert ring.mul[4, 2] == 0

    def test_mat22(self, mat22):
        assert mat22.order == 16
        assert not mat22.is_commutative

    def test_non_prime_characteristic(self):
        with pytest.raises(PreconditionError):
            build_builtin(Tri2Spec(p=4))

    def test_product_is_mixed_radix(self):
        ring = build_builtin(parse_ring_spec("prod:zmod:2,zmod:3"))
        assert ring.order == 6
        assert ring.one == 1 * 3 + 1
        assert ring.is_commutative

    def test_deterministic(self):
        first, second = build_builtin(Tri2Spec(p=3)), build_builtin(Tri2Spec(p=3))
        assert first.same_tables(second)
        assert first.fingerprint == second.fingerprint

    def test_fp_algebra_field(self):
        doc = FpAlgebraDocument(p=3, dim=1, structure_constants=[[[1]]], unit_vector=[1])
        ring = expand_fp_algebra(doc)
        assert ring.order == 3
        assert ring.same_tables(zmod(3))


class TestRingSpecs:
    @pytest.mark.parametrize(
        "text,order",
        [("zmod:12", 12), ("tri2:3", 27), ("mat:2:2", 16), ("prod:zmod:4,tri2:2", 32), ("prod:(prod:zmod:2,zmod:2),zmod:3", 12)],
    )
    def test_orders(self, text, order):
        assert load_ring(text).order == order

    def test_nested_product_spec(self):
        spec = parse_ring_spec("prod:(prod:zmod:2,zmod:2),zmod:3")
        assert isinstance(spec, ProdSpec)
        assert isinstance(spec.factors[0], ProdSpec)

    @pytest.mark.parametrize("text", ["zmod:x", "poly:3", "mat:2", "zmod:0"])
    def test_malformed(self, text):
        with pytest.raises(RingFormatError):
            parse_ring_spec(text)


class TestSerialization:
    @pytest.mark.parametrize("spec", ["zmod:2", "tri2:2"])
    def test_round_trip(self, spec):
        ring = load_ring(spec)
        again = parse_ring_document(serialize_ring(ring))
        assert again.same_tables(ring)
        assert serialize_ring(again) == serialize_ring(ring)

    def test_document_fields(self):
        doc = json.loads(serialize_ring(zmod(2)))
        assert doc == {"order": 2, "one": 1, "add": [[0, 1], [1, 0]], "mul": [[0, 0], [0, 1]]}

    def test_out_of_range_location(self):
        doc = json.loads(serialize_ring(zmod(2)))
        doc["add"][0][1] = 5
        with pytest.raises(RingFormatError) as exc:
            parse_ring_document(json.dumps(doc))
        assert "add[0][1] = 5 out of range 0..1" in exc.value.message

    def test_unknown_field_rejected(self):
        doc = json.loads(serialize_ring(zmod(2)))
        doc["comment"] = "extra"
        with pytest.raises(RingFormatError):
            parse_ring_document(json.dumps(doc))

    def test_fp_algebra_document(self):
        doc = {"fp_algebra": {"p": 2, "dim": 1, "structure_constants": [[[1]]], "unit_vector": [1]}}
        ring = parse_ring_document(json.dumps(doc))
        assert ring.same_tables(zmod(2))

    def test_load_ring_file(self, tmp_path):
        path = tmp_path / "tri2.json"
        path.write_bytes(serialize_ring(load_ring("tri2:2")))
        assert load_ring(str(path)).same_tables(load_ring("tri2:2"))
