"""Finite ring construction, validation and serialization."""

import itertools
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np
from pydantic import TypeAdapter, ValidationError
from sympy import isprime

from atomspec.core.config import get_caps
from atomspec.core.errors import CapExceededError, PreconditionError, RingAxiomError, RingFormatError
from atomspec.core.logging import get_logger
from atomspec.models.ring import FiniteRing
from atomspec.schemas.documents import FpAlgebraDocument, FpAlgebraFile, RingDocument, RingFile
from atomspec.schemas.specs import (
    FpAlgebraSpec,
    MatSpec,
    ProdSpec,
    RingSpec,
    TablesSpec,
    Tri2Spec,
    ZmodSpec,
)

logger = get_logger(__name__)

_ring_file_adapter: TypeAdapter[RingFile] = TypeAdapter(RingFile)

# Bound on table entries materialised at once by the triple checks.
_BLOCK = 1 << 22


def _chunk(n: int) -> int:
    """Get the row batch size for vectorised checks."""
    return max(1, _BLOCK // max(1, n * n))


def _first_mismatch(lhs: np.ndarray, rhs: np.ndarray) -> Tuple[int, ...] | None:
    """Get the first index where two tables differ."""
    bad = np.argwhere(lhs != rhs)
    if bad.size == 0:
        return None
    return tuple(int(v) for v in bad[0])


def check_abelian_group(add: np.ndarray, error: type = RingAxiomError) -> None:
    """Exhaustively check that ``add`` is an abelian group law with identity 0."""
    n = add.shape[0]
    ids = np.arange(n)
    for name, lhs, rhs in (
        ("additive identity", add[0, :], ids),
        ("additive identity", add[:, 0], ids),
    ):
        witness = _first_mismatch(lhs, rhs)
        if witness is not None:
            raise error(name, (witness[0],))
    witness = _first_mismatch(add, add.T)
    if witness is not None:
        raise error("additive commutativity", witness)
    no_inverse = np.flatnonzero(~(add == 0).any(axis=1))
    if no_inverse.size:
        raise error("additive inverses", (int(no_inverse[0]),))
    for start in range(0, n, _chunk(n)):
        a = ids[start : start + _chunk(n)]
        # (a+b)+c against a+(b+c)
        lhs = add[add[a, :], :]
        rhs = add[a[:, None, None], add[None, :, :]]
        witness = _first_mismatch(lhs, rhs)
        if witness is not None:
            raise error("additive associativity", (witness[0] + start, *witness[1:]))


def validate_ring(add: Sequence[Sequence[int]], mul: Sequence[Sequence[int]], one: int, label: str = "") -> FiniteRing:
    """Check every ring axiom over all pairs and triples and build the ring."""
    add_t = np.asarray(add, dtype=np.int64)
    mul_t = np.asarray(mul, dtype=np.int64)
    if add_t.ndim != 2 or add_t.shape[0] != add_t.shape[1] or add_t.shape[0] < 1:
        raise RingAxiomError("add table is not square")
    n = add_t.shape[0]
    if mul_t.shape != (n, n):
        raise RingAxiomError("mul table shape differs from add table")
    caps = get_caps()
    if n > caps.max_order:
        raise CapExceededError("order", caps.max_order, n)
    for name, table in (("add", add_t), ("mul", mul_t)):
        bad = np.argwhere((table < 0) | (table >= n))
        if bad.size:
            raise RingAxiomError(f"{name} entry out of range", tuple(bad[0]))
    if not 0 <= one < n:
        raise RingAxiomError("one out of range", (one,))

    check_abelian_group(add_t)

    ids = np.arange(n)
    if _first_mismatch(mul_t[one, :], ids) is not None or _first_mismatch(mul_t[:, one], ids) is not None:
        raise RingAxiomError("one is not identity", (one,))

    for start in range(0, n, _chunk(n)):
        a = ids[start : start + _chunk(n)]
        rows = mul_t[a, :]
        # (ab)c against a(bc)
        witness = _first_mismatch(mul_t[rows, :], rows[:, mul_t])
        if witness is not None:
            raise RingAxiomError("multiplicative associativity", (witness[0] + start, *witness[1:]))
        # a(b+c) against ab+ac
        witness = _first_mismatch(rows[:, add_t], add_t[rows[:, :, None], rows[:, None, :]])
        if witness is not None:
            raise RingAxiomError("left distributivity", (witness[0] + start, *witness[1:]))
        # (b+c)a against ba+ca
        cols = mul_t[:, a].T
        witness = _first_mismatch(cols[:, add_t], add_t[cols[:, :, None], cols[:, None, :]])
        if witness is not None:
            raise RingAxiomError("right distributivity", (witness[0] + start, *witness[1:]))

    ring = FiniteRing(add=add_t, mul=mul_t, one=one, label=label)
    logger.debug("Validated ring", label=label, order=n)
    return ring


def _require_prime(p: int) -> None:
    """Reject a non-prime field characteristic."""
    if not isprime(p):
        raise PreconditionError(f"field characteristic {p} is not prime", {"p": p})


def _require_order(order: int) -> None:
    """Reject orders above the cap."""
    caps = get_caps()
    if order > caps.max_order:
        raise CapExceededError("order", caps.max_order, order)


def expand_fp_algebra(doc: FpAlgebraDocument, label: str = "") -> FiniteRing:
    """Expand structure constants to full tables.

    Elements are coefficient vectors in lexicographic order, so the id of
    ``(v_0, ..., v_{d-1})`` is ``sum v_i p^(d-1-i)``.
    """
    p, d = doc.p, doc.dim
    _require_prime(p)
    n = p**d
    _require_order(n)
    vectors = np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64).reshape(n, d)
    weights = p ** np.arange(d - 1, -1, -1, dtype=np.int64)
    consts = np.asarray(doc.structure_constants, dtype=np.int64).reshape(d, d, d)

    def to_ids(vecs: np.ndarray) -> np.ndarray:
        """Map coefficient vectors to element ids."""
        return (vecs % p) @ weights if d else np.zeros(vecs.shape[:-1], dtype=np.int64)

    add = to_ids(vectors[:, None, :] + vectors[None, :, :])
    mul = np.empty((n, n), dtype=np.int64)
    for start in range(0, n, _chunk(n)):
        block = vectors[start : start + _chunk(n)]
        prod = np.einsum("ai,bj,ijk->abk", block, vectors, consts)
        mul[start : start + _chunk(n)] = to_ids(prod)
    one = int(to_ids(np.asarray(doc.unit_vector, dtype=np.int64)))
    return validate_ring(add, mul, one, label=label)


def _matrix_units(k: int) -> List[List[List[int]]]:
    """Structure constants of the k x k matrix units."""
    # E_ij E_jl = E_il with basis ordered row-major
    d = k * k
    consts = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i, j, l in itertools.product(range(k), repeat=3):
        consts[i * k + j][j * k + l][i * k + l] = 1
    return consts


def _tri2_constants() -> List[List[List[int]]]:
    """Structure constants of lower triangular 2x2 matrices."""
    # basis (E11, E21, E22) of [[a, 0], [b, c]]
    consts = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    consts[0][0][0] = 1  # E11 E11 = E11
    consts[1][0][1] = 1  # E21 E11 = E21
    consts[2][1][1] = 1  # E22 E21 = E21
    consts[2][2][2] = 1  # E22 E22 = E22
    return consts


def zmod(n: int) -> FiniteRing:
    """Build the integers modulo n."""
    _require_order(n)
    ids = np.arange(n)
    add = (ids[:, None] + ids[None, :]) % n
    mul = (ids[:, None] * ids[None, :]) % n
    return validate_ring(add, mul, 1 % n, label=f"zmod:{n}")


def product(rings: Sequence[FiniteRing]) -> FiniteRing:
    """Direct product; ids are mixed-radix with the first factor most significant."""
    order = int(np.prod([r.order for r in rings]))
    _require_order(order)
    add = np.zeros((1, 1), dtype=np.int64)
    mul = np.zeros((1, 1), dtype=np.int64)
    one = 0
    for ring in rings:
        m = ring.order
        add = (add[:, None, :, None] * m + ring.add[None, :, None, :]).reshape(add.shape[0] * m, -1)
        mul = (mul[:, None, :, None] * m + ring.mul[None, :, None, :]).reshape(mul.shape[0] * m, -1)
        one = one * m + ring.one
    label = "prod:" + ",".join(r.label or "?" for r in rings)
    return validate_ring(add, mul, one, label=label)


def build_builtin(spec: RingSpec) -> FiniteRing:
    """Build a ring from a descriptor."""
    if isinstance(spec, ZmodSpec):
        return zmod(spec.n)
    if isinstance(spec, MatSpec):
        _require_prime(spec.p)
        _require_order(spec.p ** (spec.k * spec.k))
        unit = [1 if i == j else 0 for i in range(spec.k) for j in range(spec.k)]
        doc = FpAlgebraDocument(p=spec.p, dim=spec.k * spec.k, structure_constants=_matrix_units(spec.k), unit_vector=unit)
        return expand_fp_algebra(doc, label=f"mat:{spec.k}:{spec.p}")
    if isinstance(spec, Tri2Spec):
        _require_prime(spec.p)
        doc = FpAlgebraDocument(p=spec.p, dim=3, structure_constants=_tri2_constants(), unit_vector=[1, 0, 1])
        return expand_fp_algebra(doc, label=f"tri2:{spec.p}")
    if isinstance(spec, ProdSpec):
        return product([build_builtin(factor) for factor in spec.factors])
    if isinstance(spec, TablesSpec):
        return ring_from_document(spec.document)
    if isinstance(spec, FpAlgebraSpec):
        return expand_fp_algebra(spec.document, label="fp_algebra")
    raise PreconditionError(f"unknown ring spec {spec!r}")


def _split_top_level(text: str) -> List[str]:
    """Split a product spec on commas outside parentheses."""
    parts, depth, current = [], 0, []
    for char in text:
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        if char == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(char)
    parts.append("".join(current))
    return parts


def parse_ring_spec(text: str) -> RingSpec:
    """Parse ``zmod:n``, ``tri2:p``, ``mat:k:p`` or ``prod:spec,spec``.

    Product factors that are themselves products are wrapped in parentheses.
    """
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    family, _, rest = text.partition(":")
    try:
        if family == "zmod":
            return ZmodSpec(n=int(rest))
        if family == "tri2":
            return Tri2Spec(p=int(rest))
        if family == "mat":
            k, p = rest.split(":")
            return MatSpec(k=int(k), p=int(p))
        if family == "prod":
            return ProdSpec(factors=[parse_ring_spec(part) for part in _split_top_level(rest)])
    except (ValueError, ValidationError) as e:
        raise RingFormatError(f"malformed ring spec {text!r}: {e}") from e
    raise RingFormatError(f"unknown ring family {family!r}")


def ring_from_document(doc: RingDocument, label: str = "") -> FiniteRing:
    """Validate a ring document."""
    return validate_ring(doc.add, doc.mul, doc.one, label=label)


def ring_document(ring: FiniteRing) -> RingDocument:
    """Convert a ring to its document."""
    return RingDocument(order=ring.order, one=ring.one, add=ring.add.tolist(), mul=ring.mul.tolist())


def serialize_ring(ring: FiniteRing) -> bytes:
    """Canonical JSON document for a ring."""
    return ring_document(ring).model_dump_json().encode()


def format_location(error: ValidationError) -> str:
    """Format the location of the first validation error."""
    first = error.errors()[0]
    return ".".join(str(part) for part in first.get("loc", ())) or "document"


def parse_ring_document(data: Union[str, bytes], label: str = "") -> FiniteRing:
    """Parse a ring file in either the tables or the ``fp_algebra`` form."""
    try:
        parsed = _ring_file_adapter.validate_json(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise RingFormatError(str(first.get("msg", e)), format_location(e)) from e
    if isinstance(parsed, FpAlgebraFile):
        return expand_fp_algebra(parsed.fp_algebra, label=label)
    return ring_from_document(parsed, label=label)


def load_ring(source: str) -> FiniteRing:
    """Load a ring from a builtin spec string or a file path."""
    path = Path(source)
    if path.suffix in {".json", ".ring"} or path.is_file():
        try:
            data = path.read_bytes()
        except OSError as e:
            raise RingFormatError(f"cannot read ring file {source}: {e}") from e
        return parse_ring_document(data, label=path.name)
    return build_builtin(parse_ring_spec(source))
