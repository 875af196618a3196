"""Finite right modules: constructions, submodule lattices and invariants.

Two modules share a nonzero subobject exactly when their annihilator sets meet.
A common subobject U gives some u ≠ 0 with the same annihilator in both, and
conversely Ann(x) = Ann(y) makes xR ≅ R/Ann(x) ≅ yR a common subobject. Most
decision procedures downstream rely on this to replace subobject quantifiers
by finite set intersections; ``shares_subobject_literal`` keeps the literal
embedding search around for cross-checking.
"""

from collections import Counter
from functools import wraps
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, TypeVar
from weakref import WeakKeyDictionary

import numpy as np
from pydantic import ValidationError

from atomspec.core.config import get_caps
from atomspec.core.errors import (
    CapExceededError,
    ModuleAxiomError,
    NotSubmoduleError,
    PreconditionError,
    RingFormatError,
)
from atomspec.core.logging import get_logger
from atomspec.models.module import Inclusion, Quotient, RightModule, SubmoduleSet
from atomspec.models.ring import FiniteRing
from atomspec.schemas.documents import ModuleDocument
from atomspec.services.ring_service import check_abelian_group, format_location, ring_document, ring_from_document
from atomspec.utils.bitset import (
    bits_of,
    bits_to_mask,
    ids_of,
    is_subset,
    lattice_key,
    lex_key,
    mask_to_bits,
    popcount,
    rows_to_bits,
)

logger = get_logger(__name__)

T = TypeVar("T")

_module_cache: "WeakKeyDictionary[RightModule, Dict[str, Any]]" = WeakKeyDictionary()
_regular_cache: "WeakKeyDictionary[FiniteRing, RightModule]" = WeakKeyDictionary()


def _per_module(fn: Callable[[RightModule], T]) -> Callable[[RightModule], T]:
    """Memoize a single-argument function on the module instance."""
    name = fn.__qualname__

    @wraps(fn)
    def wrapper(module: RightModule) -> T:
        """Get the cached value or compute it."""
        slot = _module_cache.setdefault(module, {})
        if name not in slot:
            slot[name] = fn(module)
        return slot[name]

    return wrapper


def _same_ring(*modules: RightModule) -> None:
    """Reject modules over different rings."""
    rings = {id(m.ring) for m in modules}
    if len(rings) > 1:
        raise PreconditionError("modules are over different rings")


def _ids(module: RightModule, bits: int) -> np.ndarray:
    """Get the element ids of a bitset as an array."""
    return np.flatnonzero(bits_to_mask(bits, module.order))


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def regular_module(ring: FiniteRing) -> RightModule:
    """The ring as a right module over itself."""
    module = _regular_cache.get(ring)
    if module is None:
        module = RightModule(ring=ring, add=ring.add, act=ring.mul, provenance="regular")
        _regular_cache[ring] = module
    return module


def validate_module(ring: FiniteRing, add: Sequence[Sequence[int]], act: Sequence[Sequence[int]], provenance: str = "") -> RightModule:
    """Exhaustively check the module axioms and build the module."""
    add_t = np.asarray(add, dtype=np.int64)
    act_t = np.asarray(act, dtype=np.int64)
    if add_t.ndim != 2 or add_t.shape[0] != add_t.shape[1] or add_t.shape[0] < 1:
        raise ModuleAxiomError("add table is not square")
    m, n = add_t.shape[0], ring.order
    if act_t.shape != (m, n):
        raise ModuleAxiomError("act table shape mismatch")
    for name, table in (("add", add_t), ("act", act_t)):
        bad = np.argwhere((table < 0) | (table >= m))
        if bad.size:
            raise ModuleAxiomError(f"{name} entry out of range", tuple(bad[0]))
    check_abelian_group(add_t, error=ModuleAxiomError)

    ids = np.arange(m)
    bad = np.flatnonzero(act_t[:, ring.one] != ids)
    if bad.size:
        raise ModuleAxiomError("x·1 = x", (bad[0],))
    step = max(1, (1 << 22) // max(1, m * max(m, n)))
    for start in range(0, m, step):
        xs = ids[start : start + step]
        rows = act_t[xs, :]
        checks = (
            ("x·(ab) = (x·a)·b", act_t[rows, :], rows[:, ring.mul]),
            ("(x+y)·a = x·a + y·a", act_t[add_t[xs, :], :], add_t[rows[:, None, :], act_t[None, :, :]]),
            ("x·(a+b) = x·a + x·b", rows[:, ring.add], add_t[rows[:, :, None], rows[:, None, :]]),
        )
        for axiom, lhs, rhs in checks:
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                witness = bad[0]
                raise ModuleAxiomError(axiom, (witness[0] + start, *witness[1:]))
    return RightModule(ring=ring, add=add_t, act=act_t, provenance=provenance)


def direct_sum(first: RightModule, second: RightModule) -> RightModule:
    """External direct sum; the id of (x, y) is ``x * |second| + y``."""
    _same_ring(first, second)
    m1, m2 = first.order, second.order
    add = (first.add[:, None, :, None] * m2 + second.add[None, :, None, :]).reshape(m1 * m2, m1 * m2)
    act = (first.act[:, None, :] * m2 + second.act[None, :, :]).reshape(m1 * m2, -1)
    trace = f"({first.provenance or '?'})+({second.provenance or '?'})"
    return RightModule(ring=first.ring, add=add, act=act, provenance=trace)


def direct_power(module: RightModule, k: int) -> RightModule:
    """Build the direct sum of k copies."""
    if k < 1:
        raise PreconditionError("direct power needs k >= 1", {"k": k})
    out = module
    for _ in range(k - 1):
        out = direct_sum(out, module)
    return out


def serialize_module(module: RightModule) -> bytes:
    """Canonical JSON document embedding the ring tables."""
    doc = ModuleDocument(
        ring=ring_document(module.ring),
        order=module.order,
        add=module.add.tolist(),
        act=module.act.tolist(),
    )
    return doc.model_dump_json().encode()


def parse_module_document(data: str | bytes, ring: Optional[FiniteRing] = None, provenance: str = "") -> RightModule:
    """Parse a module file; with ``ring`` given the embedded tables must match it."""
    try:
        doc = ModuleDocument.model_validate_json(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise RingFormatError(str(first.get("msg", e)), format_location(e)) from e
    embedded = ring_from_document(doc.ring)
    if ring is None:
        ring = embedded
    elif not ring.same_tables(embedded):
        raise PreconditionError("module document is over a different ring")
    return validate_module(ring, doc.add, doc.act, provenance=provenance)


# ---------------------------------------------------------------------------
# Submodules
# ---------------------------------------------------------------------------


def check_submodule(module: RightModule, bits: int) -> None:
    """Raise ``NotSubmoduleError`` unless ``bits`` is a submodule."""
    if bits >> module.order:
        raise NotSubmoduleError("out of range", [i for i in ids_of(bits) if i >= module.order][:1])
    if not bits & 1:
        raise NotSubmoduleError("missing zero")
    mask = bits_to_mask(bits, module.order)
    ids = np.flatnonzero(mask)
    acted = module.act[ids, :]
    bad = np.argwhere(~mask[acted])
    if bad.size:
        x, a = ids[bad[0][0]], bad[0][1]
        raise NotSubmoduleError("not closed under action", (x, a))
    summed = module.add[np.ix_(ids, ids)]
    bad = np.argwhere(~mask[summed])
    if bad.size:
        raise NotSubmoduleError("not closed under addition", (ids[bad[0][0]], ids[bad[0][1]]))


def as_submodule(module: RightModule, ids: Iterable[int]) -> SubmoduleSet:
    """Check element ids form a submodule and wrap them."""
    bits = bits_of(ids)
    check_submodule(module, bits)
    return SubmoduleSet(module, bits)


def _span_bits(module: RightModule, seeds: Iterable[int]) -> int:
    """Get the submodule generated by seeds."""
    seeds_arr = np.unique(np.fromiter(seeds, dtype=np.int64))
    if seeds_arr.size == 0:
        return 1
    # xR for every seed is already closed under the action; only sums remain
    orbit = np.unique(module.act[seeds_arr, :])
    member = np.zeros(module.order, dtype=bool)
    member[0] = True
    group = np.array([0], dtype=np.int64)
    for t in orbit:
        if member[t]:
            continue
        multiples = [0]
        current = int(t)
        while current != 0:
            multiples.append(current)
            current = int(module.add[current, t])
        group = np.unique(module.add[np.ix_(group, multiples)])
        member[group] = True
    return mask_to_bits(member)


def generated_submodule(module: RightModule, xs: Iterable[int]) -> SubmoduleSet:
    """Least submodule containing ``xs``."""
    xs = list(xs)
    bad = [x for x in xs if not 0 <= x < module.order]
    if bad:
        raise NotSubmoduleError("out of range", bad[:1])
    return SubmoduleSet(module, _span_bits(module, xs))


def cyclic_submodule(module: RightModule, x: int) -> SubmoduleSet:
    """xR, remembering x as its generator."""
    if not 0 <= x < module.order:
        raise NotSubmoduleError("out of range", (x,))
    return SubmoduleSet(module, cyclic_bits(module)[x], generator=x)


@_per_module
def cyclic_bits(module: RightModule) -> List[int]:
    """Bitset of xR for every element x."""
    return [_span_bits(module, [x]) for x in range(module.order)]


def submodule_sum(module: RightModule, first: int, second: int) -> int:
    """Get the sum of two submodules."""
    if is_subset(second, first):
        return first
    if is_subset(first, second):
        return second
    sums = module.add[np.ix_(_ids(module, first), _ids(module, second))]
    mask = np.zeros(module.order, dtype=bool)
    mask[sums.ravel()] = True
    return mask_to_bits(mask)


@_per_module
def lattice_bits(module: RightModule) -> List[int]:
    """All submodules as bitsets in lattice order, built as joins of cyclics."""
    cap = get_caps().max_lattice
    cyclics = sorted(set(cyclic_bits(module)) - {1}, key=lattice_key)
    seen = {1}
    frontier = [1]
    while frontier:
        following = []
        for current in frontier:
            for c in cyclics:
                if is_subset(c, current):
                    continue
                joined = submodule_sum(module, current, c)
                if joined not in seen:
                    seen.add(joined)
                    following.append(joined)
                    if len(seen) > cap:
                        logger.warning("Submodule lattice cap hit", order=module.order, limit=cap, reached=len(seen))
                        raise CapExceededError("lattice", cap, len(seen))
        frontier = following
    logger.debug("Enumerated submodule lattice", order=module.order, size=len(seen))
    return sorted(seen, key=lattice_key)


def submodule_lattice(module: RightModule) -> List[SubmoduleSet]:
    """Every submodule once, sorted by (cardinality, lexicographic ids)."""
    return [SubmoduleSet(module, bits) for bits in lattice_bits(module)]


def right_ideals(ring: FiniteRing) -> List[SubmoduleSet]:
    """List the right ideals in lattice order."""
    return submodule_lattice(regular_module(ring))


def maximal_right_ideals(ring: FiniteRing) -> List[int]:
    """List the maximal right ideals."""
    regular = regular_module(ring)
    ideals = lattice_bits(regular)
    proper = [i for i in ideals if i != regular.full]
    return [i for i in proper if not any(j != i and is_subset(i, j) for j in proper)]


# ---------------------------------------------------------------------------
# Quotients and subquotients
# ---------------------------------------------------------------------------


def quotient_module(module: RightModule, sub: SubmoduleSet | int) -> Quotient:
    """M/N with cosets numbered by their minimal element id."""
    bits = sub.members if isinstance(sub, SubmoduleSet) else sub
    if isinstance(sub, SubmoduleSet) and sub.parent is not module:
        raise NotSubmoduleError("not a submodule of this module")
    check_submodule(module, bits)
    members = _ids(module, bits)
    coset_min = module.add[:, members].min(axis=1)
    reps = np.unique(coset_min)
    projection = np.searchsorted(reps, coset_min)
    add = projection[module.add[np.ix_(reps, reps)]]
    act = projection[module.act[reps, :]]
    trace = f"{module.provenance or 'M'}/{ids_of(bits)}"
    quotient = RightModule(ring=module.ring, add=add, act=act, provenance=trace)
    return Quotient(quotient, projection, reps)


def submodule_as_module(module: RightModule, sub: SubmoduleSet | int) -> Inclusion:
    """A submodule as a standalone module plus the parent ids of its elements."""
    bits = sub.members if isinstance(sub, SubmoduleSet) else sub
    members = _ids(module, bits)
    position = np.full(module.order, -1, dtype=np.int64)
    position[members] = np.arange(members.size)
    add = position[module.add[np.ix_(members, members)]]
    act = position[module.act[members, :]]
    trace = f"sub({module.provenance or 'M'}, {members.tolist()})"
    return Inclusion(RightModule(ring=module.ring, add=add, act=act, provenance=trace), members)


def subquotient(module: RightModule, upper: int, lower: int) -> RightModule:
    """upper/lower for submodules lower ⊆ upper."""
    if not is_subset(lower, upper):
        raise NotSubmoduleError("lower is not contained in upper")
    inner, inclusion = submodule_as_module(module, upper)
    position = {int(x): i for i, x in enumerate(inclusion)}
    lower_bits = bits_of(position[x] for x in ids_of(lower))
    return quotient_module(inner, lower_bits).module


def cyclic_quotient(ring: FiniteRing, ideal: int) -> RightModule:
    """R/I for a right ideal given as a bitset."""
    quotient = quotient_module(regular_module(ring), ideal).module
    return RightModule(ring=ring, add=quotient.add, act=quotient.act, provenance=f"R/{ids_of(ideal)}")


# ---------------------------------------------------------------------------
# Annihilators
# ---------------------------------------------------------------------------


@_per_module
def element_annihilators(module: RightModule) -> List[int]:
    """Ann(x) as a ring bitset for every element x."""
    return rows_to_bits(module.act == 0)


def annihilator(module: RightModule, x: int) -> SubmoduleSet:
    """{a : x·a = 0}, a right ideal of the ring."""
    bits = element_annihilators(module)[x]
    regular = regular_module(module.ring)
    check_submodule(regular, bits)
    return SubmoduleSet(regular, bits)


@_per_module
def annihilator_set(module: RightModule) -> FrozenSet[int]:
    """Distinct annihilators of nonzero elements."""
    return frozenset(element_annihilators(module)[1:])


def quotient_annihilator_set(module: RightModule, sub: int) -> FrozenSet[int]:
    """Annihilator set of M/N computed without building the quotient."""
    inside = bits_to_mask(sub, module.order)
    rows = inside[module.act[~inside, :]]
    return frozenset(rows_to_bits(rows))


def shares_subobject(first: RightModule, second: RightModule) -> bool:
    """Whether the two modules have a common nonzero subobject."""
    _same_ring(first, second)
    return not annihilator_set(first).isdisjoint(annihilator_set(second))


def shares_subobject_literal(first: RightModule, second: RightModule) -> bool:
    """Same question answered by searching embeddings of every submodule."""
    _same_ring(first, second)
    for bits in lattice_bits(first)[1:]:
        sub = submodule_as_module(first, bits).module
        if find_embedding(sub, second) is not None:
            return True
    return False


# ---------------------------------------------------------------------------
# Uniformity, socle and composition factors
# ---------------------------------------------------------------------------


@_per_module
def minimal_submodules(module: RightModule) -> List[int]:
    """Minimal nonzero submodules; every one of them is cyclic."""
    cyclics = sorted(set(cyclic_bits(module)) - {1}, key=lattice_key)
    return [c for c in cyclics if not any(d != c and is_subset(d, c) for d in cyclics)]


def is_uniform(module: RightModule) -> bool:
    """Nonzero with a unique minimal nonzero submodule."""
    return not module.is_zero and len(minimal_submodules(module)) == 1


def is_uniform_pairwise(module: RightModule) -> bool:
    """Definitional check: any two nonzero submodules meet nontrivially."""
    if module.is_zero:
        return False
    nonzero = lattice_bits(module)[1:]
    return all(a & b != 1 for i, a in enumerate(nonzero) for b in nonzero[i + 1 :])


def socle(module: RightModule) -> SubmoduleSet:
    """Get the sum of the minimal submodules."""
    bits = 1
    for s in minimal_submodules(module):
        bits = submodule_sum(module, bits, s)
    return SubmoduleSet(module, bits)


def _factor_handle(module: RightModule, lower: int, upper: int) -> int:
    """Get the simple handle of a composition factor."""
    # class of a simple factor upper/lower: lexicographically least annihilator
    inside = bits_to_mask(lower, module.order)
    fresh = _ids(module, upper & ~lower)
    rows = inside[module.act[fresh, :]]
    return min(set(rows_to_bits(rows)), key=lex_key)


def composition_series(module: RightModule, strategy: str = "socle") -> List[int]:
    """A maximal chain of submodules from 0 to M.

    ``socle`` climbs through covers of the current submodule; ``radical``
    descends through maximal submodules of the current one.
    """
    lattice = lattice_bits(module)
    if strategy == "socle":
        chain = [1]
        while chain[-1] != module.full:
            current = chain[-1]
            chain.append(next(s for s in lattice if s != current and is_subset(current, s)))
        return chain
    if strategy == "radical":
        chain = [module.full]
        while chain[-1] != 1:
            current = chain[-1]
            below = [s for s in lattice if s != current and is_subset(s, current)]
            largest = max(popcount(s) for s in below)
            chain.append(next(s for s in below if popcount(s) == largest))
        return chain[::-1]
    raise PreconditionError(f"unknown composition series strategy {strategy!r}")


def composition_factors(module: RightModule, strategy: str = "socle") -> Counter:
    """Multiset of simple factors keyed by their class handle.

    A handle is the lexicographically least maximal right ideal m with the
    factor isomorphic to R/m.
    """
    chain = composition_series(module, strategy)
    return Counter(_factor_handle(module, lo, hi) for lo, hi in zip(chain, chain[1:]))


def simple_handle(module: RightModule) -> int:
    """Class handle of a simple module."""
    return min(annihilator_set(module), key=lex_key)


def simple_module_classes(ring: FiniteRing) -> List[int]:
    """Handles of the pairwise non-isomorphic simple modules."""
    regular = regular_module(ring)
    handles = {min(quotient_annihilator_set(regular, m), key=lex_key) for m in maximal_right_ideals(ring)}
    return sorted(handles, key=lex_key)


# ---------------------------------------------------------------------------
# Homomorphism search
# ---------------------------------------------------------------------------


def generating_sequence(module: RightModule) -> List[int]:
    """Greedy generators: repeatedly the smallest id outside the span."""
    gens: List[int] = []
    span = 1
    cyclics = cyclic_bits(module)
    while span != module.full:
        x = int(np.argmax(~bits_to_mask(span, module.order)))
        gens.append(x)
        span = submodule_sum(module, span, cyclics[x])
    return gens


def _extend(source: RightModule, target: RightModule, phi: np.ndarray, g: int, y: int) -> Optional[np.ndarray]:
    """Extend a partial homomorphism by sending g to y."""
    known = np.flatnonzero(phi >= 0)
    elements = source.add[np.ix_(known, source.act[g, :])].ravel()
    images = target.add[np.ix_(phi[known], target.act[y, :])].ravel()
    uniq, first = np.unique(elements, return_index=True)
    chosen = images[first]
    if np.any(images != chosen[np.searchsorted(uniq, elements)]):
        return None
    existing = phi[uniq]
    if np.any((existing >= 0) & (existing != chosen)):
        return None
    out = phi.copy()
    out[uniq] = chosen
    return out


def _is_homomorphism(source: RightModule, target: RightModule, phi: np.ndarray) -> bool:
    """Check additivity and the action."""
    return bool(
        np.array_equal(target.add[np.ix_(phi, phi)], phi[source.add])
        and np.array_equal(target.act[phi, :], phi[source.act])
    )


def find_embedding(source: RightModule, target: RightModule) -> Optional[np.ndarray]:
    """An injective homomorphism as an id map, or ``None``.

    Images of the greedy generators are restricted to elements with the same
    annihilator, which any injective homomorphism preserves.
    """
    _same_ring(source, target)
    if source.order > target.order:
        return None
    if source.is_zero:
        return np.zeros(1, dtype=np.int64)
    ann_source = element_annihilators(source)
    ann_target = element_annihilators(target)
    gens = generating_sequence(source)
    candidates = [[y for y in range(1, target.order) if ann_target[y] == ann_source[g]] for g in gens]

    def search(i: int, phi: np.ndarray) -> Optional[np.ndarray]:
        """Search the images of the remaining generators."""
        if i == len(gens):
            if np.any(phi < 0) or not _is_homomorphism(source, target, phi):
                return None
            return phi
        for y in candidates[i]:
            extended = _extend(source, target, phi, gens[i], y)
            if extended is None:
                continue
            assigned = extended[extended >= 0]
            if np.unique(assigned).size != assigned.size:
                continue
            found = search(i + 1, extended)
            if found is not None:
                return found
        return None

    start = np.full(source.order, -1, dtype=np.int64)
    start[0] = 0
    return search(0, start)


def iso_invariant(module: RightModule) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    """Order plus the multiset of element annihilators."""
    counts = Counter(element_annihilators(module))
    return module.order, tuple(sorted(counts.items()))


def is_isomorphic(first: RightModule, second: RightModule) -> bool:
    """Check whether two modules are isomorphic."""
    _same_ring(first, second)
    if iso_invariant(first) != iso_invariant(second):
        return False
    return find_embedding(first, second) is not None
