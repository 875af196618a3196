"""Serre subcategories of mod R as open subsets of the atom spectrum.

``closure_oracle`` computes Serre closures by brute force inside a bounded
universe of modules (the subquotients of an ambient module) so that the open
set representation can be checked against something that does not depend on
it.
"""

import random
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from atomspec.core.config import get_caps
from atomspec.core.errors import CapExceededError, InvariantViolation, PreconditionError
from atomspec.core.logging import get_logger
from atomspec.models.module import RightModule
from atomspec.services.module_service import (
    direct_power,
    is_isomorphic,
    iso_invariant,
    lattice_bits,
    quotient_module,
    submodule_as_module,
)
from atomspec.services.spectrum_service import (
    AtomSpectrum,
    OpenSet,
    atom_support,
    enumerate_open_sets,
    is_open,
)
from atomspec.utils.bitset import ids_of, is_subset, lex_key, popcount
from atomspec.utils.hasse import covering_pairs

logger = get_logger(__name__)


@dataclass(frozen=True)
class SerreSubcategory:
    """The modules whose atom support lies in ``open_set``."""

    open_set: OpenSet
    generators: Optional[List[str]] = field(default=None, compare=False)

    @property
    def spectrum(self) -> AtomSpectrum:
        """Get the spectrum of the open set."""
        return self.open_set.spectrum


def serre_from_generators(spectrum: AtomSpectrum, modules: Sequence[RightModule]) -> SerreSubcategory:
    """Smallest Serre subcategory containing ``modules``."""
    phi = 0
    for module in modules:
        phi |= atom_support(spectrum, module)
    if not is_open(spectrum, phi):
        raise InvariantViolation("support of a module family is not open", {"atoms": ids_of(phi)})
    return SerreSubcategory(OpenSet(spectrum, phi), [m.provenance for m in modules])


def serre_contains(category: SerreSubcategory, module: RightModule) -> bool:
    """Check whether the support of a module lies in the open set."""
    return is_subset(atom_support(category.spectrum, module), category.open_set.members)


def minimal_generators(spectrum: AtomSpectrum, phi: int) -> List[int]:
    """Comonoform ideals whose cyclic quotients generate the subcategory of Φ.

    Greedy by support size, then canonical order, preferring canonical
    representatives.
    """
    reps = {atom.canonical_rep for atom in spectrum.atoms}
    candidates = [q for q, support in spectrum.support_cache.items() if is_subset(support, phi)]
    candidates.sort(key=lambda q: (popcount(spectrum.support_cache[q]), q not in reps, lex_key(q)))
    chosen, covered = [], 0
    for q in candidates:
        if covered == phi:
            break
        support = spectrum.support_cache[q]
        if support & ~covered:
            chosen.append(q)
            covered |= support
    if covered != phi:
        raise InvariantViolation("cyclic witnesses do not cover an open set", {"atoms": ids_of(phi)})
    return chosen


def asupp_roundtrip(spectrum: AtomSpectrum, phi: int) -> bool:
    """Union of supports of the cyclic R/q with support inside Φ equals Φ."""
    covered = 0
    for support in spectrum.support_cache.values():
        if is_subset(support, phi):
            covered |= support
    return covered == phi


@dataclass
class SerreLattice:
    """Serre subcategories with the covering relation of inclusion."""

    nodes: List[SerreSubcategory]
    covers: List[Tuple[int, int]]
    generators: List[List[int]]

    def name(self, index: int) -> str:
        """Name a subcategory by its generators."""
        spectrum = self.nodes[index].spectrum
        phi = self.nodes[index].open_set.members
        if phi == 0:
            return "zero"
        if phi == spectrum.full:
            return "mod R"
        return "<" + ", ".join(f"R/{ids_of(q)}" for q in self.generators[index]) + ">"


def enumerate_serre(spectrum: AtomSpectrum) -> SerreLattice:
    """One Serre subcategory per open set, with its Hasse diagram."""
    opens = enumerate_open_sets(spectrum)
    generators = [minimal_generators(spectrum, o.members) for o in opens]
    nodes = [
        SerreSubcategory(o, [f"R/{ids_of(q)}" for q in gens])
        for o, gens in zip(opens, generators)
    ]
    covers = covering_pairs([o.members for o in opens])
    logger.info("Enumerated Serre subcategories", count=len(nodes), covers=len(covers))
    return SerreLattice(nodes=nodes, covers=covers, generators=generators)


# ---------------------------------------------------------------------------
# Brute-force closure inside a bounded universe
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class ClosureUniverse:
    """Iso-classes of the subquotients of an ambient module.

    ``sub_edges[e]`` and ``quot_edges[e]`` hold the classes of the submodules
    and quotients of member ``e``; a triple (l, e, n) records a submodule of
    ``e`` in class l with quotient in class n. ``scope`` limits closures to a
    subquotient-closed part of the universe.
    """

    ambient: RightModule
    members: List[RightModule]
    sub_edges: List[FrozenSet[int]]
    quot_edges: List[FrozenSet[int]]
    extension_triples: FrozenSet[Tuple[int, int, int]]
    scope: FrozenSet[int]
    zero: int = 0

    def subquotients(self, member: int) -> FrozenSet[int]:
        """Get the subquotients of a member."""
        out: Set[int] = set()
        for q in self.quot_edges[member]:
            out |= self.sub_edges[q]
        return frozenset(out)

    def restricted_to(self, member: int) -> "ClosureUniverse":
        """The universe of subquotients of one member."""
        return replace(self, scope=self.subquotients(member))

    def sub(self, xs: Iterable[int]) -> FrozenSet[int]:
        """Get the subobjects of a set of members."""
        return frozenset(s for x in xs for s in self.sub_edges[x])

    def quot(self, xs: Iterable[int]) -> FrozenSet[int]:
        """Get the quotients of a set of members."""
        return frozenset(q for x in xs for q in self.quot_edges[x])

    def star(self, first: FrozenSet[int], second: FrozenSet[int]) -> FrozenSet[int]:
        """Extensions of a member of ``second`` by a member of ``first``."""
        return frozenset(e for l, e, n in self.extension_triples if e in self.scope and l in first and n in second)


class _Interner:
    """Members of a universe up to isomorphism."""

    def __init__(self, limit: int):
        self.members: List[RightModule] = []
        self.buckets: Dict[tuple, List[int]] = {}
        self.limit = limit

    def find(self, module: RightModule, create: bool) -> int:
        """Find the member isomorphic to a module, adding it when asked."""
        key = iso_invariant(module)
        bucket = self.buckets.setdefault(key, [])
        for index in bucket:
            if is_isomorphic(self.members[index], module):
                return index
        if not create:
            raise InvariantViolation("subquotient missing from universe", {"order": module.order})
        self.members.append(module)
        bucket.append(len(self.members) - 1)
        if len(self.members) > self.limit:
            raise CapExceededError("universe", self.limit, len(self.members))
        return len(self.members) - 1


def build_universe(ambient: RightModule, power: int = 1) -> ClosureUniverse:
    """Universe over ``ambient`` or its direct power (power ≤ 3)."""
    if not 1 <= power <= 3:
        raise PreconditionError("universe ambient power must be 1, 2 or 3", {"power": power})
    caps = get_caps()
    base = direct_power(ambient, power) if power > 1 else ambient
    if base.order > caps.max_universe_order:
        raise CapExceededError("universe order", caps.max_universe_order, base.order)
    interner = _Interner(caps.max_universe_members)
    for sub in lattice_bits(base):
        quotient = quotient_module(base, sub).module
        for inner in lattice_bits(quotient):
            interner.find(submodule_as_module(quotient, inner).module, create=True)

    members = interner.members
    sub_edges: List[FrozenSet[int]] = []
    quot_edges: List[FrozenSet[int]] = []
    triples: Set[Tuple[int, int, int]] = set()
    for e, module in enumerate(members):
        subs, quots = set(), set()
        for sub in lattice_bits(module):
            l = interner.find(submodule_as_module(module, sub).module, create=False)
            n = interner.find(quotient_module(module, sub).module, create=False)
            subs.add(l)
            quots.add(n)
            triples.add((l, e, n))
        sub_edges.append(frozenset(subs))
        quot_edges.append(frozenset(quots))
    logger.info("Built closure universe", ambient=base.order, members=len(members), triples=len(triples))
    return ClosureUniverse(
        ambient=base,
        members=members,
        sub_edges=sub_edges,
        quot_edges=quot_edges,
        extension_triples=frozenset(triples),
        scope=frozenset(range(len(members))),
    )


def closure_oracle(universe: ClosureUniverse, gens: Iterable[int]) -> FrozenSet[int]:
    """Least scope subset containing ``gens`` closed under subquotients and extensions."""
    closed = {universe.zero, *gens}
    stray = closed - universe.scope
    if stray:
        raise PreconditionError("generators outside the universe scope", {"members": sorted(stray)})
    triples = [t for t in universe.extension_triples if t[1] in universe.scope]
    changed = True
    while changed:
        size = len(closed)
        for m in list(closed):
            closed |= universe.sub_edges[m]
            closed |= universe.quot_edges[m]
        for l, e, n in triples:
            if l in closed and n in closed:
                closed.add(e)
        changed = len(closed) != size
    return frozenset(closed)


def closure_says_monoform(universe: ClosureUniverse, member: int) -> bool:
    """A module is monoform iff it lies outside the closure of its proper quotients."""
    local = universe.restricted_to(member)
    seeds = universe.quot_edges[member] - {member}
    return member not in closure_oracle(local, seeds)


def member_supports(spectrum: AtomSpectrum, universe: ClosureUniverse) -> List[int]:
    """Get the atom support of every member."""
    return [atom_support(spectrum, m) for m in universe.members]


@dataclass
class OracleComparison:
    """Oracle closure set against the support prediction for one seed set."""

    gens: List[int]
    sound: bool
    complete: bool
    extra: List[int]
    missing: List[int]


def compare_with_supports(
    spectrum: AtomSpectrum, universe: ClosureUniverse, gens: Sequence[int], supports: Optional[List[int]] = None
) -> OracleComparison:
    """Soundness: closure ⊆ prediction. Completeness: prediction ⊆ closure."""
    supports = supports if supports is not None else member_supports(spectrum, universe)
    phi = 0
    for g in gens:
        phi |= supports[g]
    closure = closure_oracle(universe, gens)
    predicted = {m for m in universe.scope if is_subset(supports[m], phi)}
    extra = sorted(closure - predicted)
    missing = sorted(predicted - closure)
    return OracleComparison(list(gens), not extra, not missing, extra, missing)


@dataclass
class CalculusReport:
    samples: int
    violations: List[Dict[str, object]]

    @property
    def passed(self) -> bool:
        """Check that no law was violated."""
        return not self.violations


def calculus_check(universe: ClosureUniverse, samples: int = 100, seed: int = 0) -> CalculusReport:
    """Subcategory calculus identities on random member-set triples."""
    rng = random.Random(seed)
    scope = sorted(universe.scope)
    everything = frozenset(scope)
    zero = frozenset({universe.zero})
    violations: List[Dict[str, object]] = []

    def draw() -> FrozenSet[int]:
        """Draw a random set of members."""
        return frozenset(rng.sample(scope, rng.randint(1, min(3, len(scope)))))

    def record(name: str, **sets: FrozenSet[int]) -> None:
        """Record a violated law."""
        violations.append({"identity": name, **{k: sorted(v) for k, v in sets.items()}})

    def check(x: FrozenSet[int], y: FrozenSet[int], z: FrozenSet[int]) -> None:
        """Check the calculus laws on one triple."""
        if universe.sub(universe.quot(x)) != universe.quot(universe.sub(x)):
            record("sub quot = quot sub", X=x)
        if universe.star(universe.star(x, y), z) != universe.star(x, universe.star(y, z)):
            record("(X*Y)*Z = X*(Y*Z)", X=x, Y=y, Z=z)
        xy = universe.star(x, y)
        if not universe.sub(xy) <= universe.star(universe.sub(x), universe.sub(y)):
            record("sub(X*Y) ⊆ sub X * sub Y", X=x, Y=y)
        if not universe.quot(xy) <= universe.star(universe.quot(x), universe.quot(y)):
            record("quot(X*Y) ⊆ quot X * quot Y", X=x, Y=y)
        if universe.star(zero, y) != y:
            record("0*Y = Y", Y=y)

    for _ in range(samples):
        check(draw(), draw(), draw())
    check(everything, everything, everything)
    if universe.sub(everything) != everything or universe.quot(everything) != everything:
        record("sub and quot of everything", X=everything)
    return CalculusReport(samples=samples, violations=violations)
