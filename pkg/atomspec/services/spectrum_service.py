"""Atom spectrum of a finite ring.

Atoms are classes of comonoform right ideals under atom equivalence: p ~ q
when R/p and R/q share a nonzero subobject. Openness is tested with cyclic
representatives only. Any representative H' of an atom contains a cyclic
R/q of the same atom, and ASupp(R/q) ⊆ ASupp(H') since supports shrink along
subquotients, so the existential over all representatives reduces to one over
comonoform ideals of the class.
"""

import contextvars
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional

from atomspec.core.config import get_caps, settings
from atomspec.core.errors import InvariantViolation, PreconditionError
from atomspec.core.logging import get_logger
from atomspec.models.module import RightModule, SubmoduleSet
from atomspec.models.ring import FiniteRing
from atomspec.services.module_service import (
    annihilator_set,
    cyclic_quotient,
    lattice_bits,
    quotient_annihilator_set,
    regular_module,
    simple_module_classes,
)
from atomspec.services.monoform_service import is_comonoform, is_monoform, monoform_filtration
from atomspec.utils.bitset import bits_of, ids_of, is_subset, lex_key, popcount
from atomspec.utils.union_find import UnionFind

logger = get_logger(__name__)


@dataclass(frozen=True)
class Atom:
    """One atom-equivalence class of comonoform right ideals."""

    id: int
    canonical_rep: int
    members: List[int]


@dataclass(eq=False)
class AtomSpectrum:
    """Atoms of a ring with the support of every cyclic representative."""

    ring: FiniteRing
    atoms: List[Atom]
    atom_of: Dict[int, int]
    support_cache: Dict[int, int] = field(default_factory=dict)

    @property
    def size(self) -> int:
        """Get the number of atoms."""
        return len(self.atoms)

    @property
    def full(self) -> int:
        """Get the bitset of all atoms."""
        return (1 << self.size) - 1


@dataclass(frozen=True)
class OpenSet:
    """Open subset of the atom spectrum as a bitset over atom ids."""

    spectrum: AtomSpectrum = field(compare=False)
    members: int

    @property
    def atom_ids(self) -> List[int]:
        """Get the atom ids in the set."""
        return ids_of(self.members)


def _require_comonoform(ring: FiniteRing, ideal: int) -> None:
    """Reject an ideal that is not comonoform."""
    if ideal == regular_module(ring).full or not is_comonoform(ring, ideal):
        raise PreconditionError("right ideal is not comonoform", {"ideal": ids_of(ideal)})


def _bits(ideal: SubmoduleSet | int) -> int:
    """Get the bitset of an ideal."""
    return ideal.members if isinstance(ideal, SubmoduleSet) else ideal


def atom_equivalent(ring: FiniteRing, first: SubmoduleSet | int, second: SubmoduleSet | int) -> bool:
    """Whether R/p and R/q have a common nonzero subobject."""
    p, q = _bits(first), _bits(second)
    _require_comonoform(ring, p)
    _require_comonoform(ring, q)
    regular = regular_module(ring)
    return not quotient_annihilator_set(regular, p).isdisjoint(quotient_annihilator_set(regular, q))


def _comonoform_flags(ring: FiniteRing, ideals: List[int]) -> List[bool]:
    """Flag each ideal as comonoform, on a thread pool when MAX_WORKERS > 1."""
    workers = settings.MAX_WORKERS
    if workers <= 1 or len(ideals) < 2:
        return [is_comonoform(ring, i) for i in ideals]
    # one copy per call: a context cannot be entered by two threads at once
    ctx = contextvars.copy_context()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda i: ctx.copy().run(is_comonoform, ring, i), ideals))


def atom_spectrum(ring: FiniteRing) -> AtomSpectrum:
    """Partition the comonoform right ideals into atoms and cache supports."""
    regular = regular_module(ring)
    proper = [i for i in lattice_bits(regular) if i != regular.full]
    comonoform = [i for i, flag in zip(proper, _comonoform_flags(ring, proper)) if flag]
    ann_sets = [quotient_annihilator_set(regular, p) for p in comonoform]

    uf = UnionFind(len(comonoform))
    for i in range(len(comonoform)):
        for j in range(i + 1, len(comonoform)):
            if not ann_sets[i].isdisjoint(ann_sets[j]):
                uf.union(i, j)

    classes = [sorted((comonoform[k] for k in group), key=lex_key) for group in uf.groups()]
    classes.sort(key=lambda members: lex_key(members[0]))
    atoms = [Atom(id=a, canonical_rep=members[0], members=members) for a, members in enumerate(classes)]
    atom_of = {ideal: atom.id for atom in atoms for ideal in atom.members}
    spectrum = AtomSpectrum(ring=ring, atoms=atoms, atom_of=atom_of)

    for ideal in comonoform:
        support = atom_support(spectrum, cyclic_quotient(ring, ideal))
        if not support >> atom_of[ideal] & 1:
            raise InvariantViolation("support of R/p misses its own atom", {"ideal": ids_of(ideal)})
        spectrum.support_cache[ideal] = support
    logger.info("Built atom spectrum", ring=ring.label, comonoform=len(comonoform), atoms=len(atoms))
    return spectrum


def _check_ring(spectrum: AtomSpectrum, module: RightModule) -> None:
    """Reject a module over another ring."""
    if module.ring is not spectrum.ring:
        raise PreconditionError("module is over a different ring than the spectrum")


def _atoms_among(spectrum: AtomSpectrum, ideals: Iterable[int]) -> int:
    """Get the atoms of the comonoform ideals among ideals."""
    found = 0
    for ideal in ideals:
        atom = spectrum.atom_of.get(ideal)
        if atom is not None:
            found |= 1 << atom
    return found


def atom_support(spectrum: AtomSpectrum, module: RightModule) -> int:
    """Atoms of the comonoform annihilators Ann(x+N) over all N and x ∉ N."""
    _check_ring(spectrum, module)
    found = 0
    for sub in lattice_bits(module):
        found |= _atoms_among(spectrum, quotient_annihilator_set(module, sub))
        if found == spectrum.full:
            break
    return found


def associated_atoms(spectrum: AtomSpectrum, module: RightModule) -> int:
    """Atoms of the comonoform annihilators of nonzero elements."""
    _check_ring(spectrum, module)
    return _atoms_among(spectrum, annihilator_set(module))


def is_open(spectrum: AtomSpectrum, phi: int) -> bool:
    """Every atom in Φ has a cyclic representative with support inside Φ."""
    if phi & ~spectrum.full:
        raise PreconditionError("atom set is not inside the spectrum", {"atoms": ids_of(phi)})
    return all(
        any(is_subset(spectrum.support_cache[q], phi) for q in spectrum.atoms[a].members)
        for a in ids_of(phi)
    )


def is_open_literal(spectrum: AtomSpectrum, phi: int, representatives: Iterable[RightModule]) -> bool:
    """Openness with representatives drawn from an explicit module family."""
    supports: Dict[int, List[int]] = {}
    for module in representatives:
        if not is_monoform(module):
            continue
        atom = associated_atoms(spectrum, module)
        if popcount(atom) != 1:
            raise InvariantViolation("monoform module with several associated atoms")
        supports.setdefault(atom.bit_length() - 1, []).append(atom_support(spectrum, module))
    return all(any(is_subset(s, phi) for s in supports.get(a, [])) for a in ids_of(phi))


# Largest open-set family whose union and intersection closure is checked pairwise.
_PAIRWISE_LIMIT = 1024


def _open_key(bits: int) -> tuple:
    """Order open sets by size, then atom ids."""
    return popcount(bits), lex_key(bits)


def enumerate_open_sets(spectrum: AtomSpectrum) -> List[OpenSet]:
    """All open subsets, ordered by (size, atom ids)."""
    cap = get_caps().max_atoms
    if spectrum.size > cap:
        raise PreconditionError(
            f"too many atoms for a powerset scan: {spectrum.size} > {cap}",
            {"atoms": spectrum.size, "limit": cap},
        )
    opens = sorted((phi for phi in range(1 << spectrum.size) if is_open(spectrum, phi)), key=_open_key)
    present = set(opens)
    if len(opens) > _PAIRWISE_LIMIT:
        logger.warning("Skipping pairwise closure check of open sets", count=len(opens))
        opens_to_check: List[int] = []
    else:
        opens_to_check = opens
    for i, a in enumerate(opens_to_check):
        for b in opens_to_check[i:]:
            if a | b not in present or a & b not in present:
                raise InvariantViolation("open sets are not closed under union and intersection", {"first": ids_of(a), "second": ids_of(b)})
    return [OpenSet(spectrum, phi) for phi in opens]


def is_discrete(spectrum: AtomSpectrum) -> bool:
    """Check whether every atom set is open."""
    return len(enumerate_open_sets(spectrum)) == 1 << spectrum.size


def simple_class_count(spectrum: AtomSpectrum) -> int:
    """Count the iso-classes of simple modules."""
    return len(simple_module_classes(spectrum.ring))


# ---------------------------------------------------------------------------
# Commutative rings
# ---------------------------------------------------------------------------


def two_sided_ideals(ring: FiniteRing) -> List[int]:
    """List the two-sided ideals."""
    regular = regular_module(ring)
    out = []
    for ideal in lattice_bits(regular):
        ids = ids_of(ideal)
        if all(ideal >> int(v) & 1 for v in ring.mul[:, ids].ravel()):
            out.append(ideal)
    return out


def prime_ideals(ring: FiniteRing) -> List[int]:
    """Proper two-sided ideals P with ab ∈ P implying a ∈ P or b ∈ P."""
    full = regular_module(ring).full
    primes = []
    for ideal in two_sided_ideals(ring):
        if ideal == full:
            continue
        outside = [x for x in range(ring.order) if not ideal >> x & 1]
        if all(not ideal >> int(ring.mul[a, b]) & 1 for a in outside for b in outside):
            primes.append(ideal)
    return primes


@dataclass
class CrosscheckReport:
    """Classical commutative invariants set against their atom counterparts."""

    primes: List[int]
    checks: Dict[str, bool]
    witnesses: Dict[str, Optional[dict]]

    @property
    def passed(self) -> bool:
        """Check that every comparison agreed."""
        return all(self.checks.values())


def classical_support(ring: FiniteRing, primes: List[int], module: RightModule) -> FrozenSet[int]:
    """Supp M as the union of V(p_i) over the labels of a monoform filtration."""
    if module.is_zero:
        return frozenset()
    labels = monoform_filtration(module).labels
    return frozenset(q for q in primes for p in labels if is_subset(p, q))


def commutative_crosscheck(spectrum: AtomSpectrum, modules: Optional[List[RightModule]] = None) -> CrosscheckReport:
    """Comonoform = prime, singleton atoms, open = specialization-closed, ASupp = Supp."""
    ring = spectrum.ring
    if not ring.is_commutative:
        raise PreconditionError("crosscheck needs a commutative ring")
    primes = prime_ideals(ring)
    checks: Dict[str, bool] = {}
    witnesses: Dict[str, Optional[dict]] = {}

    comonoform = set(spectrum.atom_of)
    checks["comonoform_equals_prime"] = comonoform == set(primes)
    witnesses["comonoform_equals_prime"] = None if checks["comonoform_equals_prime"] else {
        "only_comonoform": [ids_of(i) for i in sorted(comonoform - set(primes), key=lex_key)],
        "only_prime": [ids_of(i) for i in sorted(set(primes) - comonoform, key=lex_key)],
    }

    big = [a for a in spectrum.atoms if len(a.members) != 1]
    checks["singleton_atoms"] = not big
    witnesses["singleton_atoms"] = {"atom": big[0].id} if big else None

    # specialization-closed: closed upward under inclusion of primes
    prime_atoms = {p: spectrum.atom_of.get(p) for p in primes}
    closed = []
    for phi in range(1 << spectrum.size):
        inside = [p for p, a in prime_atoms.items() if a is not None and phi >> a & 1]
        if all(prime_atoms[q] is not None and phi >> prime_atoms[q] & 1 for p in inside for q in primes if is_subset(p, q)):
            closed.append(phi)
    opens = [o.members for o in enumerate_open_sets(spectrum)]
    checks["open_equals_specialization_closed"] = sorted(closed) == sorted(opens)
    witnesses["open_equals_specialization_closed"] = None if checks["open_equals_specialization_closed"] else {
        "open": [ids_of(o) for o in opens],
        "specialization_closed": [ids_of(c) for c in closed],
    }

    if modules is None:
        regular = regular_module(ring)
        modules = [regular] + [cyclic_quotient(ring, i) for i in lattice_bits(regular)[1:-1]]
    mismatch = None
    for module in modules:
        asupp = atom_support(spectrum, module)
        supp = classical_support(ring, primes, module)
        if asupp != bits_of(spectrum.atom_of[p] for p in supp if p in spectrum.atom_of) or len(supp) != popcount(asupp):
            mismatch = {"module": module.provenance, "atom_support": ids_of(asupp), "support": [ids_of(p) for p in supp]}
            break
    checks["atom_support_equals_support"] = mismatch is None
    witnesses["atom_support_equals_support"] = mismatch
    return CrosscheckReport(primes=sorted(primes, key=lex_key), checks=checks, witnesses=witnesses)

