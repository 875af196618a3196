"""Monoform modules, comonoform and completely prime right ideals, filtrations."""

from typing import Dict, List, Tuple
from weakref import WeakKeyDictionary

import numpy as np

from atomspec.core.errors import InvariantViolation, PreconditionError
from atomspec.core.logging import get_logger
from atomspec.models.module import Filtration, RightModule, SubmoduleSet
from atomspec.models.ring import FiniteRing
from atomspec.services.module_service import (
    annihilator_set,
    composition_factors,
    cyclic_bits,
    cyclic_quotient,
    element_annihilators,
    is_isomorphic,
    is_uniform,
    lattice_bits,
    minimal_submodules,
    quotient_annihilator_set,
    quotient_module,
    regular_module,
    simple_handle,
    submodule_as_module,
    submodule_sum,
    subquotient,
)
from atomspec.utils.bitset import bits_to_mask, ids_of, is_subset, mask_to_bits

logger = get_logger(__name__)

_comonoform_cache: "WeakKeyDictionary[FiniteRing, Dict[int, bool]]" = WeakKeyDictionary()


def is_monoform(module: RightModule) -> bool:
    """No nonzero submodule N leaves M and M/N with a common nonzero subobject."""
    if module.is_zero:
        return False
    own = annihilator_set(module)
    for sub in lattice_bits(module)[1:]:
        if not own.isdisjoint(quotient_annihilator_set(module, sub)):
            return False
    return True


def monoform_oracle_artinian(module: RightModule) -> bool:
    """Simple socle whose class occurs once among the composition factors."""
    minimal = minimal_submodules(module)
    if len(minimal) != 1:
        return False
    soc = submodule_as_module(module, minimal[0]).module
    return composition_factors(module)[simple_handle(soc)] == 1


def _proper_ideal(ring: FiniteRing, ideal: SubmoduleSet | int) -> int:
    """Get the bitset of a proper right ideal."""
    bits = ideal.members if isinstance(ideal, SubmoduleSet) else ideal
    if bits == regular_module(ring).full:
        raise PreconditionError("the unit ideal has a zero quotient", {"ideal": ids_of(bits)})
    return bits


def is_comonoform(ring: FiniteRing, ideal: SubmoduleSet | int) -> bool:
    """Whether R/I is monoform."""
    bits = _proper_ideal(ring, ideal)
    cache = _comonoform_cache.setdefault(ring, {})
    if bits not in cache:
        cache[bits] = is_monoform(cyclic_quotient(ring, bits))
    return cache[bits]


def is_completely_prime(ring: FiniteRing, ideal: SubmoduleSet | int) -> bool:
    """aI ⊆ I and ab ∈ I imply a ∈ I or b ∈ I."""
    bits = _proper_ideal(ring, ideal)
    inside = bits_to_mask(bits, ring.order)
    members = np.flatnonzero(inside)
    outside = np.flatnonzero(~inside)
    for a in outside:
        if not inside[ring.mul[a, members]].all():
            continue
        if inside[ring.mul[a, outside]].any():
            return False
    return True


def monoform_filtration(module: RightModule) -> Filtration:
    """Chain with cyclic factors R/p_i for comonoform p_i.

    Each step takes the smallest element id of the current quotient whose
    annihilator is comonoform.
    """
    if module.is_zero:
        raise PreconditionError("the zero module has no monoform filtration")
    ring = module.ring
    chain = [SubmoduleSet(module, 1)]
    labels: List[int] = []
    current = 1
    while current != module.full:
        quotient, projection, _ = quotient_module(module, current)
        anns = element_annihilators(quotient)
        pick = next((x for x in range(1, quotient.order) if is_comonoform(ring, anns[x])), None)
        if pick is None:
            logger.error("No comonoform annihilator found", order=quotient.order)
            raise InvariantViolation("no comonoform annihilator found", {"submodule": ids_of(current)})
        image = bits_to_mask(cyclic_bits(quotient)[pick], quotient.order)
        current = mask_to_bits(image[projection])
        chain.append(SubmoduleSet(module, current))
        labels.append(anns[pick])
    return Filtration(module=module, chain=chain, labels=labels)


def verify_filtration(filtration: Filtration) -> List[str]:
    """Problems with a filtration; empty when every invariant holds."""
    module = filtration.module
    problems = []
    chain = [s.members for s in filtration.chain]
    if chain[0] != 1 or chain[-1] != module.full:
        problems.append("chain does not run from zero to the module")
    if len(filtration.labels) != len(chain) - 1:
        problems.append("label count differs from step count")
    for i, (lower, upper) in enumerate(zip(chain, chain[1:])):
        if lower == upper or not is_subset(lower, upper):
            problems.append(f"step {i} is not a strict inclusion")
            continue
        factor = subquotient(module, upper, lower)
        if not is_monoform(factor):
            problems.append(f"factor {i} is not monoform")
        if i < len(filtration.labels):
            cyclic = cyclic_quotient(module.ring, filtration.labels[i])
            if not is_isomorphic(factor, cyclic):
                problems.append(f"factor {i} is not isomorphic to R/p for its label")
    return problems


def monoform_submodules(module: RightModule) -> List[int]:
    """List the nonzero monoform submodules."""
    return [s for s in lattice_bits(module)[1:] if is_monoform(submodule_as_module(module, s).module)]


def max_monoform_submodule(module: RightModule) -> SubmoduleSet:
    """Largest monoform submodule of a uniform module."""
    if not is_uniform(module):
        raise PreconditionError("maximal monoform submodule needs a uniform module")
    ring = module.ring
    anns = element_annihilators(module)
    cyclics = cyclic_bits(module)
    total = 1
    for x in range(1, module.order):
        # xR ≅ R/Ann(x)
        if is_comonoform(ring, anns[x]):
            total = submodule_sum(module, total, cyclics[x])
    if not is_monoform(submodule_as_module(module, total).module):
        raise InvariantViolation("sum of monoform submodules is not monoform", {"sum": ids_of(total)})
    stray = [s for s in monoform_submodules(module) if not is_subset(s, total)]
    if stray:
        raise InvariantViolation("a monoform submodule escapes the maximal one", {"submodule": ids_of(stray[0])})
    return SubmoduleSet(module, total)


def comonoform_ideals(ring: FiniteRing) -> List[int]:
    """Comonoform right ideals in lattice order."""
    regular = regular_module(ring)
    return [i for i in lattice_bits(regular) if i != regular.full and is_comonoform(ring, i)]


def monoform_pair_sums(module: RightModule) -> List[Tuple[int, int]]:
    """Pairs of monoform submodules whose sum is not monoform."""
    mono = monoform_submodules(module)
    bad = []
    for i, a in enumerate(mono):
        for b in mono[i + 1 :]:
            joined = submodule_sum(module, a, b)
            if not is_monoform(submodule_as_module(module, joined).module):
                bad.append((a, b))
    return bad
