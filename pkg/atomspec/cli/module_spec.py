"""Module spec mini-language.

    regular              the ring as a right module over itself
    quot:<ids>           R/I for the right ideal I with element ids <ids>
    cyclic:<x>           the cyclic right ideal xR
    sub:<ids>            the right ideal with element ids <ids>
    sum:<spec>+<spec>    direct sum; any number of summands
    file:<path>          a module document over the same ring
"""

from pathlib import Path
from typing import List

from atomspec.core.errors import ModuleSpecError, NotSubmoduleError
from atomspec.models.module import RightModule
from atomspec.models.ring import FiniteRing
from atomspec.services import module_service as ms
from atomspec.utils.bitset import bits_of


def _element_list(text: str) -> List[int]:
    """Parse a comma-separated list of element ids."""
    parts = [part.strip() for part in text.split(",")]
    if not text.strip() or any(not part for part in parts):
        raise ModuleSpecError(f"empty element list in {text!r}")
    try:
        ids = [int(part) for part in parts]
    except ValueError as e:
        raise ModuleSpecError(f"element ids must be integers: {text!r}") from e
    return ids


def _ring_ideal(ring: FiniteRing, ids: List[int]) -> int:
    """Check element ids form a right ideal and return its bitset."""
    bad = [x for x in ids if not 0 <= x < ring.order]
    if bad:
        raise NotSubmoduleError("out of range", bad[:1])
    bits = bits_of(ids)
    ms.check_submodule(ms.regular_module(ring), bits)
    return bits


def parse_module_spec(ring: FiniteRing, text: str) -> RightModule:
    """Build the module described by ``text`` over ``ring``."""
    text = text.strip()
    form, _, rest = text.partition(":")
    if form == "regular" and not rest:
        return ms.regular_module(ring)
    if form == "quot":
        return ms.cyclic_quotient(ring, _ring_ideal(ring, _element_list(rest)))
    if form == "sub":
        bits = _ring_ideal(ring, _element_list(rest))
        inner = ms.submodule_as_module(ms.regular_module(ring), bits).module
        return RightModule(ring=ring, add=inner.add, act=inner.act, provenance=text)
    if form == "cyclic":
        ids = _element_list(rest)
        if len(ids) != 1:
            raise ModuleSpecError(f"cyclic takes one generator: {text!r}")
        sub = ms.cyclic_submodule(ms.regular_module(ring), ids[0])
        inner = ms.submodule_as_module(ms.regular_module(ring), sub).module
        return RightModule(ring=ring, add=inner.add, act=inner.act, provenance=text)
    if form == "sum":
        summands = [parse_module_spec(ring, part) for part in rest.split("+")]
        if len(summands) < 2:
            raise ModuleSpecError(f"sum needs at least two summands: {text!r}")
        total = summands[0]
        for summand in summands[1:]:
            total = ms.direct_sum(total, summand)
        return total
    if form == "file":
        path = Path(rest)
        try:
            data = path.read_bytes()
        except OSError as e:
            raise ModuleSpecError(f"cannot read module file {rest}: {e}") from e
        return ms.parse_module_document(data, ring=ring, provenance=text)
    raise ModuleSpecError(f"unknown module spec {text!r}")
