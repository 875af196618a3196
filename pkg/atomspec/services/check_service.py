"""Property battery over one ring.

Each property is checked exhaustively on the regular module, its cyclic
quotients R/I and, when the ring is small enough, on the universe of
subquotients of the regular module. A failing property carries the first
witness found.
"""

import itertools
import random
import time
from typing import Any, Callable, Dict, List, Optional, Tuple

from atomspec.core.config import get_caps, settings
from atomspec.core.errors import AtomSpecError, PreconditionError
from atomspec.core.logging import get_logger
from atomspec.models.module import RightModule
from atomspec.models.ring import FiniteRing
from atomspec.schemas.common import PropertyResult
from atomspec.services import module_service as ms
from atomspec.services import monoform_service as mf
from atomspec.services import serre_service as ss
from atomspec.services import spectrum_service as sp
from atomspec.utils.bitset import ids_of, is_subset, popcount

logger = get_logger(__name__)

Outcome = Tuple[bool, int, Optional[Dict[str, Any]]]


class Battery:
    """Runs named properties and collects their results."""

    def __init__(self) -> None:
        self.results: List[PropertyResult] = []

    def run(self, name: str, check: Callable[[], Outcome]) -> None:
        """Run one property, turning library errors into failures."""
        started = time.perf_counter()
        try:
            passed, instances, witness = check()
        except AtomSpecError as e:
            passed, instances, witness = False, 0, {"error": e.code, "message": e.message, **e.detail}
        elapsed = round((time.perf_counter() - started) * 1000, 1)
        log = logger.info if passed else logger.error
        log("Property checked", property=name, passed=passed, instances=instances, elapsed_ms=elapsed)
        self.results.append(PropertyResult(name=name, passed=passed, instances=instances, witness=witness))

    def skip(self, name: str, reason: str) -> None:
        """Record a property that was not run."""
        logger.warning("Property skipped", property=name, reason=reason)
        self.results.append(PropertyResult(name=name, passed=True, skipped=True, witness={"reason": reason}))


def _first_failure(items, predicate: Callable[[Any], Optional[Dict[str, Any]]]) -> Outcome:
    """Apply ``predicate`` until it returns a witness."""
    count = 0
    for item in items:
        count += 1
        witness = predicate(item)
        if witness is not None:
            return False, count, witness
    return True, count, None


def _label(module: RightModule) -> str:
    """Name a module for witnesses."""
    return module.provenance or f"module of order {module.order}"


def check_suite(ring: FiniteRing, seed: Optional[int] = None) -> List[PropertyResult]:
    """Run the whole battery on ``ring``."""
    seed = settings.RANDOM_SEED if seed is None else seed
    rng = random.Random(seed)
    battery = Battery()
    regular = ms.regular_module(ring)
    ideals = ms.lattice_bits(regular)
    proper = [i for i in ideals if i != regular.full]
    cyclics = [ms.cyclic_quotient(ring, i) for i in proper]
    modules = [regular] + cyclics[1:]
    spectrum = sp.atom_spectrum(ring)

    # --- module layer -------------------------------------------------------

    def lattice_closed() -> Outcome:
        """Check that meets and joins of right ideals are right ideals."""
        present = set(ideals)

        def bad(pair):
            a, b = pair
            if a & b not in present or ms.submodule_sum(regular, a, b) not in present:
                return {"first": ids_of(a), "second": ids_of(b)}
            return None

        return _first_failure(itertools.combinations(ideals, 2), bad)

    def quotient_orders() -> Outcome:
        """Check |R| = |I| |R/I| for every right ideal."""
        return _first_failure(
            ideals,
            lambda n: None
            if ms.quotient_module(regular, n).module.order * popcount(n) == regular.order
            else {"submodule": ids_of(n)},
        )

    def cyclic_vs_annihilator() -> Outcome:
        """Check xR against R/Ann(x) for every element."""

        def bad(x):
            sub = ms.submodule_as_module(regular, ms.cyclic_bits(regular)[x]).module
            quotient = ms.cyclic_quotient(ring, ms.element_annihilators(regular)[x])
            return None if ms.is_isomorphic(sub, quotient) else {"element": x}

        return _first_failure(range(regular.order), bad)

    def series_independent() -> Outcome:
        """Compare socle and radical composition series."""
        return _first_failure(
            modules,
            lambda m: None
            if ms.composition_factors(m, "socle") == ms.composition_factors(m, "radical")
            else {"module": _label(m)},
        )

    def uniform_pairwise() -> Outcome:
        """Compare is_uniform with the pairwise definition."""
        small = [m for m in modules if len(ms.lattice_bits(m)) <= 64]
        return _first_failure(
            small, lambda m: None if ms.is_uniform(m) == ms.is_uniform_pairwise(m) else {"module": _label(m)}
        )

    def reduction_literal() -> Outcome:
        """Compare the annihilator reduction with embedding search."""
        small = [m for m in modules if m.order <= settings.CROSSCHECK_ORDER]
        return _first_failure(
            itertools.product(small, repeat=2),
            lambda pair: None
            if ms.shares_subobject(*pair) == ms.shares_subobject_literal(*pair)
            else {"first": _label(pair[0]), "second": _label(pair[1])},
        )

    battery.run("lattice closed under meet and join", lattice_closed)
    battery.run("|M| = |N| |M/N|", quotient_orders)
    battery.run("xR is isomorphic to R/Ann(x)", cyclic_vs_annihilator)
    battery.run("composition factors independent of series", series_independent)
    battery.run("uniform matches pairwise definition", uniform_pairwise)
    battery.run("subobject reduction matches embedding search", reduction_literal)

    # --- monoform layer -----------------------------------------------------

    def oracle_agrees() -> Outcome:
        """Compare the socle criterion with the literal monoform oracle."""
        return _first_failure(
            cyclics,
            lambda m: None if mf.is_monoform(m) == mf.monoform_oracle_artinian(m) else {"module": _label(m)},
        )

    def submodules_monoform() -> Outcome:
        """Check nonzero submodules of monoform cyclics."""

        def bad(m):
            if not mf.is_monoform(m):
                return None
            for s in ms.lattice_bits(m)[1:]:
                if not mf.is_monoform(ms.submodule_as_module(m, s).module):
                    return {"module": _label(m), "submodule": ids_of(s)}
            return None

        return _first_failure(cyclics, bad)

    def monoform_uniform() -> Outcome:
        """Check that monoform cyclics are uniform."""
        return _first_failure(
            cyclics, lambda m: {"module": _label(m)} if mf.is_monoform(m) and not ms.is_uniform(m) else None
        )

    def maximal_monoform() -> Outcome:
        """Check the maximal monoform submodule of uniform cyclics."""

        def bad(m):
            if not ms.is_uniform(m):
                try:
                    mf.max_monoform_submodule(m)
                except PreconditionError:
                    return None
                return {"module": _label(m), "problem": "non-uniform input accepted"}
            mf.max_monoform_submodule(m)
            pairs = mf.monoform_pair_sums(m)
            if pairs:
                return {"module": _label(m), "pair": [ids_of(p) for p in pairs[0]]}
            return None

        return _first_failure(cyclics, bad)

    def completely_prime() -> Outcome:
        """Check that comonoform ideals are completely prime."""
        comonoform = set(spectrum.atom_of)
        return _first_failure(
            sorted(comonoform),
            lambda p: None if mf.is_completely_prime(ring, p) else {"ideal": ids_of(p)},
        )

    def filtrations() -> Outcome:
        """Verify the monoform filtration of every nonzero module."""

        def bad(m):
            problems = mf.verify_filtration(mf.monoform_filtration(m))
            return {"module": _label(m), "problems": problems} if problems else None

        return _first_failure([m for m in modules if not m.is_zero], bad)

    battery.run("monoform agrees with socle criterion", oracle_agrees)
    battery.run("submodules of monoform modules are monoform", submodules_monoform)
    battery.run("monoform modules are uniform", monoform_uniform)
    battery.run("maximal monoform submodule of uniform modules", maximal_monoform)
    battery.run("comonoform ideals are completely prime", completely_prime)
    battery.run("monoform filtrations are valid", filtrations)

    # --- spectrum layer -----------------------------------------------------

    comonoform = sorted(spectrum.atom_of)

    def equivalence_relation() -> Outcome:
        """Check reflexivity, symmetry and transitivity of atom equivalence."""
        rel = {(p, q): sp.atom_equivalent(ring, p, q) for p in comonoform for q in comonoform}
        for p in comonoform:
            if not rel[p, p]:
                return False, len(rel), {"reflexivity": ids_of(p)}
        for p, q in itertools.permutations(comonoform, 2):
            if rel[p, q] != rel[q, p]:
                return False, len(rel), {"symmetry": [ids_of(p), ids_of(q)]}
        for p, q, r in itertools.permutations(comonoform, 3):
            if rel[p, q] and rel[q, r] and not rel[p, r]:
                return False, len(rel), {"transitivity": [ids_of(p), ids_of(q), ids_of(r)]}
        return True, len(rel), None

    def support_exact() -> Outcome:
        """Check ASupp R = ASupp N ∪ ASupp R/N along submodules."""
        whole = sp.atom_support(spectrum, regular)

        def bad(sub):
            inner = ms.submodule_as_module(regular, sub).module
            outer = ms.quotient_module(regular, sub).module
            split = sp.atom_support(spectrum, inner) | sp.atom_support(spectrum, outer)
            return None if split == whole else {"submodule": ids_of(sub)}

        return _first_failure(ideals, bad)

    def ass_sandwich() -> Outcome:
        """Check AAss N ⊆ AAss R ⊆ AAss N ∪ AAss R/N along submodules."""
        whole = sp.associated_atoms(spectrum, regular)

        def bad(sub):
            inner = sp.associated_atoms(spectrum, ms.submodule_as_module(regular, sub).module)
            outer = sp.associated_atoms(spectrum, ms.quotient_module(regular, sub).module)
            if is_subset(inner, whole) and is_subset(whole, inner | outer):
                return None
            return {"submodule": ids_of(sub)}

        return _first_failure(ideals, bad)

    def ass_within_support() -> Outcome:
        """Check that associated atoms are nonempty and inside the support."""

        def bad(m):
            ass, supp = sp.associated_atoms(spectrum, m), sp.atom_support(spectrum, m)
            if not is_subset(ass, supp) or (not m.is_zero and ass == 0):
                return {"module": _label(m), "ass": ids_of(ass), "support": ids_of(supp)}
            return None

        return _first_failure(modules, bad)

    def direct_sums() -> Outcome:
        """Check additivity of support and associated atoms on sampled sums."""
        limit = get_caps().max_universe_order * 4
        pool = [(a, b) for a, b in itertools.combinations_with_replacement(cyclics, 2) if a.order * b.order <= limit]
        sample = rng.sample(pool, min(settings.ORACLE_SAMPLES, len(pool)))

        def bad(pair):
            a, b = pair
            total = ms.direct_sum(a, b)
            supp = sp.atom_support(spectrum, a) | sp.atom_support(spectrum, b)
            ass = sp.associated_atoms(spectrum, a) | sp.associated_atoms(spectrum, b)
            if sp.atom_support(spectrum, total) == supp and sp.associated_atoms(spectrum, total) == ass:
                return None
            return {"first": _label(a), "second": _label(b)}

        return _first_failure(sample, bad)

    def supports_open() -> Outcome:
        """Check that every module support is open."""
        return _first_failure(
            modules,
            lambda m: None if sp.is_open(spectrum, sp.atom_support(spectrum, m)) else {"module": _label(m)},
        )

    def discrete() -> Outcome:
        """Check that every atom set is open."""
        count = len(sp.enumerate_open_sets(spectrum))
        passed = count == 1 << spectrum.size
        return passed, 1, None if passed else {"atoms": spectrum.size, "open_sets": count}

    def atoms_vs_simples() -> Outcome:
        """Compare the atom count with the simple module classes."""
        simples = sp.simple_class_count(spectrum)
        passed = simples == spectrum.size
        return passed, 1, None if passed else {"atoms": spectrum.size, "simple_classes": simples}

    def roundtrip_open() -> Outcome:
        """Check that each open set is recovered from its modules."""
        opens = sp.enumerate_open_sets(spectrum)
        return _first_failure(
            opens, lambda o: None if ss.asupp_roundtrip(spectrum, o.members) else {"open_set": o.atom_ids}
        )

    def serre_count() -> Outcome:
        """Compare the Serre lattice with the open sets."""
        lattice = ss.enumerate_serre(spectrum)
        opens = sp.enumerate_open_sets(spectrum)
        passed = len(lattice.nodes) == len(opens)
        return passed, len(opens), None if passed else {"serre": len(lattice.nodes), "open_sets": len(opens)}

    battery.run("atom equivalence is an equivalence relation", equivalence_relation)
    battery.run("support is exact along submodules", support_exact)
    battery.run("associated atoms sandwich", ass_sandwich)
    battery.run("associated atoms lie in the support", ass_within_support)
    battery.run("support and associated atoms of direct sums", direct_sums)
    battery.run("supports are open", supports_open)
    battery.run("topology is discrete", discrete)
    battery.run("atoms correspond to simple modules", atoms_vs_simples)
    battery.run("support of the inverse image recovers open sets", roundtrip_open)
    battery.run("one Serre subcategory per open set", serre_count)

    if ring.is_commutative:

        def commutative() -> Outcome:
            """Run the prime ideal crosscheck."""
            report = sp.commutative_crosscheck(spectrum)
            failed = [name for name, ok in report.checks.items() if not ok]
            witness = {name: report.witnesses[name] for name in failed} if failed else None
            return not failed, len(report.checks), witness

        battery.run("commutative crosscheck", commutative)
    else:
        battery.skip("commutative crosscheck", "ring is not commutative")

    # --- universe layer -----------------------------------------------------

    if regular.order > get_caps().max_universe_order:
        for name in (
            "cyclic representatives decide openness",
            "closure oracle soundness",
            "closure oracle completeness",
            "monoform iff outside the closure of proper quotients",
            "Serre membership closed under subquotients and extensions",
            "subcategory calculus",
        ):
            battery.skip(name, "regular module exceeds the universe order cap")
        return battery.results

    universe = ss.build_universe(regular)
    supports = ss.member_supports(spectrum, universe)

    def literal_openness() -> Outcome:
        """Compare cyclic openness with openness over universe members."""
        reps = [m for m in universe.members if m.order <= settings.CROSSCHECK_ORDER]
        return _first_failure(
            range(1 << spectrum.size),
            lambda phi: None
            if sp.is_open(spectrum, phi) == sp.is_open_literal(spectrum, phi, reps)
            else {"atoms": ids_of(phi)},
        )

    seeds = [
        sorted(rng.sample(range(len(universe.members)), rng.randint(1, min(3, len(universe.members)))))
        for _ in range(settings.ORACLE_SAMPLES)
    ]
    comparisons = [ss.compare_with_supports(spectrum, universe, gens, supports) for gens in seeds]

    def soundness() -> Outcome:
        """Check that closures never leave the open-set prediction."""
        return _first_failure(comparisons, lambda c: None if c.sound else {"gens": c.gens, "extra": c.extra})

    def completeness() -> Outcome:
        """Check that closures reach the open-set prediction."""
        return _first_failure(comparisons, lambda c: None if c.complete else {"gens": c.gens, "missing": c.missing})

    def closure_monoform() -> Outcome:
        """Compare monoform with membership in the closure of proper quotients."""
        return _first_failure(
            range(len(universe.members)),
            lambda e: None
            if universe.members[e].is_zero
            or mf.is_monoform(universe.members[e]) == ss.closure_says_monoform(universe, e)
            else {"member": e, "module": _label(universe.members[e])},
        )

    def membership_closed() -> Outcome:
        """Check Serre membership against universe subquotients and extensions."""
        opens = sp.enumerate_open_sets(spectrum)

        def bad(open_set):
            phi = open_set.members
            inside = {e for e in universe.scope if is_subset(supports[e], phi)}
            for e in inside:
                if not universe.sub_edges[e] <= inside or not universe.quot_edges[e] <= inside:
                    return {"open_set": open_set.atom_ids, "member": e}
            for l, e, n in universe.extension_triples:
                if l in inside and n in inside and e not in inside:
                    return {"open_set": open_set.atom_ids, "extension": [l, e, n]}
            return None

        return _first_failure(opens, bad)

    def calculus() -> Outcome:
        """Run the sampled subcategory calculus."""
        report = ss.calculus_check(universe, settings.CALCULUS_SAMPLES, seed)
        return report.passed, report.samples, {"violations": report.violations[:5]} if report.violations else None

    battery.run("cyclic representatives decide openness", literal_openness)
    battery.run("closure oracle soundness", soundness)
    battery.run("closure oracle completeness", completeness)
    battery.run("monoform iff outside the closure of proper quotients", closure_monoform)
    battery.run("Serre membership closed under subquotients and extensions", membership_closed)
    battery.run("subcategory calculus", calculus)
    return battery.results


def completely_prime_not_comonoform(ring: FiniteRing) -> List[int]:
    """Completely prime right ideals that are not comonoform."""
    regular = ms.regular_module(ring)
    return [
        i
        for i in ms.lattice_bits(regular)
        if i != regular.full and mf.is_completely_prime(ring, i) and not mf.is_comonoform(ring, i)
    ]
