"""Ring verbs: validate and ideals."""

from typing import Dict, List

from atomspec.cli.router import CommandContext, Graph, Payload, add_command
from atomspec.services import module_service as ms
from atomspec.services.monoform_service import is_comonoform, is_completely_prime
from atomspec.services.spectrum_service import two_sided_ideals
from atomspec.utils.bitset import ids_of
from atomspec.utils.hasse import covering_pairs


def validate(ctx: CommandContext) -> Payload:
    """Validate a ring and an optional module."""
    ring = ctx.ring
    payload: Payload = {
        "order": ring.order,
        "one": ring.one,
        "commutative": ring.is_commutative,
    }
    if ctx.args.module is not None:
        module = ctx.module
        payload["module"] = {"spec": ctx.args.module, "order": module.order, "provenance": module.provenance}
    return payload


def ideals(ctx: CommandContext) -> Payload:
    """List the right ideals with their flags and covers."""
    ring = ctx.ring
    regular = ms.regular_module(ring)
    lattice = ms.lattice_bits(regular)
    maximal = set(ms.maximal_right_ideals(ring))
    two_sided = set(two_sided_ideals(ring))
    rows: List[Dict] = []
    for index, ideal in enumerate(lattice):
        proper = ideal != regular.full
        rows.append(
            {
                "index": index,
                "ids": ids_of(ideal),
                "size": len(ids_of(ideal)),
                "maximal": ideal in maximal,
                "two_sided": ideal in two_sided,
                "comonoform": proper and is_comonoform(ring, ideal),
                "completely_prime": proper and is_completely_prime(ring, ideal),
            }
        )
    covers = [[i, j] for i, j in covering_pairs(lattice)]
    return {"count": len(lattice), "ideals": rows, "covers": covers}


def ideals_graph(payload: Payload) -> Graph:
    """Build the right ideal lattice graph."""
    nodes = [{"id": str(row["index"]), "label": "{" + ",".join(map(str, row["ids"])) + "}"} for row in payload["ideals"]]
    return Graph(name="right_ideals", nodes=nodes, edges=payload["covers"])


def register(subparsers) -> None:
    """Register the ring verbs."""
    parser = add_command(subparsers, "validate", validate, "validate a ring and optionally a module over it")
    parser.add_argument("--module", default=None, help="module spec to validate as well")
    add_command(subparsers, "ideals", ideals, "list the right ideals with their flags", graph=ideals_graph)
