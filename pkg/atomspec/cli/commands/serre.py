"""Serre verb."""

from atomspec.cli.router import CommandContext, Graph, Payload, add_command
from atomspec.services.serre_service import enumerate_serre
from atomspec.utils.bitset import ids_of


def serre(ctx: CommandContext) -> Payload:
    """List the Serre subcategories with their generators and covers."""
    lattice = enumerate_serre(ctx.spectrum)
    nodes = [
        {
            "index": i,
            "name": lattice.name(i),
            "atoms": node.open_set.atom_ids,
            "generators": [ids_of(q) for q in lattice.generators[i]],
        }
        for i, node in enumerate(lattice.nodes)
    ]
    return {"count": len(nodes), "subcategories": nodes, "covers": [list(c) for c in lattice.covers]}


def serre_graph(payload: Payload) -> Graph:
    """Build the Serre lattice graph."""
    nodes = [{"id": str(node["index"]), "label": node["name"]} for node in payload["subcategories"]]
    return Graph(name="serre", nodes=nodes, edges=payload["covers"])


def register(subparsers) -> None:
    """Register the serre verb."""
    add_command(subparsers, "serre", serre, "Serre subcategories and their inclusion diagram", graph=serre_graph)
