"""Spectrum verbs: spectrum, support and ass."""

from atomspec.cli.router import CommandContext, Payload, add_command
from atomspec.services import spectrum_service as sp
from atomspec.utils.bitset import ids_of, lex_key


def spectrum(ctx: CommandContext) -> Payload:
    """Report the atoms, comonoform ideals and open sets."""
    spec = ctx.spectrum
    atoms = [
        {
            "id": atom.id,
            "canonical_rep": ids_of(atom.canonical_rep),
            "members": [ids_of(m) for m in atom.members],
            "support": ids_of(spec.support_cache[atom.canonical_rep]),
        }
        for atom in spec.atoms
    ]
    opens = sp.enumerate_open_sets(spec)
    return {
        "atoms": atoms,
        "comonoform_ideals": [ids_of(i) for i in sorted(spec.atom_of, key=lex_key)],
        "open_sets": [o.atom_ids for o in opens],
        "discrete": len(opens) == 1 << spec.size,
        "simple_classes": sp.simple_class_count(spec),
    }


def support(ctx: CommandContext) -> Payload:
    """Report the atom support of a module."""
    module = ctx.module
    return {
        "module": module.provenance,
        "order": module.order,
        "atoms": ids_of(sp.atom_support(ctx.spectrum, module)),
    }


def ass(ctx: CommandContext) -> Payload:
    """Report the associated atoms of a module."""
    module = ctx.module
    return {
        "module": module.provenance,
        "order": module.order,
        "atoms": ids_of(sp.associated_atoms(ctx.spectrum, module)),
    }


def register(subparsers) -> None:
    """Register the spectrum verbs."""
    add_command(subparsers, "spectrum", spectrum, "atoms, comonoform ideals and open sets")
    add_command(subparsers, "support", support, "atom support of a module", module=True)
    add_command(subparsers, "ass", ass, "associated atoms of a module", module=True)
