"""Module verbs: monoform and filtration."""

from atomspec.cli.router import CommandContext, Payload, add_command
from atomspec.services import module_service as ms
from atomspec.services import monoform_service as mf
from atomspec.utils.bitset import ids_of


def monoform(ctx: CommandContext) -> Payload:
    """Report monoform and uniform flags of a module."""
    module = ctx.module
    uniform = ms.is_uniform(module)
    payload: Payload = {
        "module": module.provenance,
        "order": module.order,
        "monoform": mf.is_monoform(module),
        "uniform": uniform,
        "socle_criterion": mf.monoform_oracle_artinian(module),
        "max_monoform_submodule": ids_of(mf.max_monoform_submodule(module).members) if uniform else None,
    }
    return payload


def filtration(ctx: CommandContext) -> Payload:
    """Report the monoform filtration of a module."""
    module = ctx.module
    result = mf.monoform_filtration(module)
    atom_of = ctx.spectrum.atom_of
    return {
        "module": module.provenance,
        "length": result.length,
        "chain": [s.ids for s in result.chain],
        "labels": [ids_of(p) for p in result.labels],
        "label_atoms": [atom_of[p] for p in result.labels],
        "problems": mf.verify_filtration(result),
    }


def register(subparsers) -> None:
    """Register the module verbs."""
    add_command(subparsers, "monoform", monoform, "decide whether a module is monoform", module=True)
    add_command(subparsers, "filtration", filtration, "monoform filtration with comonoform labels", module=True)
