"""Command-line router."""

import argparse
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, List, NoReturn, Optional

from atomspec import __version__
from atomspec.cli.module_spec import parse_module_spec
from atomspec.models.module import RightModule
from atomspec.models.ring import FiniteRing
from atomspec.services.spectrum_service import AtomSpectrum, atom_spectrum

Payload = Dict[str, Any]
Handler = Callable[["CommandContext"], Payload]
GraphBuilder = Callable[[Payload], "Graph"]


class UsageError(Exception):
    """Bad command line."""


class Parser(argparse.ArgumentParser):
    """Argument parser that raises instead of exiting on bad usage."""

    def error(self, message: str) -> NoReturn:
        """Raise instead of printing usage and exiting."""
        raise UsageError(message)


@dataclass
class Graph:
    """Nodes and covering edges for graph output."""

    name: str
    nodes: List[Dict[str, str]]
    edges: List[List[int]]


@dataclass
class CommandContext:
    """One parsed invocation with the ring already loaded."""

    args: argparse.Namespace
    ring: FiniteRing
    warnings: List[str] = field(default_factory=list)
    failure: Optional[str] = None

    @cached_property
    def spectrum(self) -> AtomSpectrum:
        """Get the atom spectrum of the ring."""
        return atom_spectrum(self.ring)

    @cached_property
    def module(self) -> RightModule:
        """Get the module named by --module."""
        return parse_module_spec(self.ring, self.args.module)


def _positive(text: str) -> int:
    """Parse a positive integer argument."""
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} is not positive")
    return value


def _common() -> argparse.ArgumentParser:
    """Build the options shared by every verb."""
    common = Parser(add_help=False)
    common.add_argument("--ring", required=True, help="builtin spec (zmod:n, tri2:p, mat:k:p, prod:a,b) or ring file")
    common.add_argument("--format", choices=("text", "json", "graph"), default="text")
    common.add_argument("--max-order", type=_positive)
    common.add_argument("--max-lattice", type=_positive)
    common.add_argument("--max-atoms", type=_positive)
    common.add_argument("--log-level", default=None, help="log level for stderr output")
    common.add_argument("--timing", action="store_true", help="include elapsed time in the report")
    return common


def add_command(
    subparsers: argparse._SubParsersAction,
    verb: str,
    handler: Handler,
    help: str,
    module: bool = False,
    graph: Optional[GraphBuilder] = None,
) -> argparse.ArgumentParser:
    """Register one verb; ``module`` adds the ``--module`` option."""
    parser = subparsers.add_parser(verb, help=help, description=help, parents=[_common()])
    if module:
        parser.add_argument("--module", default="regular", help="module spec (default: regular)")
    parser.set_defaults(handler=handler, graph=graph, verb=verb)
    return parser


def build_parser() -> argparse.ArgumentParser:
    """Parser with every verb registered."""
    from atomspec.cli.commands import check, modules, rings, serre, spectrum

    parser = Parser(prog="atomspec", description="Atom spectra and Serre subcategories of finite rings.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="verb", required=True, parser_class=Parser)
    for group in (rings, spectrum, modules, serre, check):
        group.register(subparsers)
    return parser
