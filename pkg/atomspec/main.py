"""Command-line entry point."""

import io
import sys
import time
from typing import List, Optional, Sequence, Tuple

from rich.console import Console

from atomspec.cli.render import render_dot, render_json, render_text
from atomspec.cli.router import CommandContext, UsageError, build_parser
from atomspec.core.config import override_caps
from atomspec.core.errors import AtomSpecError
from atomspec.core.logging import get_logger, setup_logging
from atomspec.schemas.common import ErrorDetail, Report, RingFingerprint
from atomspec.services.ring_service import load_ring

logger = get_logger(__name__)


def _usage_report(verb: str, message: str) -> Report:
    """Build the report for a usage error."""
    return Report(
        success=False,
        message=message,
        verb=verb,
        error=ErrorDetail(code="usage", message=message),
    )


def execute(argv: Sequence[str]) -> Tuple[int, Report, Optional[CommandContext]]:
    """Parse, run one verb and build its report.

    Exit status is 0 on success, 1 on domain errors or failing checks and 2 on
    usage errors. A failed report never carries a partial payload, except that
    a failing property battery keeps its full result list.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except UsageError as e:
        return 2, _usage_report(argv[0] if argv else "", str(e)), None

    setup_logging(level=args.log_level)
    if args.format == "graph" and args.graph is None:
        return 2, _usage_report(args.verb, f"graph output is not available for {args.verb}"), None

    started = time.perf_counter()
    ctx: Optional[CommandContext] = None
    try:
        with override_caps(max_order=args.max_order, max_lattice=args.max_lattice, max_atoms=args.max_atoms):
            ring = load_ring(args.ring)
            ctx = CommandContext(args=args, ring=ring)
            payload = args.handler(ctx)
    except AtomSpecError as e:
        logger.info("Command failed", verb=args.verb, code=e.code, error=e.message)
        fingerprint = None if ctx is None else RingFingerprint(
            order=ctx.ring.order, sha256=ctx.ring.fingerprint, label=ctx.ring.label
        )
        report = Report(
            success=False,
            message=e.message,
            verb=args.verb,
            ring=fingerprint,
            error=ErrorDetail(code=e.code, message=e.message, detail=e.detail),
        )
        return 1, report, None

    elapsed = round((time.perf_counter() - started) * 1000, 1)
    logger.info("Command finished", verb=args.verb, elapsed_ms=elapsed)
    report = Report(
        success=ctx.failure is None,
        message=ctx.failure or "Success",
        verb=args.verb,
        ring=RingFingerprint(order=ring.order, sha256=ring.fingerprint, label=ring.label),
        data=payload,
        warnings=ctx.warnings,
        timing_ms=elapsed if args.timing else None,
    )
    return (0 if ctx.failure is None else 1), report, ctx


def run(argv: Sequence[str]) -> Tuple[int, Report]:
    """Exit status and report for one invocation."""
    status, report, _ = execute(argv)
    return status, report


def render(report: Report, ctx: Optional[CommandContext], fmt: str) -> str:
    """Render a report in the requested format."""
    if fmt == "json":
        return render_json(report)
    if fmt == "graph" and ctx is not None and report.data is not None:
        return render_dot(ctx.args.graph(report.data))
    console = Console(record=True, width=120, file=io.StringIO())
    render_text(report, console)
    return console.export_text()


def _format_of(argv: List[str]) -> str:
    """Find the output format in raw arguments."""
    for i, token in enumerate(argv):
        if token == "--format" and i + 1 < len(argv):
            return argv[i + 1]
        if token.startswith("--format="):
            return token.split("=", 1)[1]
    return "text"


def main() -> None:
    """Entry point for the ``atomspec`` script."""
    argv = sys.argv[1:]
    status, report, ctx = execute(argv)
    fmt = _format_of(argv)
    output = render(report, ctx, fmt if fmt in ("text", "json", "graph") else "text")
    stream = sys.stdout if status == 0 or fmt == "json" else sys.stderr
    stream.write(output)
    sys.exit(status)


if __name__ == "__main__":
    main()
