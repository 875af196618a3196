"""Check verb."""

from atomspec.cli.router import CommandContext, Payload, add_command
from atomspec.services.check_service import check_suite, completely_prime_not_comonoform
from atomspec.utils.bitset import ids_of


def check(ctx: CommandContext) -> Payload:
    """Run the property battery and report each result."""
    results = check_suite(ctx.ring, seed=ctx.args.seed)
    failed = [r.name for r in results if not r.passed]
    ctx.warnings.extend(f"skipped: {r.name}" for r in results if r.skipped)
    if failed:
        ctx.failure = f"{len(failed)} properties failed"
    return {
        "passed": not failed,
        "failed": failed,
        "atoms": ctx.spectrum.size,
        "properties": [r.model_dump() for r in results],
        "completely_prime_not_comonoform": [ids_of(i) for i in completely_prime_not_comonoform(ctx.ring)],
    }


def register(subparsers) -> None:
    """Register the check verb."""
    parser = add_command(subparsers, "check", check, "run the property battery")
    parser.add_argument("--seed", type=int, default=None, help="seed for sampled properties")
