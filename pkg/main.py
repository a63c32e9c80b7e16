import argparse
import asyncio
import logging
import sys
from pathlib import Path

from dotenv import load_dotenv
from opentelemetry import trace

from reporting.emit import OutputFormat, emit
from reporting.models import VerificationReport
from settings import ConfigurationError, SuiteConfig, load_config
from suite_selection_strategy import SuiteSelectionStrategy
from suites.custom_suite_base import Suites
from telemetry import configure_telemetry
from verdict_strategy import ExitStatus, VerdictStrategy

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="main.py",
        description="Verify the operator algebra of massless spin-1/2 equations and write a report.",
    )
    parser.add_argument("--config", type=Path, help="flat KEY=value config file")
    parser.add_argument(
        "--suite",
        action="append",
        dest="suites",
        metavar="NAME",
        help=f"suite to run, repeatable (default: all of {', '.join(s.value for s in Suites)})",
    )
    parser.add_argument("--seed", type=int)
    parser.add_argument("--samples", type=int, help="momenta per sweep")
    parser.add_argument("--tol-exact", type=float, help="tolerance for algebraic identities")
    parser.add_argument("--tol-fd", type=float, help="tolerance for finite-difference and subspace checks")
    parser.add_argument("--fd-step", type=float, help="relative finite-difference step")
    parser.add_argument("--out", type=Path, help="report directory")
    parser.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat])
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    return parser


def config_from_args(args: argparse.Namespace) -> SuiteConfig:
    overrides = {
        "seed": args.seed,
        "samples": args.samples,
        "tol_exact": args.tol_exact,
        "tol_fd": args.tol_fd,
        "fd_step": args.fd_step,
        "suites": args.suites,
        "output_format": args.output_format,
        "out": args.out,
    }
    return load_config(args.config, overrides)


async def run(config: SuiteConfig) -> list[VerificationReport]:
    """Run the selected suites concurrently; reports come back in canonical suite order."""
    suites = SuiteSelectionStrategy(config).select()
    return list(await asyncio.gather(*(asyncio.to_thread(suite.run) for suite in suites)))


async def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(levelname)s %(name)s: %(message)s")
    load_dotenv()
    configure_telemetry()

    try:
        config = config_from_args(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return ExitStatus.CONFIGURATION

    tracer = trace.get_tracer(__name__)
    with tracer.start_as_current_span("verify") as span:
        span.set_attribute("verify.seed", config.seed)
        span.set_attribute("verify.suites", ",".join(config.suites))
        reports = await run(config)
        try:
            emit(reports, config.output_format, config.out, config.echo())
        except OSError as exc:
            print(f"report error: {exc}", file=sys.stderr)
            span.set_attribute("verify.exit_status", int(ExitStatus.OUTPUT))
            return ExitStatus.OUTPUT

        verdict = VerdictStrategy()
        for line in verdict.summary_lines(reports):
            print(line)
        status = verdict.decide(reports)
        span.set_attribute("verify.exit_status", int(status))
    return status


if __name__ == "__main__":
    sys.exit(int(asyncio.run(main())))
