"""
msr command-line entry point

Usage:
    msr decompose --coeffs "0,0,1"
    msr geodesic --dim 3 --theta pi/3 --samples 401 -o tracks.json
    msr npc --kind example --theta pi/3 --chi pi/3 -o npc.json
    msr verify npc.json --triples 10000 --seed 7
    msr render tracks.json -o tracks.svg --view 1,0.6,0.4

Exit codes: 0 success or verification pass, 1 verification failure, 2 bad input.
"""

import argparse
import csv
import logging
import sys
from typing import Optional, Sequence

from src.cli.commands import (
    EXIT_INPUT,
    cmd_decompose,
    cmd_geodesic,
    cmd_npc,
    cmd_render,
    cmd_verify,
)
from src.config.settings import get_settings
from src.utils.serialization import parse_angle, parse_vector

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _angle(text: str) -> float:
    try:
        return parse_angle(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _vector(text: str) -> tuple[float, float, float]:
    try:
        return parse_vector(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "-o", "--output", default=None, help="output file (default: standard output)"
    )


def _add_sampling(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--samples", type=int, default=None, help="number of samples (default: MSR_SAMPLES)"
    )


def _add_verification(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--triples",
        type=int,
        default=None,
        help="random sample triples to check (default: MSR_VERIFY_TRIPLES)",
    )
    parser.add_argument(
        "--seed", type=int, default=None, help="random seed (default: MSR_SEED)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="msr",
        description="Majorana star tracks of geodesics and null phase curves",
    )
    parser.add_argument(
        "--log-level",
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="logging level (default: MSR_LOG_LEVEL)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    decompose = commands.add_parser("decompose", help="Majorana constellation of a state")
    decompose.add_argument("state_file", nargs="?", default=None, help="state JSON file")
    decompose.add_argument("--coeffs", default=None, help='amplitudes such as "0.6,0.8j,0"')
    decompose.add_argument(
        "--normalize", action="store_true", help="normalize --coeffs before decomposing"
    )
    _add_output(decompose)
    decompose.set_defaults(handler=cmd_decompose)

    geodesic = commands.add_parser("geodesic", help="star tracks of a geodesic")
    geodesic.add_argument("--dim", type=int, default=3, help="state dimension n (default 3)")
    geodesic.add_argument(
        "--theta", type=_angle, default=None, help="end-state angle in radians, e.g. pi/3"
    )
    geodesic.add_argument(
        "--end-states", default=None, help='JSON file {"psi1": state, "psi2": state}'
    )
    _add_sampling(geodesic)
    _add_output(geodesic)
    geodesic.set_defaults(handler=cmd_geodesic)

    npc = commands.add_parser("npc", help="build and verify a null phase curve")
    npc.add_argument(
        "--kind", choices=["dual", "selfdual", "example", "nd"], default="example"
    )
    npc.add_argument("--theta", type=_angle, required=True, help="end-state angle in radians")
    npc.add_argument("--chi", type=_angle, default=0.0, help="third-component phase (example)")
    npc.add_argument("--g", default=None, help="CSV file with header s,g (example)")
    npc.add_argument("--profile", default=None, help="profile JSON file (dual, selfdual)")
    npc.add_argument("--dim", type=int, default=None, help="state dimension (nd)")
    _add_sampling(npc)
    _add_verification(npc)
    _add_output(npc)
    npc.set_defaults(handler=cmd_npc)

    verify = commands.add_parser("verify", help="null-phase check of a sampled curve")
    verify.add_argument("curve_file", help="curve JSON file, bare or under a 'curve' key")
    _add_verification(verify)
    _add_output(verify)
    verify.set_defaults(handler=cmd_verify)

    render = commands.add_parser("render", help="SVG figure of a track file")
    render.add_argument("track_file", help="track JSON written by geodesic or npc")
    render.add_argument("--view", type=_vector, default=None, help="view direction x,y,z")
    render.add_argument("--size", type=int, default=None, help="width and height in pixels")
    render.add_argument("--title", default=None, help="caption drawn in the top-left corner")
    render.add_argument("--no-sphere", action="store_true", help="omit the sphere outline")
    _add_output(render)
    render.set_defaults(handler=cmd_render)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one msr command

    Args:
        argv: Command-line arguments without the program name (default: sys.argv[1:])

    Returns:
        Process exit code
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    logging.basicConfig(
        level=args.log_level or settings.log_level.upper(),
        format=LOG_FORMAT,
        stream=sys.stderr,
    )

    if args.command == "geodesic" and args.end_states is None and args.theta is None:
        parser.error("geodesic needs --theta or --end-states")

    try:
        return args.handler(args, settings)
    except (ValueError, KeyError, OSError, csv.Error) as e:
        logger.error(f"msr {args.command} failed: {e}", exc_info=True)
        print(f"msr {args.command}: error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
