"""Command-line front end.

Usage::

    nodescatter scatter --l1 0 --l2 1 --a1 0 --a2 6.283185307 --n 1000 --seed 7 --out nodes.csv
    nodescatter csa layout.json --seed 3 --out cell.csv
    nodescatter pl-pdf --l1 1 --l2 100 --sigma-psi-db 8 --points 200 --out pl.csv
    nodescatter pl-hist --l1 10 --l2 1000 --n 1000000 --bins 60 --out hist.csv
    nodescatter verify

Exit codes: 0 success, 1 usage or validation error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import pathloss
from .csa import LayoutError, run_csa
from .layout_file import LayoutFileError, demo_layout_path, load_layout
from .node_sampler import RandomStream, sample_batch
from .output import FORMATS, write_table
from .pathloss import PathLossError, PathLossParams
from .sector_geometry import InvalidRegionError, SectorAnnulus

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAILED = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _count(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _output_args(p: argparse.ArgumentParser, seeded: bool = True) -> None:
    if seeded:
        p.add_argument("--seed", type=_seed, default=0, help="64-bit seed (default 0)")
    p.add_argument("--out", default="-", help="output file, '-' for stdout (default)")
    p.add_argument("--format", choices=FORMATS, default="csv")


def _region_args(p: argparse.ArgumentParser, angles: bool = True) -> None:
    p.add_argument("--l1", type=float, required=True, help="inner radius (m)")
    p.add_argument("--l2", type=float, required=True, help="outer radius (m)")
    if angles:
        p.add_argument("--a1", type=float, default=0.0, help="lower angle (rad)")
        p.add_argument("--a2", type=float, default=2 * math.pi, help="upper angle (rad)")
        p.add_argument("--degrees", action="store_true", help="read --a1/--a2 in degrees")


def _pathloss_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--r0", type=float, default=pathloss.DEFAULT_R0, help="close-in distance (m)")
    p.add_argument("--alpha", type=float, default=pathloss.DEFAULT_ALPHA, help="intercept (dB)")
    p.add_argument("--beta", type=float, default=pathloss.DEFAULT_BETA, help="slope (dB/decade)")
    p.add_argument("--sigma-psi-db", type=float, default=pathloss.DEFAULT_SIGMA_PSI_DB,
                   help="shadowing standard deviation (dB)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nodescatter", description="Exact random node placement in circular-sector annuli.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("scatter", help="uniform nodes in one sector annulus")
    _region_args(p)
    p.add_argument("--n", type=_count, required=True)
    _output_args(p)

    p = sub.add_parser("csa", help="layered, sectored cell scattering from a JSON layout")
    p.add_argument("layout", nargs="?", help=f"layout JSON file (default: shipped demo, {demo_layout_path().name})")
    p.add_argument("--workers", type=int, default=1, help="threads for per-sector generation")
    _output_args(p)

    p = sub.add_parser("pl-pdf", help="path-loss density: closed form and quadrature on a grid")
    _region_args(p, angles=False)
    _pathloss_args(p)
    p.add_argument("--lo", type=float, help="grid start (dB); default w1 - 8 sigma")
    p.add_argument("--hi", type=float, help="grid end (dB); default w2 + 8 sigma")
    p.add_argument("--points", type=int, default=200)
    _output_args(p, seeded=False)

    p = sub.add_parser("pl-hist", help="simulated path-loss histogram next to the closed form")
    _region_args(p)
    _pathloss_args(p)
    p.add_argument("--n", type=_count, default=1_000_000)
    p.add_argument("--bins", type=int, default=60)
    _output_args(p)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--seed", type=_seed, default=None)
    return parser


def _region(args) -> SectorAnnulus:
    a1, a2 = args.a1, args.a2
    if args.degrees:
        a1, a2 = math.radians(a1), math.radians(a2)
    return SectorAnnulus(args.l1, args.l2, a1, a2)


def _params(args) -> PathLossParams:
    return PathLossParams(args.l1, args.l2, args.r0, args.alpha, args.beta, args.sigma_psi_db)


def cmd_scatter(args) -> int:
    batch = sample_batch(_region(args), args.n, RandomStream(args.seed))
    write_table({"x": batch.x, "y": batch.y, "r": batch.r, "theta": batch.theta}, args.out, args.format)
    return EXIT_OK


def cmd_csa(args) -> int:
    layout = load_layout(args.layout or demo_layout_path())
    result = run_csa(layout, RandomStream(args.seed), workers=args.workers)
    columns = {"layer": result.layer, "sector": result.sector, "x": result.x, "y": result.y,
               "r": result.r, "theta": result.theta}
    write_table(columns, args.out, args.format)
    return EXIT_OK


def cmd_pl_pdf(args) -> int:
    params = _params(args)
    if args.points < 2:
        raise UsageError("pl-pdf: --points must be >= 2")
    lo, hi = params.support(8.0)
    lo = lo if args.lo is None else args.lo
    hi = hi if args.hi is None else args.hi
    if not lo < hi:
        raise UsageError(f"pl-pdf: grid needs lo < hi, got [{lo}, {hi}]")
    grid = np.linspace(lo, hi, args.points)
    closed = pathloss.pl_pdf_closed_form(params, grid)
    if params.sigma_psi == 0:
        print("notice: sigma_psi = 0, writing the unshadowed density in both columns", file=sys.stderr)
        numeric = closed
    else:
        numeric = pathloss.pl_pdf_numeric(params, grid)
    write_table({"l_dB": grid, "f_closed_form": closed, "f_numeric": numeric}, args.out, args.format)
    return EXIT_OK


def cmd_pl_hist(args) -> int:
    region = _region(args)
    params = _params(args)
    if args.bins < 1:
        raise UsageError("pl-hist: --bins must be >= 1")
    hist = pathloss.pl_histogram(params, region, args.n, args.bins, RandomStream(args.seed))
    columns = {"l_dB": hist.centers, "density": hist.density,
               "f_closed_form": pathloss.pl_pdf_closed_form(params, hist.centers)}
    write_table(columns, args.out, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import DEFAULT_SEED, run_all

    results = run_all(DEFAULT_SEED if args.seed is None else args.seed)
    for res in results:
        print(res.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY_FAILED


COMMANDS = {
    "scatter": cmd_scatter,
    "csa": cmd_csa,
    "pl-pdf": cmd_pl_pdf,
    "pl-hist": cmd_pl_hist,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as err:
        print(err, file=sys.stderr)
        return EXIT_USAGE
    except (InvalidRegionError, PathLossError, LayoutFileError, LayoutError, ValueError) as err:
        print(f"nodescatter: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
