"""Acceptance checks for the samplers and densities.

Each check returns a :class:`CheckResult` carrying the observed statistic, the
threshold it is compared against and the wall-clock time.  ``nodescatter
verify`` and ``tests/test_acceptance.py`` both run :func:`run_all`.
"""

from __future__ import annotations

import math
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .csa import CellLayout, LayerSpec, run_csa
from .node_sampler import RandomStream, inverse_radius, sample_batch
from .pathloss import PathLossParams, pl_histogram, pl_pdf_closed_form, pl_pdf_numeric
from .sector_geometry import TWO_PI, SectorAnnulus, contains, radial_cdf
from .statistics import chi_square_uniform, integrate, ks_test

DEFAULT_SEED = 20240611

# Parameter sets for the analytic checks; the first two have l1 = 0.
PARAM_SETS = (
    PathLossParams(0.0, 1000.0, r0=1.0, alpha=30.0, beta=35.0, sigma_psi=8.0),
    PathLossParams(0.0, 50.0, r0=2.0, alpha=40.0, beta=20.0, sigma_psi=3.0),
    PathLossParams(1.0, 100.0, r0=1.0, alpha=30.0, beta=35.0, sigma_psi=8.0),
    PathLossParams(200.0, 1000.0, r0=1.0, alpha=30.0, beta=35.0, sigma_psi=8.0),
    PathLossParams(10.0, 5000.0, r0=1.0, alpha=20.0, beta=40.0, sigma_psi=12.0),
    PathLossParams(5.0, 6.0, r0=0.5, alpha=45.0, beta=30.0, sigma_psi=0.5),
)

RING = SectorAnnulus(200.0, 1000.0, 0.0, TWO_PI)
MC_REGION = SectorAnnulus(10.0, 1000.0, 0.0, TWO_PI)


@dataclass(frozen=True)
class CheckResult:
    name: str
    statistic: float
    threshold: float
    passed: bool
    seconds: float = 0.0
    time_limit: float | None = None
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        timing = f"{self.seconds:6.2f}s" + (f" (<{self.time_limit:g}s)" if self.time_limit else "")
        text = f"[{status}] {self.name}: statistic={self.statistic:.6g} threshold={self.threshold:.6g} time={timing}"
        return text + (f"  {self.detail}" if self.detail else "")


def check_inverse_transform(seed: int = DEFAULT_SEED, n: int = 1_000_000) -> list[CheckResult]:
    """KS of radii against the radial CDF and chi-square of angles over 32 bins."""
    start = time.perf_counter()
    batch = sample_batch(RING, n, RandomStream(seed))
    ks = ks_test(batch.r, lambda r: radial_cdf(RING, r), alpha=0.01)
    chi = chi_square_uniform(batch.theta, RING.a1, RING.a2, 32, alpha=0.01)
    elapsed = time.perf_counter() - start
    ok_time = elapsed < 5.0
    return [
        CheckResult("inverse-transform KS (radius)", ks.statistic, ks.critical_value,
                    ks.passed and ok_time, elapsed, 5.0, f"n={n}"),
        CheckResult("inverse-transform chi2 (angle, 32 bins)", chi.statistic, chi.critical_value,
                    chi.passed and ok_time, elapsed, 5.0, "0.99 quantile of chi2(31)"),
    ]


def check_round_trip(seed: int = DEFAULT_SEED, regions: int = 10, points: int = 10_000) -> CheckResult:
    """``radial_cdf(inverse_radius(u)) == u`` on a grid, absolute error."""
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    u = np.linspace(0.0, 1.0, points)
    worst = 0.0
    for _ in range(regions):
        l1 = float(rng.uniform(0.0, 500.0))
        l2 = l1 + float(rng.uniform(1.0, 2000.0))
        a1 = float(rng.uniform(0.0, math.pi))
        region = SectorAnnulus(l1, l2, a1, float(rng.uniform(a1 + 1e-3, TWO_PI)))
        worst = max(worst, float(np.max(np.abs(radial_cdf(region, inverse_radius(region, u)) - u))))
    elapsed = time.perf_counter() - start
    return CheckResult("round trip cdf(inverse(u)) = u", worst, 1e-12, worst < 1e-12 and elapsed < 1.0,
                       elapsed, 1.0, f"{regions} regions x {points} u")


def check_oracle_agreement(points: int = 200) -> CheckResult:
    """Closed-form path-loss density against the quadrature of the convolution."""
    start = time.perf_counter()
    worst = 0.0
    for params in PARAM_SETS:
        grid = np.linspace(*params.support(4.0), points)
        worst = max(worst, float(np.max(np.abs(pl_pdf_closed_form(params, grid) - pl_pdf_numeric(params, grid)))))
    elapsed = time.perf_counter() - start
    return CheckResult("closed form vs convolution quadrature", worst, 1e-8, worst < 1e-8 and elapsed < 30.0,
                       elapsed, 30.0, f"{len(PARAM_SETS)} parameter sets x {points} points")


def check_normalization() -> CheckResult:
    start = time.perf_counter()
    worst = 0.0
    for params in PARAM_SETS:
        lo, hi = params.support(8.0)
        total = integrate(lambda l, p=params: pl_pdf_closed_form(p, l), lo, hi, abs_tol=1e-10,
                          breakpoints=(params.w1, params.w2))
        worst = max(worst, abs(total - 1.0))
    return CheckResult("path-loss density integrates to 1", worst, 1e-6, worst < 1e-6,
                       time.perf_counter() - start, None, f"{len(PARAM_SETS)} parameter sets")


def check_monte_carlo_pathloss(seed: int = DEFAULT_SEED, n: int = 1_000_000, bins: int = 60) -> CheckResult:
    """Histogram of simulated path losses against the closed form, 4 binomial sigmas per bin."""
    start = time.perf_counter()
    params = PathLossParams.for_region(MC_REGION)
    hist = pl_histogram(params, MC_REGION, n, bins, RandomStream(seed))
    width = hist.widths
    expected = pl_pdf_closed_form(params, hist.centers)
    p = expected * width
    sd = np.sqrt(p * (1.0 - p) / n) / width
    tested = expected > 1e-3
    good = ~tested | (np.abs(hist.density - expected) <= 4.0 * sd)
    passing = int(np.sum(good))
    elapsed = time.perf_counter() - start
    return CheckResult("Monte Carlo path-loss histogram (bins passing)", passing, bins - 2,
                       passing >= bins - 2 and elapsed < 10.0, elapsed, 10.0,
                       f"n={n}, {int(tested.sum())} bins tested, need >= {bins - 2}/{bins}")


def demo_geometry_layout(count: int) -> CellLayout:
    """Three layers, seven sectors, ``count`` nodes in every sector."""
    return CellLayout((
        LayerSpec.from_angles(0.0, 200.0, [(0.0, TWO_PI, count)]),
        LayerSpec.from_angles(200.0, 500.0, [(0.0, math.pi, count), (math.pi, TWO_PI, count)]),
        LayerSpec.from_angles(500.0, 1000.0, [(k * math.pi / 2, (k + 1) * math.pi / 2, count) for k in range(4)]),
    ))


def check_csa(seed: int = DEFAULT_SEED, per_sector: int = 100_000) -> list[CheckResult]:
    start = time.perf_counter()
    layout = demo_geometry_layout(per_sector)
    result = run_csa(layout, RandomStream(seed))
    specs = [spec for _, _, spec in layout.iter_sectors()]

    count_errors = sum(abs(len(b) - s.count) for b, s in zip(result.per_sector, specs))
    count_errors += abs(len(result) - layout.node_total)
    outside = sum(int(np.sum(~contains(s.region, b.r, b.theta))) for b, s in zip(result.per_sector, specs))
    tagged_outside = sum(
        int(np.sum(~contains(s.region, result.r[result.sector_index == m], result.theta[result.sector_index == m])))
        for m, s in enumerate(specs)
    )
    ks = [ks_test(b.r, lambda r, reg=s.region: radial_cdf(reg, r)) for b, s in zip(result.per_sector, specs)]
    worst_ks = max(k.statistic / k.critical_value for k in ks)

    halves = CellLayout((LayerSpec.from_angles(0.0, 1000.0, [(0.0, math.pi, 75_000), (math.pi, TWO_PI, 25_000)]),))
    mix = run_csa(halves, RandomStream(seed).substream(1000))
    upper = int(np.sum(mix.theta <= math.pi))
    ratio = upper / (len(mix) - upper)
    elapsed = time.perf_counter() - start
    return [
        CheckResult("CSA per-sector counts exact (total mismatch)", count_errors, 0, count_errors == 0, elapsed),
        CheckResult("CSA points inside their sectors (outside count)", outside + tagged_outside, 0,
                    outside + tagged_outside == 0, elapsed),
        CheckResult("CSA per-sector KS (max statistic / critical)", worst_ks, 1.0,
                    all(k.passed for k in ks), elapsed, None, f"{len(ks)} sectors x {per_sector}"),
        CheckResult("CSA half-disc occupancy ratio |ratio - 3|", abs(ratio - 3.0), 0.05,
                    abs(ratio - 3.0) <= 0.05, elapsed, None, f"ratio={ratio:.4f}"),
    ]


def check_determinism(seed: int = DEFAULT_SEED) -> CheckResult:
    """Every CLI subcommand twice with the same seed; outputs must be byte-identical."""
    from . import cli
    from .layout_file import demo_layout_path

    start = time.perf_counter()
    seed_args = ["--seed", str(seed)]
    commands = {
        "scatter.csv": ["scatter", "--l1", "0", "--l2", "1", "--a1", "0", "--a2", "6.283185307", "--n", "1000",
                        *seed_args],
        "scatter.json": ["scatter", "--l1", "3", "--l2", "5", "--a1", "0.5", "--a2", "2", "--n", "200",
                         "--format", "json", *seed_args],
        "csa.csv": ["csa", str(demo_layout_path()), *seed_args],
        "pl.csv": ["pl-pdf", "--l1", "1", "--l2", "100", "--points", "50"],
        "plhist.csv": ["pl-hist", "--l1", "10", "--l2", "1000", "--n", "20000", "--bins", "30", *seed_args],
    }
    mismatched = []
    with tempfile.TemporaryDirectory() as tmp:
        for name, args in commands.items():
            blobs = []
            for run in range(2):
                out = Path(tmp) / f"{run}-{name}"
                code = cli.main([*args, "--out", str(out)])
                blobs.append(out.read_bytes() if code == 0 and out.exists() else None)
            if blobs[0] is None or blobs[0] != blobs[1]:
                mismatched.append(name)
    return CheckResult("CLI outputs byte-identical across runs (mismatches)", len(mismatched), 0, not mismatched,
                       time.perf_counter() - start, None, ", ".join(mismatched) or f"{len(commands)} commands")


def check_mean_square_radius(seed: int = DEFAULT_SEED, n: int = 1_000_000) -> CheckResult:
    """Sample mean of r^2 against (l1^2 + l2^2) / 2, in standard errors."""
    start = time.perf_counter()
    batch = sample_batch(RING, n, RandomStream(seed).substream(7))
    r2 = batch.r**2
    target = 0.5 * (RING.l1**2 + RING.l2**2)
    error = abs(float(r2.mean()) - target)
    se = float(r2.std(ddof=1)) / math.sqrt(n)
    z = error / se if se > 0 else (0.0 if error == 0 else math.inf)
    return CheckResult("mean of r^2 (standard errors from target)", z, 3.0, z < 3.0,
                       time.perf_counter() - start, None, f"n={n}, target={target:g}")


def _guarded(name, check, *args) -> list[CheckResult]:
    """Run one check; an exception becomes a failed result instead of aborting the suite."""
    try:
        out = check(*args)
    except Exception as err:  # noqa: BLE001 - reported, not swallowed
        return [CheckResult(name, math.nan, math.nan, False, detail=f"raised {type(err).__name__}: {err}")]
    return out if isinstance(out, list) else [out]


def run_all(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    checks = [
        ("inverse-transform", check_inverse_transform, seed),
        ("round trip", check_round_trip, seed),
        ("closed form vs convolution quadrature", check_oracle_agreement),
        ("path-loss normalization", check_normalization),
        ("Monte Carlo path-loss histogram", check_monte_carlo_pathloss, seed),
        ("CSA", check_csa, seed),
        ("CLI determinism", check_determinism, seed),
        ("mean of r^2", check_mean_square_radius, seed),
    ]
    return [res for name, fn, *args in checks for res in _guarded(name, fn, *args)]
