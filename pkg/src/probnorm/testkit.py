"""Brute-force oracles and seeded random generators for the property suites.

The oracles evaluate step semantics by their own linear scan and dense grids;
they never call the exact code paths they are used to validate (the one
deliberate exception: the Levy oracle reuses the exact per-h feasibility
check and only replaces the continuum bisection with a fixed 1e-5 grid).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distfn import StepDF, levy_condition
from .pnspace import Band, NormKind, PNSpace, SeminormFamily, WeightedNorm
from .operators import LinearOperator
from .triangle import TNormKind


@dataclass(frozen=True)
class OracleConfig:
    grid_step: float = 1e-4
    domain_radius: float | None = None  # default: 1 + sum of extreme breakpoints
    seed: int = 0

    def __post_init__(self):
        if self.grid_step <= 0:
            raise ValueError("grid_step must be > 0")


def scan_eval(breakpoints, values, x: float) -> float:
    """Step evaluation by explicit linear scan (independent of df_eval)."""
    i = 0
    while i < len(breakpoints) and breakpoints[i] < x:
        i += 1
    return values[i]


def _scan_eval_many(F: StepDF, xs: np.ndarray) -> np.ndarray:
    counts = np.zeros(len(xs), dtype=int)
    for b in F.breakpoints:
        counts += b < xs
    return np.array(F.values)[counts]


def _s_grid(F: StepDF, G: StepDF, x: float, cfg: OracleConfig) -> np.ndarray:
    step = cfg.grid_step
    pts = [np.arange(-step, x + 2.0 * step, step)]
    for a in F.breakpoints:
        pts.append(np.array([a - step, a, a + step]))
    for b in G.breakpoints:
        pts.append(np.array([x - b - step, x - b, x - b + step]))
    return np.concatenate(pts)


def _oracle_conv(T: TNormKind, F: StepDF, G: StepDF, x: float, cfg, sup: bool) -> float:
    cfg = cfg or OracleConfig()
    s = _s_grid(F, G, x, cfg)
    fs = _scan_eval_many(F, s)
    gt = _scan_eval_many(G, x - s)
    # boundary arguments (0 and 1) are split off exactly, mirroring the
    # production t-norm conventions so grid and exact maxima share floats
    if T is TNormKind.W:
        if sup:
            vals = np.maximum(fs + gt - 1.0, 0.0)
            vals = np.where(fs == 1.0, gt, vals)
            vals = np.where(gt == 1.0, fs, vals)
        else:
            vals = np.minimum(fs + gt, 1.0)
    elif T is TNormKind.PROD:
        if sup:
            vals = fs * gt
        else:
            vals = fs + gt - fs * gt
            vals = np.where(fs == 0.0, gt, vals)
            vals = np.where(gt == 0.0, fs, vals)
            vals = np.where((fs == 1.0) | (gt == 1.0), 1.0, vals)
    else:
        vals = np.minimum(fs, gt) if sup else np.maximum(fs, gt)
    return float(vals.max() if sup else vals.min())


def oracle_sup_conv(T: TNormKind, F: StepDF, G: StepDF, x: float, cfg: OracleConfig | None = None) -> float:
    """Dense-grid sup of T(F(s), G(x-s)) with breakpoint neighborhoods included."""
    return _oracle_conv(T, F, G, x, cfg, sup=True)


def oracle_inf_conv(T: TNormKind, F: StepDF, G: StepDF, x: float, cfg: OracleConfig | None = None) -> float:
    """Dense-grid inf of T*(F(s), G(x-s))."""
    return _oracle_conv(T, F, G, x, cfg, sup=False)


LEVY_GRID = 1e-5


def oracle_levy(F: StepDF, G: StepDF, cfg: OracleConfig | None = None) -> float:
    """Smallest h on the 1e-5 grid over (0, 1] satisfying both exact conditions.

    Located by binary search over the grid, which is valid for the same
    monotonicity-in-h reason the production bisection is.
    """

    def ok(k: int) -> bool:
        h = min(k * LEVY_GRID, 1.0)
        return levy_condition(F, G, h) and levy_condition(G, F, h)

    lo, hi = 0, 100000  # h = hi * LEVY_GRID is 1.0, always feasible on Delta+
    if not ok(hi):
        raise AssertionError("Levy condition must hold at h = 1")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return min(hi * LEVY_GRID, 1.0)


# ---------------------------------------------------------------------------
# generators (deterministic per seed; outputs always satisfy type invariants)

BP_GRID = 0.01  # breakpoint lattice: keeps gaps >= 2 oracle grid steps
BP_SLOTS = 300  # breakpoints live in (0, 3]


def gen_stepdf(seed: int, max_breaks: int = 5, proper: bool = True) -> StepDF:
    rng = np.random.default_rng(seed)
    nb = int(rng.integers(1, max_breaks + 1))
    slots = np.sort(rng.choice(np.arange(1, BP_SLOTS + 1), size=nb, replace=False))
    bps = tuple(float(k) * BP_GRID for k in slots)
    vals = np.sort(rng.uniform(0.0, 1.0, nb))
    if proper:
        vals[-1] = 1.0
    else:
        vals = vals * 0.9  # keep the terminal value clear of 1
    return StepDF(bps, (0.0, *map(float, vals)))


W_GRID = 0.05  # band ends live on this lattice in (0, 1)


def gen_space(seed: int, n: int, max_bands: int = 4) -> PNSpace:
    rng = np.random.default_rng(seed)
    nbands = int(rng.integers(1, max_bands + 1))
    cuts = np.sort(rng.choice(np.arange(1, 20), size=nbands - 1, replace=False))
    uptos = [float(k) * W_GRID for k in cuts] + [1.0]
    kind = NormKind.L1 if rng.random() < 0.5 else NormKind.LINF
    weights = rng.uniform(0.5, 2.0, n)
    bands = []
    for u in uptos:
        bands.append(Band(u, WeightedNorm(kind, tuple(weights))))
        weights = weights * rng.uniform(1.0, 1.5, n)
    return PNSpace(SeminormFamily(n, tuple(bands)))


def gen_operator(seed: int, domain: PNSpace, codomain: PNSpace) -> LinearOperator:
    rng = np.random.default_rng(seed)
    matrix = rng.uniform(-2.0, 2.0, (codomain.dimension, domain.dimension))
    return LinearOperator(matrix, domain, codomain)


def gen_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.uniform(-3.0, 3.0, n)


# ---------------------------------------------------------------------------
# finite-prefix sequence helpers (strong convergence / Cauchy, Def-style)


def strong_convergence_index(P: PNSpace, seq, limit, t_grid) -> dict[float, int | None]:
    """For each t, the first index from which the whole remaining prefix sits
    in the neighborhood N_limit(t); None if the prefix never settles."""
    out: dict[float, int | None] = {}
    for t in t_grid:
        inside = [P.neighborhood_contains(limit, t, p) for p in seq]
        settled = None
        for m in range(len(seq)):
            if all(inside[m:]):
                settled = m
                break
        out[t] = settled
    return out


def strong_cauchy_index(P: PNSpace, seq, t_grid) -> dict[float, int | None]:
    """For each t, the first N with nu_{p_n - p_m}(t) > 1 - t for all m, n > N."""
    out: dict[float, int | None] = {}
    for t in t_grid:
        settled = None
        for N in range(len(seq)):
            tail = seq[N + 1 :]
            if all(
                P.neighborhood_contains(a, t, b) for i, a in enumerate(tail) for b in tail[i:]
            ):
                settled = N
                break
        out[t] = settled
    return out
