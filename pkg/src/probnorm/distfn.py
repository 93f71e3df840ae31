"""Exact algebra of distance distribution functions and their quasi-inverses.

A distance d.f. is represented as a finite left-continuous step function:
nondecreasing, zero at 0, with values in [0, 1].  Everything here is exact
breakpoint arithmetic; no discretization is introduced anywhere, so identity
tests can assert float equality whenever both sides are built from the same
breakpoint floats.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass

INF = math.inf


def _as_float_tuple(xs) -> tuple[float, ...]:
    return tuple(float(x) for x in xs)


@dataclass(frozen=True)
class StepDF:
    """A left-continuous nondecreasing step function in Delta+.

    ``breakpoints`` is strictly increasing with all entries >= 0;
    ``values`` has one more entry than ``breakpoints`` with values[0] == 0.
    F(x) = values[i] where i = #{k : breakpoints[k] < x}, so F is constant
    on each interval (t_i, t_{i+1}] and F(t_k) = values[k-1].

    Construction canonicalizes: breakpoints carrying a zero jump are dropped,
    so structural equality of two StepDF instances is semantic equality.
    """

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]

    def __init__(self, breakpoints, values):
        bp = _as_float_tuple(breakpoints)
        vals = _as_float_tuple(values)
        if len(bp) < 1:
            raise ValueError("StepDF needs at least one breakpoint")
        if len(vals) != len(bp) + 1:
            raise ValueError(
                f"need len(values) == len(breakpoints) + 1, got {len(vals)} and {len(bp)}"
            )
        if any(b < 0 for b in bp) or not all(math.isfinite(b) for b in bp):
            raise ValueError("breakpoints must be finite and >= 0")
        if any(b2 <= b1 for b1, b2 in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if vals[0] != 0.0:
            raise ValueError("values[0] must be 0 (membership in Delta+)")
        if any(v < 0 or v > 1 for v in vals):
            raise ValueError("values must lie in [0, 1]")
        if any(v2 < v1 for v1, v2 in zip(vals, vals[1:])):
            raise ValueError("values must be nondecreasing")
        # canonical form: drop breakpoints with no jump
        keep_bp = []
        keep_vals = [vals[0]]
        for i, b in enumerate(bp):
            if vals[i + 1] > vals[i]:
                keep_bp.append(b)
                keep_vals.append(vals[i + 1])
        if not keep_bp:
            # constant-zero (fully improper) d.f.; keep a single mute breakpoint
            keep_bp = [bp[0]]
            keep_vals = [0.0, 0.0]
        object.__setattr__(self, "breakpoints", tuple(keep_bp))
        object.__setattr__(self, "values", tuple(keep_vals))


@dataclass(frozen=True)
class StepQuantile:
    """Quasi-inverse of a StepDF: a step function on (0, 1].

    Band i is the half-open interval (wbreaks[i-1], wbreaks[i]] (with an
    implicit left end at 0) and takes the value qvalues[i]; the last wbreak
    is always 1.  A trailing +inf value records an improper source d.f.
    """

    wbreaks: tuple[float, ...]
    qvalues: tuple[float, ...]

    def __init__(self, wbreaks, qvalues):
        wb = _as_float_tuple(wbreaks)
        qv = _as_float_tuple(qvalues)
        if len(wb) != len(qv) or not wb:
            raise ValueError("wbreaks and qvalues must be nonempty and equal length")
        if any(w <= 0 or w > 1 for w in wb):
            raise ValueError("wbreaks must lie in (0, 1]")
        if any(w2 <= w1 for w1, w2 in zip(wb, wb[1:])):
            raise ValueError("wbreaks must be strictly increasing")
        if wb[-1] != 1.0:
            raise ValueError("last wbreak must be 1")
        if any(q < 0 for q in qv):
            raise ValueError("qvalues must be >= 0")
        if any(q2 < q1 for q1, q2 in zip(qv, qv[1:])):
            raise ValueError("qvalues must be nondecreasing")
        # canonical form: merge adjacent bands with equal value
        keep_wb = []
        keep_qv = []
        for i in range(len(wb)):
            if i + 1 < len(wb) and qv[i + 1] == qv[i]:
                continue
            keep_wb.append(wb[i])
            keep_qv.append(qv[i])
        object.__setattr__(self, "wbreaks", tuple(keep_wb))
        object.__setattr__(self, "qvalues", tuple(keep_qv))


@dataclass(frozen=True)
class LevyDistance:
    """Result of the bisected modified Levy metric."""

    value: float
    tolerance: float

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError("Levy distance must lie in [0, 1]")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be > 0")


def unit_step(a: float) -> StepDF:
    """The d.f. H_a: 0 for x <= a, 1 for x > a."""
    if a < 0:
        raise ValueError("unit_step needs a >= 0 (Delta+ only)")
    return StepDF((float(a),), (0.0, 1.0))


def df_eval(F: StepDF, x: float) -> float:
    """Evaluate F at x with left-continuous step semantics.

    F(-inf) = 0 and F(+inf) = 1 by convention, even for improper F.
    """
    if x == INF:
        return 1.0
    if x == -INF:
        return 0.0
    return F.values[bisect_left(F.breakpoints, x)]


def _df_eval_right(F: StepDF, x: float) -> float:
    # right limit F(x+): value on the band just above x
    if x == INF:
        return 1.0
    if x == -INF:
        return 0.0
    return F.values[bisect_right(F.breakpoints, x)]


def df_scale(F: StepDF, h: float) -> StepDF:
    """x -> F(x / h) for h > 0: breakpoints scaled by h, values unchanged."""
    if not h > 0:
        raise ValueError("scale factor must be > 0")
    return StepDF(tuple(b * h for b in F.breakpoints), F.values)


def is_proper(F: StepDF) -> bool:
    """Whether F reaches 1, i.e. F belongs to D+."""
    return F.values[-1] == 1.0


def quasi_inverse(F: StepDF) -> StepQuantile:
    """The quasi-inverse w -> sup{t : F(t) < w}, exactly.

    For w in the value band (v_{i-1}, v_i] the supremum is the breakpoint
    t_i; above the terminal value of an improper F it is +inf.
    """
    wb: list[float] = []
    qv: list[float] = []
    for i, b in enumerate(F.breakpoints):
        if F.values[i + 1] > F.values[i]:
            wb.append(F.values[i + 1])
            qv.append(b)
    if not wb or wb[-1] < 1.0:
        wb.append(1.0)
        qv.append(INF)
    return StepQuantile(tuple(wb), tuple(qv))


def qf_eval(Q: StepQuantile, w: float) -> float:
    """Band lookup: the quantile value at w in (0, 1]."""
    if not 0.0 < w <= 1.0:
        raise ValueError("quantile argument must lie in (0, 1]")
    return Q.qvalues[bisect_left(Q.wbreaks, w)]


def qf_add(Q1: StepQuantile, Q2: StepQuantile) -> StepQuantile:
    """Exact pointwise sum of two quantile functions (+inf absorbing)."""
    merged = sorted(set(Q1.wbreaks) | set(Q2.wbreaks))
    sums = [qf_eval(Q1, w) + qf_eval(Q2, w) for w in merged]
    return StepQuantile(tuple(merged), tuple(sums))


def qf_scale(Q: StepQuantile, h: float) -> StepQuantile:
    """Exact pointwise scaling h * Q for h > 0."""
    if not h > 0:
        raise ValueError("scale factor must be > 0")
    return StepQuantile(Q.wbreaks, tuple(q * h for q in Q.qvalues))


def levy_condition(F: StepDF, G: StepDF, h: float) -> bool:
    """Decide exactly whether F(x-h) - h <= G(x) <= F(x+h) + h on (-1/h, 1/h).

    Both sides are step functions of x, so it suffices to check the finitely
    many event points (breakpoints of G, breakpoints of F shifted by +-h)
    inside the interval, each at the point itself (left value) and just above
    it (right limit), plus the right limit at the left end of the interval.
    """
    if not 0.0 < h <= 1.0:
        raise ValueError("h must lie in (0, 1]")
    lo, hi = -1.0 / h, 1.0 / h

    def holds_left(x: float) -> bool:
        g = df_eval(G, x)
        return df_eval(F, x - h) - h <= g <= df_eval(F, x + h) + h

    def holds_right(x: float) -> bool:
        g = _df_eval_right(G, x)
        return _df_eval_right(F, x - h) - h <= g <= _df_eval_right(F, x + h) + h

    events = set(G.breakpoints)
    for t in F.breakpoints:
        events.add(t - h)
        events.add(t + h)
    inside = sorted(e for e in events if lo < e < hi)
    if not all(holds_left(e) for e in inside):
        return False
    # open subintervals to the right of each event, and (lo, first event)
    return all(holds_right(e) for e in [lo, *inside])


LEVY_TOL = 1e-9


def levy_metric(F: StepDF, G: StepDF) -> LevyDistance:
    """Modified Levy metric by bisection on the monotone joint condition.

    The condition holds at h = 1 for any pair in Delta+ (asserted), and the
    feasibility check per h is exact, so bisection brackets the infimum to
    an absolute half-width of LEVY_TOL.
    """

    def ok(h: float) -> bool:
        return levy_condition(F, G, h) and levy_condition(G, F, h)

    if not ok(1.0):
        raise AssertionError("Levy condition must hold at h = 1 on Delta+")
    lo, hi = 0.0, 1.0
    while hi - lo > 2.0 * LEVY_TOL:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return LevyDistance(0.5 * (lo + hi), 0.5 * (hi - lo))
