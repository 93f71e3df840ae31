"""Finite-dimensional PN-spaces built from piecewise-constant seminorm families.

A space is a dimension n together with a partition of (0, 1) into half-open
bands [w_k, w_{k+1}), each carrying a concrete norm on R^n.  The band norms
are weighted L1 / Linf (or block sums of those, for product spaces), which
keeps the probabilistic norm, the w-indexed norm family and the operator
norms downstream exactly computable.
"""

from __future__ import annotations

import enum
import itertools
import math
from bisect import bisect_left, bisect_right
from dataclasses import InitVar, dataclass

import numpy as np

from .distfn import StepDF, df_eval, df_scale, unit_step
from .triangle import TNormKind, tau_sup_conv


class NormKind(enum.Enum):
    L1 = "l1"
    LINF = "linf"


LINF_VERTEX_DIM_CAP = 20


@dataclass(frozen=True)
class WeightedNorm:
    """A weighted L1 or Linf norm with strictly positive weights."""

    kind: NormKind
    weights: tuple[float, ...]

    def __init__(self, kind, weights):
        kind = NormKind(kind)
        w = tuple(float(x) for x in weights)
        if not w or any(x <= 0 or not math.isfinite(x) for x in w):
            raise ValueError("weights must be finite and > 0")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "weights", w)

    @property
    def dimension(self) -> int:
        return len(self.weights)

    def eval(self, x: np.ndarray) -> float:
        wx = np.abs(np.asarray(x, dtype=float)) * self.weights
        return float(wx.sum() if self.kind is NormKind.L1 else wx.max())

    def eval_many(self, X: np.ndarray) -> np.ndarray:
        wx = np.abs(np.asarray(X, dtype=float)) * self.weights
        return wx.sum(axis=-1) if self.kind is NormKind.L1 else wx.max(axis=-1)

    def dominates(self, other: "WeightedNorm") -> bool:
        """Pointwise >= by structure: same kind, coordinatewise larger weights."""
        return (
            isinstance(other, WeightedNorm)
            and self.kind is other.kind
            and self.dimension == other.dimension
            and all(a >= b for a, b in zip(self.weights, other.weights))
        )

    def unit_ball_vertices(self) -> np.ndarray:
        """Vertices of the closed unit ball (the polytope {x : norm(x) <= 1})."""
        n = self.dimension
        inv = 1.0 / np.array(self.weights)
        if self.kind is NormKind.L1:
            return np.concatenate((np.diag(inv), -np.diag(inv)))
        if n > LINF_VERTEX_DIM_CAP:
            raise ValueError(
                f"Linf vertex enumeration rejected for n = {n} > {LINF_VERTEX_DIM_CAP}; "
                "use the Monte-Carlo bound instead"
            )
        signs = np.array(list(itertools.product((1.0, -1.0), repeat=n)))
        return signs * inv


@dataclass(frozen=True)
class BlockSumNorm:
    """Sum of norms over a direct-sum split of the coordinates.

    This is the band norm of a product space: p((x, y), w) = p_V(x, w) + p_W(y, w).
    """

    parts: tuple
    dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.parts) != len(self.dims) or not self.parts:
            raise ValueError("parts and dims must be nonempty and equal length")
        for part, d in zip(self.parts, self.dims):
            if part.dimension != d:
                raise ValueError("part dimension mismatch")

    @property
    def dimension(self) -> int:
        return sum(self.dims)

    def _splits(self):
        off = 0
        for part, d in zip(self.parts, self.dims):
            yield part, off, off + d
            off += d

    def eval(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=float)
        return float(sum(part.eval(x[a:b]) for part, a, b in self._splits()))

    def eval_many(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        return sum(part.eval_many(X[..., a:b]) for part, a, b in self._splits())

    def dominates(self, other) -> bool:
        return (
            isinstance(other, BlockSumNorm)
            and self.dims == other.dims
            and all(p.dominates(q) for p, q in zip(self.parts, other.parts))
        )


@dataclass(frozen=True)
class Band:
    """One band of a seminorm family: the norm in force on [start, upto)."""

    upto: float
    norm: object


@dataclass(frozen=True)
class SeminormFamily:
    """Partition of (0, 1) into bands, each carrying a norm on R^n.

    Monotonicity in w (band k+1 dominating band k) is enforced structurally
    at construction; pass enforce_monotone=False to admit an externally
    supplied family and let validate_pn_axioms report on it instead.
    """

    dimension: int
    bands: tuple[Band, ...]
    enforce_monotone: InitVar[bool] = True

    def __post_init__(self, enforce_monotone: bool):
        bands = tuple(self.bands)
        object.__setattr__(self, "bands", bands)
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if not bands:
            raise ValueError("at least one band required")
        uptos = [b.upto for b in bands]
        if any(u2 <= u1 for u1, u2 in zip(uptos, uptos[1:])) or uptos[-1] != 1.0:
            raise ValueError("band ends must be strictly increasing and finish at 1")
        if any(not 0.0 < u <= 1.0 for u in uptos):
            raise ValueError("band ends must lie in (0, 1]")
        for b in bands:
            if b.norm.dimension != self.dimension:
                raise ValueError("band norm dimension mismatch")
        if enforce_monotone:
            ok, msg = self.monotone_report()
            if not ok:
                raise ValueError(msg)

    def monotone_report(self) -> tuple[bool, str]:
        for k in range(len(self.bands) - 1):
            if not self.bands[k + 1].norm.dominates(self.bands[k].norm):
                return False, f"band {k + 1} does not dominate band {k}"
        return True, "monotone"

    @property
    def uptos(self) -> tuple[float, ...]:
        return tuple(b.upto for b in self.bands)

    def starts(self) -> tuple[float, ...]:
        return (0.0,) + self.uptos[:-1]

    def midpoints(self) -> tuple[float, ...]:
        return tuple(0.5 * (s + u) for s, u in zip(self.starts(), self.uptos))

    def band_index(self, w: float) -> int:
        """Index of the band whose [start, upto) contains w in (0, 1)."""
        if not 0.0 < w < 1.0:
            raise ValueError("w must lie in (0, 1)")
        return bisect_right(self.uptos, w)

    def band_index_left(self, w: float) -> int:
        """Band giving the left-limit norm at w: the previous band exactly at a start.

        Defined on (0, 1]; at w = 1 the left limit is the last band.
        """
        if not 0.0 < w <= 1.0:
            raise ValueError("w must lie in (0, 1]")
        idx = bisect_right(self.uptos, w)
        if idx > 0 and w == self.uptos[idx - 1]:
            return idx - 1
        return idx

    def band_index_right(self, w: float) -> int:
        """Band carrying the norms just above w (right-limit selection)."""
        return self.band_index(w)


def seminorm_eval(S: SeminormFamily, x: np.ndarray, w: float) -> float:
    """p(x, w): the band norm of x for the band containing w."""
    x = _check_vector(S, x)
    return S.bands[S.band_index(w)].norm.eval(x)


def _check_vector(S: SeminormFamily, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (S.dimension,):
        raise ValueError(f"expected vector of dimension {S.dimension}, got shape {x.shape}")
    return x


@dataclass(frozen=True)
class PNSpace:
    """A PN-space derived from a seminorm family (probabilistic norm included)."""

    family: SeminormFamily

    @property
    def dimension(self) -> int:
        return self.family.dimension

    def band_values(self, x) -> list[float]:
        x = _check_vector(self.family, x)
        return [b.norm.eval(x) for b in self.family.bands]

    def prob_norm(self, x) -> StepDF:
        """nu_x(t) = m({w in (0,1) : p(x, w) < t}), exactly.

        For a monotone family the measure below each distinct band value is a
        band end itself, so the step d.f. is assembled from the family's own
        floats with no summation error.
        """
        vals = self.band_values(x)
        uptos = self.family.uptos
        if all(v2 >= v1 for v1, v2 in zip(vals, vals[1:])):
            bps, dfv = [], [0.0]
            for k, v in enumerate(vals):
                if k + 1 == len(vals) or vals[k + 1] > v:
                    bps.append(v)
                    dfv.append(uptos[k])
            return StepDF(tuple(bps), tuple(dfv))
        # non-monotone families (diagnostic path): accumulate band lengths per value
        lengths = [u - s for s, u in zip(self.family.starts(), uptos)]
        distinct = sorted(set(vals))
        bps, dfv = [], [0.0]
        for c in distinct:
            bps.append(c)
            dfv.append(sum(l for v, l in zip(vals, lengths) if v <= c))
        dfv[-1] = 1.0
        return StepDF(tuple(bps), tuple(dfv))

    def norm_at(self, x, w: float) -> float:
        """The left-limit band norm ||x||_w = sup_{w' < w} p(x, w')."""
        x = _check_vector(self.family, x)
        return self.family.bands[self.family.band_index_left(w)].norm.eval(x)

    def pm_distance(self, p, q) -> StepDF:
        """Probabilistic distance of the derived PM space: nu_{p-q}."""
        p = _check_vector(self.family, p)
        q = _check_vector(self.family, q)
        return self.prob_norm(p - q)

    def neighborhood_contains(self, p, t: float, q) -> bool:
        """Membership q in N_p(t) = {q : nu_{p-q}(t) > 1 - t}."""
        if not t > 0:
            raise ValueError("t must be > 0")
        return df_eval(self.pm_distance(p, q), t) > 1.0 - t

    def in_ball(self, center, r: float, w: float, x) -> bool:
        """Membership in the norm ball B_w(center; r) = {x : ||x - center||_w < r}."""
        if not r > 0:
            raise ValueError("radius must be > 0")
        x = _check_vector(self.family, x)
        center = _check_vector(self.family, center)
        return self.norm_at(x - center, w) < r


def single_band_space(norm: WeightedNorm) -> PNSpace:
    """The PN-space with a single constant band norm (nu_x = H_{||x||})."""
    return PNSpace(SeminormFamily(norm.dimension, (Band(1.0, norm),)))


def product_space(P: PNSpace, Q: PNSpace) -> PNSpace:
    """Product PN-space on the merged band partition.

    Each merged band carries the block sum of the covering band norms, so the
    probabilistic norm of a pair equals tau_M of the component norms.
    """
    merged = sorted(set(P.family.uptos) | set(Q.family.uptos))
    bands = []
    for u in merged:
        pn = P.family.bands[bisect_left(P.family.uptos, u)].norm
        qn = Q.family.bands[bisect_left(Q.family.uptos, u)].norm
        bands.append(Band(u, BlockSumNorm((pn, qn), (P.dimension, Q.dimension))))
    return PNSpace(SeminormFamily(P.dimension + Q.dimension, tuple(bands)))


def seminorm_sup(P: PNSpace, vectors) -> list[float]:
    """Per-band sup of p(., w) over a finite sample set (boundedness report)."""
    sups = [0.0] * len(P.family.bands)
    for x in vectors:
        for k, v in enumerate(P.band_values(x)):
            sups[k] = max(sups[k], v)
    return sups


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    witness: str | None = None


@dataclass(frozen=True)
class PNAxiomReport:
    monotone: CheckResult
    n1: CheckResult
    n2: CheckResult
    n3: CheckResult
    scaling: CheckResult

    @property
    def ok(self) -> bool:
        return all(
            c.passed for c in (self.monotone, self.n1, self.n2, self.n3, self.scaling)
        )


def _df_jitter_ge(A: StepDF, B: StepDF) -> bool:
    # A >= B at every breakpoint of both sides, with a 1e-12-relative abscissa
    # guard for jumps that coincide only up to rounding
    for t in sorted(set(A.breakpoints) | set(B.breakpoints)):
        eps = 1e-12 * (1.0 + abs(t))
        if df_eval(A, t + eps) < df_eval(B, t - eps):
            return False
    return True


_EXACT_SCALARS = (0.5, 2.0, 4.0, 0.25, -0.5, -2.0, -1.0)


def validate_pn_axioms(P: PNSpace, samples: int = 50, seed: int = 0) -> PNAxiomReport:
    """Sampled checks of N1, N2, N3 (with tau_M), and the scaling law.

    Scaling is asserted as exact StepDF equality for power-of-two scalars
    (where float scaling commutes with the norm evaluation) and to 1e-12
    relative at the seminorm level for general scalars.
    """
    rng = np.random.default_rng(seed)
    n = P.dimension
    h0 = unit_step(0.0)

    monotone = CheckResult(*_flip(P.family.monotone_report()))

    n1 = CheckResult(True)
    if P.prob_norm(np.zeros(n)) != h0:
        n1 = CheckResult(False, "nu at the null vector is not H_0")
    else:
        for _ in range(samples):
            x = _nonzero(rng, n)
            if P.prob_norm(x) == h0:
                n1 = CheckResult(False, f"nu_x = H_0 at x = {x.tolist()}")
                break

    n2 = CheckResult(True)
    for _ in range(samples):
        x = _nonzero(rng, n)
        if P.prob_norm(-x) != P.prob_norm(x):
            n2 = CheckResult(False, f"nu_-x != nu_x at x = {x.tolist()}")
            break

    n3 = CheckResult(True)
    for _ in range(samples):
        x, y = _nonzero(rng, n), _nonzero(rng, n)
        lhs = P.prob_norm(x + y)
        rhs = tau_sup_conv(TNormKind.MIN, P.prob_norm(x), P.prob_norm(y))
        if not _df_jitter_ge(lhs, rhs):
            n3 = CheckResult(False, f"N3 fails at x = {x.tolist()}, y = {y.tolist()}")
            break

    scaling = CheckResult(True)
    for _ in range(samples):
        x = _nonzero(rng, n)
        for alpha in _EXACT_SCALARS:
            if P.prob_norm(alpha * x) != df_scale(P.prob_norm(x), abs(alpha)):
                scaling = CheckResult(False, f"(S) fails at alpha = {alpha}")
                break
        if not scaling.passed:
            break
        alpha = float(rng.uniform(0.1, 5.0)) * float(rng.choice((-1.0, 1.0)))
        base = P.band_values(x)
        scaled = P.band_values(alpha * x)
        for v, sv in zip(base, scaled):
            if abs(sv - abs(alpha) * v) > 1e-12 * (1.0 + abs(alpha) * v):
                scaling = CheckResult(False, f"(S) off tolerance at alpha = {alpha}")
                break
        if not scaling.passed:
            break

    return PNAxiomReport(monotone, n1, n2, n3, scaling)


def _flip(report: tuple[bool, str]) -> tuple[bool, str | None]:
    ok, msg = report
    return ok, (None if ok else msg)


def _nonzero(rng, n: int) -> np.ndarray:
    while True:
        x = rng.uniform(-3.0, 3.0, n)
        if np.any(x != 0.0):
            return x
