"""t-norms, t-conorms and exact triangle-function convolutions on step d.f.'s."""

from __future__ import annotations

import enum
import math

import numpy as np

from .distfn import StepDF


class TNormKind(enum.Enum):
    """The three built-in continuous t-norms (and their dual conorms)."""

    W = "W"  # Lukasiewicz: max(a + b - 1, 0)
    PROD = "prod"  # product: a * b
    MIN = "min"  # minimum


def _check_unit(a: float, b: float) -> None:
    if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
        raise ValueError(f"t-norm arguments must lie in [0, 1], got {a}, {b}")


def tnorm_eval(T: TNormKind, a: float, b: float) -> float:
    _check_unit(a, b)
    if T is TNormKind.W:
        # boundary cases split off so the unit law T(a, 1) = a is exact
        if a == 1.0:
            return b
        if b == 1.0:
            return a
        return max(a + b - 1.0, 0.0)
    if T is TNormKind.PROD:
        return a * b
    return min(a, b)


def tconorm_eval(T: TNormKind, a: float, b: float) -> float:
    """Dual conorm T*(a, b) = 1 - T(1-a, 1-b), in closed form per kind."""
    _check_unit(a, b)
    if T is TNormKind.W:
        return min(a + b, 1.0)
    if T is TNormKind.PROD:
        # boundary cases split off so T*(a, 0) = a and T*(a, 1) = 1 are exact
        if a == 0.0:
            return b
        if b == 0.0:
            return a
        if a == 1.0 or b == 1.0:
            return 1.0
        return a + b - a * b
    return max(a, b)


def _tnorm_grid(T: TNormKind, v: np.ndarray, u: np.ndarray) -> np.ndarray:
    # outer T(v_i, u_j); vectorized twin of tnorm_eval
    vv, uu = v[:, None], u[None, :]
    if T is TNormKind.W:
        out = np.maximum(vv + uu - 1.0, 0.0)
        out = np.where(vv == 1.0, uu, out)
        return np.where(uu == 1.0, np.broadcast_to(vv, out.shape), out)
    if T is TNormKind.PROD:
        return vv * uu
    return np.minimum(vv, uu)


def _tconorm_grid(T: TNormKind, v: np.ndarray, u: np.ndarray) -> np.ndarray:
    vv, uu = v[:, None], u[None, :]
    if T is TNormKind.W:
        return np.minimum(vv + uu, 1.0)
    if T is TNormKind.PROD:
        out = vv + uu - vv * uu
        out = np.where(vv == 0.0, uu, out)
        out = np.where(uu == 0.0, np.broadcast_to(vv, out.shape), out)
        return np.where((vv == 1.0) | (uu == 1.0), 1.0, out)
    return np.maximum(vv, uu)


def _conv(F: StepDF, G: StepDF, pair_vals: np.ndarray, take_max: bool) -> StepDF:
    """Shared exact convolution machinery.

    F splits the line into bands (a_i, a_{i+1}] with value v_i (a_0 = -inf,
    a_{n+1} = +inf), likewise G.  For x in an open interval between candidate
    output breakpoints (sums a_i + b_j), the pair (i, j) is achievable iff
    x > a_i + b_j and x <= a_{i+1} + b_{j+1}; achievability is constant on
    the interval, so the output value is the max (or min) of pair_vals over
    the achievable set, evaluated once per interval.
    """
    a = np.array(F.breakpoints)
    b = np.array(G.breakpoints)
    a_lo = np.concatenate(([-math.inf], a))
    a_hi = np.concatenate((a, [math.inf]))
    b_lo = np.concatenate(([-math.inf], b))
    b_hi = np.concatenate((b, [math.inf]))
    lows = a_lo[:, None] + b_lo[None, :]
    highs = a_hi[:, None] + b_hi[None, :]

    cands = np.unique(a[:, None] + b[None, :])
    fences = np.concatenate(([-math.inf], cands, [math.inf]))
    out_vals = np.empty(len(cands) + 1)
    pick = np.max if take_max else np.min
    for k in range(len(fences) - 1):
        achievable = (lows <= fences[k]) & (highs >= fences[k + 1])
        out_vals[k] = pick(pair_vals[achievable])
    return StepDF(tuple(cands), tuple(out_vals))


def tau_sup_conv(T: TNormKind, F: StepDF, G: StepDF) -> StepDF:
    """tau_T(F, G)(x) = sup{T(F(s), G(t)) : s + t = x}, exactly."""
    vals = _tnorm_grid(T, np.array(F.values), np.array(G.values))
    return _conv(F, G, vals, take_max=True)


def tau_inf_conv(T: TNormKind, F: StepDF, G: StepDF) -> StepDF:
    """tau_{T*}(F, G)(x) = inf{T*(F(s), G(t)) : s + t = x}, exactly."""
    vals = _tconorm_grid(T, np.array(F.values), np.array(G.values))
    return _conv(F, G, vals, take_max=False)
