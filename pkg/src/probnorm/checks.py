"""Deterministic property suites behind the CLI `check` command.

Each suite runs a fixed set of properties over seeded random instances and
returns one row per property.  Reports are byte-identical for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import distfn, operators, pnspace, testkit, triangle
from .distfn import (
    df_eval,
    df_scale,
    is_proper,
    levy_metric,
    qf_add,
    qf_scale,
    quasi_inverse,
    unit_step,
)
from .triangle import TNormKind, tau_inf_conv, tau_sup_conv

SUITES = ("distfn", "triangle", "pnspace", "operator")


@dataclass(frozen=True)
class CheckRow:
    case_id: str
    cases: int
    passed: bool
    detail: str = ""


class _Recorder:
    def __init__(self, suite: str):
        self.suite = suite
        self.rows: list[CheckRow] = []

    def run(self, name: str, pairs) -> None:
        count = 0
        for item in pairs:
            count += 1
            ok, detail = item if isinstance(item, tuple) else (item, "")
            if not ok:
                self.rows.append(CheckRow(f"{self.suite}/{name}", count, False, detail))
                return
        self.rows.append(CheckRow(f"{self.suite}/{name}", count, True))


def _distfn_suite(seed: int, cases: int) -> list[CheckRow]:
    rec = _Recorder("distfn")
    base = seed * 100003
    pairs = [
        (testkit.gen_stepdf(base + i), testkit.gen_stepdf(base + i + 7919))
        for i in range(cases)
    ]
    rec.run("levy-self", (levy_metric(F, F).value <= distfn.LEVY_TOL for F, _ in pairs))
    rec.run(
        "levy-symmetry",
        (levy_metric(F, G).value == levy_metric(G, F).value for F, G in pairs),
    )
    rec.run(
        "levy-oracle",
        (
            abs(levy_metric(F, G).value - testkit.oracle_levy(F, G)) <= 1.1e-5
            for F, G in pairs
        ),
    )
    rec.run(
        "hat-additivity",
        (
            quasi_inverse(tau_sup_conv(TNormKind.MIN, F, G))
            == qf_add(quasi_inverse(F), quasi_inverse(G))
            for F, G in pairs
        ),
    )
    rec.run(
        "hat-scaling",
        (
            quasi_inverse(df_scale(F, h)) == qf_scale(quasi_inverse(F), h)
            for F, _ in pairs
            for h in (0.5, 2.0, 7.0)
        ),
    )
    improper = [testkit.gen_stepdf(base + i, proper=False) for i in range(cases)]
    rec.run(
        "proper-iff-finite-hat",
        (
            is_proper(F) == all(np.isfinite(quasi_inverse(F).qvalues))
            for F in [p for p, _ in pairs] + improper
        ),
    )
    return rec.rows


def _triangle_suite(seed: int, cases: int) -> list[CheckRow]:
    rec = _Recorder("triangle")
    base = seed * 100019
    rng = np.random.default_rng(base)
    pairs = [
        (testkit.gen_stepdf(base + i), testkit.gen_stepdf(base + i + 7919))
        for i in range(cases)
    ]
    kinds = tuple(TNormKind)
    rec.run(
        "step-identity",
        (
            conv(T, unit_step(a), unit_step(b)) == unit_step(a + b)
            for _ in range(cases)
            for a, b in [rng.uniform(0.0, 10.0, 2)]
            for T in kinds
            for conv in (tau_sup_conv, tau_inf_conv)
        ),
    )
    rec.run(
        "unit-law",
        (
            conv(T, F, unit_step(0.0)) == F
            for F, _ in pairs
            for T in kinds
            for conv in (tau_sup_conv, tau_inf_conv)
        ),
    )
    rec.run(
        "commutativity",
        (tau_sup_conv(T, F, G) == tau_sup_conv(T, G, F) for F, G in pairs for T in kinds),
    )
    rec.run(
        "ordering-w-prod-min",
        (
            _df_le(tau_sup_conv(TNormKind.W, F, G), tau_sup_conv(TNormKind.PROD, F, G))
            and _df_le(tau_sup_conv(TNormKind.PROD, F, G), tau_sup_conv(TNormKind.MIN, F, G))
            for F, G in pairs
        ),
    )
    rec.run(
        "sup-below-inf",
        (
            _df_le(tau_sup_conv(TNormKind.MIN, F, G), tau_inf_conv(TNormKind.MIN, F, G))
            for F, G in pairs
        ),
    )
    oracle_pairs = pairs[: max(1, cases // 5)]
    rec.run(
        "oracle-agreement",
        (
            _conv_matches_oracle(T, F, G, base + 13 * k)
            for k, (F, G) in enumerate(oracle_pairs)
            for T in kinds
        ),
    )
    return rec.rows


def _df_le(A, B) -> bool:
    return all(
        df_eval(A, t) <= df_eval(B, t) + 1e-12
        for t in set(A.breakpoints) | set(B.breakpoints)
    )


def _off_breakpoint_xs(F, G, seed: int, count: int, margin: float = 2e-3):
    cands = np.unique(
        np.array(F.breakpoints)[:, None] + np.array(G.breakpoints)[None, :]
    )
    rng = np.random.default_rng(seed)
    xs = []
    while len(xs) < count:
        x = float(rng.uniform(0.0, cands[-1] + 0.5))
        if np.abs(cands - x).min() > margin and x > margin:
            xs.append(x)
    return xs


def _conv_matches_oracle(T, F, G, seed: int) -> bool:
    sup = tau_sup_conv(T, F, G)
    inf = tau_inf_conv(T, F, G)
    # 1e-12 rather than bitwise: the oracle computes t-norm values by the raw
    # textbook formulas, which round differently at boundary arguments
    for x in _off_breakpoint_xs(F, G, seed, 10):
        if abs(df_eval(sup, x) - testkit.oracle_sup_conv(T, F, G, x)) > 1e-12:
            return False
        if abs(df_eval(inf, x) - testkit.oracle_inf_conv(T, F, G, x)) > 1e-12:
            return False
    return True


def _pnspace_suite(seed: int, cases: int) -> list[CheckRow]:
    rec = _Recorder("pnspace")
    base = seed * 100043
    rng = np.random.default_rng(base)
    spaces = [testkit.gen_space(base + i, int(rng.integers(1, 5))) for i in range(cases)]
    rec.run(
        "axioms",
        (
            pnspace.validate_pn_axioms(P, samples=10, seed=base + i).ok
            for i, P in enumerate(spaces)
        ),
    )
    rec.run(
        "single-band-unit-step",
        (_single_band_is_unit_step(rng) for _ in range(cases)),
    )
    rec.run(
        "norm-at-consistency",
        (_norm_at_matches_quantile(P, rng) for P in spaces),
    )
    rec.run(
        "product-hat-additivity",
        (
            _product_hat_additive(P, Q, rng)
            for P, Q in zip(spaces, spaces[1:] + spaces[:1])
        ),
    )
    rec.run("pm-axioms", (_pm_axioms(P, rng) for P in spaces))
    return rec.rows


def _single_band_is_unit_step(rng) -> bool:
    n = int(rng.integers(1, 5))
    norm = pnspace.WeightedNorm(
        pnspace.NormKind.L1 if rng.random() < 0.5 else pnspace.NormKind.LINF,
        tuple(rng.uniform(0.5, 2.0, n)),
    )
    P = pnspace.single_band_space(norm)
    x = testkit.gen_vector(rng, n)
    return P.prob_norm(x) == unit_step(norm.eval(x))


def _norm_at_matches_quantile(P, rng) -> bool:
    x = testkit.gen_vector(rng, P.dimension)
    Q = quasi_inverse(P.prob_norm(x))
    for w in P.family.midpoints():
        if P.norm_at(x, w) != distfn.qf_eval(Q, w):
            # coincidence of w with a value of nu_x makes the conventions differ
            if w not in P.prob_norm(x).values:
                return False
    return True


def _product_hat_additive(P, Q, rng) -> bool:
    x = testkit.gen_vector(rng, P.dimension)
    y = testkit.gen_vector(rng, Q.dimension)
    prod = pnspace.product_space(P, Q)
    lhs = quasi_inverse(prod.prob_norm(np.concatenate((x, y))))
    rhs = qf_add(quasi_inverse(P.prob_norm(x)), quasi_inverse(Q.prob_norm(y)))
    return lhs == rhs


def _pm_axioms(P, rng) -> bool:
    p = testkit.gen_vector(rng, P.dimension)
    q = testkit.gen_vector(rng, P.dimension)
    r = testkit.gen_vector(rng, P.dimension)
    h0 = unit_step(0.0)
    if P.pm_distance(p, p) != h0:
        return False
    if P.pm_distance(p, q) == h0:
        return False
    if P.pm_distance(p, q) != P.pm_distance(q, p):
        return False
    lhs = P.pm_distance(p, r)
    rhs = tau_sup_conv(TNormKind.MIN, P.pm_distance(p, q), P.pm_distance(q, r))
    return pnspace._df_jitter_ge(lhs, rhs)


def _operator_suite(seed: int, cases: int) -> list[CheckRow]:
    rec = _Recorder("operator")
    base = seed * 100057
    rng = np.random.default_rng(base)
    ops = []
    for i in range(cases):
        n = int(rng.integers(1, 5))
        m = int(rng.integers(1, 5))
        dom = testkit.gen_space(base + 2 * i, n)
        cod = testkit.gen_space(base + 2 * i + 1, m)
        ops.append(testkit.gen_operator(base + 3 * i, dom, cod))
    mids = [(T.domain.family.midpoints()[0], T.codomain.family.midpoints()[-1]) for T in ops]
    rec.run(
        "mc-below-exact",
        (
            operators.operator_norm_mc(T, w, wp, 2000, base + i)
            <= operators.operator_norm_exact(T, w, wp)
            for i, (T, (w, wp)) in enumerate(zip(ops, mids))
        ),
    )
    rec.run(
        "bound-inequality",
        (
            operators.bound_check(T, w, wp, 100, base + i).passed
            for i, (T, (w, wp)) in enumerate(zip(ops, mids))
        ),
    )
    rec.run("profile-finite-monotone", (_profile_ok(T) for T in ops))
    rec.run("submultiplicative", (_submultiplicative(T, base + i) for i, T in enumerate(ops)))
    rec.run(
        "open-mapping",
        (_open_mapping_ok(base + i, rng) for i in range(max(1, cases // 2))),
    )
    rec.run(
        "uniform-bound-dominates",
        (_uniform_bound_ok(T, base + i) for i, T in enumerate(ops[: max(1, cases // 2)])),
    )
    return rec.rows


def _profile_ok(T) -> bool:
    prof = operators.norm_profile(T)
    if not np.all(np.isfinite(prof.table)):
        return False
    if np.any(np.diff(prof.table, axis=0) > 1e-12):
        return False  # must not grow with the domain band index
    return not np.any(np.diff(prof.table, axis=1) < -1e-12)


def _submultiplicative(T, seed: int) -> bool:
    S = testkit.gen_operator(seed + 1, T.codomain, testkit.gen_space(seed, 2))
    ST = operators.compose(S, T)
    for w in T.domain.family.midpoints():
        for wmid in T.codomain.family.midpoints():
            for wpp in S.codomain.family.midpoints():
                lhs = operators.operator_norm_exact(ST, w, wpp)
                rhs = operators.operator_norm_exact(
                    S, wmid, wpp
                ) * operators.operator_norm_exact(T, w, wmid)
                if lhs > rhs + 1e-9:
                    return False
    return True


def _open_mapping_ok(seed: int, rng) -> bool:
    n = int(rng.integers(1, 4))
    dom = testkit.gen_space(seed + 11, n)
    cod = testkit.gen_space(seed + 12, n)
    matrix = _invertible_matrix(rng, n)
    T = operators.LinearOperator(matrix, dom, cod)
    w = dom.family.midpoints()[0]
    return operators.open_mapping_check(T, w, 50, seed).passed


def _invertible_matrix(rng, n: int) -> np.ndarray:
    while True:
        m = rng.uniform(-2.0, 2.0, (n, n))
        if np.linalg.cond(m) < 1e4:
            return m


def _uniform_bound_ok(T, seed: int) -> bool:
    rng = np.random.default_rng(seed)
    members = [
        operators.LinearOperator(T.matrix * (1.0 - 1.0 / k), T.domain, T.codomain)
        for k in range(1, 11)
    ]
    wp = T.codomain.family.midpoints()[0]
    probes = [testkit.gen_vector(rng, T.domain.dimension) for _ in range(3)]
    res = operators.uniform_bound(members, wp, probes)
    return all(
        operators.operator_norm_exact(M, res.w, wp) <= res.bound + 1e-12 for M in members
    )


_SUITE_FNS = {
    "distfn": _distfn_suite,
    "triangle": _triangle_suite,
    "pnspace": _pnspace_suite,
    "operator": _operator_suite,
}


def run_suites(suite: str, seed: int, cases: int) -> list[CheckRow]:
    names = SUITES if suite == "all" else (suite,)
    rows: list[CheckRow] = []
    for name in names:
        if name not in _SUITE_FNS:
            raise ValueError(f"unknown suite {name!r}")
        rows.extend(_SUITE_FNS[name](seed, cases))
    return sorted(rows, key=lambda r: r.case_id)


def format_report(rows: list[CheckRow]) -> str:
    width = max(len(r.case_id) for r in rows)
    lines = []
    for r in rows:
        status = "PASS" if r.passed else "FAIL"
        suffix = f"  {r.detail}" if r.detail else ""
        lines.append(f"{r.case_id:<{width}}  {r.cases:>4}  {status}{suffix}")
    total = sum(1 for r in rows if not r.passed)
    lines.append(f"{total} failed / {len(rows)} properties")
    return "\n".join(lines) + "\n"
