"""End-to-end acceptance checks, shared by ``helix-lab verify`` and the test suite.

Each check returns (passed, measured) where ``measured`` is a one-line summary
of the numbers behind the verdict. Random samples come from fixed seeds so
every run evaluates the same points.
"""

import math
import time
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import cplane
from .cplane import Family, MeroParams
from .energy import (
    HelixPair,
    eval_gradient_at_origins,
    eval_M,
    eval_screwsum,
    integrand_M,
    integrand_screwsum,
)
from .errors import ToleranceNotMet, WeakCouplingWarning
from .quadrature import TailModel, default_spec, integrate_even_oscillatory
from .stationary import ScrewProblem, mp_system_residuals, solve_symmetric_screw, sweep_M

TREND_OMEGAS = (5.0, 10.0, 20.0, 40.0, 80.0)
SOLVE_OMEGAS = (10.0, 20.0, 40.0, 80.0)
COUPLINGS = (1.0, 5.0, 20.0)
MAX_INDEX = 6


@dataclass
class Outcome:
    number: int
    title: str
    group: str
    passed: bool
    measured: str
    seconds: float

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.number:2d} {self.title:<34s} {self.measured} ({self.seconds:.1f}s)"


CRITERIA = []


def criterion(number, title, group):
    def wrap(fn):
        CRITERIA.append((number, title, group, fn))
        return fn
    return wrap


def _fmt(x):
    return f"{x:.3g}"


@lru_cache(maxsize=None)
def cached_solution(omega, alpha=1.0, beta=1.0):
    """Stationary-screw roots are the expensive part of the suite; solve each once."""
    return solve_symmetric_screw(ScrewProblem(omega, alpha, beta))


# ---------------------------------------------------------------------------
# quadrature group


@criterion(1, "symmetric screw-sum vanishes", "quadrature")
def check_symmetric_sum():
    rng = np.random.default_rng(101)
    worst = 0.0
    for B, w in zip(rng.uniform(0.0, 1.0, 20), rng.uniform(1.0, 100.0, 20)):
        B, w = float(B), float(w)
        r = eval_screwsum(HelixPair(-B, B, w))
        # the quadrature path on the raw integrand must agree
        q = integrate_even_oscillatory(
            lambda v: integrand_screwsum(v, -B, B, w), 2 * math.pi / w, TailModel(0.0, 0.0),
            default_spec(B),
        )
        worst = max(worst, abs(r.value), abs(q.value))
    return worst < 1e-14, f"max|value| = {_fmt(worst)} over 20 pairs"


@criterion(2, "odd gradient components vanish", "quadrature")
def check_odd_components():
    rng = np.random.default_rng(202)
    ok = True
    worst_v = worst_e = 0.0
    n = 0
    while n < 10:
        A, B = rng.uniform(-1.5, 1.5, 2)
        if abs(A - B) < 0.1 or abs(A) < 0.05 or abs(B) < 0.05:
            continue
        n += 1
        g = eval_gradient_at_origins(HelixPair(float(A), float(B), float(rng.uniform(1.0, 20.0))))
        comps = [(g.g1[1], g.error_bounds[0][1]), (g.g1[2], g.error_bounds[0][2]),
                 (g.g2[1], g.error_bounds[1][1]), (g.g2[2], g.error_bounds[1][2])]
        for v, e in comps:
            ok &= abs(v) <= e <= 1e-10
            worst_v = max(worst_v, abs(v))
            worst_e = max(worst_e, e)
    return ok, f"max|value| = {_fmt(worst_v)}, max bound = {_fmt(worst_e)}"


@criterion(3, "M > 0 for B >= 1", "quadrature")
def check_M_sign_regimes():
    ok = True
    worst = math.inf
    for B in (1.0, 1.2, 1.5, 2.0):
        for w in (1.0, 5.0, 20.0):
            r = eval_M(B, w)
            ok &= r.value > r.error_bound
            worst = min(worst, r.value / max(r.error_bound, 1e-300))
    return ok, f"min value/bound = {_fmt(worst)}"


@criterion(13, "default vs double resolution", "quadrature")
def check_self_consistency():
    rng = np.random.default_rng(1313)
    ok = True
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ToleranceNotMet)
        for B, w in zip(rng.uniform(0.2, 1.2, 10), rng.uniform(1.0, 40.0, 10)):
            spec = default_spec(B)
            r1 = eval_M(float(B), float(w), spec)
            r2 = eval_M(float(B), float(w), spec.doubled(r1.cutoff))
            d = abs(r1.value - r2.value)
            ok &= d <= r1.error_bound
            worst = max(worst, d / r1.error_bound)
    return ok, f"max |diff|/bound = {_fmt(worst)}"


# ---------------------------------------------------------------------------
# trends


@criterion(4, "M trichotomy trends in omega", "trends")
def check_trichotomy():
    table = sweep_M((0.3, 0.5, 0.7), TREND_OMEGAS)
    _, m3, e3 = table.column(0.3)
    _, m5, e5 = table.column(0.5)
    _, m7, e7 = table.column(0.7)
    dec = bool(np.all(np.diff(m3) < -(e3[1:] + e3[:-1]))) and m3[-1] < m3[0] - 10 * (e3[0] + e3[-1])
    inc = bool(np.all(np.diff(m7) > e7[1:] + e7[:-1])) and m7[-1] > m7[0] + 10 * (e7[0] + e7[-1])
    a5 = np.abs(m5)
    shr = bool(np.all(np.diff(a5) < -(e5[1:] + e5[:-1])))
    parts = [
        f"B=0.3 {'ok' if dec else 'not decreasing'} " + ",".join(f"{v:.4g}" for v in m3),
        f"B=0.5 {'ok' if shr else 'not shrinking'} " + ",".join(f"{v:.4g}" for v in m5),
        f"B=0.7 {'ok' if inc else 'not increasing'}",
    ]
    return dec and shr and inc, "; ".join(parts)


# ---------------------------------------------------------------------------
# poles


@criterion(5, "partial fractions reproduce M integrand", "poles")
def check_partial_fractions():
    p = MeroParams(0.4, 10.0)
    v = np.sort(np.random.default_rng(505).uniform(-20.0, 20.0, 1000))
    err = float(np.max(np.abs(cplane.eval_F(v, p) - integrand_M(v, p.B, p.omega))))
    return err < 1e-12, f"max error = {_fmt(err)}"


def _grid_params():
    return [MeroParams(0.5, 2.0 * c) for c in COUPLINGS]


@criterion(6, "argument-principle pole counts", "poles")
def check_pole_counts():
    ok = True
    worst = 0.0
    kmax = 2 * MAX_INDEX
    for p in _grid_params():
        for k in range(-kmax - 1, kmax + 1):
            rect = cplane.strip_rectangle(k, p)
            owner = cplane.owning_family((k * math.pi, (k + 1) * math.pi))
            for fam in Family:
                val = cplane.argument_principle_value(rect, fam, p)
                want = 1 if fam is owner else 0
                dev = abs(val - want)
                worst = max(worst, dev)
                ok &= dev < 0.01
    return ok, f"max |count - expected| = {_fmt(worst)} over strips k = {-kmax - 1}..{kmax}"


@criterion(7, "refined pole residuals and strips", "poles")
def check_pole_refinement():
    ok = True
    worst = 0.0
    count = 0
    for p in _grid_params():
        for fam in Family:
            idx = [n for n in range(-MAX_INDEX, MAX_INDEX + 1) if n != 0 or fam is Family.PLUS]
            for rec in cplane.poles(fam, idx, p):
                lo, hi = cplane.designated_strip(fam, rec.index, rec.side)
                inside = lo < rec.refined.real < hi and rec.refined.imag > 0
                ok &= rec.residual < 1e-12 and inside and rec.converged
                worst = max(worst, rec.residual)
                count += 1
    return ok, f"{count} poles, max residual = {_fmt(worst)}"


@criterion(8, "seed-to-pole ratio tends to 1", "poles")
def check_pole_asymptotics():
    ok = True
    parts = []
    for n in (1, 3, 5):
        d = [abs(r - 1) for r in cplane.pole_asymptotics_ratio(Family.MINUS, n, (10.0, 100.0, 1000.0), 0.4)]
        ok &= d[0] > d[1] > d[2] and d[2] * 5 <= d[0]
        parts.append(f"n={n}: " + ",".join(_fmt(x) for x in d))
    return ok, "; ".join(parts)


@criterion(9, "limit residues", "poles")
def check_limit_residues():
    worst = 0.0
    for B in (0.3, 0.4, 0.7):
        rm = cplane.residue_circular(1.5 * math.pi, 0.5, lambda z: cplane.eval_F_tilde_limit(z, Family.MINUS, B))
        rp = cplane.residue_circular(0.5 * math.pi, 0.5, lambda z: cplane.eval_F_tilde_limit(z, Family.PLUS, B))
        em = -1j * (2 * B - 1) / (12 * math.pi * B * B)
        ep = -1j * (2 * B - 1) / (4 * B * B * math.pi)
        worst = max(worst, abs(rm - em) / abs(em), abs(rp - ep) / abs(ep))
    return worst < 1e-10, f"max relative error = {_fmt(worst)}"


# ---------------------------------------------------------------------------
# contour


@criterion(10, "eta_R rectangle identity", "contour")
def check_eta_contour():
    p = MeroParams(0.4, 10.0)
    ok = True
    parts = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", WeakCouplingWarning)
        # identity and side cancellation where F has decayed along the sides
        for target in (500.0, 1000.0):
            R = cplane.auto_radius(target, p)
            chk = cplane.eta_contour_check(R, p)
            side = abs(chk.side_pair_sum) / R
            ok &= chk.relative_mismatch < 1e-8 and side < 1e-10
            parts.append(f"R={R:.4g}: rel={_fmt(chk.relative_mismatch)} sides/R={_fmt(side)}")
        # the top side is only representable at small R; it underflows beyond
        tops = []
        for target in (1.0, 2.0, 4.0, 8.0):
            R = cplane.auto_radius(target, p)
            tops.append(abs(cplane.eta_contour_check(R, p).contour.sides[2]))
        halves = all(b <= 0.5 * a for a, b in zip(tops[:-1], tops[1:]))
        ok &= halves
        parts.append("|eta3| " + ",".join(_fmt(t) for t in tops))
    return ok, "; ".join(parts)


# ---------------------------------------------------------------------------
# constants


@criterion(11, "fixed constants", "constants")
def check_constants():
    y0 = cplane.tanh_fixed_point()
    lo = cplane.inf_x2csc2_first_interval()
    hi = cplane.sup_sech_term(1.2)
    ok = 1.19 < y0 < 1.20 and lo > 21 and hi < 0.26
    return ok, f"y0 = {y0:.7f}, inf = {lo:.5f}, sup = {hi:.6f}"


# ---------------------------------------------------------------------------
# stationary screws


@criterion(12, "stationary screw radii approach 1/2", "solve")
def check_screw_roots():
    sols = [cached_solution(w) for w in SOLVE_OMEGAS]
    Bs = [s.B_star for s in sols]
    ok = all(s.converged for s in sols)
    ok &= all(0 < b < 0.5 for b in Bs)
    ok &= all(b1 > b0 for b0, b1 in zip(Bs[:-1], Bs[1:]))
    halving = (0.5 - Bs[-1]) < 0.5 * (0.5 - Bs[0])
    ok &= halving
    cross = True
    for w, s in zip(SOLVE_OMEGAS, sols):
        ok &= abs(s.residual) <= 1e-8 + s.error_bound
        (r1, r2), (e1, e2) = mp_system_residuals(HelixPair(-s.B_star, s.B_star, w), 1.0, 1.0, with_bounds=True)
        # r2 is twice g at the same point
        cross &= r1 == 0 and abs(r2) <= 2 * (1e-8 + s.error_bound) + e2
    ok &= cross
    gap = f"1/2-B*(80) = {0.5 - Bs[-1]:.4f} vs (1/2-B*(10))/2 = {0.25 - 0.5 * Bs[0]:.4f}"
    return ok, "B* = " + ",".join(f"{b:.6f}" for b in Bs) + f"; {gap}; cross-check {'ok' if cross else 'failed'}"


GROUPS = sorted({g for _, _, g, _ in CRITERIA})


def run(only=None, echo=print):
    """Run the checks (optionally a group name or criterion numbers) and return Outcomes."""
    selected = sorted(CRITERIA)
    if only:
        keys = set(only)
        selected = [c for c in selected if c[2] in keys or str(c[0]) in keys]
    out = []
    for number, title, group, fn in selected:
        t0 = time.perf_counter()
        try:
            passed, measured = fn()
        except Exception as exc:  # a crash is a failed criterion, reported by name
            passed, measured = False, f"{type(exc).__name__}: {exc}"
        o = Outcome(number, title, group, bool(passed), measured, time.perf_counter() - t0)
        if echo:
            echo(o.line())
        out.append(o)
    return out
