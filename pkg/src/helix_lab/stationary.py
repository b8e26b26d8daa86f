"""Stationary helix pairs and screws, plus the omega sweeps behind the trend checks."""

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .energy import HelixPair, eval_M, eval_screwdiff, eval_screwsum
from .errors import CoincidentHelices, NoBracket, OrientationViolation, PreconditionError, ToleranceNotMet
from .quadrature import default_spec

SCAN_POINTS = 64
SCAN_EPS = 1e-3
COARSE_TOL = 1e-6  # quadrature tolerance used only to settle signs
ASSERT_OMEGA_MIN = 10.0  # trend claims are only asserted from here on


@dataclass(frozen=True)
class ScrewProblem:
    omega: float
    alpha: float
    beta: float

    def __post_init__(self):
        if not self.omega > 0:
            raise PreconditionError("omega must be > 0")
        if self.alpha < 0 or self.beta < 0:
            raise PreconditionError("alpha and beta must be non-negative")
        if self.alpha + self.beta <= 0:
            raise PreconditionError("alpha + beta must be > 0")


@dataclass
class ScrewSolution:
    B_star: float
    residual: float
    error_bound: float
    bracket: tuple
    bisection_iters: int
    converged: bool
    brackets: list = field(default_factory=list)
    ambiguous: bool = False

    def as_row(self, prob):
        return {
            "omega": prob.omega,
            "alpha": prob.alpha,
            "beta": prob.beta,
            "B_star": self.B_star,
            "residual": self.residual,
            "error_bound": self.error_bound,
            "bracket_lo": self.bracket[0],
            "bracket_hi": self.bracket[1],
            "iters": self.bisection_iters,
            "converged": self.converged,
            "n_brackets": len(self.brackets),
        }


@dataclass(frozen=True)
class SweepRow:
    omega: float
    B: float
    value: float
    error_bound: float
    tag: str


class SweepTable:
    """Rows of (omega, B, value, error_bound, tag) kept sorted by (tag, B, omega)."""

    columns = ("tag", "B", "omega", "value", "error_bound")

    def __init__(self, rows=()):
        self.rows = sorted(rows, key=lambda r: (r.tag, r.B, r.omega))

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def column(self, B, tag="M"):
        """(omegas, values, error bounds) for one B, in increasing omega."""
        sel = [r for r in self.rows if r.tag == tag and r.B == B]
        return (
            np.array([r.omega for r in sel]),
            np.array([r.value for r in sel]),
            np.array([r.error_bound for r in sel]),
        )

    def records(self):
        return [{c: getattr(r, c) for c in self.columns} for r in self.rows]


def stationarity_g(B, prob, spec=None):
    """2 alpha M(omega, B) + beta / sqrt(omega^2 B^2 + 1), with its error bound.

    Roots are stationary symmetric screws.
    """
    if not B > 0:
        raise PreconditionError("B must be > 0")
    r = eval_M(B, prob.omega, spec)
    w = prob.omega
    g = 2.0 * prob.alpha * r.value + prob.beta / math.sqrt(w * w * B * B + 1.0)
    return g, 2.0 * prob.alpha * r.error_bound


def _quiet_g(B, prob, spec):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ToleranceNotMet)
        return stationarity_g(B, prob, spec)


def _coarse(spec, B):
    spec = spec or default_spec(B)
    return replace(spec, target_tol=max(spec.target_tol, COARSE_TOL))


def scan_brackets(prob, spec=None, points=SCAN_POINTS, eps=SCAN_EPS):
    """Geometric scan of g on (eps, 1 - eps) at coarse quadrature tolerance.

    Returns (scanned, brackets) where scanned holds (B, g, error bound) and
    brackets are certified sign changes: both endpoint values clear their
    error bounds.
    """
    grid = np.geomspace(eps, 1.0 - eps, points)
    scanned = [(float(B),) + _quiet_g(float(B), prob, _coarse(spec, B)) for B in grid]
    brackets = []
    for (b0, g0, e0), (b1, g1, e1) in zip(scanned[:-1], scanned[1:]):
        if abs(g0) > e0 and abs(g1) > e1 and (g0 > 0) != (g1 > 0):
            brackets.append(((b0, g0, e0), (b1, g1, e1)))
    return scanned, brackets


def _bisect(tiers, lo, hi, tol, max_iter=200):
    """Bisection on a certified bracket.

    ``tiers`` are evaluators of increasing precision returning (value, bound).
    A cheap tier settles the sign whenever it can; a point is only accepted as
    a root from the last tier.
    """
    (a, ga, _), (b, gb, _) = lo, hi
    it = 0
    best = None
    while it < max_iter:
        it += 1
        m = 0.5 * (a + b)
        for k, func in enumerate(tiers):
            gm, em = func(m)
            if abs(gm) > tol + em:
                break
        if k == len(tiers) - 1 and (best is None or abs(gm) < abs(best[1])):
            best = (m, gm, em)
        if k == len(tiers) - 1 and abs(gm) <= tol + em:
            return m, gm, em, (a, b), it, True
        if (gm > 0) == (ga > 0):
            a, ga = m, gm
        else:
            b, gb = m, gm
        if b - a <= 4 * np.finfo(float).eps * max(abs(a), abs(b)):
            break
    if best is None:
        m = 0.5 * (a + b)
        gm, em = tiers[-1](m)
        best = (m, gm, em)
    m, gm, em = best
    return m, gm, em, (a, b), it, abs(gm) <= tol + em


def solve_symmetric_screw(prob, tol=1e-8, spec=None):
    """Radius B* in (0, 1) of a stationary symmetric screw."""
    if not prob.alpha > 0:
        raise PreconditionError("alpha must be > 0: no Mobius term to balance the area term")
    scanned, brackets = scan_brackets(prob, spec)
    if not brackets:
        raise NoBracket("g has no certified sign change on the scan grid", scanned)
    lo, hi = min(brackets, key=lambda br: abs(0.5 * (br[0][0] + br[1][0]) - 0.5))
    tiers = [lambda b: _quiet_g(b, prob, _coarse(spec, b)), lambda b: _quiet_g(b, prob, spec)]
    B, g, e, bracket, iters, ok = _bisect(tiers, lo, hi, tol)
    return ScrewSolution(
        B_star=B,
        residual=g,
        error_bound=e,
        bracket=bracket,
        bisection_iters=iters,
        converged=ok,
        brackets=[(br[0][0], br[1][0]) for br in brackets],
        ambiguous=len(brackets) > 1,
    )


def sweep_M(B_list, omega_list, spec=None):
    rows = []
    for B in B_list:
        if B == 0:
            raise PreconditionError("B = 0 is not allowed")
        for w in omega_list:
            r = eval_M(B, w, spec)
            rows.append(SweepRow(w, B, r.value, r.error_bound, "M"))
    return SweepTable(rows)


def sweep_g(B_list, prob_omegas, alpha, beta, spec=None):
    rows = []
    for w in prob_omegas:
        prob = ScrewProblem(w, alpha, beta)
        for B in B_list:
            g, e = _quiet_g(B, prob, spec)
            rows.append(SweepRow(w, B, g, e, "g"))
    return SweepTable(rows)


def trend_verdict(values, errors):
    """'decreasing', 'increasing', 'shrinking' (|value| decreasing) or 'none'.

    Every step must clear the summed error bounds of its endpoints.
    """
    v = np.asarray(values)
    e = np.asarray(errors)
    step = np.diff(v)
    margin = e[1:] + e[:-1]
    if np.all(step < -margin):
        return "decreasing"
    if np.all(step > margin):
        return "increasing"
    if np.all(np.diff(np.abs(v)) < -margin):
        return "shrinking"
    return "none"


def find_nonsymmetric_screwsum_root(A, omega, B_bracket, tol=1e-12, spec=None):
    """B with vanishing screw-sum integral, by bisection on B_bracket.

    The integrand is (A + B)(cos - 1)/Q^2, whose sign is that of -(A + B)
    wherever it is nonzero, so a certified sign change only ever brackets the
    symmetric root B = -A and the bisection converges there.
    """
    lo, hi = sorted(B_bracket)
    if lo <= A <= hi:
        raise CoincidentHelices(f"bracket [{lo}, {hi}] straddles B = A = {A}")
    for end in (lo, hi):
        if end == -A:
            return end

    def f(B):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ToleranceNotMet)
            r = eval_screwsum(HelixPair(A, B, omega), spec)
        return r.value, r.error_bound

    glo, elo = f(lo)
    ghi, ehi = f(hi)
    if not ((glo > 0) != (ghi > 0)):
        raise NoBracket(f"screwsum has the same sign at B = {lo} and B = {hi}",
                        [(lo, glo, elo), (hi, ghi, ehi)])
    B, g, e, _, _, _ = _bisect([f], (lo, glo, elo), (hi, ghi, ehi), tol)
    return B


def mp_system_residuals(pair, alpha, beta, spec=None, with_bounds=False):
    """Residuals (r1, r2) of the Mobius-Plateau screw system; both vanish when stationary.

    ``with_bounds`` also returns the quadrature error bounds of r1 and r2.
    """
    A, B, w = pair.A, pair.B, pair.omega
    if not A < 0 < B:
        raise OrientationViolation(f"need A < 0 < B, got A = {A}, B = {B}")
    sA, sB = pair.speeds
    spec = spec or default_spec(A, B)
    ssum = eval_screwsum(pair, spec)
    sdiff = eval_screwdiff(pair, spec)
    r1 = 4 * alpha * ssum.value - beta * (1 / sB - 1 / sA)
    r2 = 4 * alpha * sdiff.value + beta * (1 / sB + 1 / sA)
    if with_bounds:
        return (r1, r2), (4 * alpha * ssum.error_bound, 4 * alpha * sdiff.error_bound)
    return r1, r2
