"""Improper quadrature over the real line for even, oscillatory, 1/v^2-decaying integrands.

The half line [0, V] is cut into Gauss-Legendre panels aligned with the
oscillation period. Each panel is compared against its two halves and bisected
locally until the difference is negligible; the sum of those differences is the
quadrature part of the error bound. The remaining tail [V, inf) is integrated
analytically through a :class:`TailModel`, whose cubic remainder bound is added
to the error bound.
"""

import math
import warnings
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .errors import DegenerateRadius, NonFiniteIntegrand, PreconditionError, ToleranceNotMet

_EPS = np.finfo(float).eps
_CHUNK = 1 << 16  # panels per vectorised batch
_ROUNDING = 8 * _EPS


@dataclass(frozen=True)
class QuadSpec:
    """Quadrature configuration.

    ``cutoff_V`` is the minimum truncation point. With ``extend_cutoff`` the
    routine pushes it out just far enough that the analytic tail bound stays
    under half of ``target_tol``; otherwise the tail bound alone could never
    meet tolerances like 1e-10 for a 1/v^2 integrand.
    """

    cutoff_V: float = 1e3
    panels_per_period: int = 4
    nodes_per_panel: int = 16
    target_tol: float = 1e-10
    max_refinements: int = 30
    extend_cutoff: bool = True

    def __post_init__(self):
        if not self.cutoff_V > 0:
            raise PreconditionError("cutoff_V must be > 0")
        if self.panels_per_period < 2:
            raise PreconditionError("panels_per_period must be >= 2")
        if self.nodes_per_panel < 4:
            raise PreconditionError("nodes_per_panel must be >= 4")
        if not self.target_tol > 0:
            raise PreconditionError("target_tol must be > 0")
        if self.max_refinements < 1:
            raise PreconditionError("max_refinements must be >= 1")

    def doubled(self, used_cutoff=None):
        """Twice the panel density and twice the cutoff.

        Pass the cutoff a result actually used (``IntegralResult.cutoff``) so
        that an auto-extended cutoff is doubled too.
        """
        base = self.cutoff_V if used_cutoff is None else max(self.cutoff_V, used_cutoff)
        return replace(self, panels_per_period=2 * self.panels_per_period, cutoff_V=2 * base)


def default_spec(*radii, **overrides):
    """Default :class:`QuadSpec` for helices of the given radii."""
    scale = max([1.0] + [abs(r) for r in radii])
    kw = dict(cutoff_V=max(1e3, 100.0 * scale))
    kw.update(overrides)
    return QuadSpec(**kw)


@dataclass(frozen=True)
class TailModel:
    """Asymptotics f(v) = c/v^2 + O(K/v^4) for v >= ``valid_from``."""

    leading_coefficient: float
    cubic_bound: float
    valid_from: float = 0.0

    def __post_init__(self):
        if self.cubic_bound < 0:
            raise PreconditionError("cubic_bound must be non-negative")

    def value(self, V):
        return self.leading_coefficient / V

    def bound(self, V):
        return self.cubic_bound / (3.0 * V**3)


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_bound: float
    tail_contribution: float
    panels_used: int
    converged: bool
    cutoff: float = math.nan


@lru_cache(maxsize=None)
def gauss_legendre(n):
    """Nodes and weights on [-1, 1]; cached because every call reuses a handful of orders."""
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _panel_rule(f, a, b, x, w):
    mid = 0.5 * (a + b)
    hw = 0.5 * (b - a)
    nodes = mid[:, None] + hw[:, None] * x
    vals = f(nodes)
    bad = ~np.isfinite(vals)
    if bad.any():
        where = nodes[bad].ravel()[0]
        raise NonFiniteIntegrand(f"integrand is not finite at v = {where!r}")
    return (vals @ w) * hw, (np.abs(vals) @ w) * hw


def _adaptive_sum(f, a, b, x, w, tol_density, max_levels):
    """Locally adaptive panel sum on the panels [a_i, b_i].

    Returns (value, error estimate, integral of |f|, final panel count,
    exhausted flag).
    """
    total = 0.0
    err = 0.0
    mass = 0.0
    count = 0
    exhausted = False
    coarse, _ = _panel_rule(f, a, b, x, w)
    for level in range(max_levels + 1):
        if a.size == 0:
            break
        m = 0.5 * (a + b)
        left, left_abs = _panel_rule(f, a, m, x, w)
        right, right_abs = _panel_rule(f, m, b, x, w)
        fine = left + right
        diff = np.abs(fine - coarse)
        floor = 64.0 * _EPS * (left_abs + right_abs)
        ok = diff <= np.maximum(tol_density * (b - a), floor)
        if level == max_levels:
            ok[:] = True
            exhausted = bool(np.any(diff > np.maximum(tol_density * (b - a), floor)))
        total += math.fsum(fine[ok])
        err += float(np.sum(diff[ok]))
        mass += float(np.sum((left_abs + right_abs)[ok]))
        count += int(ok.sum())
        keep = ~ok
        a = np.concatenate([a[keep], m[keep]])
        b = np.concatenate([m[keep], b[keep]])
        coarse = np.concatenate([left[keep], right[keep]])
    return total, err, mass, count, exhausted


def _half_line(f, period, spec, V, core_scale):
    """Adaptive integral of f over [0, V] on period-aligned panels."""
    # whole periods, so refining panels_per_period never moves the cutoff
    V = math.ceil(V / period - 1e-9) * period
    h = period / spec.panels_per_period
    n = int(round(V / h))
    edges = h * np.arange(n + 1, dtype=float)
    if core_scale is not None and 0 < core_scale < h:
        levels = int(math.ceil(math.log2(4 * h / core_scale)))
        inner = h * 2.0 ** -np.arange(levels, 0, -1)
        edges = np.concatenate([[0.0], inner, edges[1:]])
    x, w = gauss_legendre(spec.nodes_per_panel)
    # a quarter of the tolerance, spread over [0, V], goes to the panels
    tol_density = 0.25 * spec.target_tol / V
    value = 0.0
    err = 0.0
    mass = 0.0
    count = 0
    exhausted = False
    a_all, b_all = edges[:-1], edges[1:]
    for i in range(0, a_all.size, _CHUNK):
        v, e, m, c, ex = _adaptive_sum(
            f, a_all[i:i + _CHUNK], b_all[i:i + _CHUNK], x, w,
            tol_density, spec.max_refinements,
        )
        value += v
        err += e
        mass += m
        count += c
        exhausted |= ex
    # node values carry relative rounding of a few eps each
    err += _ROUNDING * mass
    return value, err, count, exhausted, V


def _effective_cutoff(tail, spec):
    V = max(spec.cutoff_V, tail.valid_from)
    if spec.extend_cutoff and tail.cubic_bound > 0:
        # both tails together: 2 K / (3 V^3) <= tol / 2
        V = max(V, (4.0 * tail.cubic_bound / (3.0 * spec.target_tol)) ** (1.0 / 3.0))
    return V


def integrate_even_oscillatory(f, period, tail, spec=None, core_scale=None):
    """Integral over the whole real line of an even integrand ``f``.

    ``f`` must accept numpy arrays. ``period`` sets the panel alignment and
    ``core_scale``, if given, grades the panels near the origin down to that
    length scale. ``tail`` describes ``f`` beyond the cutoff.
    """
    if spec is None:
        spec = QuadSpec()
    if not period > 0:
        raise PreconditionError("period must be > 0")
    V = _effective_cutoff(tail, spec)
    half, err, count, exhausted, V = _half_line(f, period, spec, V, core_scale)
    tail_value = 2.0 * tail.value(V)
    value = 2.0 * half + tail_value
    error_bound = 2.0 * err + 2.0 * tail.bound(V)
    error_bound = float(error_bound)
    converged = bool((not exhausted) and error_bound <= spec.target_tol)
    if not converged:
        warnings.warn(
            f"quadrature error bound {error_bound:.3g} exceeds target "
            f"{spec.target_tol:.3g}",
            ToleranceNotMet,
            stacklevel=2,
        )
    return IntegralResult(float(value), error_bound, float(tail_value), count, converged, float(V))


def integrate_line(f, period, tail, spec=None, core_scale=None):
    """Same integral as :func:`integrate_even_oscillatory` without folding.

    Both half lines are integrated separately, so evenness of ``f`` is not
    assumed inside the cutoff; ``tail`` is applied to each side.
    """
    if spec is None:
        spec = QuadSpec()
    V = _effective_cutoff(tail, spec)
    right, err_r, n_r, ex_r, V = _half_line(f, period, spec, V, core_scale)
    left, err_l, n_l, ex_l, _ = _half_line(lambda v: f(-v), period, spec, V, core_scale)
    tail_value = 2.0 * tail.value(V)
    value = right + left + tail_value
    error_bound = err_r + err_l + 2.0 * tail.bound(V)
    error_bound = float(error_bound)
    converged = bool(not (ex_r or ex_l) and error_bound <= spec.target_tol)
    if not converged:
        warnings.warn(
            f"quadrature error bound {error_bound:.3g} exceeds target "
            f"{spec.target_tol:.3g}",
            ToleranceNotMet,
            stacklevel=2,
        )
    return IntegralResult(float(value), error_bound, float(tail_value), n_r + n_l, converged, float(V))


def tail_model_for_M(B, omega):
    """Tail of the symmetric-pair integrand: leading 1/v^2, remainder <= K/v^4.

    With p = 4B(B-1)cos^2 and q = 4B^2 cos^2 the remainder is dominated by
    |p - 2q|/v^4; K carries a safety factor of 2 over that bound.
    """
    if B == 0:
        raise DegenerateRadius("B = 0: the helix degenerates to its axis")
    if not omega > 0:
        raise PreconditionError("omega must be > 0")
    K = 2.0 * (4.0 * abs(B) * abs(B - 1.0) + 8.0 * B * B)
    return TailModel(1.0, K, valid_from=max(1.0, 4.0 * abs(B)))


def segment_rule(z0, z1, panels, nodes=16):
    """Composite Gauss-Legendre nodes and weights on the segment z0 -> z1.

    Weights include dz, so ``np.sum(f(z) * w)`` is the line integral.
    """
    x, w = gauss_legendre(nodes)
    t = np.linspace(0.0, 1.0, panels + 1)
    mid = 0.5 * (t[:-1] + t[1:])
    hw = 0.5 * (t[1:] - t[:-1])
    s = (mid[:, None] + hw[:, None] * x).ravel()
    ws = (hw[:, None] * w).ravel()
    dz = z1 - z0
    return z0 + s * dz, ws * dz
