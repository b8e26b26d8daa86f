"""Helix-pair geometry and the real-line Möbius gradient integrals.

Two coaxial helices share a frequency omega,

    gamma(t) = (R cos(omega t), R sin(omega t), t),

with radii A (for gamma_1) and B (for gamma_2). Every integrand below shares
the squared-distance denominator

    Q(v) = A^2 - 2 A B cos(omega v) + B^2 + v^2,

and each functional is returned as a raw integral value with an error bound.
Adding the x-components at gamma_1(0) and gamma_2(0) gives twice the screw-sum
integral, and subtracting them gives twice the screw-difference integral.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidentHelices, DegenerateRadius, PreconditionError
from .quadrature import (
    IntegralResult,
    TailModel,
    default_spec,
    integrate_even_oscillatory,
    integrate_line,
    tail_model_for_M,
)


@dataclass(frozen=True)
class HelixPair:
    A: float
    B: float
    omega: float

    def __post_init__(self):
        if not self.omega > 0:
            raise PreconditionError("omega must be > 0")
        if self.A == 0 and self.B == 0:
            raise DegenerateRadius("A and B cannot both vanish")

    @property
    def speeds(self):
        """Arclength factors sqrt(omega^2 R^2 + 1) for the two helices."""
        w = self.omega
        return math.sqrt(w * w * self.A**2 + 1.0), math.sqrt(w * w * self.B**2 + 1.0)

    def point(self, which, t):
        R = self.A if which == 1 else self.B
        t = np.asarray(t, dtype=float)
        return np.stack([R * np.cos(self.omega * t), R * np.sin(self.omega * t), t], axis=-1)


@dataclass(frozen=True)
class GradientAtOrigin:
    g1: tuple
    g2: tuple
    error_bounds: tuple  # ((e1x, e1y, e1z), (e2x, e2y, e2z))


def _require_distinct(A, B):
    if A == B:
        raise CoincidentHelices(f"A = B = {A}: the helices coincide")


def _half_angle(v, omega):
    h = 0.5 * omega * v
    return np.cos(h) ** 2, np.sin(h) ** 2


def _Q(v, A, B, omega):
    # sum of non-negative terms whatever the sign of AB, so no cancellation
    c2, s2 = _half_angle(v, omega)
    if A * B >= 0:
        return (A - B) ** 2 + 4.0 * A * B * s2 + v * v
    return (A + B) ** 2 - 4.0 * A * B * c2 + v * v


def _core_scale(A, B):
    # width of the near-origin peak of 1/Q^2
    return max(abs(A - B), 1e-12)


# ---------------------------------------------------------------------------
# symmetric pair A = -B


def integrand_M(v, B, omega):
    """Integrand of M(omega, B); the v = 0 value is the closed form (B-1)/(4B^3)."""
    if B == 0:
        raise DegenerateRadius("B = 0: integrand is singular at v = 0")
    v = np.asarray(v, dtype=float)
    c = np.cos(0.5 * omega * v)
    c2 = c * c
    q = 4.0 * B * B * c2 + v * v
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (4.0 * B * (B - 1.0) * c2 + v * v) / (q * q)
    out = np.where(v == 0, (B - 1.0) / (4.0 * B**3), out)
    return out if out.ndim else float(out)


def eval_M(B, omega, spec=None):
    """M(omega, B): the screw-difference integral of the symmetric pair."""
    if B == 0:
        raise DegenerateRadius("B = 0: M is undefined")
    if not omega > 0:
        raise PreconditionError("omega must be > 0")
    spec = spec or default_spec(B)
    tail = tail_model_for_M(B, omega)
    return integrate_even_oscillatory(
        lambda v: integrand_M(v, B, omega),
        2.0 * math.pi / omega,
        tail,
        spec,
        core_scale=2.0 * abs(B),
    )


# ---------------------------------------------------------------------------
# general pair


def integrand_screwsum(v, A, B, omega):
    _, s2 = _half_angle(v, omega)
    q = _Q(v, A, B, omega)
    return -2.0 * (A + B) * s2 / (q * q)


def integrand_screwdiff(v, A, B, omega):
    # 1/Q + (A - B)(1 + cos omega v)/Q^2
    c2, _ = _half_angle(v, omega)
    q = _Q(v, A, B, omega)
    return (q + 2.0 * (A - B) * c2) / (q * q)


def integrand_g1x(v, A, B, omega):
    q = _Q(v, A, B, omega)
    return (2.0 * (B * np.cos(omega * v) - A) / q - 1.0) / q


def integrand_g2x(u, A, B, omega):
    q = _Q(u, A, B, omega)
    return (2.0 * (A * np.cos(omega * u) - B) / q + 1.0) / q


def integrand_g1y(v, A, B, omega):
    w2a2 = omega * omega * A * A
    s = np.sin(omega * v)
    q = _Q(v, A, B, omega)
    return (B * s - (v + w2a2 * B * s) / (w2a2 + 1.0)) / (q * q)


def integrand_g1z(v, A, B, omega):
    w2a2 = omega * omega * A * A
    s = np.sin(omega * v)
    q = _Q(v, A, B, omega)
    return (v - (omega * A * B * s + v) / (w2a2 + 1.0)) / (q * q)


def integrand_g2y(u, A, B, omega):
    return integrand_g1y(u, B, A, omega)


def integrand_g2z(u, A, B, omega):
    return integrand_g1z(u, B, A, omega)


def _tail_for(kind, A, B):
    """Tail models; every bound below holds for all v > 0 since Q >= v^2."""
    smax = (abs(A) + abs(B)) ** 2
    if kind == "screwsum":
        return TailModel(0.0, 2.0 * 2.0 * abs(A + B))
    if kind == "screwdiff":
        # f = 1/Q + (A - B)(1 + cos)/Q^2
        return TailModel(1.0, 2.0 * (smax + 2.0 * abs(A - B)))
    if kind == "g1x":
        return TailModel(-1.0, 2.0 * (smax + 2.0 * (abs(A) + abs(B))))
    if kind == "g2x":
        return TailModel(1.0, 2.0 * (smax + 2.0 * (abs(A) + abs(B))))
    raise KeyError(kind)


def _integrate_pair(integrand, kind, pair, spec):
    A, B, w = pair.A, pair.B, pair.omega
    _require_distinct(A, B)
    spec = spec or default_spec(A, B)
    return integrate_even_oscillatory(
        lambda v: integrand(v, A, B, w),
        2.0 * math.pi / w,
        _tail_for(kind, A, B),
        spec,
        core_scale=_core_scale(A, B),
    )


def eval_screwsum(pair, spec=None):
    """Sum of the gamma_1(0) and gamma_2(0) x-equations (halved)."""
    _require_distinct(pair.A, pair.B)
    if pair.A + pair.B == 0:
        # integrand vanishes identically
        return IntegralResult(0.0, 0.0, 0.0, 0, True, math.nan)
    return _integrate_pair(integrand_screwsum, "screwsum", pair, spec)


def eval_screwdiff(pair, spec=None):
    """Difference of the gamma_2(0) and gamma_1(0) x-equations (halved)."""
    return _integrate_pair(integrand_screwdiff, "screwdiff", pair, spec)


def _odd_component(integrand, pair, spec):
    """Integral of an odd integrand over the unfolded line.

    The two half-line tails cancel exactly, so the tail model is (0, 0) and
    the error bound is the quadrature and rounding estimate of both halves.
    """
    A, B, w = pair.A, pair.B, pair.omega
    spec = spec or default_spec(A, B)
    return integrate_line(
        lambda v: integrand(v, A, B, w), 2.0 * math.pi / w, TailModel(0.0, 0.0), spec,
        core_scale=_core_scale(A, B),
    )


def eval_gradient_at_origins(pair, spec=None):
    """All three gradient integrals at gamma_1(0) and at gamma_2(0)."""
    _require_distinct(pair.A, pair.B)
    r1x = _integrate_pair(integrand_g1x, "g1x", pair, spec)
    r2x = _integrate_pair(integrand_g2x, "g2x", pair, spec)
    odd = [
        _odd_component(f, pair, spec)
        for f in (integrand_g1y, integrand_g1z, integrand_g2y, integrand_g2z)
    ]
    g1 = (r1x.value, odd[0].value, odd[1].value)
    g2 = (r2x.value, odd[2].value, odd[3].value)
    errs = (
        (r1x.error_bound, odd[0].error_bound, odd[1].error_bound),
        (r2x.error_bound, odd[2].error_bound, odd[3].error_bound),
    )
    return GradientAtOrigin(g1, g2, errs)
