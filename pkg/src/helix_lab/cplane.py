"""Complex-plane machinery for the symmetric-pair integrand F(z).

With D-(z) = 2B cos(omega z / 2) - i z and D+(z) = 2B cos(omega z / 2) + i z,

    F = -i(2B-1)/(4 B z D-) + i(2B-1)/(4 B z D+) - 1/(4 B D-^2) - 1/(4 B D+^2),

and the four terms are F1..F4 in that order. The minus family F- = F1 + F3
and the plus family F+ = F2 + F4 are grouped by the sign of iz in D.

Dilating z -> 2z/omega turns D-/2B into h-(z) = cos z - i z/(omega B) and D+/2B
into h+(z) = cos z + i z/(omega B). Everything about poles is computed in
those rescaled coordinates, where the upper-half-plane zeros of h- sit in the
strips (n pi, (n + sgn n) pi) for odd n and those of h+ in the even-n strips,
plus one in each of (0, pi) and (-pi, 0).
"""

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import (
    BoundaryTooClose,
    DegenerateRadius,
    DomainViolation,
    NewtonDiverged,
    NoConvergence,
    PoleHit,
    PoleOnBoundary,
    PreconditionError,
    StripEscape,
    WeakCouplingWarning,
)
from .quadrature import segment_rule

PI = math.pi
COUPLING_THRESHOLD = 0.7  # omega*B above this gives one pole per designated strip
_EPS = np.finfo(float).eps


class Family(str, Enum):
    MINUS = "minus"
    PLUS = "plus"

    @property
    def sign(self):
        """Sign of iz in the denominator factor."""
        return -1 if self is Family.MINUS else 1


@dataclass(frozen=True)
class MeroParams:
    B: float
    omega: float

    def __post_init__(self):
        if self.B == 0:
            raise DegenerateRadius("B = 0")
        if not self.omega > 0:
            raise PreconditionError("omega must be > 0")

    @property
    def coupling(self):
        return self.omega * self.B


@dataclass
class PoleRecord:
    family: Family
    index: int
    side: int  # +1 / -1; distinguishes the pseudo-indices +0 and -0
    seed: complex
    refined: complex
    residual: float
    residue: complex  # residue of the rescaled family function at `refined`
    newton_iters: int
    converged: bool
    strip: tuple = field(default=(math.nan, math.nan))

    @property
    def label(self):
        if self.index == 0:
            return "+0" if self.side > 0 else "-0"
        return str(self.index)

    def as_row(self, p):
        return {
            "family": self.family.value,
            "n": self.label,
            "omega": p.omega,
            "B": p.B,
            "seed_re": self.seed.real,
            "seed_im": self.seed.imag,
            "refined_re": self.refined.real,
            "refined_im": self.refined.imag,
            "residual": self.residual,
            "residue_re": self.residue.real,
            "residue_im": self.residue.imag,
        }


@dataclass(frozen=True)
class ContourSpec:
    """Positively oriented axis-aligned rectangle.

    ``nodes_per_side`` is an int or one int per side.
    """

    vertices: tuple
    nodes_per_side: object = 256

    def __post_init__(self):
        v = [complex(z) for z in self.vertices]
        if len(v) != 4:
            raise PreconditionError("a rectangle needs four vertices")
        xs = sorted({z.real for z in v})
        ys = sorted({z.imag for z in v})
        if len(xs) != 2 or len(ys) != 2:
            raise PreconditionError("vertices must form an axis-aligned rectangle")
        area = 0.5 * sum((v[k].conjugate() * v[(k + 1) % 4]).imag for k in range(4))
        if area <= 0:
            raise PreconditionError("rectangle must be positively oriented")
        object.__setattr__(self, "vertices", tuple(v))

    @classmethod
    def box(cls, x0, x1, y0, y1, nodes_per_side=256):
        return cls((complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)), nodes_per_side)

    def side_nodes(self):
        n = self.nodes_per_side
        return list(n) if isinstance(n, (tuple, list)) else [n] * 4


@dataclass(frozen=True)
class ContourResult:
    total: complex
    sides: tuple
    lengths: tuple


# ---------------------------------------------------------------------------
# evaluation


def _inv_cos_plus(w, u):
    """1 / (cos w + u), stable when |Im w| is large enough for cos to overflow."""
    w = np.asarray(w, dtype=complex)
    u = np.broadcast_to(np.asarray(u, dtype=complex), w.shape)
    out = np.empty(w.shape, dtype=complex)
    small = np.abs(w.imag) < 20.0
    with np.errstate(divide="ignore", invalid="ignore"):
        out[small] = 1.0 / (np.cos(w[small]) + u[small])
        wb = w[~small]
        e = np.exp(1j * np.sign(wb.imag) * wb)  # the decaying exponential
        sec = 2.0 * e / (1.0 + e * e)
        out[~small] = sec / (1.0 + u[~small] * sec)
    return out


def _check_finite(vals, guard=1e14):
    vals = np.asarray(vals)
    if not np.all(np.isfinite(vals)) or np.any(np.abs(vals) > guard):
        raise PoleHit("evaluation point is (numerically) a pole")


def _inv_D(z, p, sign):
    """1 / D(z) with D = 2B cos(omega z/2) + sign * i z."""
    B = p.B
    return _inv_cos_plus(0.5 * p.omega * z, sign * 1j * z / (2.0 * B)) / (2.0 * B)


def eval_F_terms(z, p):
    """The four partial-fraction terms F1..F4, stacked along axis 0."""
    z = np.asarray(z, dtype=complex)
    B = p.B
    rm = _inv_D(z, p, -1)
    rp = _inv_D(z, p, +1)
    _check_finite(rm)
    _check_finite(rp)
    k = (2.0 * B - 1.0) / (4.0 * B)
    with np.errstate(divide="ignore", invalid="ignore"):
        F1 = -1j * k * rm / z
        F2 = 1j * k * rp / z
    F3 = -rm * rm / (4.0 * B)
    F4 = -rp * rp / (4.0 * B)
    return np.stack([F1, F2, F3, F4])


def eval_F(z, p):
    """F1 + F2 + F3 + F4; the removable point z = 0 returns (B-1)/(4B^3)."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty(z.shape, dtype=complex)
    # the 1/z cancellation between F1 and F2 loses ~eps/|z| near the origin
    near = np.abs(z) < 1e-6
    out[~near] = eval_F_terms(z[~near], p).sum(axis=0)
    if near.any():
        B, w = p.B, p.omega
        zn = z[near]
        c = np.cos(0.5 * w * zn)
        q = 4.0 * B * B * c * c + zn * zn
        out[near] = (4.0 * B * (B - 1.0) * c * c + zn * zn) / (q * q)
    return out[0] if scalar else out


def inv_h(z, family, p):
    """1 / h(z) with h = cos z + sign * i z / (omega B)."""
    z = np.asarray(z, dtype=complex)
    return _inv_cos_plus(z, Family(family).sign * 1j * z / p.coupling)


def h_value(z, family, p):
    z = np.asarray(z, dtype=complex)
    return np.cos(z) + Family(family).sign * 1j * z / p.coupling


def h_prime(z, family, p):
    z = np.asarray(z, dtype=complex)
    return -np.sin(z) + Family(family).sign * 1j / p.coupling


def eval_F_tilde(z, term, p):
    """Rescaled term (2/omega) F_i(2z/omega) from its closed form.

    ``term`` is 1..4, or a family ("minus" = F1 + F3, "plus" = F2 + F4).
    """
    z = np.asarray(z, dtype=complex)
    B, w = p.B, p.omega
    if term in (Family.MINUS, "minus"):
        return eval_F_tilde(z, 1, p) + eval_F_tilde(z, 3, p)
    if term in (Family.PLUS, "plus"):
        return eval_F_tilde(z, 2, p) + eval_F_tilde(z, 4, p)
    fam = Family.MINUS if term in (1, 3) else Family.PLUS
    r = inv_h(z, fam, p)
    _check_finite(r)
    with np.errstate(divide="ignore", invalid="ignore"):
        if term == 1:
            return -1j * (2 * B - 1) / (8 * B * B * z) * r
        if term == 2:
            return 1j * (2 * B - 1) / (8 * B * B * z) * r
    if term in (3, 4):
        return -r * r / (8.0 * w * B**3)
    raise PreconditionError(f"unknown term {term!r}")


def eval_F_tilde_scaled(z, term, p):
    """(2/omega) F_i(2z/omega) through the unscaled terms; cross-check path."""
    z = np.asarray(z, dtype=complex)
    terms = eval_F_terms(2.0 * z / p.omega, p) * (2.0 / p.omega)
    if term in (Family.MINUS, "minus"):
        return terms[0] + terms[2]
    if term in (Family.PLUS, "plus"):
        return terms[1] + terms[3]
    return terms[int(term) - 1]


def eval_F_tilde_limit(z, family, B):
    """omega -> infinity limit of the rescaled family function."""
    z = np.asarray(z, dtype=complex)
    s = 1 if Family(family) is Family.MINUS else -1
    return -s * 1j * (2 * B - 1) / (8 * B * B * z * np.cos(z))


# ---------------------------------------------------------------------------
# poles


def _warn_coupling(p):
    if p.coupling <= COUPLING_THRESHOLD:
        warnings.warn(
            f"omega*B = {p.coupling:.3g} <= {COUPLING_THRESHOLD}: "
            "one pole per strip is not guaranteed",
            WeakCouplingWarning,
            stacklevel=3,
        )


def pole_indices(family, indices):
    """Expand integer indices into (n, side) pairs; 0 in the plus family gives +0 and -0."""
    family = Family(family)
    out = []
    for n in indices:
        n = int(n)
        if n == 0:
            if family is Family.MINUS:
                raise PreconditionError("index 0 exists only for the plus family")
            out.extend([(0, 1), (0, -1)])
        else:
            out.append((n, 1 if n > 0 else -1))
    return out


def seed_location(family, n, side, p):
    family = Family(family)
    c = p.coupling
    if n == 0:
        if family is Family.MINUS:
            raise PreconditionError("index 0 exists only for the plus family")
        return complex(side * PI / 2, 0.0)
    sg = 1 if n > 0 else -1
    if family is Family.MINUS:
        return complex(2 * n * PI - sg * PI / 2, math.asinh(2 * abs(n) * PI / c - PI / (2 * c)))
    return complex(2 * n * PI + sg * PI / 2, math.asinh(2 * abs(n) * PI / c + PI / (2 * c)))


def approx_poles(family, indices, p):
    """Closed-form approximate upper-half-plane pole locations.

    Returns a list of (n, side, seed) triples.
    """
    _warn_coupling(p)
    return [(n, s, seed_location(family, n, s, p)) for n, s in pole_indices(family, indices)]


def designated_strip(family, n, side=1):
    """Strip that must hold the pole with index n (side picks +0 or -0)."""
    family = Family(family)
    if n == 0:
        if family is Family.MINUS:
            raise PreconditionError("index 0 exists only for the plus family")
        return (0.0, PI) if side > 0 else (-PI, 0.0)
    if family is Family.MINUS:
        k = 2 * n - 1 if n > 0 else 2 * n
    else:
        k = 2 * n if n > 0 else 2 * n - 1
    return (k * PI, (k + 1) * PI)


def strip_of(x):
    """The strip (k pi, (k+1) pi) containing the abscissa x."""
    k = math.floor(x / PI)
    return (k * PI, (k + 1) * PI)


def owning_family(strip):
    """Family whose upper-half-plane pole lives in the given strip, else None."""
    k = round(strip[0] / PI)
    if k in (0, -1):
        return Family.PLUS
    # positive strips (k pi, (k+1) pi): minus for odd k; negative ones mirror
    m = k if k > 0 else -(k + 1)
    return Family.MINUS if m % 2 == 1 else Family.PLUS


def _newton_system(x, y, s, c):
    cx, sx = math.cos(x), math.sin(x)
    ch, sh = math.cosh(y), math.sinh(y)
    # h = cos z + s i z / c = (cx ch - s y / c) + i (-sx sh + s x / c)
    G = np.array([cx * ch - s * y / c, sx * sh - s * x / c])
    J = np.array([[-sx * ch, cx * sh - s / c], [cx * sh - s / c, sx * ch]])
    return G, J


def _rounding_floor(x, y, c):
    # cos(x) carries an absolute error ~ |x| eps, amplified by cosh(y)
    r = math.hypot(x, y)
    return 16 * _EPS * ((1.0 + r) * math.cosh(y) + r / c)


def refine_pole(seed, family, p, tol=1e-13, max_iter=60, index=None, side=None):
    """Newton refinement of a zero of h on the real 2-D system.

    The strip containing the seed is the one the result must stay in.
    """
    family = Family(family)
    _warn_coupling(p)
    c = p.coupling
    s = family.sign
    seed = complex(seed)
    lo, hi = strip_of(seed.real)
    x, y = seed.real, seed.imag
    resid = math.inf
    it = 0
    for it in range(1, max_iter + 1):
        G, J = _newton_system(x, y, s, c)
        resid = math.hypot(G[0], G[1])
        if resid <= max(tol, _rounding_floor(x, y, c)) and it > 1:
            break
        try:
            dx, dy = np.linalg.solve(J, -G)
        except np.linalg.LinAlgError as exc:
            raise NewtonDiverged(f"singular Jacobian at {complex(x, y)}") from exc
        x += dx
        y += dy
        if not (lo - PI / 2 <= x <= hi + PI / 2) or not math.isfinite(y):
            raise StripEscape(f"iterate {complex(x, y)} left strip ({lo:.4g}, {hi:.4g})")
    else:
        G, _ = _newton_system(x, y, s, c)
        resid = math.hypot(G[0], G[1])
    z = complex(x, y)
    resid = float(abs(h_value(z, family, p)))
    converged = resid <= max(tol, _rounding_floor(x, y, c))
    if not converged and it >= max_iter:
        raise NewtonDiverged(f"no convergence from seed {seed} (residual {resid:.3g})")
    if not (lo < x < hi) or y < 0:
        raise StripEscape(f"refined pole {z} is outside strip ({lo:.4g}, {hi:.4g}) x (0, inf)")
    # every other singularity of the family function is at least pi/2 away
    res = residue_circular(z, 0.5, lambda u: eval_F_tilde(u, family, p), order_hint=2)
    if index is None:
        index = 0
    if side is None:
        side = 1 if x > 0 else -1
    return PoleRecord(family, index, side, seed, z, resid, res, it, converged, (lo, hi))


def poles(family, indices, p, tol=1e-13):
    """Seed and refine the poles with the given indices."""
    return [
        refine_pole(seed, family, p, tol=tol, index=n, side=s)
        for n, s, seed in approx_poles(family, indices, p)
    ]


def poles_in_box(p, x_max):
    """Refined upper-half-plane poles of both families with |Re| < x_max (rescaled)."""
    out = []
    nmax = int(x_max / (2 * PI)) + 2
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", WeakCouplingWarning)
        for fam in Family:
            idx = [n for n in range(-nmax, nmax + 1) if n != 0 or fam is Family.PLUS]
            for rec in poles(fam, idx, p):
                if abs(rec.refined.real) < x_max:
                    out.append(rec)
    return out


# ---------------------------------------------------------------------------
# contour integrals


def residue_circular(center, radius, f, order_hint=1, tol=1e-11, max_nodes=1 << 16):
    """(1/2 pi i) times the integral of f over a circle, by the periodic trapezoid rule."""
    if not radius > 0:
        raise PreconditionError("radius must be > 0")
    n = 32 if order_hint <= 1 else 64
    prev = None
    while n <= max_nodes:
        theta = 2.0 * PI * np.arange(n) / n
        e = radius * np.exp(1j * theta)
        vals = np.asarray(f(center + e), dtype=complex)
        cur = complex(np.mean(vals * e))
        if prev is not None:
            scale = max(abs(cur), tol * radius * float(np.mean(np.abs(vals))))
            if abs(cur - prev) <= tol * scale:
                return cur
        prev = cur
        n *= 2
    raise NoConvergence(f"residue at {center} did not settle; shrink the radius")


def contour_rectangle(rect, f, guard=1e12):
    """Line integral of f around the rectangle, side by side."""
    v = rect.vertices
    sides = []
    lengths = []
    for k, nodes in enumerate(rect.side_nodes()):
        z0, z1 = v[k], v[(k + 1) % 4]
        z, w = segment_rule(z0, z1, max(1, math.ceil(nodes / 16)), 16)
        try:
            vals = np.asarray(f(z), dtype=complex)
        except PoleHit as exc:
            raise PoleOnBoundary(f"side {k + 1} of the contour runs through a pole") from exc
        if not np.all(np.isfinite(vals)) or np.any(np.abs(vals) > guard):
            raise PoleOnBoundary(f"integrand blows up on side {k + 1} of the contour")
        sides.append(complex(np.sum(vals * w)))
        lengths.append(abs(z1 - z0))
    return ContourResult(sum(sides), tuple(sides), tuple(lengths))


def argument_principle_value(rect, family, p):
    """(1/2 pi i) of the integral of h'/h around the rectangle (unrounded)."""
    res = contour_rectangle(rect, lambda z: h_prime(z, family, p) / h_value(z, family, p), guard=1e8)
    return res.total / (2j * PI)


def count_zeros_argument_principle(rect, family, p):
    """Number of zeros of h inside the rectangle."""
    val = argument_principle_value(rect, family, p)
    n = round(val.real)
    if abs(val - n) > 0.1:
        raise BoundaryTooClose(f"winding value {val:.4g} is not near an integer")
    return int(n)


def strip_rectangle(k, p, y0=0.0, nodes_per_side=256):
    """Rectangle over the strip (k pi, (k+1) pi) reaching above any pole it can hold."""
    xmax = (abs(k) + 1) * PI
    top = math.asinh(xmax / p.coupling + PI) + 2.5
    return ContourSpec.box(k * PI, (k + 1) * PI, y0, top, nodes_per_side)


def residue_sum_partial(B, K):
    """((2B - 1)/B^2) times the odd harmonic partial sum up to 1/(2K + 1)."""
    if B == 0:
        raise DegenerateRadius("B = 0")
    if K < 0:
        raise PreconditionError("K must be non-negative")
    return (2 * B - 1) / (B * B) * math.fsum(1.0 / (2 * k + 1) for k in range(K + 1))


def pole_asymptotics_ratio(family, n, omega_list, B, side=None):
    """lambda_n / z_n for each omega, with z_n the refined pole."""
    family = Family(family)
    if side is None:
        side = 1 if n >= 0 else -1
    out = []
    for w in omega_list:
        p = MeroParams(B, w)
        seed = seed_location(family, n, side, p)
        rec = refine_pole(seed, family, p, index=n, side=side)
        out.append(seed / rec.refined)
    return out


# ---------------------------------------------------------------------------
# the eta_R square


def eta_square(R, p, panels_per_period=8):
    """The square -R, R, R + iR, -R + iR with enough panels to resolve F."""
    period = 2 * PI / p.omega
    n = 16 * max(8, math.ceil(2 * R / period * panels_per_period))
    m = 16 * max(8, math.ceil(R / period * panels_per_period))
    return ContourSpec((complex(-R, 0), complex(R, 0), complex(R, R), complex(-R, R)), (n, m, n, m))


def auto_radius(target, p):
    """R near ``target`` midway between consecutive pole abscissas of F."""
    X = 0.5 * p.omega * target  # rescaled abscissa
    xs = sorted(rec.refined.real for rec in poles_in_box(p, X + 4 * PI) if rec.refined.real > 0)
    xs = [0.0] + xs
    for a, b in zip(xs[:-1], xs[1:]):
        if a <= X < b:
            return (a + b) / p.omega  # (2/omega) * (a + b)/2
    raise PreconditionError(f"no pole bracket near R = {target}")


@dataclass(frozen=True)
class EtaCheck:
    R: float
    contour: ContourResult
    residue_total: complex  # 2 pi i times the enclosed residues
    n_poles: int

    @property
    def mismatch(self):
        return abs(self.contour.total - self.residue_total)

    @property
    def relative_mismatch(self):
        return self.mismatch / abs(self.residue_total)

    @property
    def side_pair_sum(self):
        return self.contour.sides[1] + self.contour.sides[3]


def eta_contour_check(R, p, panels_per_period=8):
    """Integral of F over eta_R against 2 pi i times the enclosed residues."""
    rect = eta_square(R, p, panels_per_period)
    res = contour_rectangle(rect, lambda z: eval_F(z, p))
    X = 0.5 * p.omega * R
    nearby = poles_in_box(p, X + PI)
    guard = 1e-3 * PI  # a thousandth of a strip width, in rescaled units
    for rec in nearby:
        x, y = abs(rec.refined.real), rec.refined.imag
        if (abs(x - X) < guard and y <= X + guard) or (abs(y - X) < guard and x <= X + guard):
            raise PoleOnBoundary(f"pole {rec.refined} within guard of the contour")
    # residues transport unchanged under the dilation z -> 2z/omega
    enclosed = [rec for rec in nearby if abs(rec.refined.real) < X and rec.refined.imag < X]
    total = 2j * PI * complex(math.fsum(r.residue.real for r in enclosed),
                              math.fsum(r.residue.imag for r in enclosed))
    return EtaCheck(R, res, total, len(enclosed))


# ---------------------------------------------------------------------------
# branch curves


@dataclass(frozen=True)
class BranchCurves:
    strip: tuple
    family: Family
    sine_x: np.ndarray  # Gamma_S, y as a function of x
    sine_y: np.ndarray
    cosine_x: np.ndarray  # Gamma_C, x as a function of y
    cosine_y: np.ndarray


def _branch_funcs(n, c):
    """Gamma_S y(x) and Gamma_C x(y) for a strip index n >= 0."""
    if n % 2 == 1:
        def gs(x):
            return np.arcsinh(-x / (c * np.sin(x)))

        def gc(y):
            arg = -y / (c * np.cosh(y))
            if np.any(np.abs(arg) > 1):
                raise DomainViolation("arccos argument outside [-1, 1]; omega*B too small")
            return (n + 1) * PI - np.arccos(arg)
    else:
        def gs(x):
            return np.arcsinh(x / (c * np.sin(x)))

        def gc(y):
            arg = y / (c * np.cosh(y))
            if np.any(np.abs(arg) > 1):
                raise DomainViolation("arccos argument outside [-1, 1]; omega*B too small")
            return n * PI + np.arccos(arg)
    return gs, gc


def emit_branch_curves(strip_index, p, samples=400, y_max=None):
    """Sampled Gamma_S and Gamma_C for the strip between n pi and (n + sgn n) pi.

    Odd n belongs to the minus family and even n (0 meaning (0, pi)) to the plus
    family. Negative n is the mirror image x -> -x.
    """
    _warn_coupling(p)
    n = int(strip_index)
    m = abs(n)
    c = p.coupling
    gs, gc = _branch_funcs(m, c)
    if y_max is None:
        y_max = math.asinh((m + 1) * PI / c) + 3.0
    ys = np.linspace(0.0, y_max, samples)
    xc = gc(ys)
    pad = 1e-6 * PI
    xs = np.linspace(m * PI + pad, (m + 1) * PI - pad, samples)
    ysn = gs(xs)
    sg = -1 if n < 0 else 1
    strip = tuple(sorted((sg * m * PI, sg * (m + 1) * PI)))
    fam = Family.MINUS if m % 2 == 1 else Family.PLUS
    return BranchCurves(strip, fam, sg * xs, ysn, sg * xc, ys)


def branch_intersection(strip_index, p, y_max=None):
    """Crossing of Gamma_C with Gamma_S in the strip, as a complex number."""
    n = int(strip_index)
    m = abs(n)
    c = p.coupling
    gs, gc = _branch_funcs(m, c)
    if y_max is None:
        y_max = math.asinh((m + 1) * PI / c) + 3.0

    def gap(y):
        return float(gs(gc(y))) - y

    y = brentq(gap, 1e-9, y_max, xtol=1e-15, rtol=4 * _EPS, maxiter=500)
    x = float(gc(y))
    return complex(-x if n < 0 else x, y)


# ---------------------------------------------------------------------------
# fixed constants behind the one-pole-per-strip argument


def tanh_fixed_point():
    """Positive root of y tanh(y) = 1."""
    return brentq(lambda y: y * math.tanh(y) - 1.0, 0.5, 2.0, xtol=1e-15)


def inf_x2csc2_first_interval():
    """Infimum of x^2 csc^2(x) over (3pi/2 - 1/pi, 3pi/2)."""
    a, b = 1.5 * PI - 1.0 / PI, 1.5 * PI

    def g(x):
        return (x / math.sin(x)) ** 2

    r = minimize_scalar(g, bounds=(a, b), method="bounded", options={"xatol": 1e-12})
    return min(r.fun, g(a), g(b))


def sup_sech_term(y_min=1.2):
    """Supremum of (y tanh y - 1) sech y over y > y_min."""
    def neg(y):
        return -(y * math.tanh(y) - 1.0) / math.cosh(y)

    r = minimize_scalar(neg, bounds=(y_min, 40.0), method="bounded", options={"xatol": 1e-12})
    return max(-r.fun, -neg(y_min))
