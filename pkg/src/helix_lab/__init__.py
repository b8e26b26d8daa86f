"""Möbius-energy numerics for coaxial helix pairs.

Real-line gradient integrals with certified error bounds, the complex-plane
pole and residue structure of the symmetric-pair integrand, and stationary
symmetric screws of the Möbius-Plateau energy.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .quadrature import (
    IntegralResult,
    QuadSpec,
    TailModel,
    default_spec,
    integrate_even_oscillatory,
    integrate_line,
    tail_model_for_M,
)
from .energy import (
    GradientAtOrigin,
    HelixPair,
    eval_gradient_at_origins,
    eval_M,
    eval_screwdiff,
    eval_screwsum,
    integrand_M,
)
from .cplane import (
    ContourSpec,
    Family,
    MeroParams,
    PoleRecord,
    approx_poles,
    count_zeros_argument_principle,
    emit_branch_curves,
    eta_contour_check,
    eval_F,
    eval_F_tilde,
    eval_F_tilde_limit,
    refine_pole,
    residue_circular,
)
from .stationary import (
    ScrewProblem,
    ScrewSolution,
    SweepTable,
    find_nonsymmetric_screwsum_root,
    mp_system_residuals,
    solve_symmetric_screw,
    stationarity_g,
    sweep_M,
)
