import math
import warnings

import numpy as np
import pytest

from helix_lab import stationary
from helix_lab.acceptance import cached_solution
from helix_lab.energy import HelixPair, eval_M, eval_screwsum
from helix_lab.errors import CoincidentHelices, NoBracket, OrientationViolation, PreconditionError
from helix_lab.stationary import (
    ScrewProblem,
    SweepRow,
    SweepTable,
    find_nonsymmetric_screwsum_root,
    mp_system_residuals,
    solve_symmetric_screw,
    stationarity_g,
    sweep_M,
    trend_verdict,
)

# bisection oracle values (alpha = beta = 1), tolerance 1e-8 on g
B_STAR = {10.0: 0.3256389994670966, 20.0: 0.35558301358696, 40.0: 0.3811908078100248,
          80.0: 0.399067181153283}


def test_problem_validation():
    with pytest.raises(PreconditionError):
        ScrewProblem(0.0, 1.0, 1.0)
    with pytest.raises(PreconditionError):
        ScrewProblem(10.0, -1.0, 1.0)
    with pytest.raises(PreconditionError):
        ScrewProblem(10.0, 0.0, 0.0)


def test_g_specializes_to_M_when_beta_is_zero():
    g, e = stationarity_g(0.4, ScrewProblem(10.0, 1.5, 0.0))
    m = eval_M(0.4, 10.0)
    assert g == pytest.approx(3.0 * m.value, rel=1e-15)
    assert e == pytest.approx(3.0 * m.error_bound)


@pytest.mark.parametrize("B", [1.0, 1.3])
def test_g_positive_outside_unit_interval(B):
    g, e = stationarity_g(B, ScrewProblem(5.0, 1.0, 0.5))
    assert g > e


def test_g_negative_at_small_radius():
    g, e = stationarity_g(0.1, ScrewProblem(10.0, 1.0, 1.0))
    assert g < -e


def test_g_rejects_nonpositive_radius():
    with pytest.raises(PreconditionError):
        stationarity_g(0.0, ScrewProblem(10.0, 1.0, 1.0))


def test_solve_requires_moebius_weight():
    with pytest.raises(PreconditionError):
        solve_symmetric_screw(ScrewProblem(10.0, 0.0, 1.0))


@pytest.mark.parametrize("w", sorted(B_STAR))
def test_screw_roots_match_reference(w):
    s = cached_solution(w)
    assert s.converged and not s.ambiguous
    assert abs(s.B_star - B_STAR[w]) < 1e-6
    assert abs(s.residual) <= 1e-8 + s.error_bound
    # root sign discipline: the area term is positive, so M must be negative
    assert eval_M(s.B_star, w).value < 0


def test_screw_roots_monotone_below_half():
    Bs = [cached_solution(w).B_star for w in sorted(B_STAR)]
    assert all(0 < b < 0.5 for b in Bs)
    assert all(b > a for a, b in zip(Bs, Bs[1:]))


def test_bisection_certificate():
    prob = ScrewProblem(10.0, 1.0, 1.0)
    s = cached_solution(10.0)
    lo, hi = s.bracket
    glo, elo = stationarity_g(lo, prob)
    ghi, ehi = stationarity_g(hi, prob)
    assert (glo > 0) != (ghi > 0)
    assert abs(glo) > elo and abs(ghi) > ehi


def test_moebius_only_root_is_closer_to_half():
    s0 = solve_symmetric_screw(ScrewProblem(40.0, 1.0, 0.0))
    assert s0.converged
    assert abs(s0.B_star - 0.3824) < 1e-3
    assert s0.B_star < 0.5
    assert 0.5 - s0.B_star < 0.5 - cached_solution(40.0).B_star


def test_path_consistency_with_mp_system():
    w = 10.0
    s = cached_solution(w)
    (r1, r2), (e1, e2) = mp_system_residuals(HelixPair(-s.B_star, s.B_star, w), 1.0, 1.0, with_bounds=True)
    assert r1 == 0.0
    assert abs(r2) <= 2 * (1e-8 + s.error_bound) + e2


def test_mp_orientation():
    with pytest.raises(OrientationViolation):
        mp_system_residuals(HelixPair(0.3, 0.5, 10.0), 1.0, 1.0)


def test_mp_general_screw_residuals_are_finite():
    r1, r2 = mp_system_residuals(HelixPair(-0.2, 0.5, 6.0), 1.0, 0.5)
    assert math.isfinite(r1) and math.isfinite(r2) and r1 != 0.0


def _fake_g(roots):
    def g(B, prob, spec=None):
        return float(np.prod([B - r for r in roots])), 1e-14
    return g


def test_multiple_brackets_are_reported(monkeypatch):
    monkeypatch.setattr(stationary, "stationarity_g", _fake_g([0.2, 0.6]))
    s = solve_symmetric_screw(ScrewProblem(10.0, 1.0, 1.0))
    assert s.ambiguous and len(s.brackets) == 2
    assert s.B_star == pytest.approx(0.6, abs=1e-8)


def test_no_bracket_reports_scan(monkeypatch):
    monkeypatch.setattr(stationary, "stationarity_g", lambda B, prob, spec=None: (1.0 + B, 1e-14))
    with pytest.raises(NoBracket) as info:
        solve_symmetric_screw(ScrewProblem(10.0, 1.0, 1.0))
    assert len(info.value.scanned) == stationary.SCAN_POINTS


def test_sweep_table_sorted_and_columns():
    t = sweep_M([0.7, 0.3], [20.0, 5.0])
    keys = [(r.tag, r.B, r.omega) for r in t]
    assert keys == sorted(keys)
    w, v, e = t.column(0.3)
    assert list(w) == [5.0, 20.0] and np.all(e >= 0)
    assert t.records()[0].keys() == {"tag", "B", "omega", "value", "error_bound"}
    with pytest.raises(PreconditionError):
        sweep_M([0.0], [5.0])


def test_sweep_M_small_B_column_decreasing():
    _, v, e = sweep_M([0.3], [20.0, 40.0, 80.0]).column(0.3)
    assert trend_verdict(v, e) == "decreasing"
    assert v[-1] < -4


def test_sweep_M_large_B_column_increasing():
    _, v, e = sweep_M([0.7], [5.0, 10.0, 20.0, 40.0, 80.0]).column(0.7)
    assert trend_verdict(v, e) == "increasing"


@pytest.mark.xfail(strict=True, reason="M(omega, 0.3) rises between omega = 5 and 10; see README")
def test_sweep_M_small_B_decreasing_from_five():
    _, v, e = sweep_M([0.3], [5.0, 10.0]).column(0.3)
    assert trend_verdict(v, e) == "decreasing"


def test_trend_verdict():
    assert trend_verdict([3, 2, 1], [0.1] * 3) == "decreasing"
    assert trend_verdict([1, 2, 3], [0.1] * 3) == "increasing"
    assert trend_verdict([-3, 2, -1.5], [0.1] * 3) == "shrinking"
    assert trend_verdict([1, 1.05, 2], [0.1] * 3) == "none"
    table = SweepTable([SweepRow(1.0, 0.5, 1.0, 0.0, "M")])
    assert len(table) == 1


def test_screwsum_root_endpoint():
    assert find_nonsymmetric_screwsum_root(-0.4, 7.0, (0.4, 0.9)) == 0.4


def test_screwsum_root_guards():
    with pytest.raises(CoincidentHelices):
        find_nonsymmetric_screwsum_root(0.5, 7.0, (0.2, 0.8))
    with pytest.raises(NoBracket):
        find_nonsymmetric_screwsum_root(-0.4, 7.0, (0.5, 0.9))


def test_screwsum_sign_is_fixed_by_A_plus_B():
    # only the symmetric root exists: sign(screwsum) = -sign(A + B)
    for A, B in [(-0.4, 0.3), (-0.4, 0.5), (0.2, 0.7), (-0.9, -0.2)]:
        r = eval_screwsum(HelixPair(A, B, 7.0))
        assert np.sign(r.value) == -np.sign(A + B)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        B = find_nonsymmetric_screwsum_root(-0.4, 7.0, (0.3, 0.55), tol=1e-10)
    assert abs(eval_screwsum(HelixPair(-0.4, B, 7.0)).value) <= 1e-10 + 1e-10
    assert abs(B - 0.4) < 1e-8
