import math

import mpmath
import numpy as np
import pytest

from spectral_gap_lab.stepsolver import (
    BracketError, StepProblem, quantization_residual, separation, solve_ground,
)


def dense_first_sign_change(p, samples=200_001):
    w = np.linspace(1e-6, p.omega_max - 1e-9, samples)
    f = np.array([quantization_residual(p, x) for x in w])
    i = int(np.nonzero(np.diff(np.sign(f)) < 0)[0][0])
    return w[i], w[i + 1]


def mp_root(L, c, vt, guess):
    mpmath.mp.dps = 40
    L, c, vt = mpmath.mpf(L), mpmath.mpf(c), mpmath.mpf(vt)
    l1, l2 = mpmath.mpf(1) / 2 - c / L, c / L

    def f(w):
        M = mpmath.sqrt(L ** 2 * vt - w ** 2)
        return M / w * mpmath.tanh(M * l2) - mpmath.tan(w * l1)
    return float(mpmath.findroot(f, guess))


def test_l1_l2_partition():
    p = StepProblem(50.0, 0.5, 1.0)
    assert p.l1 + p.l2 == 0.5
    assert p.l1 == pytest.approx(0.49)


@pytest.mark.parametrize("args", [(0.0, 0.5, 1.0), (1.0, 0.5, 1.0), (10.0, 0.5, 0.0)])
def test_problem_validation(args):
    with pytest.raises(ValueError):
        StepProblem(*args)


def test_residual_signs_at_branch_ends():
    p = StepProblem(50.0, 0.5, 1.0)
    assert quantization_residual(p, 1e-8) > 1e6
    assert quantization_residual(p, math.pi / (2 * p.l1) - 1e-10) < -1e6


def test_residual_at_barrier_top():
    p = StepProblem(2.0, 0.5, 0.25)  # L sqrt(vt) = 1 < pi / (2 l1)
    w = p.L * math.sqrt(p.vtilde)
    assert quantization_residual(p, w) == pytest.approx(-math.tan(w * p.l1), rel=1e-15)


def test_residual_out_of_range():
    p = StepProblem(50.0, 0.5, 1.0)
    with pytest.raises(ValueError):
        quantization_residual(p, 0.0)
    with pytest.raises(ValueError):
        quantization_residual(p, 51.0)


def test_residual_value_against_tabulation():
    p = StepProblem(50.0, 0.5, 1.0)
    lo, hi = dense_first_sign_change(p)
    assert quantization_residual(p, 1.0) > 0
    assert 1.0 < lo


@pytest.mark.parametrize("L", [25.0, 50.0, 100.0, 400.0])
def test_root_in_tabulated_bracket_and_matches_mpmath(L):
    p = StepProblem(L, 0.5, 1.0)
    root = solve_ground(p)
    lo, hi = dense_first_sign_change(p)
    assert lo <= root.omega0 <= hi
    assert root.omega0 == pytest.approx(mp_root(L, 0.5, 1.0, root.omega0), rel=1e-13)
    assert root.residual < 1e-12
    assert 0 < root.omega0 < p.omega_max
    assert root.ktilde0 == root.omega0 / L
    assert root.lambda0 == root.ktilde0 ** 2
    assert root.M0 == pytest.approx(math.sqrt(L ** 2 - root.omega0 ** 2), rel=1e-15)


def test_hard_wall_limit():
    p = StepProblem(10.0, 0.5, 1e6)
    assert solve_ground(p).omega0 * p.l1 == pytest.approx(math.pi / 2, rel=1e-3)


def test_scaled_wavenumber_increases_with_L():
    vals = [solve_ground(StepProblem(L, 0.5, 1.0)).omega0 * (0.5 - 0.5 / L)
            for L in (25, 50, 100, 200, 400)]
    assert all(a < b < math.pi / 2 for a, b in zip(vals, vals[1:]))


def test_separation_positive_and_scales_like_inverse_L():
    scaled = [separation(StepProblem(L, 0.5, 1.0)) * L for L in (50, 100, 200, 400, 800, 1600, 3200)]
    assert min(scaled) > 0
    # tail settles: last two doublings change by under 1%
    assert abs(scaled[-1] / scaled[-2] - 1) < 0.01


def test_separation_decreases_with_height():
    seps = [separation(StepProblem(50.0, 0.5, v)) for v in (1.0, 4.0, 16.0)]
    assert seps[0] > seps[1] > seps[2] > 0


def test_bracket_failure_reported():
    # barrier so strong that tan blows up before the residual can turn negative
    p = StepProblem(10.0, 4.9, 1e30)
    with pytest.raises(BracketError):
        solve_ground(p)
