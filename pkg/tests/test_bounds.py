import math
from types import SimpleNamespace

import numpy as np
import pytest

from spectral_gap_lab import bounds as B, potentials as P
from spectral_gap_lab.eigensolver import EigenResult, discretize, lowest_two, solve_extrapolated


@pytest.fixture(scope="module")
def step_100():
    return solve_extrapolated(P.step(0.5, 1.0), 100.0)


@pytest.fixture(scope="module")
def free_20():
    return lowest_two(discretize(P.zero(), 20.0, 4000))


def fake(lam0, inf_phi=1.0, sup_phi=1.0, err=0.0, lam1=None):
    phi = np.array([sup_phi, inf_phi, sup_phi])
    return EigenResult(lam0, lam0 + 1 if lam1 is None else lam1, phi, np.zeros(3), err)


def test_kirsch_equality_for_free_laplacian(free_20):
    assert B.kirsch_bound(free_20, 20.0) == pytest.approx(free_20.gap, rel=1e-6)


def test_kirsch_never_exceeds_free_gap():
    assert B.kirsch_bound(fake(0.1, 0.3, 0.9), 10.0) <= math.pi ** 2 / 100
    assert B.kirsch_bound(fake(0.1, 0.3, 0.9), 10.0) == pytest.approx(math.pi ** 2 / 900)


def test_lemma_collapses_for_zero_potential(free_20):
    assert B.lemma_bound(free_20, P.zero(), 20.0) == pytest.approx(math.pi ** 2 / 400, rel=1e-12)
    assert B.intermediate_ratio_check(free_20, P.zero(), 20.0)


def test_lemma_prefactor_quarter():
    spec = P.step(0.5, 1.0)
    assert B.coupling_factor(spec) ** 2 == 0.25
    # choose lambda0 so the cosine argument vanishes: prefactor times pi^2/L^2
    assert B.lemma_bound(fake(0.0), spec, 20.0) == pytest.approx(0.25 * math.pi ** 2 / 400)


def test_lemma_rejects_large_coupling_and_small_L():
    with pytest.raises(B.HypothesisError):
        B.lemma_bound(fake(0.0), P.step(1.0, 1.0), 20.0)
    with pytest.raises(B.GateError):
        B.lemma_bound(fake(0.0), P.step(0.5, 1.0), 4.0)


def test_step_bounds_dominated(step_100):
    spec = P.step(0.5, 1.0)
    top = step_100.gap + B.domination_slack(step_100)
    assert B.kirsch_bound(step_100, 100.0) <= top
    assert B.lemma_bound(step_100, spec, 100.0) <= top
    assert B.compose_theorem(step_100, spec, 100.0) <= B.lemma_bound(step_100, spec, 100.0)
    assert B.intermediate_ratio_check(step_100, spec, 100.0)


def test_intermediate_vacuous_for_negative_prefactor():
    spec = P.step(1.0, 1.0)
    assert B.coupling_factor(spec) < 0
    assert B.intermediate_ratio_check(fake(0.0, 1e-6, 1.0), spec, 20.0)
    assert not B.bound_report(fake(0.0, 1e-6, 1.0), spec, 20.0).hypotheses.lemma_ok


def test_theorem_gate():
    spec = P.step(0.5, 1.0)
    with pytest.raises(B.GateError):
        B.compose_theorem(fake(0.0), spec, 20.0)
    k0 = (math.pi / 2 - 0.1) / (10.0 - 0.5)
    val = B.compose_theorem(fake(k0 ** 2), spec, 20.0)
    assert val == pytest.approx(0.25 * math.pi ** 2 / 400 * 0.25 * 0.01, rel=1e-9)


@pytest.mark.parametrize("s", np.linspace(-0.49, 0.49, 21))
def test_quadratic_minorant_below_cosine(s):
    spec = P.step(0.5, 1.0)
    L = 20.0
    k0 = (math.pi / 2 - s) / (L / 2 - spec.b)
    res = fake(k0 ** 2)
    assert B.compose_theorem(res, spec, L) <= B.lemma_bound(res, spec, L) * (1 + 1e-12)


def test_report_fields(step_100):
    rep = B.bound_report(step_100, P.step(0.5, 1.0), 100.0)
    assert rep.lemma_gate and rep.theorem_gate
    assert rep.dominated_kirsch and rep.dominated_lemma and rep.dominated_theorem
    assert rep.violations == []
    assert min(rep.kirsch_rhs, rep.lemma_rhs, rep.theorem_rhs) >= 0
    assert rep.to_dict()["hypotheses"]["small_coupling"]


def test_report_flags_violation():
    rep = B.bound_report(fake(0.0, 1.0, 1.0, lam1=1e-9), P.step(0.5, 1.0), 20.0)
    assert rep.dominated_kirsch is False
    assert "kirsch" in rep.violations


def test_report_skips_bounds_without_hypotheses():
    res = solve_extrapolated(P.zero(), 20.0)
    rep = B.bound_report(res, P.zero(), 20.0)
    assert rep.lemma_rhs is None and rep.theorem_rhs is None
    assert rep.dominated_kirsch


def rows(Ls, gaps, seps=None):
    seps = seps or [None] * len(Ls)
    return [SimpleNamespace(L=L, gap=g, separation=s) for L, g, s in zip(Ls, gaps, seps)]


def test_fit_recovers_synthetic_power_law():
    Ls = np.geomspace(10, 1000, 7)
    fit = B.fit_exponent(rows(Ls, 3.0 * Ls ** -2.7, list(5.0 / Ls + 1 / Ls ** 2)))
    assert fit.exponent_p == pytest.approx(2.7, rel=1e-12)
    assert fit.amplitude_c == pytest.approx(3.0, rel=1e-10)
    assert fit.r_squared == pytest.approx(1.0)
    assert fit.beta_hat == pytest.approx(3.0 * 10 ** 1.3)
    assert fit.delta_hat == pytest.approx(5.0 + 1 / 1000)


def test_fit_r_squared_below_one_for_noisy_data():
    Ls = np.geomspace(10, 1000, 6)
    fit = B.fit_exponent(rows(Ls, Ls ** -2.0 * np.array([1, 1.3, 0.8, 1.1, 0.9, 1.2])))
    assert 0 < fit.r_squared < 1


@pytest.mark.parametrize("Ls", [[1, 2, 3, 4], [1, 2, 2, 3, 4]])
def test_fit_rejects_bad_sweeps(Ls):
    with pytest.raises(ValueError):
        B.fit_exponent(rows(Ls, [1.0] * len(Ls)))
