"""Analytic stability criterion, Arrhenius specialization, critical curve."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detstab import (
    ArrheniusIgnition,
    DomainError,
    ModelParams,
    OriginalParams,
    StepIgnition,
    T1,
    T2,
    check_arrhenius,
    check_criterion,
    check_criterion_original,
    criterion_bound,
    critical_activation_energy,
    homotopy_family,
    rescale,
)
from conftest import make_arrhenius, random_families


# ---------------------------------------------------------------------------
# check_criterion
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("q,omega", [(0.3, 1.0), (0.1, 0.5), (0.45, 0.95), (0.05, 0.2)])
def test_step_margin_closed_form(q, omega):
    # step log-slope is 0, and the bound's minimum over the range is
    # omega/q, attained at u = 2
    params = ModelParams(q=q, omega=omega)
    report = check_criterion(params, StepIgnition(1.0))
    assert report.satisfied
    assert report.margin == pytest.approx(-omega / q, rel=1e-12)
    assert report.worst_u == pytest.approx(2.0, abs=1e-9)
    assert report.u_range == (params.u_minus, 2.0)


def test_zero_activation_energy_satisfied():
    params = ModelParams(q=0.4, omega=1.0)
    report = check_arrhenius(params, 0.0, T1)
    assert report.satisfied
    assert report.margin < 0.0


def test_sufficient_condition_log_slope_below_omega_over_q():
    # any phi with (ln phi)' < omega/q everywhere passes
    params = ModelParams(q=0.3, omega=1.0)
    # T2 Arrhenius: (ln phi)' = E/u^2 <= E/u_lim^2; choose E with E/u_lim^2 < omega/q
    E = 0.9 * (params.omega / params.q) * params.u_minus**2
    assert E < 4 * params.omega / params.q  # sanity: inside the sharp threshold too
    report = check_arrhenius(params, E, T2)
    assert report.satisfied


@pytest.mark.parametrize("q,omega", [(0.3, 1.0), (0.2, 0.6), (0.45, 1.0)])
def test_linear_temperature_threshold(q, omega):
    # satisfied iff E <= 4*omega/q for the linear temperature
    params = ModelParams(q=q, omega=omega)
    thr = 4.0 * omega / q
    assert check_arrhenius(params, 0.999 * thr, T2).satisfied
    assert not check_arrhenius(params, 1.001 * thr, T2).satisfied


def test_quadratic_temperature_small_ratio_always_passes():
    # u_lim >= 1.5 iff q/omega <= 0.375, and the temperature slope is
    # nonpositive on [1.5, 2]: no constraint at any activation energy
    for ratio in (0.1, 0.25, 0.375):
        params = ModelParams(q=ratio, omega=1.0)
        assert check_arrhenius(params, 1000.0, T1).satisfied


def test_quadratic_temperature_benchmark_failure_point():
    params = ModelParams(q=0.49, omega=1.0)
    assert not check_arrhenius(params, 40.0, T1).satisfied


def test_borderline_ignition_note_for_linear_temperature():
    params = ModelParams(q=0.3, omega=1.0)
    report = check_criterion(params, ArrheniusIgnition(5.0, T2, prefactor=1.0))
    assert report.notes  # support starts at the quiescent state u = 0


def test_vacuous_criterion_when_support_misses_range():
    params = ModelParams(q=0.3, omega=1.0)
    report = check_criterion(params, StepIgnition(1.99))
    # support (1.99, 2] still intersects; move the level to the top
    assert report.satisfied
    report2 = check_criterion(params, StepIgnition(1.9999999999))
    assert report2.margin in (-math.inf,) or report2.margin <= 0.0


# ---------------------------------------------------------------------------
# bound shape
# ---------------------------------------------------------------------------

def test_bound_strictly_decreasing():
    rng = np.random.default_rng(7)
    for params in random_families(rng, 50, ratio_range=(0.02, 0.96)):
        u = np.linspace(params.u_minus + 1e-6 * (2 - params.u_minus), 2.0, 1000)
        b = criterion_bound(u, params)
        assert np.all(np.diff(b) < 0.0), params


def test_bound_diverges_at_left_endpoint():
    rng = np.random.default_rng(11)
    for params in random_families(rng, 20, ratio_range=(0.05, 0.9)):
        assert criterion_bound(params.u_minus + 1e-8, params) > 1e6


# ---------------------------------------------------------------------------
# critical activation energy
# ---------------------------------------------------------------------------

def test_critical_energy_linear_closed_form():
    for r in np.linspace(0.01, 0.49, 25):
        got = critical_activation_energy(float(r), T2)
        assert got == pytest.approx(4.0 / r, rel=1e-12)


def test_critical_energy_quadratic_empty_active_set():
    assert critical_activation_energy(0.2, T1) == math.inf
    assert critical_activation_energy(0.375, T1) == math.inf


def test_critical_energy_quadratic_benchmark_bracket():
    estar = critical_activation_energy(0.49, T1)
    assert 15.0 < estar < 20.0


def test_critical_energy_against_brute_force_oracle():
    # independent dense minimization of bound(u) * T^2 / T_u on the active set
    for r in (0.40, 0.45, 0.49):
        params = ModelParams(q=r, omega=1.0)
        u = np.linspace(params.u_minus + 1e-12, 2.0, 2_000_001)
        tv, tu = T1.value(u), T1.derivative(u)
        act = (tv > 0) & (tu > 0)
        ratio = criterion_bound(u[act], params) * tv[act] ** 2 / tu[act]
        oracle = float(np.min(ratio))
        got = critical_activation_energy(r, T1)
        assert got == pytest.approx(oracle, rel=1e-9)
        assert got <= oracle + 1e-12  # refinement can only sharpen the infimum


def test_critical_energy_rejects_out_of_range():
    with pytest.raises(DomainError):
        critical_activation_energy(0.0, T2)
    with pytest.raises(DomainError):
        critical_activation_energy(0.5, T2)


def test_arrhenius_iff_below_critical_energy():
    rng = np.random.default_rng(123)
    for temp in (T1, T2):
        rs = rng.uniform(0.01, 0.49, size=25)
        for r in rs:
            estar = critical_activation_energy(float(r), temp)
            params = ModelParams(q=float(r), omega=1.0)
            for _ in range(4):
                if math.isinf(estar):
                    E = rng.uniform(0.0, 500.0)
                    assert check_arrhenius(params, E, temp).satisfied
                    continue
                E = rng.uniform(0.0, 2.0 * estar)
                if abs(E - estar) < 1e-9 * estar:
                    continue
                assert check_arrhenius(params, E, temp).satisfied == (E <= estar), \
                    (r, E, estar, temp.name)


# ---------------------------------------------------------------------------
# original coordinates
# ---------------------------------------------------------------------------

def test_original_reduces_to_rescaled_when_already_normalized():
    orig = OriginalParams(s=1.0, u_plus=0.0, u_star=2.0, q=0.3, u_ignition=1.0)
    phi = StepIgnition(1.0)
    rep_orig = check_criterion_original(orig, phi)
    rep_resc = check_criterion(ModelParams(q=0.3, omega=1.0), phi)
    assert rep_orig.satisfied == rep_resc.satisfied
    assert rep_orig.margin == pytest.approx(rep_resc.margin, rel=1e-9)


def test_original_step_ignition_satisfied():
    orig = OriginalParams(s=1.5, u_plus=0.3, u_star=2.7, q=0.2, k=2.0, u_ignition=0.9)
    assert check_criterion_original(orig, StepIgnition(0.9)).satisfied


@settings(max_examples=40, deadline=None, derandomize=True)
@given(
    s=st.floats(0.6, 1.4),
    omega=st.floats(0.3, 1.0),
    ratio=st.floats(0.05, 0.9),
    E=st.floats(0.0, 12.0),
)
def test_original_agrees_with_rescale_then_check(s, omega, ratio, E):
    u_plus = s * (1.0 - omega)
    scale = s - u_plus
    q_orig = 0.5 * ratio * omega * scale
    orig = OriginalParams(s=s, u_plus=u_plus, u_star=2.0 * s - u_plus,
                          q=q_orig, u_ignition=u_plus + 1e-6)
    phi_orig = ArrheniusIgnition(E, T2, prefactor=1.0)  # temperature = state
    system = rescale(orig)
    rep_orig = check_criterion_original(orig, phi_orig)
    rep_resc = check_criterion(system.params, system.rescale_ignition(phi_orig))
    assert rep_orig.satisfied == rep_resc.satisfied
    # margins scale by (s - u_plus) under the coordinate change
    if math.isfinite(rep_orig.margin):
        assert rep_resc.margin == pytest.approx(scale * rep_orig.margin,
                                                rel=1e-6, abs=1e-9)


# ---------------------------------------------------------------------------
# homotopy family
# ---------------------------------------------------------------------------

def test_homotopy_family_endpoints_and_monotonicity():
    params = ModelParams(q=0.3, omega=1.0)
    phi = make_arrhenius(8.0, T2)  # log-slope E/u^2 > 0
    r_grid = np.linspace(0.0, 1.0, 11)
    reports = homotopy_family(params, phi, r_grid, phi0=StepIgnition(0.5))
    assert reports[0].margin == pytest.approx(-params.omega / params.q, rel=1e-12)
    direct = check_criterion(params, phi)
    assert reports[-1].margin == pytest.approx(direct.margin, rel=1e-10)
    margins = [rep.margin for rep in reports]
    assert all(a < b for a, b in zip(margins, margins[1:]))
    # every member of a criterion-passing family passes
    assert all(rep.satisfied for rep in reports)
