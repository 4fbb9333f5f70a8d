"""Wave-profile construction on the truncated half-line."""

import io

import numpy as np
import pytest

from detstab import (
    IgnitionLevelError,
    ModelParams,
    ProfileTable,
    StepIgnition,
    T1,
    T2,
    TruncationError,
    default_truncation,
    shock_trace,
    solve_profile,
)
from conftest import make_arrhenius, random_families


def test_step_profile_is_exact_exponential(step_case):
    _, _, table = step_case
    assert np.max(np.abs(table.zbar - np.exp(table.xi))) < 1e-8
    np.testing.assert_allclose(
        table.ubar, 1.0 + np.sqrt(1.0 - 0.6 * (1.0 - np.exp(table.xi))), rtol=1e-12)


def test_grid_structure(arrhenius_case):
    _, _, table = arrhenius_case
    assert table.xi[0] == -table.L
    assert table.xi[-1] == 0.0
    assert np.all(np.diff(table.xi) > 0)
    assert table.xi.size >= 2001
    assert np.all(np.diff(table.zbar) > 0)
    assert table.zbar[-1] == 1.0
    assert table.ubar[-1] == 2.0


def test_shock_slope_identity(arrhenius_case):
    params, phi, table = arrhenius_case
    expected = float(phi.value(2.0)) * params.q / params.omega
    assert table.ubar_xi[-1] == pytest.approx(expected, rel=1e-8)


def test_shock_trace_values(step_case):
    params, phi, table = step_case
    trace = shock_trace(table)
    assert trace.u_star == 2.0
    assert trace.z_left == 1.0
    assert trace.u_plus == 0.0
    assert trace.z_plus == 1.0
    # step ignition: phi(2) = 1, so the slope is q/omega exactly
    assert trace.ubar_xi_left == pytest.approx(params.q / params.omega, rel=1e-12)


def test_conserved_quantity_along_profile(arrhenius_case):
    params, _, table = arrhenius_case
    resid = (params.omega * table.ubar**2 / 2.0 - params.omega * table.ubar
             - params.q * table.zbar + params.q)
    assert np.max(np.abs(resid)) < 1e-10


def test_reaction_free_family():
    params = ModelParams(q=0.0, omega=1.0)
    table = solve_profile(params, StepIgnition(1.5), L=30.0)
    np.testing.assert_array_equal(table.ubar, 2.0)
    assert np.max(np.abs(table.zbar - np.exp(table.xi))) < 1e-12


def test_tail_size_and_rate(arrhenius_case):
    _, phi, table = arrhenius_case
    assert table.zbar[0] <= 1e-9
    assert table.tail_decay_rate == pytest.approx(
        float(phi.value(table.params.u_minus)))
    # empirical log-slope of the tail within a factor of 2 of the rate
    k = table.xi.size // 20
    slope = (np.log(table.zbar[k]) - np.log(table.zbar[0])) / (table.xi[k] - table.xi[0])
    assert table.tail_decay_rate / 2 <= slope <= 2 * table.tail_decay_rate


def test_ignition_level_too_high():
    params = ModelParams(q=0.45, omega=1.0)  # u_minus ~ 1.316
    with pytest.raises(IgnitionLevelError):
        solve_profile(params, StepIgnition(1.5))


def test_truncation_insufficient():
    params = ModelParams(q=0.3, omega=1.0)
    with pytest.raises(TruncationError):
        solve_profile(params, StepIgnition(1.05), L=1.0)


def test_default_truncation_estimate(step_case):
    params, phi, table = step_case
    # step: phi == 1 along the profile, so L = 30 exactly (tail e^-30)
    assert default_truncation(params, phi) == pytest.approx(30.0)
    assert table.L == pytest.approx(30.0, rel=1e-6)


def test_tolerance_halving_within_error_estimate():
    params = ModelParams(q=0.35, omega=0.9)
    phi = make_arrhenius(6.0, T1)
    a = solve_profile(params, phi, tol=1e-9)
    b = solve_profile(params, phi, tol=5e-10)
    grid = a.xi[a.xi >= max(a.xi[0], b.xi[0])]
    diff = np.max(np.abs(a.zbar_at(grid) - b.zbar_at(grid)))
    assert diff < a.error_estimate


def test_dense_interpolation_consistent(arrhenius_case):
    _, _, table = arrhenius_case
    sub = table.xi[:: max(1, table.xi.size // 50)]
    np.testing.assert_allclose(table.zbar_at(sub),
                               table.zbar[:: max(1, table.xi.size // 50)],
                               rtol=1e-10, atol=1e-30)
    mid = 0.5 * (table.xi[100] + table.xi[101])
    z = float(table.zbar_at(mid))
    assert table.zbar[100] < z < table.zbar[101]


def test_random_families_conserved(seed=20260810):
    rng = np.random.default_rng(seed)
    for params in random_families(rng, 10):
        E = rng.uniform(0.0, 15.0)
        T = T1 if rng.uniform() < 0.5 else T2
        phi = make_arrhenius(E, T)
        table = solve_profile(params, phi)
        resid = (params.omega * table.ubar**2 / 2.0 - params.omega * table.ubar
                 - params.q * table.zbar + params.q)
        assert np.max(np.abs(resid)) < 1e-10


def test_csv_round_trip(step_case):
    _, _, table = step_case
    buf = io.StringIO()
    table.to_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "xi,zbar,ubar,ubar_xi"
    assert len(lines) == table.xi.size + 1
    first = [float(v) for v in lines[1].split(",")]
    assert first == [table.xi[0], table.zbar[0], table.ubar[0], table.ubar_xi[0]]
    last = [float(v) for v in lines[-1].split(",")]
    assert last == [0.0, 1.0, 2.0, table.ubar_xi[-1]]


def test_from_arrays_rebuild(step_case):
    _, phi, table = step_case
    rebuilt = ProfileTable.from_arrays(table.xi, table.zbar, table.params, phi)
    np.testing.assert_allclose(rebuilt.ubar, table.ubar, rtol=1e-12)
    mid = 0.5 * (table.xi[40] + table.xi[41])
    assert float(rebuilt.zbar_at(mid)) == pytest.approx(float(table.zbar_at(mid)),
                                                        rel=1e-8)
