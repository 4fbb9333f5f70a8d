"""Criterion sweeps: counts, determinism, report serialization."""

import io
import json
import math

import pytest

from detstab import bz_t1, custom_grid, run_sweep


@pytest.fixture(scope="module")
def t1_report():
    return run_sweep(bz_t1())


def test_singleton_zero_energy():
    report = run_sweep(custom_grid([0.3], [0.0], temperature="t1"))
    assert report.n_points == 1
    assert report.points[0].satisfied


def test_t1_failures_at_high_ratio(t1_report):
    assert all(p.r >= 0.47 for p in t1_report.failures)
    assert t1_report.n_points == 3969
    assert t1_report.n_satisfied == 3963


def test_parallel_determinism():
    grid = custom_grid([round(0.05 * k, 2) for k in range(1, 9)],
                       [0.0, 2.0, 8.0, 15.0, 30.0], temperature="t2")
    texts = {run_sweep(grid, jobs=j).to_json() for j in (1, 4, 16)}
    assert len(texts) == 1


def test_full_grid_parallel_matches_serial(t1_report):
    assert run_sweep(bz_t1(), jobs=4).to_json() == t1_report.to_json()


def test_json_schema(t1_report):
    data = json.loads(t1_report.to_json())
    assert set(data) == {"grid", "temperature", "totals", "totals_strict",
                         "failures", "ties", "points"}
    assert data["grid"] == "bz-t1"
    assert data["totals"] == {"points": 3969, "satisfied": 3963}
    assert len(data["points"]) == 3969
    assert set(data["points"][0]) == {"r", "E", "E_star", "satisfied"}
    assert all(set(f) == {"r", "E"} for f in data["failures"])
    # infinite critical energies serialize as null
    assert any(pt["E_star"] is None for pt in data["points"])


def test_csv_format(t1_report):
    buf = io.StringIO()
    t1_report.to_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "q_over_omega,E,E_star,satisfied"
    assert len(lines) == 3970
    r, e, estar, sat = lines[1].split(",")
    assert float(r) == 0.01
    assert float(e) == 0.0
    assert math.isinf(float(estar))  # 'inf' round-trips through float()
    assert sat in ("true", "false")


def test_temperature_override():
    grid = custom_grid([0.2], [25.0], temperature="t1")
    assert run_sweep(grid).points[0].satisfied            # quadratic: no bound
    assert not run_sweep(grid, temperature="t2").points[0].satisfied  # 25 > 20


def test_outcome_conventions():
    # an exact boundary tie: E = 4/r at r = 0.4, E = 10
    report = run_sweep(custom_grid([0.4], [10.0], temperature="t2"))
    point = report.points[0]
    assert point.margin == 0.0
    assert point.tie
    assert point.satisfied
    assert not point.satisfied_strict
    assert report.n_satisfied == 1
    assert report.n_satisfied_strict == 0
