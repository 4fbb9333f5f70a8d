"""Shared fixtures: representative wave families and cached profiles."""

import pytest

from detstab import (
    ArrheniusIgnition,
    EigenSystem,
    ModelParams,
    StepIgnition,
    T1,
    T2,
    solve_profile,
)


def make_arrhenius(E, temperature):
    """Arrhenius law normalized to unit rate at the shock (phi(2) = 1)."""
    return ArrheniusIgnition(E, temperature, prefactor="normalized")


@pytest.fixture(scope="session")
def step_case():
    params = ModelParams(q=0.3, omega=1.0)
    phi = StepIgnition(1.05)
    table = solve_profile(params, phi)
    return params, phi, table


@pytest.fixture(scope="session")
def arrhenius_case():
    params = ModelParams(q=0.3, omega=1.0)
    phi = make_arrhenius(5.0, T1)
    table = solve_profile(params, phi)
    return params, phi, table


@pytest.fixture(scope="session")
def arrhenius_t2_case():
    params = ModelParams(q=0.25, omega=1.0)
    phi = make_arrhenius(8.0, T2)
    table = solve_profile(params, phi)
    return params, phi, table


@pytest.fixture(scope="session")
def step_system(step_case):
    params, phi, table = step_case
    return EigenSystem(params, phi, table), table


@pytest.fixture(scope="session")
def arrhenius_system(arrhenius_case):
    params, phi, table = arrhenius_case
    return EigenSystem(params, phi, table), table


def random_families(rng, n, omega_range=(0.4, 1.0), ratio_range=(0.05, 0.9)):
    """n random (q, omega) pairs with 2q/omega drawn from ratio_range."""
    omegas = rng.uniform(*omega_range, size=n)
    ratios = rng.uniform(*ratio_range, size=n)
    return [ModelParams(q=0.5 * r * om, omega=om) for r, om in zip(ratios, omegas)]
