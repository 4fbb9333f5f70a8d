"""Reaction-zone profile of a strong detonation wave on the left half-line.

Behind the shock (xi < 0) the reactant fraction obeys the scalar ODE

    zbar' = phi(ubar(zbar)) * zbar,      zbar(0-) = 1,

where ubar is recovered algebraically from the conserved quantity
omega*ubar^2/2 - omega*ubar - q*zbar = -q:

    ubar(zbar) = 1 + sqrt(1 - 2 q (1 - zbar) / omega).

We integrate w = ln(zbar) instead of zbar: the right-hand side is then the
bounded positive quantity phi(ubar), the reactant tail never underflows, and
a step ignition gives w(xi) = xi exactly.  The state derivative is taken from
the profile identity omega*(ubar-1)*ubar' = q*phi(ubar)*zbar rather than from
numerical differentiation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, TextIO, Union

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline

from .errors import DomainError, IgnitionLevelError, TruncationError
from .model import IgnitionFunction, ModelParams

__all__ = ["ProfileTable", "ShockTrace", "solve_profile", "shock_trace", "default_truncation"]


def ubar_from_zbar(zbar, params: ModelParams):
    """Invert the conserved quantity for the state along the profile."""
    z = np.asarray(zbar, dtype=float)
    return 1.0 + np.sqrt(1.0 - 2.0 * params.q * (1.0 - z) / params.omega)


@dataclass(frozen=True)
class ProfileTable:
    """Discretized wave profile on [-L, 0] with tail metadata.

    The grid is strictly increasing and ends at 0 where (zbar, ubar) = (1, 2).
    ``logz_at`` is the dense interpolant of ln(zbar) used by downstream
    modules to evaluate coefficients between grid points.
    """

    xi: np.ndarray
    zbar: np.ndarray
    ubar: np.ndarray
    ubar_xi: np.ndarray
    L: float
    tail_decay_rate: float
    error_estimate: float
    params: ModelParams
    phi: IgnitionFunction
    logz_at: Callable[[np.ndarray], np.ndarray]

    def __post_init__(self):
        for name in ("xi", "zbar", "ubar", "ubar_xi"):
            getattr(self, name).setflags(write=False)

    def zbar_at(self, xi):
        return np.exp(self.logz_at(xi))

    def ubar_at(self, xi):
        return ubar_from_zbar(self.zbar_at(xi), self.params)

    def ubar_xi_at(self, xi):
        z = self.zbar_at(xi)
        ub = ubar_from_zbar(z, self.params)
        return self.params.q * np.asarray(self.phi.value(ub), dtype=float) * z / (
            self.params.omega * (ub - 1.0))

    def to_csv(self, dest: Union[str, TextIO]) -> None:
        """Write ``xi,zbar,ubar,ubar_xi`` rows with round-trip float formatting."""
        own = isinstance(dest, str)
        fh: TextIO = open(dest, "w", encoding="utf-8") if own else dest
        try:
            fh.write("xi,zbar,ubar,ubar_xi\n")
            for row in zip(self.xi, self.zbar, self.ubar, self.ubar_xi):
                fh.write(",".join(repr(float(v)) for v in row) + "\n")
        finally:
            if own:
                fh.close()

    @staticmethod
    def from_arrays(xi, zbar, params: ModelParams, phi: IgnitionFunction) -> "ProfileTable":
        """Rebuild a table (with a spline interpolant) from stored grid data."""
        xi = np.asarray(xi, dtype=float)
        zbar = np.asarray(zbar, dtype=float)
        ub = ubar_from_zbar(zbar, params)
        ubx = params.q * np.asarray(phi.value(ub), dtype=float) * zbar / (
            params.omega * (ub - 1.0))
        spline = CubicSpline(xi, np.log(zbar))
        return ProfileTable(
            xi=xi, zbar=zbar, ubar=ub, ubar_xi=ubx, L=float(-xi[0]),
            tail_decay_rate=float(phi.value(ubar_from_zbar(zbar[0], params))),
            error_estimate=math.nan, params=params, phi=phi,
            logz_at=lambda x: spline(np.asarray(x, dtype=float)),
        )


@dataclass(frozen=True)
class ShockTrace:
    """One-sided limits at the shock and the state slope just behind it."""

    u_star: float
    z_left: float
    u_plus: float
    z_plus: float
    ubar_xi_left: float


def default_truncation(params: ModelParams, phi: IgnitionFunction) -> float:
    """Half-line length leaving a reactant tail of at most e^-30.

    The tail decays asymptotically at rate phi(u_minus), but the slowest decay
    anywhere along the profile is min phi over [u_minus, 2] (the two differ
    when phi is not monotone), so the length is 30 over that minimum:
    ln zbar(-L) = -int phi(ubar) <= -L * min(phi) = -30.
    """
    rate = float(phi.value(params.u_minus))
    if rate <= 0.0:
        raise IgnitionLevelError(
            "ignition level too high: phi vanishes at u_minus, no reacting tail"
        )
    grid = np.linspace(params.u_minus, 2.0, 513)
    slowest = float(np.min(phi.value(grid)))
    return 30.0 / min(rate, slowest)


def solve_profile(
    params: ModelParams,
    phi: IgnitionFunction,
    L: Optional[float] = None,
    tol: float = 1e-10,
    n_min: int = 2001,
) -> ProfileTable:
    """Integrate the profile ODE backward from the shock and tabulate the wave.

    Parameters
    ----------
    params : ModelParams
        Wave family (q, omega).
    phi : IgnitionFunction
        Ignition law; its level must sit strictly below u_minus.
    L : float, optional
        Truncation length.  By default the integration stops where the
        reactant fraction reaches e^-30 (approximately 30 / phi(u_minus)
        whenever the asymptotic tail rate is the slowest rate along the
        profile) and that point becomes L.
    tol : float
        Accuracy target; also bounds the ODE residual measured on the
        output grid and sets the tail-size threshold.
    n_min : int
        The output grid is the union of the integrator's steps and a uniform
        grid of at least this many points.

    Raises
    ------
    IgnitionLevelError
        If the ignition level is at or above u_minus (no monotone profile).
    TruncationError
        If zbar(-L) > 10*tol, i.e. L cuts off a non-negligible tail.
    """
    um = params.u_minus
    if phi.ignition_level >= um:
        raise IgnitionLevelError(
            f"ignition level too high: u_i={phi.ignition_level} >= u_minus={um}"
        )
    rate = float(phi.value(um))
    if rate <= 0.0:
        raise IgnitionLevelError("ignition level too high: phi(u_minus) = 0")
    if L is not None and L <= 0.0:
        raise DomainError(f"truncation length must be positive, got {L}")

    def rhs(_xi, w):
        return [float(phi.value(ubar_from_zbar(math.exp(w[0]), params)))]

    def tail_event(_xi, w):
        return w[0] + 30.0

    tail_event.terminal = True

    def integrate(rt, span, events=None):
        out = solve_ivp(rhs, span, [0.0], method="RK45",
                        rtol=rt, atol=rt, dense_output=True, events=events)
        if not out.success:  # pragma: no cover
            raise DomainError(f"profile integration failed: {out.message}")
        return out

    # A coarse and a tight run at staggered tolerances; their disagreement on
    # the output grid certifies the solution residual (in zbar units, matching
    # the equation being solved).  The table is built from the tight run, whose
    # own error sits an order below the certificate.  With no explicit L the
    # tight run stops at zbar = e^-30 and that point becomes the truncation.
    itol = max(min(tol, 1e-10) / 300.0, 5e-13)
    residual = math.inf
    for _ in range(3):
        if L is None:
            cap = default_truncation(params, phi)
            sol = integrate(itol / 10.0, (0.0, -cap), events=tail_event)
            if sol.t_events[0].size:
                L_run = float(-sol.t_events[0][0])
            else:  # pragma: no cover
                L_run = cap
        else:
            L_run = float(L)
            sol = integrate(itol / 10.0, (0.0, -L_run))
        coarse = integrate(itol, (0.0, -L_run))
        xi = np.unique(np.concatenate(
            [np.linspace(-L_run, 0.0, n_min), sol.t[sol.t >= -L_run]]))
        w = sol.sol(xi)[0]
        residual = float(np.max(np.exp(w) * np.abs(w - coarse.sol(xi)[0])))
        if residual < tol or itol <= 5e-13:
            break
        itol = max(itol * tol / (3.0 * residual), 5e-13)
    if residual >= tol:
        raise DomainError(
            f"profile residual {residual} not certifiable below tol={tol}; "
            "the requested tolerance is too tight for this profile"
        )
    L = L_run

    zbar = np.exp(w)
    ubar = ubar_from_zbar(zbar, params)
    phival = np.asarray(phi.value(ubar), dtype=float)
    ubar_xi = params.q * phival * zbar / (params.omega * (ubar - 1.0))

    z_tail = float(zbar[0])
    if z_tail > 10.0 * tol:
        raise TruncationError(
            f"truncation insufficient: zbar(-L) = {z_tail} > 10*tol = {10.0 * tol}"
        )
    # empirical tail log-slope over the last stretch must match phi(u_minus)
    k = max(2, xi.size // 20)
    slope = (w[k] - w[0]) / (xi[k] - xi[0])
    if not rate / 2.0 <= slope <= 2.0 * rate:  # pragma: no cover
        raise TruncationError(
            f"tail decay rate {slope} inconsistent with phi(u_minus) = {rate}"
        )

    # conservative global error bound, checked against tolerance halving in tests
    error_estimate = max(20.0 * residual, 100.0 * itol / 10.0)

    dense = sol.sol
    return ProfileTable(
        xi=xi, zbar=zbar, ubar=ubar, ubar_xi=ubar_xi, L=float(L),
        tail_decay_rate=rate, error_estimate=error_estimate,
        params=params, phi=phi,
        logz_at=lambda x: dense(np.asarray(x, dtype=float))[0],
    )


def shock_trace(table: ProfileTable) -> ShockTrace:
    """One-sided traces at xi = 0 and the state slope phi(2)*q/omega behind it."""
    p = table.params
    expected = float(table.phi.value(2.0)) * p.q / p.omega
    got = float(table.ubar_xi[-1])
    if expected != 0.0 and abs(got - expected) > 1e-8 * abs(expected):  # pragma: no cover
        raise DomainError(
            f"shock slope {got} disagrees with phi(2) q/omega = {expected}"
        )
    return ShockTrace(u_star=2.0, z_left=1.0, u_plus=0.0, z_plus=1.0, ubar_xi_left=got)
