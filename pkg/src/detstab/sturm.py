"""Sturm-Liouville reduction of the eigenvalue system along a wave profile.

Eliminating one component of the linearized interior system leaves a second
order scalar ODE

    u2'' + (f1*lam + f2) u2' + (f3*lam^2 + f4*lam) u2 = 0

with coefficients f1..f4 built from the profile state (ubar, zbar), the
ignition law, and the state slope ubar_x.  A Liouville gauge
w = exp(0.5*int_0^xi (f1*lam + f2)) u2 removes the first-derivative term:

    w'' + [ (f3 - f1^2/4) lam^2 + (f4 - f1 f2/2 - f1'/2) lam
            - f2^2/4 - f2'/2 ] w = 0,

and the lam-coefficient  S = f4 - f1 f2/2 - f1'/2  is the sign field whose
nonpositivity along the profile rules out nonzero purely imaginary
eigenvalues.  S collapses to the closed form

    S = (omega*ub - omega + 1) * [ (omega*ub^2 - 2*omega*ub + 2q) * phi_u(ub)
            / (4*omega^2*(ub-1)^2)  -  phi(ub) / (2*omega*(ub-1)) ],

which ties the scan to the algebraic log-slope criterion: S <= 0 pointwise
iff the criterion margin is <= 0.

The boundary condition of the reduced problem at the shock is affine in lam:
w'(0-) = slope(lam) * w(0-) with a purely imaginary lam contributing
-Im(lam)*(omega+1)/(2*omega) to the imaginary part of the slope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import CubicSpline

from .errors import DomainError
from .model import IgnitionFunction, ModelParams
from .profile import ProfileTable

__all__ = [
    "SLCoefficients",
    "SignScan",
    "sl_coefficients",
    "closed_form_sign_field",
    "sign_condition_scan",
    "boundary_slope",
    "liouville_weight",
    "transformed_potential",
]

SIGN_TOLERANCE = 1e-12


def _raw_fields(params: ModelParams, ub, zb, ubx, phi: IgnitionFunction):
    """f1..f4 from the displayed rational expressions (not simplified)."""
    om, q = params.omega, params.q
    pv = np.asarray(phi.value(ub), dtype=float)
    pd = np.asarray(phi.derivative(ub), dtype=float)
    denom = om * (ub - 1.0) * (om * ub - om + 1.0)
    f1 = -(om * ub - 1.0 - om) / (om * (ub - 1.0))
    f3 = -1.0 / (om * (ub - 1.0))
    f2 = -(om**2 * pv - om * ubx - om * pv - 2.0 * om**2 * pv * ub
           + om**2 * pv * ub**2 + pd * q * zb + om * pv * ub
           - pd * om * q * zb + pd * om * q * ub * zb) / denom
    f4 = -(pv - om * pv + om * ubx - pd * q * zb + om * pv * ub
           + pd * om * q * zb - pd * om * q * ub * zb) / denom
    return f1, f2, f3, f4, pv, pd


def _f1_prime(params: ModelParams, ub, ubx):
    return -ubx / (params.omega * (ub - 1.0) ** 2)


def _f2_prime(params: ModelParams, ub, zb, ubx, phi: IgnitionFunction):
    """d f2/dxi by the chain rule through the profile identities.

    Uses z' = phi*z and u' = q*phi*z / (omega*(u-1)); needs the ignition
    law's second derivative.
    """
    om, q = params.omega, params.q
    pv = np.asarray(phi.value(ub), dtype=float)
    pd = np.asarray(phi.derivative(ub), dtype=float)
    pdd = np.asarray(phi.second_derivative(ub), dtype=float)
    a = ub - 1.0
    B = om * a + 1.0
    up = ubx
    zp = pv * zb
    t1 = -pd * up
    t2 = -(q / om) * ((zp * pd + zb * pdd * up) / a - zb * pd * up / a**2)
    t3 = (q / om) * ((pd * up * zb + pv * zp) / (a * a * B)
                     - pv * zb * up * (2.0 * B + a * om) / (a**3 * B * B))
    return t1 + t2 + t3


@dataclass(frozen=True)
class SLCoefficients:
    """Sampled reduction coefficients plus continuous re-evaluation hooks.

    The sampled arrays live on the profile grid.  ``*_at`` methods evaluate
    the same expressions at arbitrary xi through the profile's dense
    interpolant, which the sign scan uses to refine local maxima.
    """

    xi: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    f3: np.ndarray
    f4: np.ndarray
    sign_field: np.ndarray
    params: ModelParams
    phi: IgnitionFunction
    table: ProfileTable

    def __post_init__(self):
        for name in ("xi", "f1", "f2", "f3", "f4", "sign_field"):
            getattr(self, name).setflags(write=False)

    def _state(self, xi):
        xi = np.asarray(xi, dtype=float)
        zb = self.table.zbar_at(xi)
        ub = self.table.ubar_at(xi)
        ubx = self.table.ubar_xi_at(xi)
        return ub, zb, ubx

    def fields_at(self, xi):
        ub, zb, ubx = self._state(xi)
        f1, f2, f3, f4, _, _ = _raw_fields(self.params, ub, zb, ubx, self.phi)
        return f1, f2, f3, f4

    def f1_prime_at(self, xi):
        ub, _, ubx = self._state(xi)
        return _f1_prime(self.params, ub, ubx)

    def f2_prime_at(self, xi):
        ub, zb, ubx = self._state(xi)
        return _f2_prime(self.params, ub, zb, ubx, self.phi)

    def sign_field_at(self, xi):
        f1, f2, _, f4 = self.fields_at(xi)
        return f4 - 0.5 * f1 * f2 - 0.5 * self.f1_prime_at(xi)

    def boundary_slope(self, lam: complex) -> complex:
        return boundary_slope(self.params, self.phi, lam)


def sl_coefficients(params: ModelParams, table: ProfileTable,
                    phi: IgnitionFunction) -> SLCoefficients:
    """Sample f1..f4 and the sign field f4 - f1*f2/2 - f1'/2 on the profile grid.

    The state slope ubar_x is taken from the profile table (itself computed
    from the reaction-rate identity, not a numerical derivative), and f1' is
    analytic, so the sign field carries no differencing noise.
    """
    ub, zb, ubx = table.ubar, table.zbar, table.ubar_xi
    if np.min(ub - 1.0) < 1e-12:
        raise DomainError("profile touches sonic value: ubar - 1 < 1e-12 on the grid")
    f1, f2, f3, f4, _, _ = _raw_fields(params, ub, zb, ubx, phi)
    f1p = _f1_prime(params, ub, ubx)
    sign_field = f4 - 0.5 * f1 * f2 - 0.5 * f1p
    return SLCoefficients(
        xi=table.xi.copy(), f1=np.asarray(f1), f2=np.asarray(f2),
        f3=np.asarray(f3), f4=np.asarray(f4), sign_field=np.asarray(sign_field),
        params=params, phi=phi, table=table,
    )


def closed_form_sign_field(params: ModelParams, phi: IgnitionFunction, u):
    """Sign field expressed through the state alone (independent route).

    S(u) = (om*u - om + 1) * [ (om*u^2 - 2*om*u + 2q) * phi_u(u)
           / (4 om^2 (u-1)^2) - phi(u) / (2 om (u-1)) ].
    """
    om, q = params.omega, params.q
    u = np.asarray(u, dtype=float)
    pv = np.asarray(phi.value(u), dtype=float)
    pd = np.asarray(phi.derivative(u), dtype=float)
    B = om * u - om + 1.0
    quad = om * u * u - 2.0 * om * u + 2.0 * q
    return B * quad / (4.0 * om**2 * (u - 1.0) ** 2) * pd - B / (
        2.0 * om * (u - 1.0)) * pv


@dataclass(frozen=True)
class SignScan:
    """Outcome of the pointwise sign test along the profile."""

    holds: bool
    max_value: float
    arg_max_xi: float


def sign_condition_scan(coeffs: SLCoefficients,
                        tolerance: float = SIGN_TOLERANCE) -> SignScan:
    """Test sign_field <= 0 along the whole profile.

    Grid values are refined around every local maximum (and the shock end)
    by golden section on the continuous field, so hairline violations between
    grid points are still caught.  Positive values up to ``tolerance`` count
    as holding (the condition is a closed inequality; tiny round-off must not
    flip it).
    """
    s = coeffs.sign_field
    xi = coeffs.xi
    n = s.size
    kmax = int(np.argmax(s))
    best_val = float(s[kmax])
    best_xi = float(xi[kmax])
    interior = np.nonzero((s[1:-1] >= s[:-2]) & (s[1:-1] >= s[2:]))[0] + 1
    if interior.size:
        order = list(interior[np.argsort(s[interior])[::-1][:3]])
    else:
        order = []
    gr = (math.sqrt(5.0) - 1.0) / 2.0

    def f(x: float) -> float:
        return float(coeffs.sign_field_at(x))

    for k in dict.fromkeys(order + [kmax, n - 1]):
        a = float(xi[max(k - 1, 0)])
        b = float(xi[min(k + 1, n - 1)])
        if b <= a:
            continue
        c = b - gr * (b - a)
        d = a + gr * (b - a)
        fc, fd = f(c), f(d)
        while b - a > 1e-12:
            if fc > fd:
                b, d, fd = d, c, fc
                c = b - gr * (b - a)
                fc = f(c)
            else:
                a, c, fc = c, d, fd
                d = a + gr * (b - a)
                fd = f(d)
        x = 0.5 * (a + b)
        fx = f(x)
        if fx > best_val:
            best_val, best_xi = fx, x
    return SignScan(holds=bool(best_val <= tolerance),
                    max_value=best_val, arg_max_xi=best_xi)


def boundary_slope(params: ModelParams, phi: IgnitionFunction, lam: complex) -> complex:
    """Coefficient in the reduced boundary condition w'(0-) = slope * w(0-).

    Affine in lam; the lam part is -(omega+1)/(2*omega), so a purely
    imaginary lam = i*a contributes -a*(omega+1)/(2*omega) to the imaginary
    part and the remainder is real.
    """
    om, q = params.omega, params.q
    p2 = float(phi.value(2.0))
    pd2 = float(phi.derivative(2.0))
    const = (pd2 * q + om * p2 - 2.0 * p2 * q + om**2 * p2 - om**2 * p2 * q
             + pd2 * om * q - 2.0 * om * p2 * q) / (2.0 * (om + 1.0) * om)
    return -(lam * (om + 1.0) / (2.0 * om) + const)


class _GaugeIntegrals:
    """Cumulative integrals of f1 and f2 from 0, cached per coefficient set.

    Composite Simpson on a refined copy of the profile grid; a uniform
    trapezoid rule cannot reach the 1e-9 target at realistic grid sizes.
    """

    def __init__(self, coeffs: SLCoefficients):
        base = coeffs.xi
        L = float(-base[0])
        target = max(L / 20000.0, 1e-6)
        pieces = [base]
        widths = np.diff(base)
        k = np.maximum(1, np.ceil(widths / target).astype(int))
        extra = []
        for i, m in enumerate(k):
            if m > 1:
                extra.append(np.linspace(base[i], base[i + 1], m + 1)[1:-1])
        if extra:
            grid = np.unique(np.concatenate(pieces + extra))
        else:
            grid = base
        f1, f2, _, _ = coeffs.fields_at(grid)
        # integrate from 0 backward: accumulate on the reversed axis
        i1 = cumulative_simpson(f1[::-1], x=-grid[::-1], initial=0.0)
        i2 = cumulative_simpson(f2[::-1], x=-grid[::-1], initial=0.0)
        self.i1 = CubicSpline(grid, -i1[::-1])
        self.i2 = CubicSpline(grid, -i2[::-1])


def _gauge_integrals(coeffs: SLCoefficients) -> _GaugeIntegrals:
    cache = getattr(coeffs, "_gauge_cache", None)
    if cache is None:
        cache = _GaugeIntegrals(coeffs)
        object.__setattr__(coeffs, "_gauge_cache", cache)
    return cache


def liouville_weight(coeffs: SLCoefficients, lam: complex, xi):
    """Gauge factor exp(0.5 * int_0^xi (f1(y)*lam + f2(y)) dy).

    Equals 1 at xi = 0; real and positive for real lam.  Quadrature error of
    the exponent is held below 1e-9 on the refined grid.
    """
    scalar = np.isscalar(xi)
    x = np.asarray(xi, dtype=float)
    if np.any(x < coeffs.xi[0] - 1e-12) or np.any(x > 1e-12):
        raise DomainError("xi outside the profile range [-L, 0]")
    g = _gauge_integrals(coeffs)
    out = np.exp(0.5 * (np.asarray(g.i1(x)) * complex(lam) + np.asarray(g.i2(x))))
    return complex(out) if scalar else out


def transformed_potential(coeffs: SLCoefficients, lam: complex, xi):
    """Potential of the gauged equation w'' + P(lam, xi) w = 0.

    P = (f3 - f1^2/4) lam^2 + (f4 - f1 f2/2 - f1'/2) lam - f2^2/4 - f2'/2.
    The lam^2 coefficient is strictly negative along the profile and the lam
    coefficient is exactly the sign field.
    """
    f1, f2, f3, f4 = coeffs.fields_at(xi)
    f1p = coeffs.f1_prime_at(xi)
    f2p = coeffs.f2_prime_at(xi)
    sign_field = f4 - 0.5 * f1 * f2 - 0.5 * f1p
    return ((f3 - 0.25 * f1 * f1) * lam * lam + sign_field * lam
            - 0.25 * f2 * f2 - 0.5 * f2p)
