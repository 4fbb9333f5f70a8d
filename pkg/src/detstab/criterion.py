"""Analytic spectral-stability criterion for general ignition functions.

A strong detonation wave of the family (q, omega) is certified spectrally
stable when the log-slope of the ignition function stays below an explicit
algebraic bound along the reaction zone:

    d/du ln(phi(u)) <= 2*omega*(u-1) / (omega*u^2 - 2*omega*u + 2*q)

for u in (u_lim, 2], u_lim = 1 + sqrt(1 - 2q/omega).  The bound is positive
and strictly decreasing there and blows up at u_lim, so only the upper part
of the range can bind; for a step ignition the left side vanishes and the
margin is exactly -omega/q, attained at u = 2.

For Arrhenius laws phi = C exp(-E/T(u)) the condition reads
E*T'(u)/T(u)^2 <= bound(u), which yields a critical activation energy per
q/omega: the infimum over the active set {T > 0, T' > 0} of
bound(u) * T(u)^2 / T'(u).  For the linear temperature T(u) = u this infimum
sits at u = 2 and equals 4*omega/q exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError
from .model import (
    ArrheniusIgnition,
    HomotopyIgnition,
    IgnitionFunction,
    ModelParams,
    OriginalParams,
    StepIgnition,
    TemperatureProfile,
    rescale,
)

__all__ = [
    "CriterionReport",
    "criterion_bound",
    "check_criterion",
    "check_arrhenius",
    "critical_activation_energy",
    "check_criterion_original",
    "homotopy_family",
]

SCAN_POINTS = 4096
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of the log-slope test over the profile's u-range.

    ``margin`` is the supremum of lhs - rhs (so <= 0 means the criterion
    holds; -inf means the ignition support misses the range entirely), and
    ``worst_u`` is where it is attained.
    """

    satisfied: bool
    margin: float
    worst_u: float
    u_range: tuple[float, float]
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "margin": self.margin,
            "worst_u": self.worst_u,
            "u_range": list(self.u_range),
            "notes": list(self.notes),
        }


def criterion_bound(u, params: ModelParams):
    """Right-hand side 2*omega*(u-1) / (omega*u^2 - 2*omega*u + 2*q)."""
    u = np.asarray(u, dtype=float)
    return 2.0 * params.omega * (u - 1.0) / (
        params.omega * u * u - 2.0 * params.omega * u + 2.0 * params.q)


def _golden_max(f: Callable[[float], float], a: float, b: float,
                xatol: float = 1e-10) -> tuple[float, float]:
    """Golden-section maximization of a unimodal-enough objective on [a, b]."""
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xatol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _scan_supremum(objective_arr: Callable[[np.ndarray], np.ndarray],
                   lo: float, hi: float,
                   n_scan: int = SCAN_POINTS) -> tuple[float, float]:
    """Dense scan on [lo, hi] (hi included exactly) plus golden refinement.

    ``objective_arr`` must be vectorized and may return -inf off the ignition
    support.  Returns (worst_u, margin).
    """
    u = np.linspace(lo, hi, n_scan)
    vals = objective_arr(u)
    k = int(np.argmax(vals))
    best_u, best = float(u[k]), float(vals[k])
    if not np.isfinite(best):
        return hi, -math.inf

    def f(x: float) -> float:
        return float(objective_arr(np.asarray([x]))[0])

    a = float(u[max(k - 1, 0)])
    b = float(u[min(k + 1, n_scan - 1)])
    if b > a:
        x, fx = _golden_max(f, a, b)
        if fx > best:
            best_u, best = x, fx
    # endpoint u = hi is a frequent maximizer; keep its exact evaluation
    if vals[-1] >= best:
        best_u, best = float(u[-1]), float(vals[-1])
    return best_u, best


def check_criterion(params: ModelParams, phi: IgnitionFunction,
                    n_scan: int = SCAN_POINTS) -> CriterionReport:
    """Test the log-slope condition for an arbitrary ignition function.

    The objective (ln phi)'(u) - bound(u) is scanned on a dense grid over
    (u_lim, 2] and refined by golden section around the best bracket; below
    the ignition support it is -inf (the condition is vacuous there).
    """
    ulim = params.u_lim
    eps = 1e-9 * (2.0 - ulim)

    def objective(u: np.ndarray) -> np.ndarray:
        act = phi.support_mask(u)
        lhs = np.where(act, phi.log_derivative(u), -np.inf)
        return np.where(act, lhs - criterion_bound(u, params), -np.inf)

    worst_u, margin = _scan_supremum(objective, ulim + eps, 2.0, n_scan)
    notes = ()
    if phi.ignition_level <= 0.0:
        notes = ("ignition level coincides with the quiescent state u=0 "
                 "(boundary case of the positive-support structure)",)
    return CriterionReport(
        satisfied=bool(margin <= 0.0),
        margin=margin,
        worst_u=worst_u,
        u_range=(ulim, 2.0),
        notes=notes,
    )


def check_arrhenius(params: ModelParams, activation_energy: float,
                    temperature: TemperatureProfile,
                    n_scan: int = SCAN_POINTS) -> CriterionReport:
    """Log-slope test specialized to Arrhenius laws.

    Equivalent to :func:`check_criterion` with phi = C exp(-E/T): points where
    T' <= 0 impose no constraint, and the prefactor C never enters.
    """
    phi = ArrheniusIgnition(activation_energy, temperature, prefactor=1.0)
    return check_criterion(params, phi, n_scan=n_scan)


def critical_activation_energy(q_over_omega: float,
                               temperature: TemperatureProfile,
                               n_scan: int = SCAN_POINTS) -> float:
    """Largest activation energy satisfying the criterion at a given q/omega.

    Returns  inf_{u in active set} bound(u) * T(u)^2 / T'(u)  over the active
    set {T > 0, T' > 0} within (u_lim, 2], or +inf when that set is empty
    (then every activation energy passes).  ``check_arrhenius`` holds iff
    E <= this value.
    """
    if not 0.0 < q_over_omega < 0.5:
        raise DomainError(f"q/omega must lie in (0, 1/2), got {q_over_omega}")
    params = ModelParams(q=q_over_omega, omega=1.0)
    ulim = params.u_lim
    eps = 1e-9 * (2.0 - ulim)

    def neg_ratio(u: np.ndarray) -> np.ndarray:
        tv = np.asarray(temperature.value(u), dtype=float)
        tu = np.asarray(temperature.derivative(u), dtype=float)
        act = (tv > 0.0) & (tu > 0.0)
        safe_tu = np.where(act, tu, 1.0)
        ratio = np.where(act, criterion_bound(u, params) * tv * tv / safe_tu, np.inf)
        return -ratio

    worst_u, neg_best = _scan_supremum(neg_ratio, ulim + eps, 2.0, n_scan)
    if neg_best == -math.inf:
        return math.inf
    return -neg_best


def check_criterion_original(orig: OriginalParams, phi: IgnitionFunction,
                             n_scan: int = SCAN_POINTS) -> CriterionReport:
    """Log-slope test stated directly in original (unrescaled) coordinates.

    The bound becomes (2u - u_star - u_plus) / ((u-u_star)(u-u_plus)
    + q*(u_star + u_plus)) on (u_minus, u_star], with q the original heat
    release.  Agrees with rescaling first and testing then; margins scale by
    (s - u_plus).
    """
    system = rescale(orig)
    scale = system.scale
    u_minus_orig = orig.u_plus + scale * system.params.u_minus
    u_star = orig.u_star
    u_plus = orig.u_plus
    q = orig.q
    eps = 1e-9 * (u_star - u_minus_orig)

    def objective(u: np.ndarray) -> np.ndarray:
        act = phi.support_mask(u)
        lhs = np.where(act, phi.log_derivative(u), -np.inf)
        bound = (2.0 * u - u_star - u_plus) / (
            (u - u_star) * (u - u_plus) + q * (u_star + u_plus))
        return np.where(act, lhs - bound, -np.inf)

    worst_u, margin = _scan_supremum(objective, u_minus_orig + eps, u_star, n_scan)
    return CriterionReport(
        satisfied=bool(margin <= 0.0),
        margin=margin,
        worst_u=worst_u,
        u_range=(u_minus_orig, u_star),
    )


def homotopy_family(params: ModelParams, phi: IgnitionFunction,
                    r_grid: Sequence[float],
                    phi0: Optional[IgnitionFunction] = None,
                    n_scan: int = SCAN_POINTS) -> list[CriterionReport]:
    """Criterion reports along the blend phi^r * phi0^(1-r).

    ``phi0`` defaults to a step at phi's own ignition level.  The blend's
    log-slope is linear in r, so if phi passes the test every family member
    does, with margin interpolating toward the step value -omega/q.
    """
    if phi0 is None:
        phi0 = StepIgnition(phi.ignition_level)
    return [
        check_criterion(params, HomotopyIgnition(r, phi, phi0), n_scan=n_scan)
        for r in r_grid
    ]
