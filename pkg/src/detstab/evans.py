"""Evans-Lopatinsky determinant and argument-principle winding certificates.

The linearized interior problem behind the shock is the 2x2 system
(A v)' = (E - lam I) v with

    A = diag(omega*(ubar - 1), -1),
    E = [[ q*zbar*phi_u(ubar),  q*phi(ubar) ],
         [  -zbar*phi_u(ubar),   -phi(ubar) ]].

Working with y = A v turns it into y' = (E - lam I) A^{-1} y.  As
xi -> -inf the coefficient matrix freezes with eigenvalues
-lam/sqrt(omega^2 - 2 q omega) and lam + phi(u_minus); for Re(lam) >= 0 the
second one has positive real part and carries the unique mode decaying
backward in xi.  The determinant pairs the shock jump with that mode:

    Delta(lam) = det[ lam*[Wbar] - [R(Wbar)],  y(0-) ],

whose zeros in the closed right half-plane (apart from the simple
translational zero at the origin) are the unstable eigenvalues.

To keep Delta analytic and overflow-free, the mode is integrated in the
analytic gauge y~ = exp(-mu(lam)*(xi + L)) y with mu(lam) = lam + phi(u_minus)
and seeded with the (analytically normalized) frozen-coefficient eigenvector
at xi = -L.  The reported value is then Delta in the normalization where the
mode has unit second component at -L; the discarded modulus exponent
Re(mu)*L is recorded separately.  The gauge factor never vanishes and its
winding cancels over closed contours, so zero counts are unaffected.

Two integration backends are used: an adaptive high-accuracy path for single
evaluations, and a fixed-grid classical RK4 sweep vectorized across many lam
for contour sampling; the two are cross-checked in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError, ModeCollisionError, PhaseResolutionError
from .model import IgnitionFunction, ModelParams
from .profile import ProfileTable, ubar_from_zbar

__all__ = [
    "EigenSystem",
    "EvansResult",
    "ModeSolution",
    "WindingCertificate",
    "jump_vector",
    "decaying_mode",
    "evans_determinant",
    "evans_determinant_batch",
    "origin_mode_scale",
    "delta_slope_at_origin",
    "default_radius",
    "winding_count",
    "verified_winding_count",
    "homotopy_track",
]

_COLLISION_TOL = 1e-10
_SAMPLE_BUDGET = 1_000_000


class EigenSystem:
    """Coefficient fields of the interior eigenvalue system along a profile."""

    def __init__(self, params: ModelParams, phi: IgnitionFunction, table: ProfileTable):
        self.params = params
        self.phi = phi
        self.table = table
        self.u_minus = params.u_minus
        self.phi_minus = float(phi.value(self.u_minus))
        if self.phi_minus <= 0.0:
            raise DomainError("phi(u_minus) must be positive (reacting tail required)")
        #: sqrt(omega^2 - 2 q omega) = omega*(u_minus - 1), the frozen sound factor
        self.sound_factor = math.sqrt(params.omega**2 - 2.0 * params.q * params.omega)
        #: 1 + 1/(omega*(u_minus-1)): per-unit-xi oscillation rate multiplier in |lam|
        self.rate_factor = 1.0 + 1.0 / self.sound_factor

    # -- pointwise coefficient fields -------------------------------------
    def A(self, xi):
        ub = self.table.ubar_at(xi)
        out = np.zeros(np.shape(ub) + (2, 2))
        out[..., 0, 0] = self.params.omega * (ub - 1.0)
        out[..., 1, 1] = -1.0
        return out

    def emat(self, xi):
        zb = self.table.zbar_at(xi)
        ub = self.table.ubar_at(xi)
        pv = np.asarray(self.phi.value(ub), dtype=float)
        pd = np.asarray(self.phi.derivative(ub), dtype=float)
        out = np.empty(np.shape(ub) + (2, 2))
        out[..., 0, 0] = self.params.q * zb * pd
        out[..., 0, 1] = self.params.q * pv
        out[..., 1, 0] = -zb * pd
        out[..., 1, 1] = -pv
        return out

    def wbar(self, xi):
        ub = self.table.ubar_at(xi)
        zb = self.table.zbar_at(xi)
        return np.stack([ub, zb], axis=-1)

    def rvec(self, xi):
        ub = self.table.ubar_at(xi)
        zb = self.table.zbar_at(xi)
        pv = np.asarray(self.phi.value(ub), dtype=float)
        return np.stack([self.params.q * pv * zb, -pv * zb], axis=-1)

    def limit_matrix(self, lam: complex) -> np.ndarray:
        """A^{-1}(-inf) (E(-inf) - lam I): upper triangular, eigenvalues
        -lam/sound_factor and lam + phi(u_minus)."""
        sq = self.sound_factor
        pm = self.phi_minus
        return np.array([
            [-lam / sq, self.params.q * pm / sq],
            [0.0, lam + pm],
        ], dtype=complex)

    def mode_rates(self, lam: complex) -> tuple[complex, complex]:
        """(neutral/growing rate, decaying-mode rate) at xi -> -inf."""
        return (-lam / self.sound_factor, lam + self.phi_minus)

    def seed_vector(self, lam: complex) -> np.ndarray:
        """Frozen-coefficient eigenvector of the y-system for the decaying rate,
        normalized to unit second component (analytic in lam away from the
        rate collision, which cannot occur for Re lam >= 0)."""
        slow, fast = self.mode_rates(lam)
        if abs(fast - slow) < _COLLISION_TOL:
            raise ModeCollisionError(
                f"limiting rates collide at lam={lam}: {slow} vs {fast}")
        x = -self.params.q * self.phi_minus / (fast - slow)
        return np.array([x, 1.0], dtype=complex)

    # -- y' = M(xi, lam) y coefficient pieces ------------------------------
    def _m_pieces(self, xi):
        """M(xi, lam) = P(xi) - lam * diag(Qd(xi)) with P = E A^{-1}."""
        xi = np.asarray(xi, dtype=float)
        zb = self.table.zbar_at(xi)
        ub = ubar_from_zbar(zb, self.params)
        pv = np.asarray(self.phi.value(ub), dtype=float)
        pd = np.asarray(self.phi.derivative(ub), dtype=float)
        a1 = self.params.omega * (ub - 1.0)
        P = np.empty(xi.shape + (2, 2))
        P[..., 0, 0] = self.params.q * zb * pd / a1
        P[..., 0, 1] = -self.params.q * pv
        P[..., 1, 0] = -zb * pd / a1
        P[..., 1, 1] = pv
        Qd = np.empty(xi.shape + (2,))
        Qd[..., 0] = 1.0 / a1
        Qd[..., 1] = -1.0
        return P, Qd


def jump_vector(params: ModelParams, phi: IgnitionFunction, lam: complex) -> np.ndarray:
    """Shock jump column [lam*Wbar - R(Wbar)] (0+ minus 0-).

    With traces Wbar(0+) = (0, 1), Wbar(0-) = (2, 1) and phi(0) = 0 this is
    (q*phi(2) - 2*lam, -phi(2)); its lam-derivative is the constant (-2, 0).
    """
    p2 = float(phi.value(2.0))
    return np.array([params.q * p2 - 2.0 * lam, -p2], dtype=complex)


@dataclass(frozen=True)
class ModeSolution:
    """Gauged decaying mode y~(xi) = exp(-mu*(xi+L)) (A v)(xi) on [-L, 0]."""

    lam: complex
    mu: complex
    xi: np.ndarray
    y: np.ndarray          # shape (n, 2), gauged values
    at: Callable[[float], np.ndarray]

    @property
    def y0(self) -> np.ndarray:
        return self.y[-1]


def decaying_mode(system: EigenSystem, table: ProfileTable, lam: complex,
                  rtol: float = 1e-11) -> ModeSolution:
    """Integrate the gauged decaying mode from -L to 0 (adaptive backend).

    Requires Re(lam) >= -phi(u_minus)/2 so the decaying rate keeps a gap to
    the neutral one.  The seed is the frozen-coefficient eigenvector at -L;
    the skipped boundary-layer correction there is of the order of the
    reactant tail, i.e. negligible for the default truncation.
    """
    lam = complex(lam)
    if lam.real < -system.phi_minus / 2.0:
        raise DomainError(
            f"Re(lam) = {lam.real} below the mode gap -phi(u_minus)/2 = "
            f"{-system.phi_minus / 2.0}")
    mu = lam + system.phi_minus
    seed = system.seed_vector(lam)
    L = table.L

    def rhs(xi, y):
        P, Qd = system._m_pieces(xi)
        My = P @ y - lam * (Qd * y)
        return My - mu * y

    sol = solve_ivp(rhs, (-L, 0.0), seed, method="DOP853",
                    rtol=rtol, atol=1e-14, dense_output=True)
    if not sol.success:  # pragma: no cover
        raise DomainError(f"mode integration failed at lam={lam}: {sol.message}")
    dense = sol.sol
    return ModeSolution(lam=lam, mu=mu, xi=sol.t, y=sol.y.T,
                        at=lambda x: dense(x))


@dataclass(frozen=True)
class EvansResult:
    """Gauged determinant value at one lam.

    ``delta`` is Delta in the unit-seed normalization at -L (analytic in lam,
    zero exactly where the ungauged determinant vanishes); ``gauge_log``
    records the discarded modulus exponent Re(mu(lam)) * L.
    """

    lam: complex
    delta: complex
    gauge_log: float


def evans_determinant(system: EigenSystem, table: ProfileTable, lam: complex,
                      rtol: float = 1e-11) -> EvansResult:
    """Evans-Lopatinsky determinant det[jump(lam), y~(0)] (adaptive backend)."""
    mode = decaying_mode(system, table, lam, rtol=rtol)
    jump = jump_vector(system.params, system.phi, mode.lam)
    y0 = mode.y0
    delta = jump[0] * y0[1] - jump[1] * y0[0]
    return EvansResult(lam=mode.lam, delta=delta,
                       gauge_log=mode.mu.real * table.L)


def evans_determinant_batch(system: EigenSystem, table: ProfileTable,
                            lams: np.ndarray,
                            steps_per_unit: Optional[float] = None) -> np.ndarray:
    """Determinant at many lam simultaneously (fixed-grid RK4 backend).

    One classical RK4 sweep over [-L, 0] propagates all modes at once; the
    profile-dependent coefficient matrices are evaluated once per node and
    shared across the batch.  The step count scales with the largest
    oscillation rate rate_factor * max|lam| in the batch.
    """
    lams = np.atleast_1d(np.asarray(lams, dtype=complex))
    if np.any(lams.real < -system.phi_minus / 2.0):
        raise DomainError("batch contains lam below the mode gap")
    gap = (lams + system.phi_minus) + lams / system.sound_factor
    if float(np.min(np.abs(gap))) < _COLLISION_TOL:
        raise ModeCollisionError("limiting rates collide for some lam in the batch")
    L = table.L
    if steps_per_unit is None:
        coeff_scale = (1.0 + system.params.q) * max(
            1.0, float(np.max(system.phi.value(table.ubar))))
        rate = system.rate_factor * float(np.max(np.abs(lams))) + coeff_scale
        steps_per_unit = 1.5 * rate
    n = max(1500, int(math.ceil(L * steps_per_unit)))
    nodes = np.linspace(-L, 0.0, 2 * n + 1)
    P, Qd = system._m_pieces(nodes)
    h = L / n
    mu = lams + system.phi_minus
    lam_c = lams[:, None]
    mu_c = mu[:, None]
    Y = np.empty((lams.size, 2), dtype=complex)
    Y[:, 0] = -system.params.q * system.phi_minus / (mu + lams / system.sound_factor)
    Y[:, 1] = 1.0

    def f(Yv, idx):
        return Yv @ P[idx].T - lam_c * (Yv * Qd[idx]) - mu_c * Yv

    for j in range(n):
        i0, im, i1 = 2 * j, 2 * j + 1, 2 * j + 2
        k1 = f(Y, i0)
        k2 = f(Y + (0.5 * h) * k1, im)
        k3 = f(Y + (0.5 * h) * k2, im)
        k4 = f(Y + h * k3, i1)
        Y = Y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    p2 = float(system.phi.value(2.0))
    jump0 = system.params.q * p2 - 2.0 * lams
    jump1 = -p2
    return jump0 * Y[:, 1] - jump1 * Y[:, 0]


def origin_mode_scale(system: EigenSystem, table: ProfileTable,
                      rtol: float = 1e-11) -> float:
    """Real factor s with s * y~(0, lam=0) = R(Wbar(0-)) = (q*phi(2), -phi(2)).

    At lam = 0 the decaying mode is the profile derivative, so y(0) is
    collinear with R(Wbar(0-)); matching first components fixes the scale.
    """
    mode = decaying_mode(system, table, 0.0, rtol=rtol)
    r0 = float(system.params.q) * float(system.phi.value(2.0))
    return r0 / mode.y0[0].real


def delta_slope_at_origin(system: EigenSystem, table: ProfileTable,
                          h: Optional[float] = None,
                          rtol: float = 1e-11) -> complex:
    """d Delta/d lam at 0 for the mode family normalized through R(Wbar(0-)).

    Central finite difference of det[jump(lam), s*y~(0, lam)] with the single
    real scale s fixed at lam = 0.  For this normalization the slope equals
    (1 - q + sqrt(1 - 2q/omega)) * phi(2).
    """
    if h is None:
        h = 1e-5 * max(1.0, system.phi_minus)
    s = origin_mode_scale(system, table, rtol=rtol)

    def norm_delta(lam: complex) -> complex:
        mode = decaying_mode(system, table, lam, rtol=rtol)
        jump = jump_vector(system.params, system.phi, lam)
        y = s * mode.y0
        return jump[0] * y[1] - jump[1] * y[0]

    return (norm_delta(h) - norm_delta(-h)) / (2.0 * h)


# ---------------------------------------------------------------------------
# contours and winding numbers
# ---------------------------------------------------------------------------

def default_radius(system: EigenSystem) -> float:
    """Outer contour radius 10 * max(1, phi(u_minus), 1/omega)."""
    return 10.0 * max(1.0, system.phi_minus, 1.0 / system.params.omega)


def _contour_point(theta, R: float, r0: float, include_origin: bool):
    """Piecewise parametrization of the D-shaped contour, theta in [0, 4].

    Piece 0: right half-circle of radius R from -iR to +iR (counterclockwise).
    Piece 1: imaginary axis from iR down to i r0.
    Piece 2: half-circle of radius r0 from i r0 to -i r0; it bulges right
             (through +r0, clockwise) to exclude the origin, or left
             (through -r0, counterclockwise) to include it.
    Piece 3: imaginary axis from -i r0 down to -iR.
    """
    t = np.asarray(theta, dtype=float)
    lam = np.empty(t.shape, dtype=complex)
    tm = np.where(t >= 4.0, t - 4.0, t)
    m = tm < 1.0
    lam[m] = R * np.exp(1j * (-0.5 * np.pi + np.pi * tm[m]))
    m = (tm >= 1.0) & (tm < 2.0)
    lam[m] = 1j * (R + (r0 - R) * (tm[m] - 1.0))
    m = (tm >= 2.0) & (tm < 3.0)
    if include_origin:
        lam[m] = r0 * np.exp(1j * (0.5 * np.pi + np.pi * (tm[m] - 2.0)))
    else:
        lam[m] = r0 * np.exp(1j * (0.5 * np.pi - np.pi * (tm[m] - 2.0)))
    m = tm >= 3.0
    lam[m] = -1j * (r0 + (R - r0) * (tm[m] - 3.0))
    return lam


@dataclass(frozen=True)
class WindingCertificate:
    """Argument-principle count of determinant zeros inside a D-contour.

    ``theta``/``lambdas``/``values`` hold the refined sample sequence along
    the positively oriented boundary; adjacent phase differences are all
    below pi/2 and their sum is 2*pi times the winding number.
    """

    winding: int
    R: float
    r0: float
    include_origin: bool
    theta: np.ndarray
    lambdas: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        for name in ("theta", "lambdas", "values"):
            getattr(self, name).setflags(write=False)

    @property
    def samples_used(self) -> int:
        return int(self.theta.size)

    @property
    def phases(self) -> np.ndarray:
        return np.angle(self.values)

    def to_dict(self) -> dict:
        return {"winding": self.winding, "R": self.R, "r0": self.r0,
                "samples_used": self.samples_used}


def winding_count(system: EigenSystem, table: ProfileTable,
                  R: Optional[float] = None, r0: float = 1e-3,
                  include_origin: bool = False,
                  initial_per_piece: int = 48,
                  budget: int = _SAMPLE_BUDGET) -> WindingCertificate:
    """Winding number of the determinant around a right-half-plane D-contour.

    Samples Delta along the positively oriented boundary of
    {Re lam >= 0, r0 <= |lam| <= R} (the small arc bulging right, so the
    translational zero at the origin is excluded; with ``include_origin``
    the small arc bulges left and the origin zero is counted).  Intervals are
    bisected until every adjacent phase difference is below pi/2; the winding
    is the accumulated phase over 2*pi and must come out integer to 1e-6.
    """
    if R is None:
        R = default_radius(system)
    if not R > r0 > 0.0:
        raise DomainError(f"need R > r0 > 0, got R={R}, r0={r0}")
    if r0 >= system.phi_minus / 2.0:
        raise DomainError(
            f"inner radius r0={r0} reaches the mode gap phi(u_minus)/2; "
            "shrink r0")

    theta = np.linspace(0.0, 4.0, 4 * initial_per_piece + 1)
    lams = _contour_point(theta, R, r0, include_origin)
    vals = evans_determinant_batch(system, table, lams)
    for _ in range(64):
        if np.any(vals == 0.0):
            raise PhaseResolutionError("determinant vanishes on the contour")
        dphi = np.diff(np.angle(vals))
        dphi = (dphi + np.pi) % (2.0 * np.pi) - np.pi
        bad = np.abs(dphi) >= 0.5 * np.pi
        if not np.any(bad):
            break
        if theta.size + int(bad.sum()) > budget:
            raise PhaseResolutionError(
                f"unresolved phase after {theta.size} samples (budget {budget}); "
                "a zero may sit on or near the contour")
        mid = 0.5 * (theta[:-1][bad] + theta[1:][bad])
        mid_vals = evans_determinant_batch(
            system, table, _contour_point(mid, R, r0, include_origin))
        theta = np.concatenate([theta, mid])
        order = np.argsort(theta)
        theta = theta[order]
        vals = np.concatenate([vals, mid_vals])[order]
        lams = _contour_point(theta, R, r0, include_origin)
    else:  # pragma: no cover
        raise PhaseResolutionError("phase refinement did not converge")

    dphi = np.diff(np.angle(vals))
    dphi = (dphi + np.pi) % (2.0 * np.pi) - np.pi
    total = float(dphi.sum()) / (2.0 * np.pi)
    winding = round(total)
    if abs(total - winding) > 1e-6:
        raise PhaseResolutionError(
            f"winding {total} not integer within 1e-6; contour too close to a zero")
    return WindingCertificate(winding=winding, R=float(R), r0=float(r0),
                              include_origin=include_origin,
                              theta=theta, lambdas=lams, values=vals)


def verified_winding_count(system: EigenSystem, table: ProfileTable,
                           R: Optional[float] = None, r0: float = 1e-3,
                           include_origin: bool = False) -> WindingCertificate:
    """Winding count with the doubling check: the count must be unchanged
    when the outer radius is doubled (no zeros hiding just outside R)."""
    if R is None:
        R = default_radius(system)
    base = winding_count(system, table, R=R, r0=r0, include_origin=include_origin)
    double = winding_count(system, table, R=2.0 * R, r0=r0,
                           include_origin=include_origin)
    if double.winding != base.winding:
        raise PhaseResolutionError(
            f"winding changed under radius doubling: {base.winding} -> "
            f"{double.winding}; enlarge R")
    return base


def homotopy_track(systems: Sequence[tuple[EigenSystem, ProfileTable]],
                   R: float, r0: float = 1e-3,
                   include_origin: bool = False) -> list[WindingCertificate]:
    """Winding certificates along a family of waves sharing one contour.

    For an ignition homotopy whose members all satisfy the stability
    criterion, eigenvalues cannot cross the contour, so the count must be
    constant in the family parameter; a varying count is reported as a
    resolution failure.
    """
    certs = [
        winding_count(sys_, tab_, R=R, r0=r0, include_origin=include_origin)
        for sys_, tab_ in systems
    ]
    windings = {c.winding for c in certs}
    if len(windings) > 1:
        raise PhaseResolutionError(
            f"winding varies along the homotopy: {sorted(windings)}")
    return certs
