"""Wave-family parameters and ignition-function algebra for the inviscid Majda model.

The reacting model is studied in rescaled coordinates where the wave speed is 1,
the right (quiescent) state is u=0, and the post-shock trace is u=2.  A wave
family is then fixed by the rescaled heat release ``q`` and the speed ratio
``omega``; everything else (left endpoint u_minus, shock traces) is derived.

Ignition functions phi(u) vanish at and below an ignition level u_i and are
positive above it.  Four variants are provided: a unit step, Arrhenius laws
built on a temperature profile T(u), monotone-cubic tabulated data, and the
geometric homotopy blend phi^r * phi0^(1-r) used to deform one ignition law
into another.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError

__all__ = [
    "OriginalParams",
    "ModelParams",
    "RescaledSystem",
    "rescale",
    "unrescale",
    "u_minus",
    "TemperatureProfile",
    "T1",
    "T2",
    "TEMPERATURE_PROFILES",
    "IgnitionFunction",
    "StepIgnition",
    "ArrheniusIgnition",
    "TabulatedIgnition",
    "HomotopyIgnition",
    "RescaledIgnition",
    "IgnitionEval",
    "ignition_eval",
]

# Profile u-range in rescaled coordinates: quiescent state 0, post-shock trace 2.
U_PLUS = 0.0
U_STAR = 2.0


# ---------------------------------------------------------------------------
# parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModelParams:
    """Rescaled wave-family parameters.

    Requires 0 <= 2q/omega < 1 (strictly), so the left endpoint
    u_minus = 1 + sqrt(1 - 2q/omega) is real and the flux coefficient
    omega*(u-1) stays invertible along the reaction zone.  The boundary case
    2q/omega = 1 (sonic left endpoint) is rejected.
    """

    q: float
    omega: float = 1.0

    def __post_init__(self) -> None:
        if not (0.0 < self.omega <= 1.0):
            raise DomainError(f"omega must lie in (0, 1], got {self.omega}")
        if self.q < 0.0:
            raise DomainError(f"heat release q must be >= 0, got {self.q}")
        if not 2.0 * self.q / self.omega < 1.0:
            raise DomainError(
                "2q/omega must be < 1 for a strong detonation family, got "
                f"2q/omega = {2.0 * self.q / self.omega}"
            )

    @property
    def ratio(self) -> float:
        """q/omega, the parameter the stability maps are drawn over."""
        return self.q / self.omega

    @property
    def u_minus(self) -> float:
        return 1.0 + math.sqrt(1.0 - 2.0 * self.q / self.omega)

    @property
    def u_lim(self) -> float:
        """Lower endpoint of the u-range the stability criterion scans."""
        return self.u_minus

    @property
    def u_star(self) -> float:
        return U_STAR

    @property
    def u_plus(self) -> float:
        return U_PLUS


def u_minus(params: ModelParams) -> float:
    """Left state 1 + sqrt(1 - 2q/omega) of the wave family."""
    return params.u_minus


@dataclass(frozen=True)
class OriginalParams:
    """Strong-detonation data in original (unrescaled) coordinates.

    The ordering u_plus < s < u_star and the shock relation
    u_star + u_plus = 2s are required; u_ignition must sit above the
    quiescent state u_plus.
    """

    s: float
    u_plus: float
    u_star: float
    q: float
    k: float = 1.0
    u_ignition: float = 0.0

    def __post_init__(self) -> None:
        if self.s <= self.u_plus:
            raise DomainError(
                f"need u_plus < s for a strong detonation, got s={self.s}, u_plus={self.u_plus}"
            )
        if self.u_star <= self.s:
            raise DomainError(
                f"need s < u_star for a strong detonation, got s={self.s}, u_star={self.u_star}"
            )
        if not math.isclose(self.u_star + self.u_plus, 2.0 * self.s, rel_tol=1e-12, abs_tol=1e-12):
            raise DomainError(
                "shock relation u_star + u_plus = 2s violated: "
                f"{self.u_star} + {self.u_plus} != 2*{self.s}"
            )
        if self.u_ignition <= self.u_plus:
            raise DomainError(
                f"ignition level must exceed the right state, got u_i={self.u_ignition}, "
                f"u_plus={self.u_plus}"
            )
        if self.k <= 0.0:
            raise DomainError(f"rate constant k must be positive, got {self.k}")
        if self.q < 0.0:
            raise DomainError(f"heat release q must be >= 0, got {self.q}")


# ---------------------------------------------------------------------------
# temperature profiles (for Arrhenius laws)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TemperatureProfile:
    """Temperature as a function of the state u, with derivatives.

    ``second_derivative`` may be None; it is only needed by the Liouville
    gauge diagnostics, not by the stability criterion itself.
    """

    name: str
    value: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]
    second_derivative: Optional[Callable[[np.ndarray], np.ndarray]] = None


def _t1_val(u):
    u = np.asarray(u, dtype=float)
    return 1.0 - (u - 1.5) ** 2


def _t1_der(u):
    u = np.asarray(u, dtype=float)
    return -2.0 * (u - 1.5)


def _t1_der2(u):
    return np.full_like(np.asarray(u, dtype=float), -2.0)


def _t2_val(u):
    return np.asarray(u, dtype=float)


def _t2_der(u):
    return np.ones_like(np.asarray(u, dtype=float))


def _t2_der2(u):
    return np.zeros_like(np.asarray(u, dtype=float))


#: Benchmark temperature choice 1: a quadratic peaking at u = 1.5.
T1 = TemperatureProfile("t1", _t1_val, _t1_der, _t1_der2)
#: Benchmark temperature choice 2: temperature equal to the state itself.
T2 = TemperatureProfile("t2", _t2_val, _t2_der, _t2_der2)

TEMPERATURE_PROFILES = {"t1": T1, "t2": T2}


# ---------------------------------------------------------------------------
# ignition functions
# ---------------------------------------------------------------------------

class IgnitionEval(NamedTuple):
    """Pointwise ignition data: value, u-derivative, and log-derivative.

    ``log_derivative`` is None below ignition (value 0), where d/du ln(phi)
    does not exist; callers must treat that as a distinct outcome rather
    than a number.
    """

    value: float
    u_derivative: float
    log_derivative: Optional[float]

    @property
    def below_ignition(self) -> bool:
        return self.log_derivative is None


class IgnitionFunction:
    """Reaction-rate switch phi(u): zero at and below the ignition level, positive above.

    Subclasses implement ``value`` / ``derivative`` (vectorized over u) and
    expose ``ignition_level``.  ``second_derivative`` is optional and only
    used by gauge diagnostics.
    """

    #: largest u with phi(u) = 0; phi > 0 strictly above it (within [0, 2])
    ignition_level: float

    def value(self, u):
        raise NotImplementedError

    def derivative(self, u):
        raise NotImplementedError

    def second_derivative(self, u):
        raise NotImplementedError(f"{type(self).__name__} has no second derivative")

    def support_mask(self, u):
        """Where phi is mathematically positive (robust to underflow of value)."""
        return np.asarray(u, dtype=float) > self.ignition_level

    def log_derivative(self, u):
        """d/du ln(phi) where phi > 0.  Vectorized; caller masks the support."""
        u = np.asarray(u, dtype=float)
        v = self.value(u)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(v > 0.0, self.derivative(u) / np.where(v > 0.0, v, 1.0), -np.inf)


def ignition_eval(phi: IgnitionFunction, u: float) -> IgnitionEval:
    """Evaluate (phi, phi_u, (ln phi)_u) at a single state u in [0, 2]."""
    if not 0.0 <= u <= 2.0:
        raise DomainError(f"u={u} outside the profile range [0, 2]")
    value = float(phi.value(u))
    deriv = float(phi.derivative(u))
    if value > 0.0:
        return IgnitionEval(value, deriv, deriv / value)
    return IgnitionEval(value, deriv, None)


class StepIgnition(IgnitionFunction):
    """Unit step: phi = 0 at and below u_i, 1 above.

    The derivative is 0 away from the jump; evaluating the derivative exactly
    at u_i is rejected (the jump point has no derivative).
    """

    def __init__(self, u_i: float):
        if not 0.0 <= u_i < 2.0:
            raise DomainError(f"step ignition level must lie in [0, 2), got {u_i}")
        self.u_i = float(u_i)
        self.ignition_level = self.u_i

    def value(self, u):
        u = np.asarray(u, dtype=float)
        return np.where(u > self.u_i, 1.0, 0.0)

    def derivative(self, u):
        u = np.asarray(u, dtype=float)
        if np.any(u == self.u_i):
            raise DomainError(f"step ignition derivative undefined at the jump u={self.u_i}")
        return np.zeros_like(u)

    def second_derivative(self, u):
        return self.derivative(u)

    def __repr__(self) -> str:
        return f"StepIgnition(u_i={self.u_i!r})"


class ArrheniusIgnition(IgnitionFunction):
    """Arrhenius law phi(u) = C exp(-E/T(u)) where T(u) > 0, and 0 where T <= 0.

    ``prefactor`` may be the string "normalized", which picks C = exp(E/T(2))
    so that phi(2) = 1; this fixes the reaction rate at the shock and keeps
    profile lengths O(1) regardless of the activation energy.  The stability
    criterion itself is independent of C.
    """

    def __init__(self, activation_energy: float, temperature: TemperatureProfile,
                 prefactor: float | str = 1.0):
        if activation_energy < 0.0:
            raise DomainError(f"activation energy must be >= 0, got {activation_energy}")
        self.activation_energy = float(activation_energy)
        self.temperature = temperature
        t2 = float(temperature.value(2.0))
        if prefactor == "normalized":
            if t2 <= 0.0:
                raise DomainError("cannot normalize: temperature not positive at u=2")
            prefactor = math.exp(self.activation_energy / t2)
        self.prefactor = float(prefactor)
        if self.prefactor <= 0.0:
            raise DomainError(f"prefactor must be positive, got {self.prefactor}")
        self.ignition_level = self._support_threshold()

    def _support_threshold(self) -> float:
        """Largest u in [0, 2] with T(u) <= 0 (the effective ignition level)."""
        T = self.temperature
        if float(T.value(2.0)) <= 0.0:
            raise DomainError("temperature must be positive at the shock trace u=2")
        grid = np.linspace(0.0, 2.0, 2049)
        tv = np.asarray(T.value(grid), dtype=float)
        nonpos = np.nonzero(tv <= 0.0)[0]
        if nonpos.size == 0:
            return 0.0
        k = int(nonpos[-1])
        lo, hi = grid[k], grid[k + 1]
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if float(T.value(mid)) <= 0.0:
                lo = mid
            else:
                hi = mid
        return lo

    def value(self, u):
        u = np.asarray(u, dtype=float)
        tv = np.asarray(self.temperature.value(u), dtype=float)
        pos = tv > 0.0
        safe = np.where(pos, tv, 1.0)
        return np.where(pos, self.prefactor * np.exp(-self.activation_energy / safe), 0.0)

    def support_mask(self, u):
        # robust under exp underflow: positivity is a temperature statement
        return np.asarray(self.temperature.value(u), dtype=float) > 0.0

    def log_derivative(self, u):
        u = np.asarray(u, dtype=float)
        tv = np.asarray(self.temperature.value(u), dtype=float)
        pos = tv > 0.0
        safe = np.where(pos, tv, 1.0)
        return np.where(pos, self.activation_energy * self.temperature.derivative(u) / safe**2,
                        -np.inf)

    def derivative(self, u):
        u = np.asarray(u, dtype=float)
        v = self.value(u)
        ld = self.log_derivative(u)
        return np.where(v > 0.0, v * np.where(v > 0.0, ld, 0.0), 0.0)

    def second_derivative(self, u):
        # phi'' = phi * (l^2 + l') with l = (ln phi)' = E T_u / T^2
        if self.temperature.second_derivative is None:
            raise NotImplementedError("temperature profile lacks a second derivative")
        u = np.asarray(u, dtype=float)
        tv = np.asarray(self.temperature.value(u), dtype=float)
        pos = tv > 0.0
        safe = np.where(pos, tv, 1.0)
        tu = np.asarray(self.temperature.derivative(u), dtype=float)
        tuu = np.asarray(self.temperature.second_derivative(u), dtype=float)
        E = self.activation_energy
        ell = E * tu / safe**2
        ellp = E * (tuu / safe**2 - 2.0 * tu**2 / safe**3)
        return np.where(pos, self.value(u) * (ell**2 + ellp), 0.0)

    def __repr__(self) -> str:
        return (f"ArrheniusIgnition(E={self.activation_energy!r}, "
                f"T={self.temperature.name!r}, C={self.prefactor!r})")


class TabulatedIgnition(IgnitionFunction):
    """Monotone cubic (PCHIP) interpolation of sampled (u, phi) data.

    Sampled values must be nonnegative; the ignition level is the largest
    abscissa with phi = 0, and phi is 0 at and below it.  The interpolant's
    analytic derivative supplies d/du ln(phi), which the criterion needs
    continuously.
    """

    def __init__(self, u_samples: Sequence[float], phi_samples: Sequence[float]):
        u_arr = np.asarray(u_samples, dtype=float)
        p_arr = np.asarray(phi_samples, dtype=float)
        if u_arr.ndim != 1 or u_arr.shape != p_arr.shape or u_arr.size < 4:
            raise DomainError("tabulated ignition needs matching 1-d arrays with >= 4 samples")
        if np.any(np.diff(u_arr) <= 0.0):
            raise DomainError("tabulated abscissae must be strictly increasing")
        if np.any(p_arr < 0.0):
            raise DomainError("tabulated ignition values must be nonnegative")
        if p_arr[-1] <= 0.0:
            raise DomainError("tabulated ignition must be positive at the top of its range")
        zero = np.nonzero(p_arr == 0.0)[0]
        if zero.size and np.any(np.diff(zero) != 1) or (zero.size and zero[0] != 0):
            raise DomainError("zeros of a tabulated ignition must form a prefix of the samples")
        self.u_samples = u_arr
        self.phi_samples = p_arr
        self.ignition_level = float(u_arr[zero[-1]]) if zero.size else float(u_arr[0])
        self._interp = PchipInterpolator(u_arr, p_arr, extrapolate=False)
        self._deriv = self._interp.derivative()
        self._deriv2 = self._interp.derivative(2)
        self._u_max = float(u_arr[-1])

    def _check_range(self, u):
        if np.any(u > self._u_max + 1e-12):
            raise DomainError(f"tabulated ignition queried above its range (max {self._u_max})")

    def value(self, u):
        u = np.asarray(u, dtype=float)
        self._check_range(u)
        above = u > self.ignition_level
        out = np.where(above, self._interp(np.clip(u, self.u_samples[0], self._u_max)), 0.0)
        return np.where(above & (out > 0.0), out, 0.0)

    def derivative(self, u):
        u = np.asarray(u, dtype=float)
        self._check_range(u)
        above = u > self.ignition_level
        return np.where(above, self._deriv(np.clip(u, self.u_samples[0], self._u_max)), 0.0)

    def second_derivative(self, u):
        u = np.asarray(u, dtype=float)
        self._check_range(u)
        above = u > self.ignition_level
        return np.where(above, self._deriv2(np.clip(u, self.u_samples[0], self._u_max)), 0.0)

    def __repr__(self) -> str:
        return f"TabulatedIgnition({self.u_samples.size} samples, u_i={self.ignition_level!r})"


class HomotopyIgnition(IgnitionFunction):
    """Geometric blend phi(r, u) = phi(u)^r * phi0(u)^(1-r), r in [0, 1].

    At the endpoints the blend equals the respective component exactly.  For
    interior r the support is the intersection of the two supports, and the
    log-derivative is the r-weighted average of the component log-derivatives.
    """

    def __init__(self, r: float, phi: IgnitionFunction, phi0: IgnitionFunction):
        if not 0.0 <= r <= 1.0:
            raise DomainError(f"homotopy parameter r must lie in [0, 1], got {r}")
        self.r = float(r)
        self.phi = phi
        self.phi0 = phi0
        if self.r == 0.0:
            self.ignition_level = phi0.ignition_level
        elif self.r == 1.0:
            self.ignition_level = phi.ignition_level
        else:
            self.ignition_level = max(phi.ignition_level, phi0.ignition_level)

    def value(self, u):
        if self.r == 0.0:
            return self.phi0.value(u)
        if self.r == 1.0:
            return self.phi.value(u)
        u = np.asarray(u, dtype=float)
        v1 = np.asarray(self.phi.value(u), dtype=float)
        v0 = np.asarray(self.phi0.value(u), dtype=float)
        pos = (v1 > 0.0) & (v0 > 0.0)
        s1 = np.where(pos, v1, 1.0)
        s0 = np.where(pos, v0, 1.0)
        return np.where(pos, np.exp(self.r * np.log(s1) + (1.0 - self.r) * np.log(s0)), 0.0)

    def support_mask(self, u):
        if self.r == 0.0:
            return self.phi0.support_mask(u)
        if self.r == 1.0:
            return self.phi.support_mask(u)
        return self.phi.support_mask(u) & self.phi0.support_mask(u)

    def log_derivative(self, u):
        if self.r == 0.0:
            return self.phi0.log_derivative(u)
        if self.r == 1.0:
            return self.phi.log_derivative(u)
        l1 = self.phi.log_derivative(u)
        l0 = self.phi0.log_derivative(u)
        return self.r * l1 + (1.0 - self.r) * l0

    def derivative(self, u):
        u = np.asarray(u, dtype=float)
        v = np.asarray(self.value(u), dtype=float)
        pos = v > 0.0
        if not np.any(pos):
            return np.zeros_like(v)
        ld = np.where(pos, self.log_derivative(u), 0.0)
        return np.where(pos, v * ld, 0.0)

    def _log_second(self, u):
        """(ln phi)'' of the blend: r-weighted average of component values."""
        def comp(p):
            v = np.asarray(p.value(u), dtype=float)
            pos = v > 0.0
            d1 = np.where(pos, p.derivative(u), 0.0)
            d2 = np.where(pos, p.second_derivative(u), 0.0)
            s = np.where(pos, v, 1.0)
            return np.where(pos, d2 / s - (d1 / s) ** 2, 0.0)

        if self.r == 0.0:
            return comp(self.phi0)
        if self.r == 1.0:
            return comp(self.phi)
        return self.r * comp(self.phi) + (1.0 - self.r) * comp(self.phi0)

    def second_derivative(self, u):
        u = np.asarray(u, dtype=float)
        v = np.asarray(self.value(u), dtype=float)
        pos = v > 0.0
        ld = np.where(pos, self.log_derivative(u), 0.0)
        ls = self._log_second(u)
        return np.where(pos, v * (ld**2 + ls), 0.0)

    def __repr__(self) -> str:
        return f"HomotopyIgnition(r={self.r!r}, phi={self.phi!r}, phi0={self.phi0!r})"


# ---------------------------------------------------------------------------
# original <-> rescaled coordinates
# ---------------------------------------------------------------------------

class RescaledIgnition(IgnitionFunction):
    """Ignition law pushed through the rescaling: phi~(u~) = k * phi(u(u~))."""

    def __init__(self, phi: IgnitionFunction, orig: OriginalParams):
        self._phi = phi
        self._k = orig.k
        self._u_plus = orig.u_plus
        self._scale = orig.s - orig.u_plus
        self.ignition_level = (phi.ignition_level - orig.u_plus) / self._scale

    def _back(self, u):
        return self._u_plus + self._scale * np.asarray(u, dtype=float)

    def value(self, u):
        return self._k * self._phi.value(self._back(u))

    def derivative(self, u):
        return self._k * self._scale * self._phi.derivative(self._back(u))

    def second_derivative(self, u):
        return self._k * self._scale**2 * self._phi.second_derivative(self._back(u))

    def __repr__(self) -> str:
        return f"RescaledIgnition({self._phi!r}, k={self._k!r}, scale={self._scale!r})"


@dataclass(frozen=True)
class RescaledSystem:
    """Result of rescaling: raw (q, omega), coordinate maps, ignition transport.

    The rescaling itself is pure coordinate arithmetic; whether the rescaled
    pair describes an admissible wave family (2q/omega < 1) is only checked
    when ``params`` is accessed.
    """

    q: float
    omega: float
    original: OriginalParams

    @property
    def params(self) -> ModelParams:
        return ModelParams(q=self.q, omega=self.omega)

    @property
    def scale(self) -> float:
        return self.original.s - self.original.u_plus

    def to_rescaled_u(self, u):
        return (np.asarray(u, dtype=float) - self.original.u_plus) / self.scale

    def to_original_u(self, u_tilde):
        return self.original.u_plus + self.scale * np.asarray(u_tilde, dtype=float)

    def rescale_ignition(self, phi: IgnitionFunction) -> IgnitionFunction:
        return RescaledIgnition(phi, self.original)

    @property
    def u_ignition_rescaled(self) -> float:
        return float(self.to_rescaled_u(self.original.u_ignition))


def rescale(orig: OriginalParams) -> RescaledSystem:
    """Map original strong-detonation data to the normalized wave family.

    Returns the rescaled (q, omega) together with the coordinate map
    u~ = (u - u_plus)/(s - u_plus) and the ignition transport
    phi~(u~) = k * phi(u).  Rejects orderings that are not strong detonations.
    """
    scale = orig.s - orig.u_plus
    omega = scale / orig.s
    q_tilde = orig.q / scale
    return RescaledSystem(q=q_tilde, omega=omega, original=orig)


def unrescale(system: RescaledSystem) -> OriginalParams:
    """Inverse of :func:`rescale` (identity on the stored original data)."""
    o = system.original
    s = o.s
    u_plus = s * (1.0 - system.omega)
    scale = s - u_plus
    return OriginalParams(
        s=s,
        u_plus=u_plus,
        u_star=2.0 * s - u_plus,
        q=system.q * scale,
        k=o.k,
        u_ignition=o.u_ignition,
    )
