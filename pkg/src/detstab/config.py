"""Configuration files and command-line ignition specs.

A configuration file (JSON or TOML, chosen by extension) carries

    { "q": 0.3, "omega": 1.0,
      "ignition": { "kind": "step", "u_i": 1.2 } }

Ignition kinds and their fields:

* ``step``:       u_i
* ``arrhenius``:  E (activation energy), T ("t1" | "t2"),
                  C (prefactor, number or "normalized"; default 1)
* ``tabulated``:  u (list), phi (list)
* ``homotopy``:   r, phi (nested ignition object), phi0 (nested, optional;
                  defaults to a step at phi's ignition level)

The compact command-line form ``kind:key=value,...`` covers the same kinds,
e.g. ``step:1.2``, ``arrhenius:E=5,T=t1,C=normalized``.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .errors import DomainError
from .model import (
    TEMPERATURE_PROFILES,
    ArrheniusIgnition,
    HomotopyIgnition,
    IgnitionFunction,
    ModelParams,
    StepIgnition,
    TabulatedIgnition,
)

__all__ = ["load_config", "ignition_from_dict", "parse_ignition_spec"]


def _load_toml(path: str) -> dict:
    try:
        import tomllib  # Python >= 3.11
    except ModuleNotFoundError:
        import tomli as tomllib
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def load_config(path: str) -> tuple[ModelParams, IgnitionFunction]:
    """Read parameters and an ignition function from a JSON or TOML file."""
    if path.endswith(".toml"):
        data = _load_toml(path)
    else:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    if not isinstance(data, dict):
        raise DomainError(f"config root must be a table/object, got {type(data).__name__}")
    try:
        q = float(data["q"])
    except KeyError:
        raise DomainError("config missing required key 'q'") from None
    omega = float(data.get("omega", 1.0))
    params = ModelParams(q=q, omega=omega)
    ign = data.get("ignition")
    if ign is None:
        raise DomainError("config missing required key 'ignition'")
    return params, ignition_from_dict(ign)


def _temperature(name: Any):
    key = str(name).lower()
    try:
        return TEMPERATURE_PROFILES[key]
    except KeyError:
        raise DomainError(
            f"unknown temperature profile {name!r}; available: "
            f"{sorted(TEMPERATURE_PROFILES)}") from None


def ignition_from_dict(spec: Mapping[str, Any]) -> IgnitionFunction:
    """Build an ignition function from a parsed config object."""
    if not isinstance(spec, Mapping) or "kind" not in spec:
        raise DomainError("ignition spec must be an object with a 'kind' key")
    kind = str(spec["kind"]).lower()
    if kind == "step":
        return StepIgnition(float(spec["u_i"]))
    if kind == "arrhenius":
        C = spec.get("C", 1.0)
        if not (isinstance(C, str) and C == "normalized"):
            C = float(C)
        return ArrheniusIgnition(float(spec["E"]), _temperature(spec.get("T", "t1")),
                                 prefactor=C)
    if kind == "tabulated":
        return TabulatedIgnition([float(v) for v in spec["u"]],
                                 [float(v) for v in spec["phi"]])
    if kind == "homotopy":
        phi = ignition_from_dict(spec["phi"])
        phi0_spec = spec.get("phi0")
        if phi0_spec is None:
            phi0 = StepIgnition(phi.ignition_level)
        else:
            phi0 = ignition_from_dict(phi0_spec)
        return HomotopyIgnition(float(spec["r"]), phi, phi0)
    raise DomainError(
        f"unknown ignition kind {kind!r}; available: step, arrhenius, tabulated, homotopy")


def parse_ignition_spec(text: str) -> IgnitionFunction:
    """Parse the compact CLI form ``kind:...``.

    ``step:VALUE`` is shorthand for ``step:u_i=VALUE``; all other kinds take
    ``key=value`` pairs separated by commas.
    """
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind == "step" and "=" not in rest:
        if not rest:
            raise DomainError("step ignition needs a level, e.g. step:1.2")
        return StepIgnition(float(rest))
    fields: dict[str, Any] = {"kind": kind}
    if rest:
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise DomainError(f"malformed ignition field {item!r} (need key=value)")
            fields[key.strip()] = value.strip()
    if kind == "tabulated":
        raise DomainError("tabulated ignition is file-only; use a config file")
    if kind == "homotopy":
        raise DomainError("homotopy ignition is file-only; use a config file")
    return ignition_from_dict(fields)
