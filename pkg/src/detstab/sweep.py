"""Arrhenius criterion sweeps over benchmark grids, with aggregated reports.

Every grid point is evaluated through the same pure criterion check, so the
report is bitwise identical whatever the parallelism level; aggregation is
order-normalized by the exact rational coordinates.  Boundary ties (margin
exactly zero, i.e. E equal to the critical activation energy) count as
satisfied under the weak-inequality convention of the criterion; because the
published counts fall on the strict side of three exact ties on the linear
temperature grid, the report carries both conventions and the tie list.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, TextIO, Union

from .criterion import check_arrhenius, critical_activation_energy
from .errors import DomainError
from .grids import GridSpec
from .model import TEMPERATURE_PROFILES, ModelParams, TemperatureProfile

__all__ = ["PointOutcome", "SweepReport", "run_sweep"]


@dataclass(frozen=True)
class PointOutcome:
    """Criterion outcome at one sweep point."""

    r: float
    E: float
    e_star: float
    margin: float

    @property
    def satisfied(self) -> bool:
        """Weak-inequality convention: a boundary tie counts as satisfied."""
        return self.margin <= 0.0

    @property
    def satisfied_strict(self) -> bool:
        return self.margin < 0.0

    @property
    def tie(self) -> bool:
        return self.margin == 0.0


@dataclass(frozen=True)
class SweepReport:
    """Per-point outcomes and aggregate counts for one grid sweep."""

    grid: str
    temperature: str
    points: tuple[PointOutcome, ...]

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def n_satisfied(self) -> int:
        return sum(1 for p in self.points if p.satisfied)

    @property
    def n_satisfied_strict(self) -> int:
        return sum(1 for p in self.points if p.satisfied_strict)

    @property
    def failures(self) -> tuple[PointOutcome, ...]:
        return tuple(p for p in self.points if not p.satisfied)

    @property
    def ties(self) -> tuple[PointOutcome, ...]:
        return tuple(p for p in self.points if p.tie)

    def to_dict(self) -> dict:
        def estar_json(v: float):
            return None if math.isinf(v) else v

        return {
            "grid": self.grid,
            "temperature": self.temperature,
            "totals": {"points": self.n_points, "satisfied": self.n_satisfied},
            "totals_strict": {"points": self.n_points,
                              "satisfied": self.n_satisfied_strict},
            "failures": [{"r": p.r, "E": p.E} for p in self.failures],
            "ties": [{"r": p.r, "E": p.E} for p in self.ties],
            "points": [
                {"r": p.r, "E": p.E, "E_star": estar_json(p.e_star),
                 "satisfied": p.satisfied}
                for p in self.points
            ],
        }

    def to_json(self, dest: Union[str, TextIO, None] = None) -> str:
        text = json.dumps(self.to_dict(), indent=2)
        if dest is not None:
            own = isinstance(dest, str)
            fh: TextIO = open(dest, "w", encoding="utf-8") if own else dest
            try:
                fh.write(text + "\n")
            finally:
                if own:
                    fh.close()
        return text

    def to_csv(self, dest: Union[str, TextIO]) -> None:
        """Rows ``q_over_omega,E,E_star,satisfied`` with round-trip formatting."""
        own = isinstance(dest, str)
        fh: TextIO = open(dest, "w", encoding="utf-8") if own else dest
        try:
            fh.write("q_over_omega,E,E_star,satisfied\n")
            for p in self.points:
                fh.write(f"{p.r!r},{p.E!r},{p.e_star!r},{str(p.satisfied).lower()}\n")
        finally:
            if own:
                fh.close()


def _temperature(name: str) -> TemperatureProfile:
    try:
        return TEMPERATURE_PROFILES[name]
    except KeyError:
        raise DomainError(
            f"unknown temperature profile {name!r}; available: "
            f"{sorted(TEMPERATURE_PROFILES)}") from None


def _estar_task(args: tuple[float, str]) -> float:
    r, temp_name = args
    return critical_activation_energy(r, _temperature(temp_name))


def _margin_task(args: tuple[float, float, str]) -> float:
    r, e, temp_name = args
    params = ModelParams(q=r, omega=1.0)
    return check_arrhenius(params, e, _temperature(temp_name)).margin


def run_sweep(grid: GridSpec, temperature: Optional[str] = None,
              jobs: int = 1) -> SweepReport:
    """Evaluate the Arrhenius criterion at every grid point.

    Parameters
    ----------
    grid : GridSpec
        Sweep points (exact rational coordinates).
    temperature : str, optional
        Temperature profile key; defaults to the grid's own pairing.
    jobs : int
        Worker processes for the point map.  The output is independent of
        this value: evaluation is pure per point and aggregation is sorted.
    """
    temp_name = temperature if temperature is not None else grid.temperature
    _temperature(temp_name)  # validate early
    for p in grid.points:
        if not 0.0 < p.r < 0.5:
            raise DomainError(f"grid point r={p.r} outside (0, 1/2)")

    rs = sorted({p.r for p in grid.points})
    estar_args = [(r, temp_name) for r in rs]
    margin_args = [(p.r, p.E, temp_name) for p in grid.points]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            estars = list(pool.map(_estar_task, estar_args, chunksize=8))
            margins = list(pool.map(_margin_task, margin_args, chunksize=64))
    else:
        estars = [_estar_task(a) for a in estar_args]
        margins = [_margin_task(a) for a in margin_args]
    estar_by_r = dict(zip(rs, estars))

    outcomes = tuple(
        PointOutcome(r=p.r, E=p.E, e_star=estar_by_r[p.r], margin=m)
        for p, m in zip(grid.points, margins)
    )
    return SweepReport(grid=grid.name, temperature=temp_name, points=outcomes)
