"""Benchmark parameter grids for the Arrhenius stability sweeps.

Grid coordinates are generated from exact rationals (no floating-point
accumulation), so point-set equality and the exact closed-form cross-check
for the linear temperature are well defined.  Two published benchmark grids
are provided:

* ``bz-t1``: q/omega in {0.01 : 0.01 : 0.49} crossed with activation
  energies {0 : 0.1 : 5} u {5.2 : 0.2 : 10} u {12, 15, 20, 30, 40}
  (49 x 81 = 3969 points), paired with the quadratic-peak temperature.

* ``bz-t2``: q/omega in {0.01 : 0.01 : 0.37, 0.375, 0.38 : 0.01 : 0.49}
  crossed with {0 : 0.1 : 5} u {5.2 : 0.2 : 10} u {12, 15}, plus ragged
  columns E = 20 (r <= 0.47), E = 25 (r <= 0.45), E = 30 (r <= 0.40)
  (4035 points), paired with the linear temperature.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import DomainError

__all__ = ["GridPoint", "GridSpec", "bz_t1", "bz_t2", "custom_grid", "grid_by_name"]


class GridPoint(NamedTuple):
    """One sweep point with exact rational coordinates alongside the floats."""

    r: float
    E: float
    r_exact: Fraction
    e_exact: Fraction


@dataclass(frozen=True)
class GridSpec:
    """Named collection of (q/omega, activation energy) sweep points."""

    name: str
    temperature: str  # default temperature profile key ("t1"/"t2")
    points: tuple[GridPoint, ...]

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def r_values(self) -> tuple[float, ...]:
        seen: dict[float, None] = {}
        for p in self.points:
            seen.setdefault(p.r, None)
        return tuple(seen)


def _frange(start: Fraction, stop: Fraction, step: Fraction) -> list[Fraction]:
    out = []
    v = start
    while v <= stop:
        out.append(v)
        v += step
    return out


def _energy_base() -> list[Fraction]:
    """{0 : 0.1 : 5} u {5.2 : 0.2 : 10}: the low-energy block shared by both grids."""
    return (_frange(Fraction(0), Fraction(5), Fraction(1, 10))
            + _frange(Fraction(26, 5), Fraction(10), Fraction(1, 5)))


def _points(rs: Sequence[Fraction], es: Sequence[Fraction]) -> list[GridPoint]:
    return [GridPoint(float(r), float(e), r, e) for r in rs for e in es]


def bz_t1() -> GridSpec:
    rs = _frange(Fraction(1, 100), Fraction(49, 100), Fraction(1, 100))
    es = _energy_base() + [Fraction(12), Fraction(15), Fraction(20), Fraction(30), Fraction(40)]
    pts = _points(rs, es)
    return GridSpec(name="bz-t1", temperature="t1", points=tuple(sorted(
        pts, key=lambda p: (p.r_exact, p.e_exact))))


def bz_t2() -> GridSpec:
    rs = (_frange(Fraction(1, 100), Fraction(37, 100), Fraction(1, 100))
          + [Fraction(3, 8)]
          + _frange(Fraction(38, 100), Fraction(49, 100), Fraction(1, 100)))
    rs = sorted(rs)
    base = _energy_base() + [Fraction(12), Fraction(15)]
    pts = _points(rs, base)
    pts += _points([r for r in rs if r <= Fraction(47, 100)], [Fraction(20)])
    pts += _points([r for r in rs if r <= Fraction(45, 100)], [Fraction(25)])
    pts += _points([r for r in rs if r <= Fraction(40, 100)], [Fraction(30)])
    return GridSpec(name="bz-t2", temperature="t2", points=tuple(sorted(
        pts, key=lambda p: (p.r_exact, p.e_exact))))


def custom_grid(r_values: Sequence[float], e_values: Sequence[float],
                temperature: str = "t1", name: str = "custom") -> GridSpec:
    """Cartesian grid from user-supplied values (converted to exact rationals)."""
    rs = [Fraction(str(r)) for r in r_values]
    es = [Fraction(str(e)) for e in e_values]
    for r in rs:
        if not 0 < r < Fraction(1, 2):
            raise DomainError(f"q/omega grid value {float(r)} outside (0, 1/2)")
    for e in es:
        if e < 0:
            raise DomainError(f"activation energy grid value {float(e)} negative")
    return GridSpec(name=name, temperature=temperature, points=tuple(sorted(
        _points(rs, es), key=lambda p: (p.r_exact, p.e_exact))))


def grid_by_name(name: str) -> GridSpec:
    key = name.lower()
    if key == "bz-t1":
        return bz_t1()
    if key == "bz-t2":
        return bz_t2()
    raise DomainError(f"unknown grid {name!r}; available: bz-t1, bz-t2")
