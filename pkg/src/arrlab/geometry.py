"""Projective lines and points over Q(zeta_n), and extraction of incidences."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .cyclo import CycRat, embed
from .exceptions import DegenerateInputError


def _normalize(triple: Sequence[CycRat], kind: str) -> tuple[CycRat, CycRat, CycRat]:
    if len(triple) != 3:
        raise ValueError(f"{kind} needs exactly three coordinates")
    orders = {c.order for c in triple if isinstance(c, CycRat)}
    if len(orders) > 1:
        raise ValueError(f"{kind} mixes cyclotomic orders {sorted(orders)}")
    order = orders.pop() if orders else 1
    vals = [embed(order, c) for c in triple]
    for v in vals:
        if not v.is_zero():
            scale = v.inv()
            return tuple(x * scale for x in vals)  # type: ignore[return-value]
    raise DegenerateInputError(f"{kind} with all coordinates zero")


@dataclass(frozen=True)
class ProjLine:
    """The line ``a*x + b*y + c*z = 0``, scaled so the first nonzero
    coefficient is 1."""

    coeffs: tuple[CycRat, CycRat, CycRat]

    def __init__(self, a, b=None, c=None):
        triple = a if b is None and c is None else (a, b, c)
        object.__setattr__(self, "coeffs", _normalize(triple, "line"))

    @property
    def order(self) -> int:
        return self.coeffs[0].order

    def __str__(self) -> str:
        parts = []
        for c, var in zip(self.coeffs, "xyz"):
            if c.is_zero():
                continue
            s = str(c)
            if s == "1":
                parts.append(var)
            elif s == "-1":
                parts.append(f"-{var}")
            else:
                parts.append(f"({s})*{var}")
        return " + ".join(parts).replace("+ -", "- ") + " = 0"


@dataclass(frozen=True)
class ProjPoint:
    """Point ``(x : y : z)`` scaled so the first nonzero coordinate is 1."""

    coords: tuple[CycRat, CycRat, CycRat]

    def __init__(self, x, y=None, z=None):
        triple = x if y is None and z is None else (x, y, z)
        object.__setattr__(self, "coords", _normalize(triple, "point"))

    def __str__(self) -> str:
        return "(" + " : ".join(str(c) for c in self.coords) + ")"


def intersect(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    """Common point of two distinct lines (cross product of coefficients)."""
    if l1 == l2:
        raise DegenerateInputError(f"identical lines {l1} have no unique intersection")
    a1, b1, c1 = l1.coeffs
    a2, b2, c2 = l2.coeffs
    return ProjPoint(b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2)


def incident(p: ProjPoint, l: ProjLine) -> bool:
    a, b, c = l.coeffs
    x, y, z = p.coords
    return (a * x + b * y + c * z).is_zero()


def compute_incidence(lines: Sequence[ProjLine], name: str | None = None):
    """Group all pairwise intersections by exact point equality.

    Returns an :class:`~arrlab.arrangement.Incidence` listing every point of
    multiplicity >= 3; double points stay implicit.
    """
    from .arrangement import Incidence, PointRecord

    lines = list(lines)
    if len(lines) < 2:
        raise DegenerateInputError("an arrangement needs at least two lines")
    if len({l.order for l in lines}) > 1:
        raise ValueError("lines use different cyclotomic orders")
    seen: dict[ProjLine, int] = {}
    for i, l in enumerate(lines):
        if l in seen:
            raise DegenerateInputError(f"lines {seen[l]} and {i} coincide ({l})")
        seen[l] = i

    groups: dict[ProjPoint, set[int]] = {}
    for i, j in combinations(range(len(lines)), 2):
        groups.setdefault(intersect(lines[i], lines[j]), set()).update((i, j))

    points = [
        PointRecord(frozenset(idx), source=p) for p, idx in groups.items() if len(idx) >= 3
    ]
    return Incidence.from_records(len(lines), points, name=name, lines=tuple(lines))
