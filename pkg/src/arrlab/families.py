"""Built-in arrangements: the worked examples and a few composite blocks."""
from __future__ import annotations

from typing import Callable

from .arrangement import Incidence, concur, disjoint_union, pencil
from .cyclo import CycRat, zeta_power
from .geometry import ProjLine, compute_incidence


def _q(order: int, *vals: int) -> list[CycRat]:
    return [CycRat.from_scalar(order, v) for v in vals]


def gaa3(a: int) -> Incidence:
    """(x^a - y^a)(x^a - z^a)(y^a - z^a) over Q(zeta_a).

    Lines 0..a-1 are x - zeta^i y, then x - zeta^i z, then y - zeta^i z.
    """
    if a < 2:
        raise ValueError("gaa3 needs a >= 2")
    one, zero = CycRat.from_scalar(a, 1), CycRat.from_scalar(a, 0)
    lines = []
    for i in range(a):
        lines.append(ProjLine(one, -zeta_power(a, i), zero))
    for i in range(a):
        lines.append(ProjLine(one, zero, -zeta_power(a, i)))
    for i in range(a):
        lines.append(ProjLine(zero, one, -zeta_power(a, i)))
    return compute_incidence(lines, name=f"gaa3_{a}")


def grid(a: int) -> Incidence:
    """prod (x - iz) prod (y - jz) prod (x + y - kz), i, j, k in 0..a-1."""
    if a < 2:
        raise ValueError("grid needs a >= 2")
    lines = [ProjLine(*_q(1, 1, 0, -i)) for i in range(a)]
    lines += [ProjLine(*_q(1, 0, 1, -j)) for j in range(a)]
    lines += [ProjLine(*_q(1, 1, 1, -k)) for k in range(a)]
    return compute_incidence(lines, name=f"grid_{a}")


def grid_thirds_witness(a: int) -> list[int]:
    """Indices of the lines x - iz, y - jz (i, j < a/3) and x + y - kz
    (k >= 2a/3) in :func:`grid`, for a divisible by 3."""
    if a % 3:
        raise ValueError("defined for a divisible by 3")
    t = a // 3
    return list(range(t)) + list(range(a, a + t)) + list(range(2 * a + 2 * t, 3 * a))


def _ceva_lines(m: int) -> list[ProjLine]:
    one = CycRat.from_scalar(m, 1)
    return [ProjLine(zeta_power(m, i), zeta_power(m, j), one)
            for i in range(m) for j in range(m)]


def fermat_ceva(m: int) -> Incidence:
    """prod_{i,j} (zeta^i x + zeta^j y + z) over Q(zeta_m); line (i, j) has
    index i*m + j."""
    if m < 3:
        raise ValueError("fermat_ceva needs m >= 3")
    return compute_incidence(_ceva_lines(m), name=f"fermat_ceva_{m}")


def fermat_ceva_odd_witness(m: int) -> list[int]:
    """Indices of the lines (i, 2i mod m)."""
    return sorted(i * m + (2 * i) % m for i in range(m))


def hessian() -> Incidence:
    """xyz * prod_{i,j} (zeta^i x + zeta^j y + z), zeta a cube root of unity.

    Lines 0, 1, 2 are x, y, z; line 3 + 3i + j is zeta^i x + zeta^j y + z.
    """
    one, zero = CycRat.from_scalar(3, 1), CycRat.from_scalar(3, 0)
    lines = [ProjLine(one, zero, zero), ProjLine(zero, one, zero), ProjLine(zero, zero, one)]
    lines += _ceva_lines(3)
    return compute_incidence(lines, name="hessian")


def hessian_net_classes() -> list[list[int]]:
    """The four classes of the 4-net: {x, y, z} and i + j = c (mod 3)."""
    classes = [[0, 1, 2]]
    for c in range(3):
        classes.append(sorted(3 + 3 * i + j for i in range(3) for j in range(3) if (i + j) % 3 == c))
    return classes


def _rational_lines(rows: list[tuple[int, int, int]]) -> list[ProjLine]:
    return [ProjLine(*_q(1, *r)) for r in rows]


EX32_F1 = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 2), (1, -1, 0),
           (1, -1, 1), (1, 1, -1), (1, 1, 2), (1, -2, -1)]
EX32_F2 = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1),
           (1, 0, 3), (1, 2, 1), (1, 2, 3), (2, 3, 3)]


def ex32_f1() -> Incidence:
    """xyz(y+2z)(x-y)(x-y+z)(x+y-z)(x+y+2z)(x-2y-z)."""
    return compute_incidence(_rational_lines(EX32_F1), name="ex32_f1")


def ex32_f2() -> Incidence:
    """xyz(x+y)(y+z)(x+3z)(x+2y+z)(x+2y+3z)(2x+3y+3z)."""
    return compute_incidence(_rational_lines(EX32_F2), name="ex32_f2")


def sec24_block() -> Incidence:
    """Degree-8 arrangement whose 3-graph has five triple points and seven
    edges, plus one line (index 7) through vertex A that carries no edge.

    Vertices A, B, C, D, E; edge lines AC=0, AD=1, BE=2, BD=3, BC=4, EC=5,
    ED=6.
    """
    points = [
        [0, 1, 7],   # A
        [2, 3, 4],   # B
        [0, 4, 5],   # C
        [1, 3, 6],   # D
        [2, 5, 6],   # E
    ]
    return Incidence.from_points(8, points, name="sec24_block")


SEC24_FREE_LINE = 7


def sec24_triple() -> Incidence:
    """Three copies of :func:`sec24_block` whose free lines meet in one new
    triple point: degree 24, sixteen triple points."""
    blk = sec24_block()
    inc = disjoint_union(disjoint_union(blk, blk), blk)
    inc = concur(inc, [SEC24_FREE_LINE + 8 * i for i in range(3)])
    return Incidence.from_records(inc.degree, inc.points, name="sec24_triple")


def sec24_pencil_variant(a: int) -> Incidence:
    """Four blocks, a pencil of 3a lines and one extra line, all through a new
    point P of multiplicity 6 (four free lines, one pencil line, the extra
    line).  Degree 3(a + 11)."""
    if a < 3:
        raise ValueError("needs a >= 3")
    blk = sec24_block()
    inc = blk
    for _ in range(3):
        inc = disjoint_union(inc, blk)
    inc = disjoint_union(inc, pencil(3 * a))
    inc = disjoint_union(inc, Incidence(1, ()))
    through_p = [SEC24_FREE_LINE + 8 * i for i in range(4)] + [32, 32 + 3 * a]
    inc = concur(inc, through_p)
    return Incidence.from_records(inc.degree, inc.points, name=f"sec24_pencil_{a}")


FAMILIES: dict[str, tuple[Callable[..., Incidence], int]] = {
    "gaa3": (gaa3, 1),
    "grid": (grid, 1),
    "hessian": (hessian, 0),
    "fermat_ceva": (fermat_ceva, 1),
    "ex32_f1": (ex32_f1, 0),
    "ex32_f2": (ex32_f2, 0),
    "sec24_block": (sec24_block, 0),
    "sec24_triple": (sec24_triple, 0),
    "sec24_pencil": (sec24_pencil_variant, 1),
}


def builtin_family(name: str, *params: int) -> Incidence:
    """Look up a family by name, e.g. ``builtin_family("gaa3", 3)``."""
    try:
        fn, nparams = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}") from None
    if len(params) != nparams:
        raise ValueError(f"family {name!r} takes {nparams} integer parameter(s), got {len(params)}")
    return fn(*params)


def resolve_family_name(name: str) -> Incidence:
    """Parse ``"gaa3_3"`` / ``"hessian"`` style names."""
    if name in FAMILIES:
        return builtin_family(name)
    head, _, tail = name.rpartition("_")
    if head in FAMILIES and tail.lstrip("-").isdigit():
        return builtin_family(head, int(tail))
    raise ValueError(f"not a built-in family: {name!r}")
