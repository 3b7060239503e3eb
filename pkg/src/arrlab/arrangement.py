"""
Combinatorial line arrangements.

An :class:`Incidence` stores the degree ``d`` and every point where at least
three lines meet, as a set of 0-based line indices.  Double points are never
materialized: two lines that share no recorded point meet in a double point.

Point ids are positions in ``Incidence.points``; points are kept sorted by
their sorted line tuples, so equal incidences compare equal.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from .exceptions import ConstructionError, ReductionError


@dataclass(frozen=True)
class PointRecord:
    lines: frozenset[int]
    source: object | None = field(default=None, compare=False)

    @property
    def multiplicity(self) -> int:
        return len(self.lines)

    def sorted_lines(self) -> tuple[int, ...]:
        return tuple(sorted(self.lines))


@dataclass(frozen=True)
class Incidence:
    degree: int
    points: tuple[PointRecord, ...]
    name: str | None = field(default=None, compare=False)
    # ProjLine coordinates when the arrangement came from coordinates
    lines: tuple | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_records(cls, degree: int, records: Iterable[PointRecord],
                     name: str | None = None, lines: tuple | None = None) -> Incidence:
        recs = sorted(records, key=PointRecord.sorted_lines)
        return cls(degree, tuple(recs), name=name, lines=lines)

    @classmethod
    def from_points(cls, degree: int, points: Iterable[Iterable[int]],
                    name: str | None = None) -> Incidence:
        return cls.from_records(degree, (PointRecord(frozenset(p)) for p in points), name=name)

    def point_lists(self) -> list[list[int]]:
        return [list(p.sorted_lines()) for p in self.points]

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(len(p.lines) for p in self.points)

    @cached_property
    def line_points(self) -> tuple[tuple[int, ...], ...]:
        """For each line, the ids of recorded points on it."""
        acc: list[list[int]] = [[] for _ in range(self.degree)]
        for pid, p in enumerate(self.points):
            for i in p.lines:
                if 0 <= i < self.degree:
                    acc[i].append(pid)
        return tuple(tuple(a) for a in acc)

    @cached_property
    def pair_point(self) -> Mapping[tuple[int, int], int]:
        """``(i, j) -> point id`` for every pair meeting at a recorded point."""
        out: dict[tuple[int, int], int] = {}
        for pid, p in enumerate(self.points):
            for pair in combinations(p.sorted_lines(), 2):
                out.setdefault(pair, pid)
        return out

    def meeting_point(self, i: int, j: int) -> int | None:
        """Recorded point where lines i and j meet; None for a double point."""
        if i > j:
            i, j = j, i
        return self.pair_point.get((i, j))

    def double_point_count(self) -> int:
        return comb(self.degree, 2) - sum(comb(n, 2) for n in self.multiplicities)

    def double_points(self) -> Iterable[tuple[int, int]]:
        """Pairs of lines meeting in a double point, in lexicographic order."""
        pairs = self.pair_point
        for pair in combinations(range(self.degree), 2):
            if pair not in pairs:
                yield pair

    def strata_counts(self) -> dict[int, int]:
        """Multiplicity -> number of points, doubles included."""
        counts = Counter(self.multiplicities)
        doubles = self.double_point_count()
        if doubles:
            counts[2] += doubles
        return dict(sorted(counts.items()))

    def restrict(self, keep: Iterable[int], name: str | None = None) -> tuple[Incidence, tuple[int, ...]]:
        """Subarrangement on the lines ``keep``, reindexed in increasing order.

        Returns the new incidence and the tuple mapping new index -> old index.
        """
        kept = tuple(sorted(set(keep)))
        new_index = {old: new for new, old in enumerate(kept)}
        recs = []
        for p in self.points:
            sub = [new_index[i] for i in p.lines if i in new_index]
            if len(sub) >= 3:
                recs.append(PointRecord(frozenset(sub), source=p.source))
        lines = tuple(self.lines[i] for i in kept) if self.lines is not None else None
        return Incidence.from_records(len(kept), recs, name=name, lines=lines), kept

    def relabel(self, perm: Sequence[int]) -> Incidence:
        """Move line ``i`` to index ``perm[i]``."""
        if sorted(perm) != list(range(self.degree)):
            raise ValueError("relabel needs a permutation of the line indices")
        recs = [PointRecord(frozenset(perm[i] for i in p.lines), source=p.source)
                for p in self.points]
        lines = None
        if self.lines is not None:
            lines_l = [None] * self.degree
            for i, l in enumerate(self.lines):
                lines_l[perm[i]] = l
            lines = tuple(lines_l)
        return Incidence.from_records(self.degree, recs, name=self.name, lines=lines)


def validate(inc: Incidence) -> list[str]:
    """Human-readable violations of the incidence invariants; empty if valid."""
    problems = []
    if inc.degree < 0:
        problems.append(f"negative degree {inc.degree}")
    owner: dict[tuple[int, int], int] = {}
    for pid, p in enumerate(inc.points):
        bad = sorted(i for i in p.lines if not (isinstance(i, int) and 0 <= i < inc.degree))
        if bad:
            problems.append(f"point {pid}: line indices {bad} out of range [0, {inc.degree})")
        if len(p.lines) < 3:
            problems.append(f"point {pid}: multiplicity {len(p.lines)} < 3 (lines {sorted(p.lines)})")
        for pair in combinations(sorted(p.lines), 2):
            if pair in owner:
                problems.append(
                    f"pair reused: lines {pair[0]} and {pair[1]} meet at both point {owner[pair]} and point {pid}"
                )
            else:
                owner[pair] = pid
    total = sum(comb(len(p.lines), 2) for p in inc.points)
    if total > comb(max(inc.degree, 0), 2):
        problems.append(f"point pairs {total} exceed C(d, 2) = {comb(inc.degree, 2)}")
    return problems


def stratum(inc: Incidence, k: int) -> frozenset[int]:
    """Ids of points of multiplicity exactly k (k >= 3)."""
    if k < 3:
        raise ValueError("double points are implicit; use Incidence.double_point_count")
    return frozenset(pid for pid, n in enumerate(inc.multiplicities) if n == k)


def stratum_geq(inc: Incidence, k: int) -> frozenset[int]:
    if k < 3:
        raise ValueError("double points are implicit; use Incidence.double_point_count")
    return frozenset(pid for pid, n in enumerate(inc.multiplicities) if n >= k)


def stratum_div(inc: Incidence, m: int) -> frozenset[int]:
    """Ids of points whose multiplicity is divisible by m (m >= 3)."""
    if m < 3:
        raise ValueError("stratum_div needs m >= 3")
    return frozenset(pid for pid, n in enumerate(inc.multiplicities) if n % m == 0)


def euler_characteristic_complement(inc: Incidence) -> int:
    """chi(P^2 minus L) = 3 - 2d + sum over singular points of (n_P - 1)."""
    return 3 - 2 * inc.degree + sum(n - 1 for n in inc.multiplicities) + inc.double_point_count()


def strata_from_line_counts(degree: int, per_line: Mapping[int, int]) -> dict[int, int]:
    """Recover |L^[k]| from "each line carries c_k points of multiplicity k".

    Double counting gives ``|L^[k]| = d * c_k / k``.
    """
    out = {}
    for k, c in sorted(per_line.items()):
        total = degree * c
        if total % k:
            raise ValueError(f"{degree} lines x {c} points of multiplicity {k} is not divisible by {k}")
        out[k] = total // k
    return out


# ---------------------------------------------------------------------------
# m-reduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MReduction:
    reduced: Incidence
    # new index in `reduced` -> line index in the input
    mapping: tuple[int, ...]
    # input line indices moved out, per input point id
    moved: Mapping[int, tuple[int, ...]]

    @property
    def removed(self) -> frozenset[int]:
        return frozenset(i for lines in self.moved.values() for i in lines)


def private_lines(inc: Incidence, pid: int, m: int) -> list[int]:
    """Lines through point ``pid`` whose only m-divisible point is ``pid``."""
    div = stratum_div(inc, m)
    out = []
    for i in sorted(inc.points[pid].lines):
        if all(q == pid or q not in div for q in inc.line_points[i]):
            out.append(i)
    return out


def m_reduce(inc: Incidence, m: int, points: Iterable[int] | None = None) -> MReduction:
    """Split off lines so that every m-divisible point keeps exactly m lines.

    At each point of multiplicity (k+1)m, the k*m lowest-indexed private lines
    are removed.  ``points`` restricts this to some m-divisible points (the
    result is then m-reduced only there).  Raises :class:`ReductionError` if
    some point lacks enough private lines, or if the removed lines would
    change which points are m-divisible.
    """
    div = sorted(stratum_div(inc, m))
    if points is None:
        targets = div
    else:
        targets = sorted(set(points))
        bad = [p for p in targets if p not in div]
        if bad:
            raise ReductionError(f"point {bad[0]} is not m-divisible for m={m}")
    moved: dict[int, tuple[int, ...]] = {}
    for pid in targets:
        extra = inc.points[pid].multiplicity - m
        if extra == 0:
            continue
        priv = private_lines(inc, pid, m)
        if len(priv) < extra:
            raise ReductionError(
                f"point {pid} has multiplicity {inc.points[pid].multiplicity} but only "
                f"{len(priv)} private lines; {extra} are needed"
            )
        moved[pid] = tuple(priv[:extra])
    removed = {i for lines in moved.values() for i in lines}
    reduced, mapping = inc.restrict(set(range(inc.degree)) - removed,
                                    name=f"{inc.name or 'L'}'" if moved else inc.name)
    if not moved:
        return MReduction(reduced, mapping, {})

    inverse = {old: new for new, old in enumerate(mapping)}
    expected = {frozenset(inverse[i] for i in inc.points[pid].lines if i in inverse) for pid in div}
    got = {reduced.points[q].lines for q in stratum_div(reduced, m)}
    sized = all(sum(1 for i in inc.points[pid].lines if i in inverse) == m
                for pid in targets)
    if got != expected or not sized:
        raise ReductionError("removing private lines changes the m-divisible stratum")
    removed_inc, rmap = inc.restrict(removed)
    want = sorted(len(v) for v in moved.values())
    have = sorted(removed_inc.multiplicities[q] for q in stratum_div(removed_inc, m))
    if want != have:
        raise ReductionError("removed lines form extra m-divisible points among themselves")
    return MReduction(reduced, mapping, moved)


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def general_lines(n: int) -> Incidence:
    """n lines in general position: no point of multiplicity >= 3."""
    return Incidence(n, (), name=f"general_{n}")


def pencil(n: int) -> Incidence:
    """n >= 3 lines through one point."""
    if n < 3:
        raise ValueError("a pencil needs at least 3 lines")
    return Incidence.from_points(n, [range(n)], name=f"pencil_{n}")


def near_pencil(n: int) -> Incidence:
    """n lines, n - 1 of them through one point, the last one general."""
    if n < 4:
        raise ValueError("a near-pencil needs at least 4 lines")
    return Incidence.from_points(n, [range(n - 1)], name=f"near_pencil_{n}")


def disjoint_union(a: Incidence, b: Incidence) -> Incidence:
    """Union in which lines of ``b`` meet lines of ``a`` only in double points.

    Lines of ``b`` are shifted by ``a.degree``.
    """
    shift = a.degree
    recs = list(a.points) + [
        PointRecord(frozenset(i + shift for i in p.lines)) for p in b.points
    ]
    name = None
    if a.name or b.name:
        name = f"{a.name or 'L1'}+{b.name or 'L2'}"
    return Incidence.from_records(a.degree + b.degree, recs, name=name)


def concur(inc: Incidence, lines: Iterable[int]) -> Incidence:
    """Add a new point through the given lines, which must pairwise meet in
    double points (the new point must not collide with a recorded one)."""
    new = frozenset(lines)
    for pair in combinations(sorted(new), 2):
        if inc.meeting_point(*pair) is not None:
            raise ConstructionError(f"lines {pair} already meet at a recorded point")
    return Incidence.from_records(inc.degree, list(inc.points) + [PointRecord(new)], name=inc.name)


def attach_star(inc: Incidence, p: int, l0: int, k0: int, k_star: int, m: int) -> Incidence:
    """Attach a subarrangement whose m-graph is an m-star centred at a new
    point Q on ``l0``.

    ``p`` must be an m-divisible point on ``l0``.  The new block has a center
    Q of multiplicity ``k0*m`` (``l0`` plus ``k0*m - 1`` spokes); spoke j ends
    at a new point R_j of multiplicity ``w_j*m`` whose remaining lines are new
    and private.  The weights ``w_j`` are 1 except the last, which absorbs
    ``k_star - (k0*m - 2)``, so ``sum(w_j) == k_star``.  Exactly
    ``k_star*m`` lines are added.
    """
    if m < 3:
        raise ConstructionError("star attachment needs m >= 3")
    if not 0 <= p < len(inc.points):
        raise ConstructionError(f"no point with id {p}")
    mult = inc.points[p].multiplicity
    if mult % m:
        raise ConstructionError(f"point {p} has multiplicity {mult}, not divisible by {m}")
    if l0 not in inc.points[p].lines:
        raise ConstructionError(f"line {l0} does not pass through point {p}")
    if k0 < 1:
        raise ConstructionError("k0 >= 1 violated")
    spokes = k0 * m - 1
    if k_star < spokes:
        raise ConstructionError(
            f"k_star >= k0*m - 1 violated: {k_star} < {spokes} "
            f"(each of the {spokes} outer points has weight >= 1)"
        )
    weights = [1] * (spokes - 1) + [k_star - (spokes - 1)]
    nxt = inc.degree
    spoke_ids = list(range(nxt, nxt + spokes))
    nxt += spokes
    recs = list(inc.points)
    recs.append(PointRecord(frozenset([l0, *spoke_ids])))
    for s, w in zip(spoke_ids, weights):
        own = list(range(nxt, nxt + w * m - 1))
        nxt += w * m - 1
        recs.append(PointRecord(frozenset([s, *own])))
    assert nxt - inc.degree == k_star * m
    name = f"{inc.name or 'L'}*star(k0={k0},k={k_star})"
    return Incidence.from_records(nxt, recs, name=name)


def generate_generic_plus_nodes(n: int, seed: int | None = None, per_node: int = 1) -> Incidence:
    """n general lines plus ``per_node`` new private lines through each of
    their C(n, 2) crossings.

    With the default ``per_node=1`` every crossing becomes a triple point and
    the degree is n(n+1)/2.  A non-None ``seed`` only permutes line labels.
    """
    if n < 3:
        raise ValueError("need n >= 3 general lines")
    if per_node < 1:
        raise ValueError("per_node must be positive")
    pts = []
    nxt = n
    for i, j in combinations(range(n), 2):
        pts.append([i, j, *range(nxt, nxt + per_node)])
        nxt += per_node
    inc = Incidence.from_points(nxt, pts, name=f"generic_plus_nodes_{n}")
    if seed is not None:
        perm = list(range(nxt))
        random.Random(seed).shuffle(perm)
        inc = inc.relabel(perm)
    return inc
