"""
Witness subsets for the two resonance conditions, fast sufficient tests and
the per-divisor calculability verdict.

For m | d a witness is a set J of d/m lines.  Writing J_P = J ∩ I_P, only the
points P of multiplicity >= 3 with m | mult_P are constrained:

* condition (a):  m |J_P| <= |I_P|
* condition (b):  m |J_P| >= |I_P|
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil
from typing import Iterable, Sequence

from .arrangement import Incidence, m_reduce, stratum_div
from .exceptions import ArrangementError, BudgetExceeded, NotApplicableError, ReductionError
from .mgraph import complexity

CONDITIONS = ("a", "b")


@dataclass(frozen=True)
class Witness:
    J: tuple[int, ...]
    condition: str
    # which routine produced it
    source: str = field(default="search", compare=False)

    def __post_init__(self):
        if self.condition not in CONDITIONS:
            raise ValueError(f"condition must be 'a' or 'b', got {self.condition!r}")
        object.__setattr__(self, "J", tuple(sorted(self.J)))


def _normalize_j(inc: Incidence, m: int, J: Iterable[int]) -> frozenset[int]:
    if m < 2:
        raise ValueError("m must be at least 2")
    if inc.degree % m:
        raise ValueError(f"m={m} does not divide the degree {inc.degree}")
    lst = list(J)
    js = frozenset(lst)
    if len(js) != len(lst):
        raise ValueError("J has repeated line indices")
    if any(not 0 <= i < inc.degree for i in js):
        raise ValueError(f"J must be a subset of 0..{inc.degree - 1}")
    if len(js) != inc.degree // m:
        raise ValueError(f"|J| must be d/m = {inc.degree // m}, got {len(js)}")
    return js


def _constrained(inc: Incidence, m: int) -> list[int]:
    # recorded points all have multiplicity >= 3
    return [pid for pid, n in enumerate(inc.multiplicities) if n % m == 0]


def check_condition_a(inc: Incidence, m: int, J: Iterable[int]) -> bool:
    js = _normalize_j(inc, m, J)
    return all(m * len(js & inc.points[p].lines) <= inc.points[p].multiplicity
               for p in _constrained(inc, m))


def check_condition_b(inc: Incidence, m: int, J: Iterable[int]) -> bool:
    js = _normalize_j(inc, m, J)
    return all(m * len(js & inc.points[p].lines) >= inc.points[p].multiplicity
               for p in _constrained(inc, m))


def check_condition(inc: Incidence, m: int, J: Iterable[int], condition: str) -> bool:
    if condition == "a":
        return check_condition_a(inc, m, J)
    if condition == "b":
        return check_condition_b(inc, m, J)
    raise ValueError(f"condition must be 'a' or 'b', got {condition!r}")


def _subarrangement_counts(inc: Incidence, js: frozenset[int]) -> dict[int, int]:
    """Point id of ``inc`` -> multiplicity of that point in the
    subarrangement L_J, for points where L_J has multiplicity >= 2."""
    sub, mapping = inc.restrict(js)
    out: dict[int, int] = {}
    for q in sub.points:
        old = [mapping[i] for i in q.sorted_lines()]
        out[inc.meeting_point(old[0], old[1])] = q.multiplicity
    for i, j in sub.double_points():
        pid = inc.meeting_point(mapping[i], mapping[j])
        if pid is not None:
            out[pid] = 2
    return out


def check_condition_a_strata(inc: Incidence, m: int, J: Iterable[int]) -> bool:
    """Condition (a) in stratum form: every constrained point lying in
    L_J^[k] for some k >= 2 lies in L^[>= km]."""
    js = _normalize_j(inc, m, J)
    sub = _subarrangement_counts(inc, js)
    constrained = set(_constrained(inc, m))
    for pid, k in sub.items():
        if pid in constrained and inc.points[pid].multiplicity < k * m:
            return False
    # k = 1 only asks mult_P >= m, which every constrained point satisfies
    return True


def check_condition_b_strata(inc: Incidence, m: int, J: Iterable[int]) -> bool:
    """Condition (b) in stratum form: L^[>=3] ∩ L^[km] is inside L_J^[>=k]."""
    js = _normalize_j(inc, m, J)
    sub = _subarrangement_counts(inc, js)
    for pid in _constrained(inc, m):
        k = inc.points[pid].multiplicity // m
        have = sub.get(pid)
        if have is None:
            have = 1 if any(i in js for i in inc.points[pid].lines) else 0
        if have < k:
            return False
    return True


def check_condition_strata(inc: Incidence, m: int, J: Iterable[int], condition: str) -> bool:
    if condition == "a":
        return check_condition_a_strata(inc, m, J)
    if condition == "b":
        return check_condition_b_strata(inc, m, J)
    raise ValueError(f"condition must be 'a' or 'b', got {condition!r}")


def check_condition_a_prime(inc: Incidence, m: int, J: Iterable[int]) -> bool:
    """Sufficient test for (a): no constrained point meets J in two lines or more."""
    js = _normalize_j(inc, m, J)
    return all(len(js & inc.points[p].lines) <= 1 for p in _constrained(inc, m))


def _validated(inc: Incidence, m: int, J: Iterable[int], condition: str, source: str) -> Witness:
    w = Witness(tuple(J), condition, source)
    if not (check_condition(inc, m, w.J, condition) and check_condition_strata(inc, m, w.J, condition)):
        raise ArrangementError(f"{source} produced an invalid ({condition}) witness {list(w.J)}")
    return w


# ---------------------------------------------------------------------------
# Exact search
# ---------------------------------------------------------------------------

class _Search:
    def __init__(self, inc: Incidence, m: int, condition: str,
                 node_budget: int | None, time_budget: float | None):
        self.d = inc.degree
        self.s = inc.degree // m
        self.condition = condition
        pts = _constrained(inc, m)
        self.npts = len(pts)
        idx = {p: k for k, p in enumerate(pts)}
        # constrained points on each line, by local index
        self.on_line = [[idx[p] for p in inc.line_points[i] if p in idx] for i in range(self.d)]
        # demand for (b), capacity for (a)
        self.need = [inc.points[p].multiplicity // m for p in pts]
        # suffix[k][i]: lines through point k with index >= i
        self.suffix = []
        for p in pts:
            row = [0] * (self.d + 1)
            lines = inc.points[p].lines
            for i in range(self.d - 1, -1, -1):
                row[i] = row[i + 1] + (i in lines)
            self.suffix.append(row)
        self.node_budget = node_budget
        self.deadline = None if time_budget is None else time.monotonic() + time_budget
        self.nodes = 0

    def _tick(self):
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise BudgetExceeded(f"search exceeded {self.node_budget} nodes", self.nodes)
        if self.deadline is not None and self.nodes % 1024 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("search exceeded its time budget", self.nodes)

    def run(self) -> tuple[int, ...] | None:
        self.cnt = [0] * self.npts
        self.chosen: list[int] = []
        if self.condition == "b":
            self.residual = sum(self.need)
            return self._b(0)
        return self._a(0)

    # (b): every point needs `need` chosen lines
    def _b_feasible(self, i: int, slots: int) -> bool:
        gains = []
        for k in range(self.npts):
            dem = self.need[k] - self.cnt[k]
            if dem > 0 and self.suffix[k][i] < dem:
                return False
        if self.residual > 0:
            for l in range(i, self.d):
                g = sum(1 for k in self.on_line[l] if self.cnt[k] < self.need[k])
                if g:
                    gains.append(g)
            gains.sort(reverse=True)
            if sum(gains[:slots]) < self.residual:
                return False
        return True

    def _b(self, i: int) -> tuple[int, ...] | None:
        self._tick()
        slots = self.s - len(self.chosen)
        if self.residual == 0:
            if self.d - i >= slots:
                return tuple(self.chosen) + tuple(range(i, i + slots))
            return None
        if slots == 0 or self.d - i < slots or not self._b_feasible(i, slots):
            return None
        # include line i
        self.chosen.append(i)
        touched = self.on_line[i]
        for k in touched:
            if self.cnt[k] < self.need[k]:
                self.residual -= 1
            self.cnt[k] += 1
        found = self._b(i + 1)
        for k in touched:
            self.cnt[k] -= 1
            if self.cnt[k] < self.need[k]:
                self.residual += 1
        self.chosen.pop()
        if found is not None:
            return found
        return self._b(i + 1)

    # (a): no point may exceed its capacity
    def _a(self, i: int) -> tuple[int, ...] | None:
        self._tick()
        slots = self.s - len(self.chosen)
        if slots == 0:
            return tuple(self.chosen)
        free = 0
        for l in range(i, self.d):
            if all(self.cnt[k] < self.need[k] for k in self.on_line[l]):
                free += 1
                if free >= slots:
                    break
        if free < slots:
            return None
        touched = self.on_line[i]
        if all(self.cnt[k] < self.need[k] for k in touched):
            self.chosen.append(i)
            for k in touched:
                self.cnt[k] += 1
            found = self._a(i + 1)
            for k in touched:
                self.cnt[k] -= 1
            self.chosen.pop()
            if found is not None:
                return found
        return self._a(i + 1)


def find_witness(inc: Incidence, m: int, condition: str = "b",
                 node_budget: int | None = None, time_budget: float | None = None) -> Witness | None:
    """Lexicographically least witness for ``condition``, or None if none exists.

    Branch-and-bound over lines in index order, trying inclusion first, so
    the first leaf reached is the least sorted index sequence.  Raises
    :class:`BudgetExceeded` when a node or wall-clock budget runs out.
    """
    if condition not in CONDITIONS:
        raise ValueError(f"condition must be 'a' or 'b', got {condition!r}")
    if m < 2 or inc.degree % m:
        raise ValueError(f"m={m} must be >= 2 and divide the degree {inc.degree}")
    found = _Search(inc, m, condition, node_budget, time_budget).run()
    if found is None:
        return None
    return _validated(inc, m, found, condition, "search")


def search_nodes(inc: Incidence, m: int, condition: str = "b") -> int:
    """Number of search nodes visited by :func:`find_witness`."""
    s = _Search(inc, m, condition, None, None)
    s.run()
    return s.nodes


# ---------------------------------------------------------------------------
# Fast sufficient tests
# ---------------------------------------------------------------------------

def quick_a_doubleprime(inc: Incidence, m: int) -> Witness | None:
    """(a)-witness made of d/m lines through one point of multiplicity at
    least d/m that is not divisible by m.

    Double points and single lines count as points of multiplicity 2 and 1.
    Among all such candidates the least J is returned.
    """
    d = inc.degree
    if m < 2 or d % m:
        raise ValueError(f"m={m} must be >= 2 and divide the degree {d}")
    s = d // m
    cands = []
    for p in inc.points:
        if p.multiplicity >= s and p.multiplicity % m:
            cands.append(p.sorted_lines()[:s])
    if s <= 2 and 2 % m:
        pair = next(iter(inc.double_points()), None)
        if pair is not None:
            cands.append(pair[:s])
    if s == 1 and d >= 1:
        cands.append((0,))
    if not cands:
        return None
    return _validated(inc, m, min(cands), "a", "a_doubleprime")


def remark3_shortcut(inc: Incidence, m: int) -> Witness | None:
    """(b)-witness when the m-divisible points ask for at most d/m lines in
    total: k lowest lines through each point of multiplicity km, then the
    lowest unused lines."""
    d = inc.degree
    if m < 2 or d % m:
        raise ValueError(f"m={m} must be >= 2 and divide the degree {d}")
    s = d // m
    pts = _constrained(inc, m)
    if sum(inc.points[p].multiplicity // m for p in pts) > s:
        return None
    js: set[int] = set()
    for p in pts:
        js.update(inc.points[p].sorted_lines()[: inc.points[p].multiplicity // m])
    for i in range(d):
        if len(js) >= s:
            break
        js.add(i)
    return _validated(inc, m, js, "b", "remark3")


def theorem2_lines(red: Incidence, m: int) -> list[int]:
    """Lines of an m-reduced arrangement meeting every m-point, with m*r <= d.

    Repeatedly take the lowest line L1 carrying two uncovered m-points, and
    retire it together with every line whose uncovered m-points all lie on
    L1; at least m lines go each round.  Once no line carries two uncovered
    points, each remaining point takes its lowest line.
    """
    lp = red.line_points
    uncovered = set(stratum_div(red, m))
    remaining = set(range(red.degree))
    cover: list[int] = []
    while uncovered:
        on = {l: {p for p in lp[l] if p in uncovered} for l in remaining}
        l1 = min((l for l in remaining if len(on[l]) >= 2), default=None)
        if l1 is None:
            for p in sorted(uncovered):
                lines = red.points[p].lines
                cover.append(min(lines))
                remaining -= lines
            break
        group = {l1} | {l for l in remaining if on[l] and on[l] <= on[l1]}
        if len(group) < m:
            raise ArrangementError(
                f"cover step retired only {len(group)} < {m} lines at line {l1}")
        cover.append(l1)
        remaining -= group
        uncovered -= on[l1]
    if m * len(cover) > red.degree:
        raise ArrangementError(f"cover uses {len(cover)} lines, more than d/m")
    return sorted(cover)


def theorem2_cover(inc: Incidence, m: int) -> Witness:
    """(b)-witness from a covering of the m-points, for m-graphs of
    complexity at most ceil(m/2).

    Non-reduced input is m-reduced first; the cover is lifted back by adding
    k_P - 1 split-off lines at each point of multiplicity k_P m, and padded
    with the lowest unused lines.  Raises :class:`NotApplicableError` when
    the complexity is too large or the reduction is impossible.
    """
    d = inc.degree
    if m < 3:
        raise NotApplicableError("the covering argument needs m >= 3")
    if d % m:
        raise ValueError(f"m={m} does not divide the degree {d}")
    c = complexity(inc, m)
    if c > ceil(m / 2):
        raise NotApplicableError(f"m-complexity {c} exceeds ceil(m/2) = {ceil(m / 2)}")
    try:
        red = m_reduce(inc, m)
    except ReductionError as exc:
        raise NotApplicableError(f"m-reduction impossible: {exc}") from exc
    js = {red.mapping[l] for l in theorem2_lines(red.reduced, m)}
    for pid, moved in red.moved.items():
        k = inc.points[pid].multiplicity // m
        js.update(moved[: k - 1])
    s = d // m
    if len(js) > s:
        raise ArrangementError("lifted cover is larger than d/m")
    for i in range(d):
        if len(js) >= s:
            break
        js.add(i)
    return _validated(inc, m, js, "b", "theorem2")


# ---------------------------------------------------------------------------
# Weights and verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightVector:
    alphas: tuple[Fraction, ...]
    m: int
    J: tuple[int, ...]
    sign: str
    # alpha_P is not a positive integer at any point of multiplicity >= 3
    esv_ok: bool


def weight_vector(inc: Incidence, m: int, J: Iterable[int], sign: str = "plus") -> WeightVector:
    """alpha_i = 1 - 1/m on J and -1/m elsewhere ("plus"), or the negatives ("minus")."""
    if sign not in ("plus", "minus"):
        raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")
    js = _normalize_j(inc, m, J)
    hi, lo = Fraction(m - 1, m), Fraction(-1, m)
    if sign == "minus":
        hi, lo = -hi, -lo
    alphas = tuple(hi if i in js else lo for i in range(inc.degree))
    ok = True
    for p in inc.points:
        a = sum(alphas[i] for i in p.lines)
        if a.denominator == 1 and a > 0:
            ok = False
            break
    return WeightVector(alphas, m, tuple(sorted(js)), sign, ok)


@dataclass(frozen=True)
class EsvVerdict:
    m: int
    status: str
    witness: Witness | None = None
    quick_flags: tuple[str, ...] = ()
    lower_bound: int | None = None
    nodes: int | None = None

    @property
    def condition(self) -> str | None:
        return None if self.witness is None else self.witness.condition

    @property
    def calculable(self) -> bool:
        return self.status in ("calculable",)


STATUSES = ("vanishes_m_not_dividing_d", "calculable", "not_calculable", "unknown_budget")


def divisors_above_one(d: int) -> list[int]:
    return [m for m in range(2, d + 1) if d % m == 0]


def esv_verdict(inc: Incidence, m: int, lower_bound_budget: int = 0,
                node_budget: int | None = None, time_budget: float | None = None,
                shortcuts: bool = True) -> EsvVerdict:
    """Verdict for one m: shortcuts (a)'', the E <= 1 test and the covering
    construction, then exact search for (b) and then (a).

    With ``lower_bound_budget > 0`` a non-calculable verdict also carries
    the largest Aomoto H^1 over the first that many subsets J.  The two
    signs give the same H^1, since omega and -omega have the same kernel.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    if inc.degree % m:
        return EsvVerdict(m, "vanishes_m_not_dividing_d")
    if shortcuts:
        quick = [("a_doubleprime", quick_a_doubleprime), ("remark3", remark3_shortcut)]
        for flag, fn in quick:
            w = fn(inc, m)
            if w is not None:
                return EsvVerdict(m, "calculable", w, (flag,))
        if m >= 3:
            try:
                w = theorem2_cover(inc, m)
                return EsvVerdict(m, "calculable", w, ("theorem2",))
            except NotApplicableError:
                pass
    per_cond = None if time_budget is None else time_budget / 2
    nodes = 0
    for cond in ("b", "a"):
        s = _Search(inc, m, cond, node_budget, per_cond)
        try:
            found = s.run()
        except BudgetExceeded:
            return EsvVerdict(m, "unknown_budget", None, ("search",), None, nodes + s.nodes)
        nodes += s.nodes
        if found is not None:
            w = _validated(inc, m, found, cond, "search")
            return EsvVerdict(m, "calculable", w, ("search",), None, nodes)
    lb = None
    if lower_bound_budget > 0:
        from .aomoto import lower_bound_sweep
        lb = lower_bound_sweep(inc, m, budget=lower_bound_budget).best
    return EsvVerdict(m, "not_calculable", None, ("search",), lb, nodes)


def esv_report(inc: Incidence, ms: Sequence[int] | None = None, lower_bound_budget: int = 0,
               node_budget: int | None = None, time_budget: float | None = None) -> list[EsvVerdict]:
    """Verdicts for every divisor m > 1 of d, or for the given ``ms``."""
    targets = divisors_above_one(inc.degree) if ms is None else list(dict.fromkeys(ms))
    return [esv_verdict(inc, m, lower_bound_budget, node_budget, time_budget) for m in targets]


def all_witnesses(inc: Incidence, m: int, condition: str) -> Iterable[tuple[int, ...]]:
    """Every witness in lexicographic order (plain enumeration)."""
    for J in combinations(range(inc.degree), inc.degree // m):
        if check_condition(inc, m, J, condition):
            yield J
