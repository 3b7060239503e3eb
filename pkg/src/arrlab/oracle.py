"""Brute-force ground truth for witness existence."""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .arrangement import Incidence
from .esv import CONDITIONS, check_condition_strata
from .exceptions import BudgetExceeded

DEFAULT_CEILING = 5_000_000


def enumeration_ceiling() -> int:
    """Subset ceiling; the ARRLAB_BUDGET environment variable overrides it."""
    raw = os.environ.get("ARRLAB_BUDGET")
    if raw is None:
        return DEFAULT_CEILING
    try:
        val = int(raw)
    except ValueError:
        raise ValueError(f"ARRLAB_BUDGET must be an integer, got {raw!r}") from None
    if val < 1:
        raise ValueError("ARRLAB_BUDGET must be positive")
    return val


@dataclass(frozen=True)
class OracleResult:
    condition: str
    m: int
    witness: tuple[int, ...] | None
    examined: int
    total: int


def oracle_witness(inc: Incidence, m: int, condition: str = "b", ceiling: int | None = None) -> OracleResult:
    """Scan all C(d, d/m) subsets in lexicographic order with the stratum-form
    checker; stop at the first witness."""
    if condition not in CONDITIONS:
        raise ValueError(f"condition must be 'a' or 'b', got {condition!r}")
    d = inc.degree
    if m < 2 or d % m:
        raise ValueError(f"m={m} must be >= 2 and divide the degree {d}")
    total = comb(d, d // m)
    limit = enumeration_ceiling() if ceiling is None else ceiling
    if total > limit:
        raise BudgetExceeded(f"{total} subsets exceed the enumeration ceiling {limit}", 0)
    examined = 0
    for J in combinations(range(d), d // m):
        examined += 1
        if check_condition_strata(inc, m, J, condition):
            return OracleResult(condition, m, J, examined, total)
    return OracleResult(condition, m, None, examined, total)
