"""Exact rank computations."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

# largest prime below 2**31; products of two residues fit in int64
PRIME = 2_147_483_647


def integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    mat = [r for r in integer_rows(rows) if any(r)]
    if not mat:
        return 0
    ncols = len(mat[0])
    # eliminate along the shorter side
    if ncols < len(mat):
        mat = [list(col) for col in zip(*mat)]
        ncols = len(mat[0])
    nrows = len(mat)
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pr = mat[r]
        p = pr[c]
        for i in range(r + 1, nrows):
            row = mat[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - f * pr[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def batched_rank_mod_p(stack: np.ndarray, p: int = PRIME) -> np.ndarray:
    """Ranks over GF(p) of a stack of integer matrices, shape (B, n, k).

    The modular rank never exceeds the rational rank; callers that need an
    exact value must confirm with :func:`rank`.
    """
    a = np.mod(np.asarray(stack, dtype=np.int64), p)
    nb, n, k = a.shape
    row = np.zeros(nb, dtype=np.int64)
    ar = np.arange(n)
    for c in range(k):
        col = a[:, :, c]
        cand = (col != 0) & (ar[None, :] >= row[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        bi = np.nonzero(has)[0]
        piv = cand[bi].argmax(axis=1)
        r0 = row[bi]
        top = a[bi, r0].copy()
        a[bi, r0] = a[bi, piv]
        a[bi, piv] = top
        prow = a[bi, r0]                       # (b, k)
        pv = prow[:, c]                        # (b,)
        f = a[bi, :, c].copy()                 # (b, n)
        f[ar[None, :] <= r0[:, None]] = 0
        sub = a[bi]
        sub = (sub * pv[:, None, None] - f[:, :, None] * prow[:, None, :]) % p
        keep = ar[None, :] <= r0[:, None]
        sub[keep] = a[bi][keep]
        a[bi] = sub
        row[bi] += 1
    return row
