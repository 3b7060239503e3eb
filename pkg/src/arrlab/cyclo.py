"""
Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored as its canonical remainder modulo the n-th cyclotomic
polynomial: a tuple of ``phi(n)`` Fractions, the coefficient of ``zeta_n**i``
at index ``i``.  Polynomials over Z or Q are plain tuples, constant term first.

>>> z = zeta_power(3, 1)
>>> z * z + z + 1
CycRat(3, [0, 0])
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

MAX_ORDER = 10_000

Scalar = Union[int, Fraction]


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def poly_divmod(num: Sequence, den: Sequence) -> tuple[list, list]:
    """Long division ``num = q*den + r`` over Q.  Inputs are coefficient
    sequences, constant term first; ``den`` must be nonzero."""
    den = _trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in num]
    _trim(rem)
    lead = Fraction(den[-1])
    dd = len(den) - 1
    if len(rem) - 1 < dd:
        return [], rem
    quot = [Fraction(0)] * (len(rem) - dd)
    for shift in range(len(rem) - 1 - dd, -1, -1):
        c = rem[shift + dd] / lead
        if c:
            quot[shift] = c
            for i, dc in enumerate(den):
                rem[shift + i] -= c * dc
    rem = _trim(rem[:dd])
    return _trim(quot), rem


def poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, constant term first.

    Computed as ``x**n - 1`` divided by ``Phi_d`` for every proper divisor d.

    >>> cyclotomic_polynomial(12)
    (1, 0, -1, 0, 1)
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"cyclotomic order must be a positive integer, got {n!r}")
    if n > MAX_ORDER:
        raise ValueError(f"cyclotomic order {n} exceeds the cap {MAX_ORDER}")
    num: list = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        num, rem = poly_divmod(num, cyclotomic_polynomial(d))
        assert not rem
    return tuple(int(c) for c in num)


def totient(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _reduce(order: int, coeffs: Iterable) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    rem = [Fraction(c) for c in coeffs]
    # Phi_n is monic, so the division needs no inverses
    for top in range(len(rem) - 1, deg - 1, -1):
        c = rem[top]
        if c:
            base = top - deg
            for i, pc in enumerate(phi):
                if pc:
                    rem[base + i] -= c * pc
    rem = rem[:deg]
    rem.extend([Fraction(0)] * (deg - len(rem)))
    return tuple(rem)


class CycRat:
    """Immutable element of Q(zeta_n) in canonical form."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: Iterable[Scalar] = ()):
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", _reduce(order, coeffs))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("CycRat is immutable")

    @classmethod
    def _raw(cls, order: int, coeffs: tuple[Fraction, ...]) -> CycRat:
        obj = object.__new__(cls)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "coeffs", coeffs)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def from_scalar(cls, order: int, value: Scalar) -> CycRat:
        return cls(order, [value])

    def _coerce(self, other) -> CycRat:
        if isinstance(other, CycRat):
            if other.order != self.order:
                raise ValueError(
                    f"cyclotomic order mismatch: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycRat.from_scalar(self.order, other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycRat):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.order, self.coeffs)))
        return self._hash

    def __add__(self, other) -> CycRat:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycRat._raw(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycRat:
        return CycRat._raw(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> CycRat:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycRat._raw(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other) -> CycRat:
        return -self + other

    def __mul__(self, other) -> CycRat:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_rational():
            c = other.coeffs[0]
            return CycRat._raw(self.order, tuple(a * c for a in self.coeffs))
        return CycRat(self.order, poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inv(self) -> CycRat:
        """Multiplicative inverse via extended Euclid against Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.order)
        if self.is_rational():
            return CycRat._raw(
                self.order, (1 / self.coeffs[0],) + self.coeffs[1:]
            )
        # invariant: s_i * a == r_i  (mod Phi_n)
        r0, r1 = [Fraction(c) for c in cyclotomic_polynomial(self.order)], _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = poly_divmod(r0, r1)
            qs = poly_mul(q, s1)
            s_next = [
                (s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)
                for i in range(max(len(s0), len(qs)))
            ]
            r0, r1 = r1, r
            s0, s1 = s1, _trim(s_next)
        # r1 is a nonzero constant: Phi_n is irreducible and deg a < phi(n)
        c = r1[0]
        return CycRat(self.order, [x / c for x in s1])

    def __truediv__(self, other) -> CycRat:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other) -> CycRat:
        return self.inv() * other

    def __pow__(self, k: int) -> CycRat:
        if k < 0:
            return self.inv() ** (-k)
        result = CycRat.from_scalar(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self.coeffs)
        return f"CycRat({self.order}, [{body}])"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                mono = str(c)
            else:
                z = f"z{self.order}" + (f"^{i}" if i > 1 else "")
                mono = z if c == 1 else f"-{z}" if c == -1 else f"{c}*{z}"
            terms.append(mono)
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


def zeta_power(n: int, k: int) -> CycRat:
    """Canonical form of ``zeta_n ** (k mod n)``."""
    k %= n
    return CycRat(n, [0] * k + [1])


def embed(order: int, value: Scalar | CycRat) -> CycRat:
    if isinstance(value, CycRat):
        if value.order != order:
            raise ValueError(f"cyclotomic order mismatch: {order} vs {value.order}")
        return value
    return CycRat.from_scalar(order, value)
