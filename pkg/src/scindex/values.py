"""Exact index values of the form ``radicand ** (1 / degree)``."""

from __future__ import annotations

import math
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from functools import total_ordering
from numbers import Rational


def integer_nthroot(n: int, k: int) -> tuple[int, bool]:
    """Floor of the ``k``-th root of ``n >= 0`` and whether it is exact."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2 or k == 1:
        return n, True
    if k == 2:
        r = math.isqrt(n)
        return r, r * r == n
    # Newton iteration on integers, seeded above the root
    r = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r, r ** k == n


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _exact_root(q: Fraction, k: int) -> Fraction | None:
    a, ea = integer_nthroot(q.numerator, k)
    if not ea:
        return None
    b, eb = integer_nthroot(q.denominator, k)
    if not eb:
        return None
    return Fraction(a, b)


@total_ordering
class IndexValue:
    """A non-negative real ``r ** (1/n)`` with rational ``r``, kept canonical.

    The degree is the smallest one that represents the value with a rational
    radicand, so equal values have identical ``(radicand, degree)`` and
    hashing/equality are exact.  Ordering cross-powers both sides.
    """

    __slots__ = ("radicand", "degree")

    def __init__(self, radicand=0, degree: int = 1):
        if isinstance(radicand, IndexValue):
            radicand, degree = radicand.radicand, radicand.degree * degree
        r = Fraction(radicand)
        if r < 0:
            raise ValueError(f"radicand must be non-negative, got {r}")
        n = int(degree)
        if n < 1:
            raise ValueError(f"degree must be positive, got {degree}")
        if r == 0 or r == 1:
            n = 1
        else:
            for p in _prime_factors(n):
                while n % p == 0:
                    root = _exact_root(r, p)
                    if root is None:
                        break
                    r, n = root, n // p
        self.radicand = r
        self.degree = n

    @classmethod
    def sqrt(cls, q) -> "IndexValue":
        return cls(q, 2)

    # -- conversion -------------------------------------------------------
    def is_rational(self) -> bool:
        return self.degree == 1

    def as_fraction(self) -> Fraction:
        if self.degree != 1:
            raise ValueError(f"{self} is irrational")
        return self.radicand

    def power_fraction(self, k: int) -> Fraction:
        """``self ** k`` as an exact Fraction; ``k`` must be a multiple of the degree."""
        if k % self.degree:
            raise ValueError(f"{self} ** {k} is not rational")
        return self.radicand ** (k // self.degree)

    def __float__(self) -> float:
        if self.degree == 1:
            return float(self.radicand)
        r = self.radicand
        try:
            return float(r) ** (1.0 / self.degree)
        except OverflowError:
            lg = (math.log(r.numerator) - math.log(r.denominator)) / self.degree
            return math.exp(lg)

    def decimal(self, places: int = 8) -> Decimal:
        """Decimal approximation rounded half-even to ``places`` digits."""
        with localcontext() as ctx:
            ctx.prec = 60 + len(str(self.radicand.numerator))
            q = Decimal(self.radicand.numerator) / Decimal(self.radicand.denominator)
            if self.degree == 1:
                v = q
            elif q == 0:
                v = Decimal(0)
            else:
                v = q ** (Decimal(1) / Decimal(self.degree))
            return v.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN)

    def exact_str(self) -> str:
        r = self.radicand
        base = str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"
        if self.degree == 1:
            return base
        if self.degree == 2:
            return f"sqrt({base})"
        return f"({base})^(1/{self.degree})"

    def __str__(self) -> str:
        return self.exact_str()

    def __repr__(self) -> str:
        return f"IndexValue({self.radicand!s}, {self.degree})"

    # -- comparison -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "IndexValue | None":
        if isinstance(other, IndexValue):
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool) and other >= 0:
            return IndexValue(other)
        return None

    def _key(self):
        return (self.radicand, self.degree)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            if isinstance(other, float):
                return float(self) == other
            return NotImplemented
        return self._key() == o._key()

    def __hash__(self) -> int:
        if self.degree == 1:
            return hash(self.radicand)
        return hash(self._key())

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            if isinstance(other, float):
                return float(self) < other
            return NotImplemented
        if self.degree == o.degree:
            return self.radicand < o.radicand
        return self.radicand ** o.degree < o.radicand ** self.degree

    # -- arithmetic -------------------------------------------------------
    def __mul__(self, other) -> "IndexValue":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = math.lcm(self.degree, o.degree)
        return IndexValue(self.radicand ** (n // self.degree) * o.radicand ** (n // o.degree), n)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "IndexValue":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.radicand == 0:
            raise ZeroDivisionError("division by a zero index value")
        n = math.lcm(self.degree, o.degree)
        return IndexValue(self.radicand ** (n // self.degree) / o.radicand ** (n // o.degree), n)

    def __pow__(self, exponent) -> "IndexValue":
        e = Fraction(exponent)
        if e < 0:
            raise ValueError("negative exponents are not supported")
        if e == 0:
            return IndexValue(1)
        return IndexValue(self.radicand ** e.numerator, self.degree * e.denominator)

    def __bool__(self) -> bool:
        return self.radicand != 0


ZERO = IndexValue(0)
ONE = IndexValue(1)
