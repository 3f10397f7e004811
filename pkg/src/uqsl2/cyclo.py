"""Exact arithmetic in the cyclotomic field Q(zeta_N), N = n^2.

Scalars are coefficient vectors over the power basis 1, x, ..., x^(phi(N)-1)
of Q[x]/(Phi_N), stored as an integer tuple with a single positive
denominator and reduced eagerly.  The class of x is the canonical primitive
N-th root of unity q; qbar = q^n is the canonical primitive n-th root.

For n a power of two, Phi_N = x^(N/2) + 1 and reduction is a sign fold,
which is the hot path.  For other n divisible by 4 a precomputed reduction
table handles the general Phi_N.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    ContextMismatchError,
    DivisionByZeroError,
    InvalidArgumentError,
    UnsupportedParameterError,
)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low-to-high coefficients)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % den[-1]:
            raise ArithmeticError("inexact polynomial division")
        c //= den[-1]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num):
        raise ArithmeticError("nonzero remainder in polynomial division")
    return out


def cyclotomic_polynomial(order: int) -> tuple[int, ...]:
    """Coefficients (low to high, monic) of the cyclotomic polynomial Phi_order."""
    if order < 1:
        raise InvalidArgumentError(f"order must be positive, got {order}")
    poly = [-1] + [0] * (order - 1) + [1]  # x^order - 1
    for d in range(1, order):
        if order % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class Scalar:
    """An element of Q(zeta_N): integer coordinate tuple over a common denominator."""

    __slots__ = ("ctx", "num", "den", "_hash")

    def __init__(self, ctx: "FieldContext", num: tuple[int, ...], den: int):
        # Inputs are assumed normalized; use FieldContext factories to build.
        self.ctx = ctx
        self.num = num
        self.den = den
        self._hash = None

    # -- ring structure ------------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        ctx = self.ctx
        if other.ctx is not ctx:
            raise ContextMismatchError("scalars from different field contexts")
        da, db = self.den, other.den
        if da == db:
            return ctx._make([a + b for a, b in zip(self.num, other.num)], da)
        return ctx._make(
            [a * db + b * da for a, b in zip(self.num, other.num)], da * db
        )

    def __sub__(self, other: "Scalar") -> "Scalar":
        ctx = self.ctx
        if other.ctx is not ctx:
            raise ContextMismatchError("scalars from different field contexts")
        da, db = self.den, other.den
        if da == db:
            return ctx._make([a - b for a, b in zip(self.num, other.num)], da)
        return ctx._make(
            [a * db - b * da for a, b in zip(self.num, other.num)], da * db
        )

    def __neg__(self) -> "Scalar":
        return Scalar(self.ctx, tuple(-a for a in self.num), self.den)

    def __mul__(self, other: "Scalar") -> "Scalar":
        ctx = self.ctx
        if other.ctx is not ctx:
            raise ContextMismatchError("scalars from different field contexts")
        return ctx._make(ctx._mul_num(self.num, other.num), self.den * other.den)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return self * other.inverse()

    def inverse(self) -> "Scalar":
        return self.ctx.inverse(self)

    def __pow__(self, exponent: int) -> "Scalar":
        ctx = self.ctx
        if exponent < 0:
            return self.inverse() ** (-exponent)
        acc = ctx.one
        base = self
        while exponent:
            if exponent & 1:
                acc = acc * base
            base = base * base
            exponent >>= 1
        return acc

    # -- predicates and hashing ----------------------------------------

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den and self.ctx is other.ctx

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = self._hash = hash((self.num, self.den))
        return h

    # -- conversions -----------------------------------------------------

    def to_fractions(self) -> tuple[Fraction, ...]:
        den = self.den
        return tuple(Fraction(a, den) for a in self.num)

    def __repr__(self) -> str:
        return f"Scalar({scalar_to_str(self)})"


class FieldContext:
    """Arithmetic context for Q(zeta_N) with N = n^2, 4 | n."""

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 4 or n % 4 != 0:
            raise UnsupportedParameterError(
                f"n must be a positive multiple of 4, got {n!r}"
            )
        self.n = n
        self.N = n * n
        phi_poly = cyclotomic_polynomial(self.N)
        self.degree = len(phi_poly) - 1
        self.phi_poly = phi_poly
        # Phi_N = x^(N/2) + 1 exactly when N is a power of two.
        self._fold = (self.N & (self.N - 1)) == 0
        if not self._fold:
            # x^t mod Phi_N for degree <= t <= 2*degree - 2, as integer rows.
            rows = []
            cur = [-c for c in phi_poly[:-1]]  # x^degree
            rows.append(tuple(cur))
            for _ in range(self.degree - 2):
                cur = [0] + cur
                lead = cur.pop()
                if lead:
                    cur = [a - lead * c for a, c in zip(cur, phi_poly[:-1])]
                rows.append(tuple(cur))
            self._red_rows = rows
        self.zero = Scalar(self, (0,) * self.degree, 1)
        one = [0] * self.degree
        one[0] = 1
        self.one = Scalar(self, tuple(one), 1)
        self._qpow: list[Scalar] = []
        for t in range(self.N):
            if t < self.degree:
                num = [0] * self.degree
                num[t] = 1
                self._qpow.append(Scalar(self, tuple(num), 1))
            else:
                self._qpow.append(self._qpow[t - 1] * self._qpow[1])
        self.q = self._qpow[1]
        self.qbar = self._qpow[n % self.N]
        self.minus_one = self._qpow[self.N // 2]

    # -- construction ----------------------------------------------------

    def _make(self, num: list[int], den: int) -> Scalar:
        if den < 0:
            den = -den
            num = [-a for a in num]
        g = den
        for a in num:
            if a:
                g = math.gcd(g, a)
                if g == 1:
                    break
        if g > 1:
            den //= g
            num = [a // g for a in num]
        return Scalar(self, tuple(num), den)

    def from_int(self, value: int) -> Scalar:
        num = [0] * self.degree
        num[0] = value
        return Scalar(self, tuple(num), 1)

    def from_fraction(self, value: Fraction | int) -> Scalar:
        value = Fraction(value)
        num = [0] * self.degree
        num[0] = value.numerator
        return Scalar(self, tuple(num), value.denominator)

    def from_coeffs(self, coeffs) -> Scalar:
        """Scalar from an iterable of Fractions/ints over the power basis."""
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > self.degree:
            raise InvalidArgumentError(
                f"at most {self.degree} coordinates expected, got {len(coeffs)}"
            )
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        num = [int(c * den) for c in coeffs]
        return self._make(num, den)

    def qpow(self, exponent: int) -> Scalar:
        """q^exponent for any integer exponent."""
        return self._qpow[exponent % self.N]

    def qbarpow(self, exponent: int) -> Scalar:
        return self._qpow[(exponent * self.n) % self.N]

    def sign(self, parity: int) -> Scalar:
        return self.one if parity % 2 == 0 else self.minus_one

    # -- core arithmetic ---------------------------------------------------

    def _mul_num(self, a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
        m = self.degree
        out = [0] * m
        if self._fold:
            for i in range(m):
                ai = a[i]
                if not ai:
                    continue
                for j in range(m):
                    bj = b[j]
                    if not bj:
                        continue
                    k = i + j
                    if k < m:
                        out[k] += ai * bj
                    else:
                        out[k - m] -= ai * bj
            return out
        tmp = [0] * (2 * m - 1)
        for i in range(m):
            ai = a[i]
            if not ai:
                continue
            for j in range(m):
                bj = b[j]
                if bj:
                    tmp[i + j] += ai * bj
        out = tmp[:m]
        for t in range(m, 2 * m - 1):
            c = tmp[t]
            if c:
                row = self._red_rows[t - m]
                for i in range(m):
                    r = row[i]
                    if r:
                        out[i] += c * r
        return out

    def inverse(self, s: Scalar) -> Scalar:
        if s.is_zero():
            raise DivisionByZeroError("inverse of zero in Q(zeta_N)")

        def trim(p: list[Fraction]) -> list[Fraction]:
            while p and not p[-1]:
                p.pop()
            return p

        def polymul(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
            out = [Fraction(0)] * (len(p) + len(q) - 1) if p and q else []
            for i, pi in enumerate(p):
                if pi:
                    for j, qj in enumerate(q):
                        out[i + j] += pi * qj
            return out

        def polydivmod(p: list[Fraction], q: list[Fraction]):
            quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
            rem = list(p)
            for k in range(len(quot) - 1, -1, -1):
                c = rem[k + len(q) - 1] / q[-1]
                quot[k] = c
                if c:
                    for i, d in enumerate(q):
                        rem[k + i] -= c * d
            return quot, trim(rem)

        # Extended Euclid against Phi_N: maintain u with u * s == r (mod Phi_N).
        r0 = trim([Fraction(c) for c in self.phi_poly])
        r1 = trim([Fraction(x, s.den) for x in s.num])
        u0: list[Fraction] = []
        u1: list[Fraction] = [Fraction(1)]
        while len(r1) > 1:
            quot, rem = polydivmod(r0, r1)
            prod = polymul(quot, u1)
            nxt = [
                (u0[i] if i < len(u0) else Fraction(0))
                - (prod[i] if i < len(prod) else Fraction(0))
                for i in range(max(len(u0), len(prod)))
            ]
            r0, r1 = r1, rem
            u0, u1 = u1, trim(nxt)
            if not r1:
                raise DivisionByZeroError("scalar is a zero divisor modulo Phi_N")
        c = r1[0]
        return self.from_coeffs([x / c for x in u1])

    def __repr__(self) -> str:
        return f"FieldContext(n={self.n})"


def make_context(n: int) -> FieldContext:
    """Build the arithmetic context for Q(zeta_{n^2}).  Requires 4 | n."""
    return FieldContext(n)


def qint(ctx: FieldContext, s: int, base: Scalar | None = None) -> Scalar:
    """The geometric sum 1 + base + ... + base^(s-1); base defaults to q."""
    if s < 0:
        raise InvalidArgumentError(f"q-integer index must be nonnegative, got {s}")
    if base is None:
        base = ctx.q
    total = ctx.zero
    power = ctx.one
    for _ in range(s):
        total = total + power
        power = power * base
    return total


def scalar_to_str(s: Scalar) -> str:
    """Serialize: comma-joined per-coordinate reduced fractions, low to high."""
    parts = []
    for f in s.to_fractions():
        if f.denominator == 1:
            parts.append(str(f.numerator))
        else:
            parts.append(f"{f.numerator}/{f.denominator}")
    return ",".join(parts)


def scalar_from_str(ctx: FieldContext, text: str) -> Scalar:
    """Inverse of scalar_to_str; accepts fewer than degree coordinates."""
    text = text.strip()
    if not text:
        raise InvalidArgumentError("empty scalar string")
    try:
        coeffs = [Fraction(part.strip()) for part in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidArgumentError(f"bad scalar string {text!r}: {exc}") from exc
    return ctx.from_coeffs(coeffs)
