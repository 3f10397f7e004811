"""Field arithmetic in Q(zeta_16) and the generic cyclotomic machinery."""

import random
from fractions import Fraction

import pytest

from uqsl2.cyclo import (
    cyclotomic_polynomial,
    make_context,
    qint,
    scalar_from_str,
    scalar_to_str,
)
from uqsl2.errors import (
    DivisionByZeroError,
    InvalidArgumentError,
    UnsupportedParameterError,
)


def test_cyclotomic_polynomials_small():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(16) == (1, 0, 0, 0, 0, 0, 0, 0, 1)
    # Phi_12 = x^4 - x^2 + 1
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    # Phi_36 = x^12 - x^6 + 1
    phi36 = cyclotomic_polynomial(36)
    assert len(phi36) == 13
    assert phi36[0] == 1 and phi36[6] == -1 and phi36[12] == 1


def test_context_rejects_bad_n():
    for bad in (0, 2, 3, 6, -4, 7):
        with pytest.raises(UnsupportedParameterError):
            make_context(bad)


def test_primitive_root_order():
    ctx = make_context(4)
    assert ctx.N == 16
    assert ctx.degree == 8
    q = ctx.q
    powers = set()
    acc = ctx.one
    for _ in range(16):
        powers.add(acc.num)
        acc = acc * q
    assert acc == ctx.one
    assert len(powers) == 16  # exact multiplicative order 16
    assert ctx.qpow(8) == ctx.minus_one
    assert ctx.qbar == ctx.qpow(4)
    assert ctx.qbarpow(2) == ctx.minus_one  # qbar has order 4


def test_field_axioms_random():
    ctx = make_context(4)
    rng = random.Random(7)

    def rand_scalar():
        return ctx.from_coeffs(
            [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(8)]
        )

    for _ in range(40):
        a, b, c = rand_scalar(), rand_scalar(), rand_scalar()
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == ctx.zero
        assert a * ctx.one == a


def test_inverse_random():
    ctx = make_context(4)
    rng = random.Random(11)
    for _ in range(25):
        coeffs = [rng.randint(-6, 6) for _ in range(8)]
        if not any(coeffs):
            coeffs[0] = 1
        a = ctx.from_coeffs(coeffs)
        assert a * a.inverse() == ctx.one
        assert a / a == ctx.one


def test_inverse_of_zero_raises():
    ctx = make_context(4)
    with pytest.raises(DivisionByZeroError):
        ctx.zero.inverse()


def test_qpow_wraps_and_inverts():
    ctx = make_context(4)
    assert ctx.qpow(17) == ctx.q
    assert ctx.qpow(-1) * ctx.q == ctx.one
    assert ctx.qpow(-3) == ctx.qpow(13)


def test_qint_values():
    ctx = make_context(4)
    assert qint(ctx, 0) == ctx.zero
    assert qint(ctx, 1) == ctx.one
    assert qint(ctx, 2) == ctx.one + ctx.q
    # (s)_q * (q - 1) == q^s - 1
    for s in range(8):
        lhs = qint(ctx, s) * (ctx.q - ctx.one)
        assert lhs == ctx.qpow(s) - ctx.one
    # base exponent -1 gives the q^{-1}-integer
    for s in range(8):
        lhs = qint(ctx, s, base=ctx.qpow(-1)) * (ctx.qpow(-1) - ctx.one)
        assert lhs == ctx.qpow(-s) - ctx.one


def test_serialization_roundtrip():
    ctx = make_context(4)
    rng = random.Random(3)
    for _ in range(20):
        a = ctx.from_coeffs(
            [Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(8)]
        )
        text = scalar_to_str(a)
        assert scalar_from_str(ctx, text) == a
    assert scalar_to_str(ctx.one) == "1,0,0,0,0,0,0,0"
    assert scalar_from_str(ctx, "1/2") == ctx.from_fraction(Fraction(1, 2))
    with pytest.raises(InvalidArgumentError):
        scalar_from_str(ctx, "")
    with pytest.raises(InvalidArgumentError):
        scalar_from_str(ctx, "1,x")


def test_scalars_hashable_and_normalized():
    ctx = make_context(4)
    a = ctx.from_coeffs([Fraction(2, 4)])
    b = ctx.from_fraction(Fraction(1, 2))
    assert a == b and hash(a) == hash(b)
    assert a.den == 2 and a.num[0] == 1
    c = ctx.from_coeffs([Fraction(-1, 2)])
    assert (a + c).is_zero()


def test_general_reduction_path_matches_fold():
    # n = 12 is not a power of two, so N = 144 uses reduction rows.
    ctx = make_context(12)
    assert ctx.degree == 48
    q = ctx.q
    acc = ctx.one
    for _ in range(144):
        acc = acc * q
    assert acc == ctx.one
    half = ctx.qpow(72)
    assert half == ctx.minus_one
    a = ctx.qpow(100) + ctx.from_int(3)
    assert a * a.inverse() == ctx.one
