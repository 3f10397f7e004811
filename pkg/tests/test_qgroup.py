import json
import random

import pytest

from uqsl2 import linalg
from uqsl2.cyclo import qint
from uqsl2.errors import ContextMismatchError, InvalidArgumentError
from uqsl2.qgroup import AlgebraContext, AlgebraElement, GroupElem, algebra_context


def test_generator_relations(actx):
    f = actx.field
    one = actx.one_elem
    k, kh, E, F = actx.k, actx.khat, actx.E, actx.F
    assert k ** actx.n == one
    assert kh ** actx.half == one
    assert kh ** actx.n == actx.kinv * actx.kinv
    assert k * kh == kh * k
    assert k * actx.kinv == one
    assert kh * actx.khat_inv == one
    assert k * E * actx.kinv == E.scale(f.qbar)
    assert k * F * actx.kinv == F.scale(f.qbarpow(-1))
    assert kh * E * actx.khat_inv == E.scale(f.qbar * f.qpow(-2))
    assert kh * F * actx.khat_inv == F.scale(f.qbarpow(-1) * f.qpow(2))
    assert (E ** actx.N).is_zero()
    assert (F ** actx.N).is_zero()
    assert F * E - (E * F).scale(f.qpow(-1)) == one - actx.kinv_khat


def test_perturbed_relations_fail(actx):
    f = actx.field
    one = actx.one_elem
    E, F = actx.E, actx.F
    assert F * E - (E * F).scale(f.q) != one - actx.kinv_khat
    assert F * E - (E * F).scale(f.qpow(-1)) != one + actx.kinv_khat
    assert actx.k * E * actx.kinv != E.scale(f.qbarpow(-1))


def test_group_elem_encoding():
    n = 4
    k = GroupElem(n, 1, 0)
    khat = GroupElem(n, 0, 1)
    assert k * k == GroupElem(n, 0, (-n) % (n * n // 2))
    assert (khat ** n) * k * k == GroupElem(n, 0, 0)
    elems = [GroupElem(n, e, c) for e in (0, 1) for c in range(n * n // 2)]
    assert len(set(elems)) == n * n
    for g in elems:
        assert g * g.inverse() == GroupElem(n, 0, 0)
    assert GroupElem(n, 1, n + 1).weight == (n * n - 2) % (n * n)
    assert GroupElem(n, 1, n // 2).weight == n * n // 2


def test_group_weight_is_conjugation_phase(actx):
    f = actx.field
    for eps in (0, 1):
        for c in range(actx.half):
            g = actx.group_elem(eps, c)
            w = GroupElem(actx.n, eps, c).weight
            assert g * actx.E == (actx.E * g).scale(f.qpow(w))
            assert g * actx.F == (actx.F * g).scale(f.qpow(-w))


def test_associativity_on_random_triples(actx):
    rng = random.Random(20260813)
    f = actx.field

    def rand_elem():
        out = actx.zero_elem
        for _ in range(3):
            a = rng.randrange(actx.N)
            d = rng.randrange(actx.N)
            eps = rng.randrange(2)
            c = rng.randrange(actx.half)
            coeff = f.from_int(rng.randrange(-3, 4))
            out = out + actx.monomial(a, eps, c, d, coeff)
        return out

    for _ in range(100):
        x, y, z = rand_elem(), rand_elem(), rand_elem()
        assert (x * y) * z == x * (y * z)


def test_products_preserve_height(actx):
    rng = random.Random(99)
    for _ in range(40):
        a1, d1 = rng.randrange(8), rng.randrange(8)
        a2, d2 = rng.randrange(8), rng.randrange(8)
        m1 = actx.monomial(a1, rng.randrange(2), rng.randrange(actx.half), d1)
        m2 = actx.monomial(a2, rng.randrange(2), rng.randrange(actx.half), d2)
        prod = m1 * m2
        hs = prod.heights()
        assert len(hs) <= 1
        if hs:
            assert hs == {(d1 - a1) + (d2 - a2)}


def test_k_eigenprojectors(actx):
    f = actx.field
    total = actx.zero_elem
    for i in range(actx.n):
        pi = actx.idempotent_1(i)
        total = total + pi
        assert pi * pi == pi
        assert actx.k * pi == pi.scale(f.qbarpow(i))
        for i2 in range(i):
            assert (pi * actx.idempotent_1(i2)).is_zero()
    assert total == actx.one_elem
    assert actx.flat() * actx.flat_inv() == actx.one_elem
    with pytest.raises(InvalidArgumentError):
        actx.idempotent_1(actx.n)


def test_primitive_idempotents(actx):
    f = actx.field
    labels = [(i, j) for i in range(1, actx.half + 1) for j in (0, 1)]
    total = actx.zero_elem
    for i, j in labels:
        e = actx.idempotent_e(i, j)
        total = total + e
        assert e * e == e
        assert actx.kinv_khat * e == e.scale(f.qpow(2 * i))
        assert actx.k_khat_half * e == e.scale(f.sign(j))
    assert total == actx.one_elem
    e10 = actx.idempotent_e(1, 0)
    e81 = actx.idempotent_e(8, 1)
    assert (e10 * e81).is_zero()
    assert (e81 * e10).is_zero()
    for i, j in labels:
        e = actx.idempotent_e(i, j)
        rows = []
        for eps in (0, 1):
            for c in range(actx.half):
                rows.append(actx.coords(actx.group_elem(eps, c) * e))
        assert linalg.rank(actx.field, rows) == 1
    for bad in ((0, 0), (actx.half + 1, 0), (1, 2)):
        with pytest.raises(InvalidArgumentError):
            actx.idempotent_e(*bad)


def test_ef_table_matches_closed_form(actx):
    f = actx.field
    kkc = (actx.n + 1) % actx.half
    for a in range(1, actx.N):
        qa = qint(f, a, f.q)
        expected = {
            (a, 0, 0, 1): f.qpow(a),
            (a - 1, 1, kkc, 0): f.qpow(a) * qa,
            (a - 1, 0, 0, 0): -(f.q * qa),
        }
        got = {(ap, eps, c, dp): s for ap, eps, c, dp, s in actx.ef(1, a)}
        assert got == expected


def test_commutation_lemma_report(actx):
    rep = actx.verify_commutation_lemmas()
    assert rep.passed, rep.counterexample
    assert rep.instances == 4 * (actx.N - 1) + 4 + 2 * actx.N


def test_alpha_vectors(actx):
    f = actx.field
    for i in range(1, actx.half + 1):
        for j in (0, 1):
            alpha = actx.alpha_vec(i, j)
            assert alpha.heights() == {1 - actx.N}
            assert (actx.F * alpha).is_zero()
            assert not (actx.e_power(actx.N - 1) * alpha).is_zero()
            assert actx.kinv_khat * alpha == alpha.scale(f.qpow(2 * i - 2))
            assert actx.k_khat_half * alpha == alpha.scale(f.sign(j + 1))
            ladder = actx.F * (actx.E * alpha)
            assert ladder == alpha.scale(f.one - f.qpow(2 * i - 2))


def test_gamma_vectors(actx):
    for i in range(1, actx.half + 1):
        for j in (0, 1):
            gamma = actx.gamma_vec(i, j)
            assert gamma.heights() == {2 * i - actx.N}
            assert actx.F * gamma == actx.beta_vec(i, j)
    direct = AlgebraElement(
        actx,
        {
            (actx.N - 2, eps, c, 0): s
            for (_, eps, c, _), s in actx.idempotent_e(1, 0).terms.items()
        },
    )
    assert actx.gamma_vec(1, 0) == direct


def test_gamma_generates_projective_of_dim_2nsq(actx):
    for i, j in ((1, 0), (8, 1)):
        basis = actx.left_ideal_basis(actx.gamma_vec(i, j))
        assert len(basis) == 2 * actx.N


def test_regular_decomposition_fast(actx):
    rep = actx.verify_regular_decomposition(slow=False)
    assert rep.passed, rep.counterexample
    assert rep.instances == 1 + 2 * actx.half


def test_monomial_index_is_injective(actx):
    seen = set()
    for a in range(actx.N):
        for eps in (0, 1):
            for c in range(actx.half):
                for d in range(actx.N):
                    idx = actx.monomial_index((a, eps, c, d))
                    assert 0 <= idx < actx.dim
                    seen.add(idx)
    assert len(seen) == actx.dim


def test_argument_validation(actx):
    with pytest.raises(InvalidArgumentError):
        actx.monomial(actx.N, 0, 0, 0)
    with pytest.raises(InvalidArgumentError):
        actx.E ** -1
    other = AlgebraContext(4)
    with pytest.raises(ContextMismatchError):
        actx.E + other.E


def test_cache_roundtrip(tmp_path, actx):
    path = tmp_path / "tables.json"
    actx.save_cache(str(path))
    fresh = algebra_context(4, str(path))
    assert fresh._ef  # seeded from disk
    for d, a in ((5, 7), (15, 15), (1, 3)):
        ours = [(ap, eps, c, dp, str(s.num) + "/" + str(s.den)) for ap, eps, c, dp, s in actx.ef(d, a)]
        theirs = [(ap, eps, c, dp, str(s.num) + "/" + str(s.den)) for ap, eps, c, dp, s in fresh.ef(d, a)]
        assert ours == theirs
    x = fresh.e_power(3) * fresh.f_power(5)
    y = actx.e_power(3) * actx.f_power(5)
    assert sorted(x.terms) == sorted(y.terms)

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"version": 999, "n": 4, "ef": {}}))
    recomputed = algebra_context(4, str(bad))
    assert not recomputed._ef
    assert recomputed.e_power(1) * recomputed.f_power(1) == recomputed.E * recomputed.F

    missing = algebra_context(4, str(tmp_path / "absent.json"))
    assert missing.E * missing.F == missing.E * missing.F
