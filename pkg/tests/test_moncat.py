"""Tensor products, fusion rules, and the decomposition engine."""

import pytest

from uqsl2.errors import (
    ConstructionError,
    ContextMismatchError,
    InvalidArgumentError,
    RepresentationError,
)
from uqsl2.moncat import (
    act,
    clebsch_gordan_table,
    composition_counts,
    decompose,
    decompose_standard_product,
    projective_simple_rule,
    relative_graded_character,
    simple_simple_rule,
    solve_height_offsets,
    summand_dim,
    summand_name,
    tensor,
    tensor_action_from_coproduct,
    verify_tensor_coproduct_consistency,
    verify_unit_object,
)
from uqsl2.reps import (
    Representation,
    all_labels,
    family_W,
    partner_label,
    projective,
    simple,
    verma,
)


def test_tensor_bookkeeping(actx):
    A = simple(actx, 7, 0)
    B = simple(actx, 6, 1)
    T = tensor(A, B)
    assert T.dim == A.dim * B.dim
    assert T.label == f"{A.label}(x){B.label}"
    # group exponents and grades add coordinate-wise
    for a in range(A.dim):
        for b in range(B.dim):
            c = a * B.dim + b
            assert T.kexp[c] == (A.kexp[a] + B.kexp[b]) % actx.N
            assert T.khatexp[c] == (A.khatexp[a] + B.khatexp[b]) % actx.N
            assert T.grades[c] == A.grades[a] + B.grades[b]
    rep = T.check_relations()
    assert rep.passed, rep.counterexample


def test_tensor_rejects_mixed_contexts(actx):
    from uqsl2.qgroup import AlgebraContext

    other = AlgebraContext(4)
    with pytest.raises(ContextMismatchError):
        tensor(simple(actx, 8, 0), simple(other, 8, 0))


def test_tensor_action_matches_coproduct(actx, qh):
    """The closed-form tensor columns agree with a literal application of
    the coproduct terms, generator by generator."""
    M = simple(actx, 6, 0)
    N = projective(actx, 8, 1)
    T = tensor(M, N)
    for x in (actx.E, actx.F, actx.k, actx.khat):
        assert act(x, T) == tensor_action_from_coproduct(qh, M, N, x)


def test_tensor_coproduct_consistency_sweep(actx):
    rep = verify_tensor_coproduct_consistency(actx)
    assert rep.passed, rep.counterexample
    assert rep.instances == 40


def test_unit_object_is_tensor_identity(actx):
    rep = verify_unit_object(actx)
    assert rep.passed, rep.counterexample


def test_act_identity_and_generators(actx):
    M = simple(actx, 6, 1)
    one = actx.field.one
    ident = {c: {c: one} for c in range(M.dim)}
    assert act(actx.one_elem, M) == ident
    assert act(actx.E, M) == M.E
    assert act(actx.F, M) == M.F
    # the sixteen weight idempotents resolve the identity on any module
    total = {}
    for i, j in all_labels(actx):
        for c, col in act(actx.idempotent_e(i, j), M).items():
            for r, s in col.items():
                acc = total.setdefault(c, {})
                v = acc.get(r, actx.field.zero) + s
                if v.is_zero():
                    acc.pop(r, None)
                else:
                    acc[r] = v
    assert total == ident


def test_simple_fusion_frozen_instances(actx):
    # smallest simple squared: one simple plus the full projective ladder
    assert simple_simple_rule(actx, 1, 0, 1, 0) == {
        ("S", 8, 0): 1,
        ("P", 7, 1): 1,
        ("P", 6, 0): 1,
        ("P", 5, 1): 1,
        ("P", 4, 0): 1,
        ("P", 3, 1): 1,
        ("P", 2, 0): 1,
        ("P", 1, 1): 1,
    }
    # middle simple squared: ladder of simples, one projective tail term
    assert simple_simple_rule(actx, 4, 0, 4, 0) == {
        ("S", 8, 0): 1,
        ("S", 7, 1): 1,
        ("S", 6, 0): 1,
        ("S", 5, 1): 1,
        ("S", 4, 0): 1,
        ("S", 3, 1): 1,
        ("S", 2, 0): 1,
        ("P", 1, 1): 1,
    }
    # tensoring with the one-dimensional simple twists the sign label
    assert simple_simple_rule(actx, 8, 1, 7, 0) == {("S", 7, 1): 1}
    for i, j in all_labels(actx):
        assert simple_simple_rule(actx, 8, 0, i, j) == {("S", i, j): 1}
        assert simple_simple_rule(actx, 8, 1, i, j) == {("S", i, 1 - j): 1}


def test_projective_fusion_frozen_instance(actx):
    assert projective_simple_rule(actx, 8, 0, 7, 1) == {
        ("P", 1, 1): 2,
        ("P", 7, 1): 1,
    }


def test_fusion_rules_preserve_dimension(actx):
    N = actx.N
    for i1, j1 in all_labels(actx):
        for i2, j2 in all_labels(actx):
            d1, d2 = N - 2 * i1 + 1, N - 2 * i2 + 1
            ss = simple_simple_rule(actx, i1, j1, i2, j2)
            assert sum(summand_dim(actx, k) * m for k, m in ss.items()) == d1 * d2
            ps = projective_simple_rule(actx, i1, j1, i2, j2)
            assert sum(summand_dim(actx, k) * m for k, m in ps.items()) == 2 * N * d2


def test_simple_fusion_is_symmetric(actx):
    for i1, j1 in all_labels(actx):
        for i2, j2 in all_labels(actx):
            assert simple_simple_rule(actx, i1, j1, i2, j2) == simple_simple_rule(
                actx, i2, j2, i1, j1
            )


def test_fusion_table_rows(actx):
    tab = clebsch_gordan_table(actx, "SxS")

    def rows_for(left, right):
        return {
            (r["summand"], r["multiplicity"])
            for r in tab
            if r["left"] == left and r["right"] == right
        }

    # one-dimensional times the near-top simple
    assert rows_for("S(16,1)", "S(14,0)") == {("S(14,1)", 1)}
    # middle simples against the near-top simple: three-term ladder
    assert rows_for("S(4,0)", "S(14,0)") == {
        ("S(6,0)", 1),
        ("S(4,1)", 1),
        ("S(2,0)", 1),
    }
    # lowest simple against the near-top simple picks up a projective
    assert rows_for("S(2,0)", "S(14,0)") == {("S(4,0)", 1), ("P(2,1)", 1)}

    ptab = clebsch_gordan_table(actx, "PxS")
    prows = {
        (r["summand"], r["multiplicity"])
        for r in ptab
        if r["left"] == "P(16,0)" and r["right"] == "S(14,1)"
    }
    assert prows == {("P(2,1)", 2), ("P(14,1)", 1)}

    with pytest.raises(InvalidArgumentError):
        clebsch_gordan_table(actx, "QxQ")


def test_engine_decomposes_frozen_products(actx):
    res = decompose_standard_product(actx, ("S", 1, 0), ("S", 1, 0))
    assert res.ok, res.violations
    assert res.summands == simple_simple_rule(actx, 1, 0, 1, 0)
    assert res.verified_dim == 225

    res2 = decompose_standard_product(actx, ("S", 2, 0), ("S", 3, 1))
    assert res2.ok, res2.violations
    assert res2.summands == simple_simple_rule(actx, 2, 0, 3, 1)
    assert res2.verified_dim == 143
    assert res2.evidence["block_systems_solved"] >= 1
    assert res2.evidence["composition_counts"]


def test_peel_counts_known_modules(actx):
    assert composition_counts(simple(actx, 3, 1)) == {(3, 1): 1}
    assert composition_counts(projective(actx, 2, 0)) == {(2, 0): 2, (7, 1): 2}
    assert composition_counts(verma(actx, 5, 0)) == {(5, 0): 1, (4, 1): 1}
    W = family_W(actx, 2, 0, 2)
    counts = composition_counts(W)
    assert counts is not None
    assert sum((actx.N - 2 * i + 1) * m for (i, j), m in counts.items()) == W.dim

    S = simple(actx, 4, 0)
    ungraded = Representation(actx, "u", S.kexp, S.khatexp, S.E, S.F, None)
    with pytest.raises(RepresentationError):
        composition_counts(ungraded)


def test_decompose_rejects_zigzag_module(actx):
    W = family_W(actx, 2, 0, 2)
    res = decompose(W)
    assert not res.ok
    assert res.summands == {}
    assert res.verified_dim == 0
    assert res.violations
    assert "top_counts" in res.evidence


def test_decompose_handles_direct_sums_with_simples(actx):
    from uqsl2.reps import direct_sum

    M = direct_sum([simple(actx, 5, 1), projective(actx, 3, 0)], "SplusP")
    res = decompose(M)
    assert res.ok, res.violations
    assert res.summands == {("S", 5, 1): 1, ("P", 3, 0): 1}


def test_height_offset_solver():
    A = {(0, 0, 0): 1, (2, 1, 1): 1}
    B = {(4, 0, 0): 1}

    def shift(ch, h):
        return {(l, s, g + h): c for (l, s, g), c in ch.items()}

    def add(*chs):
        out = {}
        for ch in chs:
            for cell, c in ch.items():
                out[cell] = out.get(cell, 0) + c
        return out

    target = add(shift(A, 0), shift(B, 2))
    assert solve_height_offsets(target, [A, B]) == [0, 2]
    # identical parts at distinct heights come back sorted
    target2 = add(shift(B, 0), shift(B, 5))
    assert sorted(solve_height_offsets(target2, [B, B])) == [0, 5]
    # an unmatchable residual cell reports failure
    assert solve_height_offsets(add(shift(A, 0), {(7, 1, 0): 1}), [A, B]) is None


def test_projective_graded_character_identity(actx):
    for (i, j) in ((1, 0), (2, 0), (5, 1)):
        P = projective(actx, i, j)
        ip, jp = partner_label(actx, i, j)
        own = relative_graded_character(simple(actx, i, j))
        other = relative_graded_character(simple(actx, ip, jp))
        want = {}
        for (l, s, g), c in other.items():
            for h in (0, actx.N):
                cell = (l, s, g + h)
                want[cell] = want.get(cell, 0) + c
        for (l, s, g), c in own.items():
            cell = (l, s, g + 2 * i - 1)
            want[cell] = want.get(cell, 0) + 2 * c
        assert relative_graded_character(P) == want


def test_summand_names(actx):
    assert summand_name(("S", 7, 1)) == "S(14,1)"
    assert summand_name(("P", 1, 0)) == "P(2,0)"
    assert summand_dim(actx, ("S", 7, 1)) == 3
    assert summand_dim(actx, ("P", 1, 0)) == 32
