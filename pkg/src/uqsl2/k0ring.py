"""The Grothendieck ring K0 of u: simple classes, fusion-rule products,
f-polynomials, and the two-generator presentation Z[g,x]/I.

A class is an integer vector over the n^2 simple labels.  Products expand
simple-by-simple through the fusion rule, with projective summands rewritten
through their composition series [P_{2i,j}] = 2[S_{2i,j}] + 2[S_partner].
The presentation is verified by mapping g and x to the two generating
classes, pushing the f-polynomials through, and checking the ideal
generators die and the monomial basis is unimodular over Z.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from .errors import ContextMismatchError, InvalidArgumentError
from .moncat import (
    composition_counts,
    decompose_standard_product,
    simple_simple_rule,
    summand_name,
)
from .qgroup import AlgebraContext
from .report import CheckReport
from .reps import all_labels, partner_label, projective

Label = tuple[int, int]


def _expand_products(
    ctx: AlgebraContext, i1: int, j1: int, i2: int, j2: int, own: int, partner: int
) -> dict[Label, int]:
    """Fusion product of two simple classes with projective summands expanded
    as own*[S_{2i,j}] + partner*[S_partner]; (2, 2) is the composition-series
    expansion, other weights exist only as deliberate controls."""
    out: dict[Label, int] = {}
    for (kind, i, j), m in simple_simple_rule(ctx, i1, j1, i2, j2).items():
        if kind == "S":
            out[(i, j)] = out.get((i, j), 0) + m
        else:
            pi, pj = partner_label(ctx, i, j)
            out[(i, j)] = out.get((i, j), 0) + own * m
            out[(pi, pj)] = out.get((pi, pj), 0) + partner * m
    return {k: v for k, v in out.items() if v}


_BASIS_CACHE: dict[tuple[int, Label, Label], dict[Label, int]] = {}


def basis_product(ctx: AlgebraContext, k1: Label, k2: Label) -> dict[Label, int]:
    """Structure constants of [S_k1]*[S_k2] in the simple-class basis."""
    hit = _BASIS_CACHE.get((ctx.n, k1, k2))
    if hit is None:
        hit = _expand_products(ctx, k1[0], k1[1], k2[0], k2[1], 2, 2)
        _BASIS_CACHE[(ctx.n, k1, k2)] = hit
    return hit


class K0Element:
    """Integer combination of simple classes with fusion multiplication."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: AlgebraContext, coeffs: dict[Label, int] | None = None):
        self.ctx = ctx
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}

    def _check(self, other: "K0Element") -> None:
        if self.ctx is not other.ctx:
            raise ContextMismatchError("K0 elements live over different contexts")

    def __add__(self, other: "K0Element") -> "K0Element":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return K0Element(self.ctx, out)

    def __sub__(self, other: "K0Element") -> "K0Element":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) - v
        return K0Element(self.ctx, out)

    def __rmul__(self, c: int) -> "K0Element":
        if not isinstance(c, int):
            return NotImplemented
        return K0Element(self.ctx, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.__rmul__(other)
        self._check(other)
        out: dict[Label, int] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                for k, m in basis_product(self.ctx, k1, k2).items():
                    out[k] = out.get(k, 0) + c1 * c2 * m
        return K0Element(self.ctx, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, K0Element):
            return NotImplemented
        return self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ctx.n, tuple(sorted(self.coeffs.items()))))

    def is_zero(self) -> bool:
        return not self.coeffs

    def dim(self) -> int:
        """Image under the dimension homomorphism K0 -> Z."""
        N = self.ctx.N
        return sum(c * (N - 2 * i + 1) for (i, j), c in self.coeffs.items())

    def sign(self) -> int:
        """Image under the parity character [S_{2i,j}] -> (-1)^j."""
        return sum(c * (1 if j == 0 else -1) for (i, j), c in self.coeffs.items())

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j) in sorted(self.coeffs, key=lambda k: (-k[0], k[1])):
            c = self.coeffs[(i, j)]
            name = f"[{summand_name(('S', i, j))}]"
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{c}{name}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def simple_class(ctx: AlgebraContext, i: int, j: int) -> K0Element:
    if not (1 <= i <= ctx.half and j in (0, 1)):
        raise InvalidArgumentError(f"bad simple label ({i}, {j})")
    return K0Element(ctx, {(i, j): 1})


def projective_class(ctx: AlgebraContext, i: int, j: int) -> K0Element:
    """[P_{2i,j}] expanded through its composition series."""
    pi, pj = partner_label(ctx, i, j)
    return K0Element(ctx, {(i, j): 2, (pi, pj): 2})


def unit_class(ctx: AlgebraContext) -> K0Element:
    return simple_class(ctx, ctx.half, 0)


def k0_mul(a: K0Element, b: K0Element) -> K0Element:
    return a * b


# -- the presentation ring Z[g,x]/(g^2-1) ------------------------------------------


class PresPoly:
    """Integer polynomial in x and g with g^2 reduced to 1 eagerly.

    Coefficients are keyed by (x-degree, g-degree) with g-degree in {0, 1}.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[tuple[int, int], int] | None = None):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}
        if any(b not in (0, 1) or a < 0 for (a, b) in self.coeffs):
            raise InvalidArgumentError("PresPoly keys must be (x-degree >= 0, g-degree in {0,1})")

    def __add__(self, other: "PresPoly") -> "PresPoly":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return PresPoly(out)

    def __sub__(self, other: "PresPoly") -> "PresPoly":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) - v
        return PresPoly(out)

    def __rmul__(self, c: int) -> "PresPoly":
        if not isinstance(c, int):
            return NotImplemented
        return PresPoly({k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.__rmul__(other)
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                k = (a1 + a2, (b1 + b2) % 2)
                out[k] = out.get(k, 0) + c1 * c2
        return PresPoly(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PresPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (a, b) in sorted(self.coeffs, key=lambda k: (-k[0], k[1])):
            c = self.coeffs[(a, b)]
            xs = "" if a == 0 else ("x" if a == 1 else f"x^{a}")
            gs = "g" if b else ""
            body = f"{xs}{'*' if xs and gs else ''}{gs}" or "1"
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}" if body != "1" else str(c))
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def pres_one() -> PresPoly:
    return PresPoly({(0, 0): 1})


def pres_g() -> PresPoly:
    return PresPoly({(0, 1): 1})


def pres_x() -> PresPoly:
    return PresPoly({(1, 0): 1})


_F_CACHE: dict[tuple[int, int], PresPoly] = {}


def f_poly(ctx: AlgebraContext, m: int, j: int) -> PresPoly:
    """The polynomial f_{2m,j}: f_{0,j} = g^j, f_{2,j} = x g^j, and
    f_{2(m+1),j} = (x - g) f_{2m,j} - f_{2(m-1),j}, with g^2 -> 1."""
    if not (0 <= m <= ctx.half - 1) or j not in (0, 1):
        raise InvalidArgumentError(f"bad f-polynomial index ({m}, {j})")
    hit = _F_CACHE.get((m, j))
    if hit is not None:
        return hit
    if m == 0:
        out = pres_one() if j == 0 else pres_g()
    elif m == 1:
        out = pres_x() if j == 0 else pres_x() * pres_g()
    else:
        xg = pres_x() - pres_g()
        out = xg * f_poly(ctx, m - 1, j) - f_poly(ctx, m - 2, j)
    _F_CACHE[(m, j)] = out
    return out


def second_ideal_generator(ctx: AlgebraContext) -> PresPoly:
    """f_{n^2-2,0} x - 2 f_{n^2-2,1} - f_{n^2-4,0} - 2."""
    h = ctx.half
    return (
        f_poly(ctx, h - 1, 0) * pres_x()
        - 2 * f_poly(ctx, h - 1, 1)
        - f_poly(ctx, h - 2, 0)
        - 2 * pres_one()
    )


def _upsilon(
    ctx: AlgebraContext, p: PresPoly, own: int = 2, partner: int = 2
) -> K0Element:
    """Evaluate a presentation polynomial at g = [S_{n^2,1}], x = [S_{n^2-2,0}].

    The expansion weights thread through to the fusion products so a
    deliberately wrong projective expansion can be exercised as a control.
    """
    half = ctx.half

    def mul_by(vec: dict[Label, int], kb: Label) -> dict[Label, int]:
        out: dict[Label, int] = {}
        for k1, c1 in vec.items():
            prod = (
                basis_product(ctx, k1, kb)
                if (own, partner) == (2, 2)
                else _expand_products(ctx, k1[0], k1[1], kb[0], kb[1], own, partner)
            )
            for k, m in prod.items():
                out[k] = out.get(k, 0) + c1 * m
        return {k: v for k, v in out.items() if v}

    xdeg = max((a for (a, b) in p.coeffs), default=0)
    powers: list[dict[Label, int]] = [{(half, 0): 1}]
    for _ in range(xdeg):
        powers.append(mul_by(powers[-1], (half - 1, 0)))
    out: dict[Label, int] = {}
    for (a, b), c in p.coeffs.items():
        vec = mul_by(powers[a], (half, 1)) if b else powers[a]
        for k, v in vec.items():
            out[k] = out.get(k, 0) + c * v
    return K0Element(ctx, out)


def upsilon(ctx: AlgebraContext, p: PresPoly) -> K0Element:
    return _upsilon(ctx, p)


def _int_det(rows: list[list[int]]) -> int:
    """Exact determinant of a small integer matrix (fraction-free enough)."""
    n = len(rows)
    mat = [[Fraction(v) for v in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for r in range(col + 1, n):
            if mat[r][col]:
                factor = mat[r][col] * inv
                mat[r] = [mat[r][c] - factor * mat[col][c] for c in range(n)]
    assert det.denominator == 1
    return int(det)


# -- verifiers ----------------------------------------------------------------------


def verify_presentation(ctx: AlgebraContext) -> CheckReport:
    """The two-generator presentation of K0 holds.

    Checks: the f-polynomials map onto every simple class, both ideal
    generators map to zero, the sixteen monomials g^b x^a form a Z-basis
    (unimodular change of matrix onto the simple classes), and a corrupted
    projective expansion breaks the second relation.
    """
    start = time.time()
    instances = 0
    half = ctx.half

    def fail(msg: str) -> CheckReport:
        return CheckReport(
            statement="K0 is presented by g and x modulo the two stated relations",
            passed=False,
            instances=instances,
            counterexample=msg,
            wall_time=time.time() - start,
        )

    for m in range(half):
        for j in (0, 1):
            got = upsilon(ctx, f_poly(ctx, m, j))
            want = simple_class(ctx, half - m, j)
            instances += 1
            if got != want:
                return fail(f"upsilon(f_{{{2*m},{j}}}) = {got!r}, wanted {want!r}")
    g = pres_g()
    instances += 1
    if not upsilon(ctx, g * g - pres_one()).is_zero():
        return fail("upsilon(g^2 - 1) is nonzero")
    rel = second_ideal_generator(ctx)
    instances += 1
    if not upsilon(ctx, rel).is_zero():
        return fail("the second ideal generator does not map to zero")
    rows = []
    for b in (0, 1):
        for a in range(half):
            image = _upsilon(ctx, PresPoly({(a, b): 1}))
            rows.append([image.coeffs.get(k, 0) for k in all_labels(ctx)])
    det = _int_det(rows)
    instances += 1
    if det not in (1, -1):
        return fail(f"monomial basis matrix has determinant {det}")
    instances += 1
    if _upsilon(ctx, rel, own=2, partner=1).is_zero():
        return fail("control: the wrong projective expansion also kills the relation")
    return CheckReport(
        statement="K0 is presented by g and x modulo the two stated relations",
        passed=True,
        instances=instances,
        wall_time=time.time() - start,
    )


def verify_ring_axioms(
    ctx: AlgebraContext, seed: int = 0, samples: int = 1000, slow: bool = False
) -> CheckReport:
    """Unit, commutativity, nonnegative structure constants, associativity."""
    start = time.time()
    instances = 0
    labels = all_labels(ctx)
    one = unit_class(ctx)

    def fail(msg: str) -> CheckReport:
        return CheckReport(
            statement="K0 is a commutative unital ring with nonnegative structure constants",
            passed=False,
            instances=instances,
            counterexample=msg,
            wall_time=time.time() - start,
        )

    for k in labels:
        e = K0Element(ctx, {k: 1})
        instances += 1
        if one * e != e or e * one != e:
            return fail(f"unit fails on {e!r}")
    for k1 in labels:
        for k2 in labels:
            p = basis_product(ctx, k1, k2)
            instances += 1
            if p != basis_product(ctx, k2, k1):
                return fail(f"product at {k1} x {k2} is not symmetric")
            if any(v < 0 for v in p.values()):
                return fail(f"negative structure constant at {k1} x {k2}")
    if slow:
        triples = [
            (a, b, c) for a in labels for b in labels for c in labels
        ]
    else:
        rng = random.Random(seed)
        triples = [
            (rng.choice(labels), rng.choice(labels), rng.choice(labels))
            for _ in range(samples)
        ]
    for ka, kb, kc in triples:
        a = K0Element(ctx, {ka: 1})
        b = K0Element(ctx, {kb: 1})
        c = K0Element(ctx, {kc: 1})
        instances += 1
        if (a * b) * c != a * (b * c):
            return fail(f"associativity fails at {ka}, {kb}, {kc}")
    return CheckReport(
        statement="K0 is a commutative unital ring with nonnegative structure constants",
        passed=True,
        instances=instances,
        wall_time=time.time() - start,
    )


def verify_character_homomorphisms(ctx: AlgebraContext) -> CheckReport:
    """Dimension and parity both extend to ring homomorphisms K0 -> Z."""
    start = time.time()
    instances = 0
    labels = all_labels(ctx)
    for k1 in labels:
        for k2 in labels:
            a = K0Element(ctx, {k1: 1})
            b = K0Element(ctx, {k2: 1})
            ab = a * b
            instances += 2
            if ab.dim() != a.dim() * b.dim() or ab.sign() != a.sign() * b.sign():
                return CheckReport(
                    statement="dimension and parity are ring homomorphisms on K0",
                    passed=False,
                    instances=instances,
                    counterexample=f"character mismatch at {k1} x {k2}",
                    wall_time=time.time() - start,
                )
    return CheckReport(
        statement="dimension and parity are ring homomorphisms on K0",
        passed=True,
        instances=instances,
        wall_time=time.time() - start,
    )


def verify_fusion_consistency(ctx: AlgebraContext) -> CheckReport:
    """K0 structure constants agree with the decomposition engine, and the
    projective expansion agrees with the graded composition counts."""
    start = time.time()
    instances = 0
    labels = all_labels(ctx)

    def fail(msg: str) -> CheckReport:
        return CheckReport(
            statement="K0 products equal the classes of decomposed tensor products",
            passed=False,
            instances=instances,
            counterexample=msg,
            wall_time=time.time() - start,
        )

    for i, j in labels:
        counts = composition_counts(projective(ctx, i, j))
        instances += 1
        if counts != projective_class(ctx, i, j).coeffs:
            return fail(f"projective class at ({i},{j}) disagrees with its composition counts")
    for k1 in labels:
        for k2 in labels:
            res = decompose_standard_product(ctx, ("S",) + k1, ("S",) + k2)
            if not res.ok:
                return fail(f"engine failed to decompose {k1} x {k2}: {res.violations}")
            want: dict[Label, int] = {}
            for (kind, i, j), m in res.summands.items():
                expansion = (
                    {(i, j): m}
                    if kind == "S"
                    else {k: m * v for k, v in projective_class(ctx, i, j).coeffs.items()}
                )
                for k, v in expansion.items():
                    want[k] = want.get(k, 0) + v
            instances += 1
            if basis_product(ctx, k1, k2) != want:
                return fail(f"structure constants at {k1} x {k2} differ from the engine")
    return CheckReport(
        statement="K0 products equal the classes of decomposed tensor products",
        passed=True,
        instances=instances,
        wall_time=time.time() - start,
    )


def k0_table(ctx: AlgebraContext) -> list[dict]:
    """All basis products in the simple-class basis, one row per coefficient."""
    rows = []
    for i1, j1 in all_labels(ctx):
        for i2, j2 in all_labels(ctx):
            prod = basis_product(ctx, (i1, j1), (i2, j2))
            for (i, j) in sorted(prod, key=lambda k: (-k[0], k[1])):
                rows.append(
                    {
                        "left": summand_name(("S", i1, j1)),
                        "right": summand_name(("S", i2, j2)),
                        "class": summand_name(("S", i, j)),
                        "coefficient": prod[(i, j)],
                    }
                )
    return rows


def k0_reports(ctx: AlgebraContext, seed: int = 0, slow: bool = False) -> list[CheckReport]:
    """Every K0 verifier, cheapest first."""
    return [
        verify_ring_axioms(ctx, seed=seed, slow=slow),
        verify_presentation(ctx),
        verify_character_homomorphisms(ctx),
        verify_fusion_consistency(ctx),
    ]
