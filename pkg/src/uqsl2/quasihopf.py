"""Quasi-Hopf structure on u: coproduct, counit, antipode, reassociator.

The coproduct is the algebra map with

    D(k) = k (x) k,  D(khat) = khat (x) khat,
    D(E) = E (x) flat^-1 + k^-1 (x) 1_0 E + 1 (x) (1 - 1_0) E,
    D(F) = F (x) flat   + k^-1 khat (x) F (1 - 1_0) + khat (x) F 1_0,

with flat = sum_i q^-i 1_i over the k-eigenprojectors 1_i.  It is
coassociative only up to conjugation by the reassociator

    Phi = sum_{i,j,k} qbar^(-i * floor((j+k)/n)) 1_i (x) 1_j (x) 1_k,

which satisfies the pentagon identity.  The antipode triple is
(S, alpha, beta) with alpha = k, beta = 1, S(k) = k^-1, S(khat) = khat^-1,

    S(E) = -(k (1 - 1_0) E + k^2 1_0 E) flat k^-1,
    S(F) = -(k^2 khat^-1 F (1 - 1_0) + k khat^-1 F 1_0) flat^-1 k^-1,

extended as an algebra anti-homomorphism.
"""

from __future__ import annotations

import itertools
import random
import time

from .cyclo import Scalar
from .errors import ContextMismatchError, InvalidArgumentError
from .qgroup import AlgebraContext, AlgebraElement, GroupElem, MonKey
from .report import CheckReport

UNIT_KEY: MonKey = (0, 0, 0, 0)


class TensorElement:
    """Sparse element of u^(x m), keyed by m-tuples of PBW monomial keys."""

    __slots__ = ("ctx", "legs", "terms")

    def __init__(self, ctx: AlgebraContext, legs: int, terms: dict[tuple, Scalar]):
        self.ctx = ctx
        self.legs = legs
        self.terms = terms

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        out = dict(self.terms)
        for key, s in other.terms.items():
            cur = out.get(key)
            t = s if cur is None else cur + s
            if t.is_zero():
                out.pop(key, None)
            else:
                out[key] = t
        return TensorElement(self.ctx, self.legs, out)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.ctx, self.legs, {k: -s for k, s in self.terms.items()})

    def scale(self, s: Scalar) -> "TensorElement":
        if s.is_zero():
            return TensorElement(self.ctx, self.legs, {})
        return TensorElement(self.ctx, self.legs, {k: s * t for k, t in self.terms.items()})

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        ctx = self.ctx
        acc: dict[tuple, Scalar] = {}
        for key1, s1 in self.terms.items():
            for key2, s2 in other.terms.items():
                s12 = s1 * s2
                parts = [ctx.mono_mul(key1[l], key2[l]) for l in range(self.legs)]
                if any(not p for p in parts):
                    continue
                for combo in itertools.product(*parts):
                    coeff = s12
                    for _, t in combo:
                        coeff = coeff * t
                    if coeff.is_zero():
                        continue
                    key = tuple(mk for mk, _ in combo)
                    cur = acc.get(key)
                    tval = coeff if cur is None else cur + coeff
                    if tval.is_zero():
                        acc.pop(key, None)
                    else:
                        acc[key] = tval
        return TensorElement(ctx, self.legs, acc)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.ctx is other.ctx and self.legs == other.legs and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.legs, frozenset(self.terms.items())))

    def insert_unit_leg(self, position: int) -> "TensorElement":
        """The image under u^(x m) -> u^(x m+1) inserting 1 at position."""
        out = {
            key[:position] + (UNIT_KEY,) + key[position:]: s
            for key, s in self.terms.items()
        }
        return TensorElement(self.ctx, self.legs + 1, out)

    def _check(self, other: "TensorElement") -> None:
        if self.ctx is not other.ctx:
            raise ContextMismatchError("tensor elements from different contexts")
        if self.legs != other.legs:
            raise InvalidArgumentError("tensor elements with different leg counts")

    def __repr__(self) -> str:
        return f"TensorElement(legs={self.legs}, terms={len(self.terms)})"


def tensor_of(*factors: AlgebraElement) -> TensorElement:
    """The tensor product of algebra elements, one per leg."""
    ctx = factors[0].ctx
    keys: list[tuple] = [()]
    vals: list[Scalar] = [ctx.field.one]
    for fac in factors:
        if fac.ctx is not ctx:
            raise ContextMismatchError("tensor factors from different contexts")
        nkeys: list[tuple] = []
        nvals: list[Scalar] = []
        for key, s in zip(keys, vals):
            for mk, t in fac.terms.items():
                nkeys.append(key + (mk,))
                nvals.append(s * t)
        keys, vals = nkeys, nvals
    acc: dict[tuple, Scalar] = {}
    for key, s in zip(keys, vals):
        if s.is_zero():
            continue
        cur = acc.get(key)
        t = s if cur is None else cur + s
        if t.is_zero():
            acc.pop(key, None)
        else:
            acc[key] = t
    return TensorElement(ctx, len(factors), acc)


def unit_tensor(ctx: AlgebraContext, legs: int) -> TensorElement:
    return TensorElement(ctx, legs, {(UNIT_KEY,) * legs: ctx.field.one})


class QuasiHopfData:
    """Coproduct, counit, antipode, and reassociator over one algebra context."""

    def __init__(self, actx: AlgebraContext):
        self.actx = actx
        f = actx.field
        upper = actx.one_elem - actx.idempotent_1(0)  # sum of 1_i for i >= 1
        low = actx.idempotent_1(0)
        self.delta_E = (
            tensor_of(actx.E, actx.flat_inv())
            + tensor_of(actx.kinv, low * actx.E)
            + tensor_of(actx.one_elem, upper * actx.E)
        )
        self.delta_F = (
            tensor_of(actx.F, actx.flat())
            + tensor_of(actx.kinv_khat, actx.F * upper)
            + tensor_of(actx.khat, actx.F * low)
        )
        ksq = actx.k * actx.k
        self.S_E = -(
            (actx.k * upper * actx.E + ksq * low * actx.E) * actx.flat() * actx.kinv
        )
        self.S_F = -(
            (ksq * actx.khat_inv * actx.F * upper + actx.k * actx.khat_inv * actx.F * low)
            * actx.flat_inv()
            * actx.kinv
        )
        self.alpha_elem = actx.k
        self.beta_elem = actx.one_elem
        self._dE_pows: list[TensorElement] = [unit_tensor(actx, 2)]
        self._dF_pows: list[TensorElement] = [unit_tensor(actx, 2)]
        self._sE_pows: list[AlgebraElement] = [actx.one_elem]
        self._sF_pows: list[AlgebraElement] = [actx.one_elem]
        self._delta_memo: dict[MonKey, TensorElement] = {}
        self._antipode_memo: dict[MonKey, AlgebraElement] = {}
        self._phi: TensorElement | None = None
        self._phi_inv: TensorElement | None = None

    # -- structure maps ------------------------------------------------------

    def _power(self, pows: list, base, t: int):
        while len(pows) <= t:
            pows.append(pows[-1] * base)
        return pows[t]

    def delta_mono(self, key: MonKey) -> TensorElement:
        hit = self._delta_memo.get(key)
        if hit is not None:
            return hit
        a, eps, c, d = key
        if a == 0 and d == 0:
            gk = (0, eps, c, 0)
            out = TensorElement(self.actx, 2, {(gk, gk): self.actx.field.one})
        else:
            out = self._power(self._dF_pows, self.delta_F, a)
            gk = (0, eps, c, 0)
            if eps or c:
                out = out * TensorElement(self.actx, 2, {(gk, gk): self.actx.field.one})
            if d:
                out = out * self._power(self._dE_pows, self.delta_E, d)
        self._delta_memo[key] = out
        return out

    def delta(self, x: AlgebraElement) -> TensorElement:
        out = TensorElement(self.actx, 2, {})
        for key, s in x.terms.items():
            out = out + self.delta_mono(key).scale(s)
        return out

    def counit(self, x: AlgebraElement) -> Scalar:
        f = self.actx.field
        out = f.zero
        for (a, _, _, d), s in x.terms.items():
            if a == 0 and d == 0:
                out = out + s
        return out

    def antipode_mono(self, key: MonKey) -> AlgebraElement:
        hit = self._antipode_memo.get(key)
        if hit is not None:
            return hit
        a, eps, c, d = key
        ginv = self.actx.from_group(GroupElem(self.actx.n, eps, c).inverse())
        out = self._power(self._sE_pows, self.S_E, d) * ginv
        if a:
            out = out * self._power(self._sF_pows, self.S_F, a)
        self._antipode_memo[key] = out
        return out

    def antipode(self, x: AlgebraElement) -> AlgebraElement:
        out = self.actx.zero_elem
        for key, s in x.terms.items():
            out = out + self.antipode_mono(key).scale(s)
        return out

    def phi(self) -> TensorElement:
        if self._phi is None:
            self._phi = self._build_phi(-1)
        return self._phi

    def phi_inv(self) -> TensorElement:
        if self._phi_inv is None:
            self._phi_inv = self._build_phi(+1)
        return self._phi_inv

    def _build_phi(self, sign: int) -> TensorElement:
        actx = self.actx
        f = actx.field
        n = actx.n
        out = TensorElement(actx, 3, {})
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    coeff = f.qbarpow(sign * i * ((j + k) // n))
                    out = out + tensor_of(
                        actx.idempotent_1(i), actx.idempotent_1(j), actx.idempotent_1(k)
                    ).scale(coeff)
        return out

    # -- leg maps ------------------------------------------------------------

    def delta_on_leg(self, tens: TensorElement, leg: int) -> TensorElement:
        acc: dict[tuple, Scalar] = {}
        for key, s in tens.terms.items():
            for (ka, kb), t in self.delta_mono(key[leg]).terms.items():
                nk = key[:leg] + (ka, kb) + key[leg + 1:]
                st = s * t
                cur = acc.get(nk)
                tot = st if cur is None else cur + st
                if tot.is_zero():
                    acc.pop(nk, None)
                else:
                    acc[nk] = tot
        return TensorElement(self.actx, tens.legs + 1, acc)

    def counit_on_leg(self, tens: TensorElement, leg: int) -> TensorElement:
        acc: dict[tuple, Scalar] = {}
        for key, s in tens.terms.items():
            a, _, _, d = key[leg]
            if a or d:
                continue
            nk = key[:leg] + key[leg + 1:]
            cur = acc.get(nk)
            tot = s if cur is None else cur + s
            if tot.is_zero():
                acc.pop(nk, None)
            else:
                acc[nk] = tot
        return TensorElement(self.actx, tens.legs - 1, acc)

    # -- zigzags ---------------------------------------------------------------

    def zigzag_left(self, x: AlgebraElement) -> AlgebraElement:
        """sum S(x_(1)) alpha x_(2) over the coproduct terms of x."""
        actx = self.actx
        out = actx.zero_elem
        for (ka, kb), s in self.delta(x).terms.items():
            piece = self.antipode_mono(ka) * self.alpha_elem * AlgebraElement(
                actx, {kb: actx.field.one}
            )
            out = out + piece.scale(s)
        return out

    def zigzag_right(self, x: AlgebraElement) -> AlgebraElement:
        """sum x_(1) beta S(x_(2)) over the coproduct terms of x."""
        actx = self.actx
        out = actx.zero_elem
        for (ka, kb), s in self.delta(x).terms.items():
            piece = AlgebraElement(actx, {ka: actx.field.one}) * self.beta_elem * self.antipode_mono(kb)
            out = out + piece.scale(s)
        return out

    # -- verification ------------------------------------------------------------

    def verify_delta_well_defined(self) -> CheckReport:
        """The coproduct respects every defining relation of the algebra."""
        start = time.time()
        actx = self.actx
        f = actx.field
        unit2 = unit_tensor(actx, 2)
        dK = self.delta_mono((0, 1, 0, 0))
        dKh = self.delta_mono((0, 0, 1, 0))
        dE, dF = self.delta_E, self.delta_F
        dKK = self.delta_mono(next(iter(actx.kinv_khat.terms)))
        dEn = self._power(self._dE_pows, dE, actx.N)
        dFn = self._power(self._dF_pows, dF, actx.N)
        dKn = unit2
        for _ in range(actx.n):
            dKn = dKn * dK
        dKhn = unit2
        for _ in range(actx.n):
            dKhn = dKhn * dKh
        checks = [
            ("k^n = 1", dKn == unit2),
            ("khat^n k^2 = 1", dKhn * dK * dK == unit2),
            ("k khat = khat k", dK * dKh == dKh * dK),
            ("k E = qbar E k", dK * dE == (dE * dK).scale(f.qbar)),
            ("k F = qbar^-1 F k", dK * dF == (dF * dK).scale(f.qbarpow(-1))),
            ("khat E = qbar q^-2 E khat", dKh * dE == (dE * dKh).scale(f.qbar * f.qpow(-2))),
            ("khat F = qbar^-1 q^2 F khat", dKh * dF == (dF * dKh).scale(f.qbarpow(-1) * f.qpow(2))),
            ("E^(n^2) = 0", dEn.is_zero()),
            ("F^(n^2) = 0", dFn.is_zero()),
            (
                "F E - q^-1 E F = 1 - k^-1 khat",
                dF * dE - (dE * dF).scale(f.qpow(-1)) == unit2 - dKK,
            ),
        ]
        for name, ok in checks:
            if not ok:
                return CheckReport(
                    "coproduct respects the defining relations",
                    False,
                    len(checks),
                    name,
                    time.time() - start,
                )
        return CheckReport(
            "coproduct respects the defining relations",
            True,
            len(checks),
            None,
            time.time() - start,
        )

    def _sample_monomials(self, rng: random.Random, count: int, max_exp: int) -> list[MonKey]:
        out = []
        for _ in range(count):
            out.append(
                (
                    rng.randrange(max_exp + 1),
                    rng.randrange(2),
                    rng.randrange(self.actx.half),
                    rng.randrange(max_exp + 1),
                )
            )
        return out

    def verify_counit(self, seed: int = 0) -> CheckReport:
        """(eps (x) id) D = id = (id (x) eps) D, and eps kills one reassociator leg."""
        start = time.time()
        actx = self.actx
        rng = random.Random(seed)
        keys: list[MonKey] = [(0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1)]
        for eps in (0, 1):
            for c in range(actx.half):
                keys.append((0, eps, c, 0))
        for a in range(3):
            for d in range(3):
                keys.append((a, 1, 3, d))
        keys += self._sample_monomials(rng, 6, 4)
        checked = 0
        for key in keys:
            x = AlgebraElement(actx, {key: actx.field.one})
            dm = self.delta_mono(key)
            left = self.counit_on_leg(dm, 0)
            right = self.counit_on_leg(dm, 1)
            expect = TensorElement(actx, 1, {(key,): actx.field.one})
            checked += 1
            if left != expect or right != expect:
                return CheckReport(
                    "counit axioms for the coproduct",
                    False,
                    checked,
                    f"monomial {key}",
                    time.time() - start,
                )
        phi = self.phi()
        unit2 = unit_tensor(actx, 2)
        for leg in (0, 1, 2):
            checked += 1
            if self.counit_on_leg(phi, leg) != unit2:
                return CheckReport(
                    "counit axioms for the coproduct",
                    False,
                    checked,
                    f"counit on reassociator leg {leg}",
                    time.time() - start,
                )
        return CheckReport(
            "counit axioms for the coproduct", True, checked, None, time.time() - start
        )

    def verify_quasi_coassociativity(self, seed: int = 0) -> CheckReport:
        """Phi (D (x) id)(D(x)) = (id (x) D)(D(x)) Phi on generators and samples."""
        start = time.time()
        actx = self.actx
        rng = random.Random(seed)
        phi = self.phi()
        elems: list[AlgebraElement] = [actx.k, actx.khat, actx.E, actx.F]
        elems.append(actx.idempotent_e(2, 1))
        elems.append(actx.flat())
        for key in self._sample_monomials(rng, 4, 3):
            elems.append(AlgebraElement(actx, {key: actx.field.one}))
        checked = 0
        for x in elems:
            dx = self.delta(x)
            lhs = phi * self.delta_on_leg(dx, 0)
            rhs = self.delta_on_leg(dx, 1) * phi
            checked += 1
            if lhs != rhs:
                return CheckReport(
                    "coproduct is coassociative up to the reassociator",
                    False,
                    checked,
                    repr(x),
                    time.time() - start,
                )
        return CheckReport(
            "coproduct is coassociative up to the reassociator",
            True,
            checked,
            None,
            time.time() - start,
        )

    def verify_pentagon(self) -> CheckReport:
        """Pentagon identity, both as a tensor identity and as a scalar cocycle."""
        start = time.time()
        actx = self.actx
        n = actx.n
        phi = self.phi()
        lhs = self.delta_on_leg(phi, 2) * self.delta_on_leg(phi, 0)
        rhs = (
            phi.insert_unit_leg(0)
            * self.delta_on_leg(phi, 1)
            * phi.insert_unit_leg(3)
        )
        checked = 1
        if lhs != rhs:
            return CheckReport(
                "reassociator satisfies the pentagon identity",
                False,
                checked,
                "tensor product identity",
                time.time() - start,
            )

        def coc(i: int, j: int, k: int) -> int:
            return (-i * ((j + k) // n)) % n

        for i1 in range(n):
            for i2 in range(n):
                for i3 in range(n):
                    for i4 in range(n):
                        checked += 1
                        left = coc(i1, i2, (i3 + i4) % n) + coc((i1 + i2) % n, i3, i4)
                        right = coc(i2, i3, i4) + coc(i1, (i2 + i3) % n, i4) + coc(i1, i2, i3)
                        if (left - right) % n != 0:
                            return CheckReport(
                                "reassociator satisfies the pentagon identity",
                                False,
                                checked,
                                f"cocycle mismatch at {(i1, i2, i3, i4)}",
                                time.time() - start,
                            )
        phiinv = self.phi_inv()
        checked += 1
        if phi * phiinv != unit_tensor(actx, 3) or phiinv * phi != unit_tensor(actx, 3):
            return CheckReport(
                "reassociator satisfies the pentagon identity",
                False,
                checked,
                "reassociator inverse",
                time.time() - start,
            )
        return CheckReport(
            "reassociator satisfies the pentagon identity",
            True,
            checked,
            None,
            time.time() - start,
        )

    def verify_antipode(self, seed: int = 0) -> CheckReport:
        """Anti-homomorphism relations plus all four zigzag identities."""
        start = time.time()
        actx = self.actx
        f = actx.field
        one = actx.one_elem
        SE, SF = self.S_E, self.S_F
        k, kinv = actx.k, actx.kinv
        kh, khinv = actx.khat, actx.khat_inv
        checks = [
            ("S(k)^n = 1", kinv ** actx.n == one),
            ("S(khat)^n = k^2", khinv ** actx.n == k * k),
            ("k S(E) k^-1 = qbar S(E)", k * SE * kinv == SE.scale(f.qbar)),
            ("k S(F) k^-1 = qbar^-1 S(F)", k * SF * kinv == SF.scale(f.qbarpow(-1))),
            (
                "khat S(E) khat^-1 = qbar q^-2 S(E)",
                kh * SE * khinv == SE.scale(f.qbar * f.qpow(-2)),
            ),
            (
                "khat S(F) khat^-1 = qbar^-1 q^2 S(F)",
                kh * SF * khinv == SF.scale(f.qbarpow(-1) * f.qpow(2)),
            ),
            ("S(E)^(n^2) = 0", (self._power(self._sE_pows, SE, actx.N)).is_zero()),
            ("S(F)^(n^2) = 0", (self._power(self._sF_pows, SF, actx.N)).is_zero()),
            (
                "S(E) S(F) - q^-1 S(F) S(E) = 1 - S(khat) S(k^-1)",
                SE * SF - (SF * SE).scale(f.qpow(-1)) == one - khinv * k,
            ),
        ]
        checked = 0
        for name, ok in checks:
            checked += 1
            if not ok:
                return CheckReport(
                    "antipode axioms", False, checked, name, time.time() - start
                )
        # Defining zigzags on a full small shell plus random samples.
        rng = random.Random(seed)
        keys: list[MonKey] = []
        for a in range(3):
            for d in range(3):
                for eps in (0, 1):
                    for c in range(actx.half):
                        keys.append((a, eps, c, d))
        keys += self._sample_monomials(rng, 4, 4)
        for key in keys:
            x = AlgebraElement(actx, {key: actx.field.one})
            eps_x = self.counit(x)
            checked += 1
            if self.zigzag_left(x) != self.alpha_elem.scale(eps_x):
                return CheckReport(
                    "antipode axioms",
                    False,
                    checked,
                    f"left zigzag at monomial {key}",
                    time.time() - start,
                )
            checked += 1
            if self.zigzag_right(x) != self.beta_elem.scale(eps_x):
                return CheckReport(
                    "antipode axioms",
                    False,
                    checked,
                    f"right zigzag at monomial {key}",
                    time.time() - start,
                )
        # Reassociator zigzags.
        acc = actx.zero_elem
        for (k1, k2, k3), s in self.phi().terms.items():
            piece = (
                AlgebraElement(actx, {k1: f.one})
                * self.beta_elem
                * self.antipode_mono(k2)
                * self.alpha_elem
                * AlgebraElement(actx, {k3: f.one})
            )
            acc = acc + piece.scale(s)
        checked += 1
        if acc != one:
            return CheckReport(
                "antipode axioms", False, checked, "reassociator zigzag", time.time() - start
            )
        acc = actx.zero_elem
        for (k1, k2, k3), s in self.phi_inv().terms.items():
            piece = (
                self.antipode_mono(k1)
                * self.alpha_elem
                * AlgebraElement(actx, {k2: f.one})
                * self.beta_elem
                * self.antipode_mono(k3)
            )
            acc = acc + piece.scale(s)
        checked += 1
        if acc != one:
            return CheckReport(
                "antipode axioms",
                False,
                checked,
                "inverse reassociator zigzag",
                time.time() - start,
            )
        return CheckReport("antipode axioms", True, checked, None, time.time() - start)

    def verify_grading(self, seed: int = 0) -> CheckReport:
        """Coproduct terms split the height of the input across the two legs."""
        start = time.time()
        actx = self.actx
        rng = random.Random(seed)
        keys: list[MonKey] = []
        for a in range(4):
            for d in range(4):
                keys.append((a, 0, 1, d))
                keys.append((a, 1, 5 % actx.half, d))
        keys += self._sample_monomials(rng, 8, actx.N - 1)
        checked = 0
        for key in keys:
            h = key[3] - key[0]
            checked += 1
            for (ka, kb) in self.delta_mono(key).terms:
                if (ka[3] - ka[0]) + (kb[3] - kb[0]) != h:
                    return CheckReport(
                        "coproduct preserves the height grading",
                        False,
                        checked,
                        f"monomial {key} split {(ka, kb)}",
                        time.time() - start,
                    )
        return CheckReport(
            "coproduct preserves the height grading", True, checked, None, time.time() - start
        )


def axiom_reports(qh: QuasiHopfData, seed: int = 0) -> list[CheckReport]:
    """All quasi-Hopf verifications, in a deterministic order."""
    return [
        qh.verify_delta_well_defined(),
        qh.verify_counit(seed),
        qh.verify_quasi_coassociativity(seed),
        qh.verify_pentagon(),
        qh.verify_antipode(seed),
        qh.verify_grading(seed),
    ]
