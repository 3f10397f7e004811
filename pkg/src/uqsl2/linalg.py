"""Sparse exact linear algebra over Q(zeta_N).

Vectors are dicts mapping column index to a nonzero Scalar.  Elimination is
division-free (cross-multiplication) with per-row content stripping, so the
only field inversions happen once per solved system, not once per pivot.
"""

from __future__ import annotations

import math

from .cyclo import FieldContext, Scalar

Row = dict[int, Scalar]


def _strip_content(ctx: FieldContext, row: Row) -> Row:
    """Scale a row by a rational so integer content is 1; returns a new dict."""
    if not row:
        return row
    g = 0
    lden = 1
    for s in row.values():
        lden = lden * s.den // math.gcd(lden, s.den)
        for a in s.num:
            if a:
                g = math.gcd(g, a)
    if g == 0:
        return {}
    if g == 1 and lden == 1:
        return row
    out: Row = {}
    for c, s in row.items():
        out[c] = ctx._make([a * lden for a in s.num], s.den * g)
    return out


def _cross_eliminate(ctx: FieldContext, row: Row, piv_col: int, piv_row: Row) -> Row:
    """Return piv*row - coef*piv_row, clearing piv_col from row.

    Monic pivot rows take the subtraction-only path, which keeps scalar
    sizes bounded; integer gcd stripping alone cannot contain the
    coefficient growth of repeated cyclotomic cross-multiplication.
    """
    coef = row[piv_col]
    piv = piv_row[piv_col]
    if piv == ctx.one:
        out = dict(row)
    else:
        out = {c: piv * s for c, s in row.items()}
    for c, s in piv_row.items():
        t = coef * s
        if c in out:
            u = out[c] - t
            if u.is_zero():
                del out[c]
            else:
                out[c] = u
        else:
            out[c] = -t
    out.pop(piv_col, None)
    return _strip_content(ctx, out)


class Echelon:
    """Incremental echelon form: feed rows, read off rank and membership."""

    def __init__(self, ctx: FieldContext):
        self.ctx = ctx
        self.pivot_rows: dict[int, Row] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, row: Row) -> Row:
        """Eliminate all current pivots from a copy of row."""
        ctx = self.ctx
        row = dict(row)
        # Repeatedly clear the smallest column that has a pivot.
        while row:
            hit = None
            for c in row:
                if c in self.pivot_rows and (hit is None or c < hit):
                    hit = c
            if hit is None:
                break
            row = _cross_eliminate(ctx, row, hit, self.pivot_rows[hit])
        return row

    def add(self, row: Row) -> bool:
        """Insert a row; True if it increased the rank.

        Stored pivot rows are made monic, so later reductions only ever
        subtract bounded multiples and scalars cannot compound.
        """
        rem = self.reduce(row)
        if not rem:
            return False
        col = min(rem.keys())
        lead = rem[col]
        if lead != self.ctx.one:
            inv = lead.inverse()
            rem = {c: inv * s for c, s in rem.items()}
        self.pivot_rows[col] = rem
        return True

    def contains(self, row: Row) -> bool:
        return not self.reduce(row)


class BlockKernel:
    """Kernel of a sparse system whose variables split into groups that no
    row crosses: one incremental elimination per group.

    Rows are dicts over global variable positions and are routed to a group
    by their first key (every key of a row must belong to the same group).
    `saturated` turns True once every group reaches full rank, so the kernel
    is already zero and the caller can stop feeding rows.
    """

    def __init__(self, ctx: FieldContext, groups: list[list[int]]):
        self.ctx = ctx
        self.groups = groups
        self._block: dict[int, int] = {}
        self._local: dict[int, int] = {}
        for b, members in enumerate(groups):
            for t, p in enumerate(members):
                self._block[p] = b
                self._local[p] = t
        self._echs = [Echelon(ctx) for _ in groups]
        self._open = sum(1 for g in groups if g)

    @property
    def saturated(self) -> bool:
        return self._open == 0

    def add(self, row: Row) -> None:
        if not row:
            return
        b = self._block[next(iter(row))]
        ech = self._echs[b]
        if ech.rank == len(self.groups[b]):
            return
        local = self._local
        block = self._block
        moved: Row = {}
        for p, s in row.items():
            if block[p] != b:
                raise ValueError("row crosses variable groups")
            moved[local[p]] = s
        if ech.add(moved) and ech.rank == len(self.groups[b]):
            self._open -= 1

    def dim(self) -> int:
        return sum(len(g) - e.rank for g, e in zip(self.groups, self._echs))

    def basis(self) -> list[Row]:
        out: list[Row] = []
        for members, ech in zip(self.groups, self._echs):
            if not members:
                continue
            sols = nullspace_basis(self.ctx, list(ech.pivot_rows.values()), len(members))
            for vec in sols:
                out.append({members[p]: s for p, s in vec.items()})
        return out


def rank(ctx: FieldContext, rows) -> int:
    ech = Echelon(ctx)
    for row in rows:
        if row:
            ech.add(row)
    return ech.rank


def nullspace_dim(ctx: FieldContext, rows, ncols: int) -> int:
    return ncols - rank(ctx, rows)


def coords_in_span(ctx: FieldContext, basis: list[Row], target: Row):
    """Coefficients c with target = sum c_i * basis_i, or None if not in span.

    Bookkeeping columns live above every real column, so elimination always
    pivots on real coordinates and the tag entries just record the linear
    combination that produced each reduced row.
    """
    k = len(basis)
    top = 0
    for row in basis:
        if row:
            top = max(top, max(row.keys()) + 1)
    if target:
        top = max(top, max(target.keys()) + 1)

    def lift(row: Row, tag: int) -> Row:
        out = dict(row)
        out[top + tag] = ctx.one
        return out

    ech = Echelon(ctx)
    for i, b in enumerate(basis):
        ech.add(lift(b, i + 1))
    rem = ech.reduce(lift(target, 0))
    if any(c < top for c in rem):
        return None
    sigma = rem.get(top)
    if sigma is None:
        return None
    inv = sigma.inverse()
    coeffs = [ctx.zero] * k
    for c, s in rem.items():
        if c > top:
            coeffs[c - top - 1] = -(s * inv)
    return coeffs


class SpanSolver:
    """Reusable coordinate solver over a fixed independent spanning set.

    Same tag-column trick as coords_in_span, but the echelon is built once
    and queried many times.  Targets must be supported on columns strictly
    below `top`.
    """

    def __init__(self, ctx: FieldContext, basis: list[Row], top: int):
        self.ctx = ctx
        self.k = len(basis)
        self.top = top
        self.ech = Echelon(ctx)
        for i, b in enumerate(basis):
            if b and max(b.keys()) >= top:
                raise ValueError("basis entry reaches into tag columns")
            lifted = dict(b)
            lifted[top + i + 1] = ctx.one
            self.ech.add(lifted)

    def coords(self, target: Row):
        """Coefficients of target in the basis, or None if outside the span."""
        ctx = self.ctx
        lifted = dict(target)
        lifted[self.top] = ctx.one
        rem = self.ech.reduce(lifted)
        if any(c < self.top for c in rem):
            return None
        sigma = rem.get(self.top)
        if sigma is None:
            return None
        inv = sigma.inverse()
        coeffs = [ctx.zero] * self.k
        for c, s in rem.items():
            if c > self.top:
                coeffs[c - self.top - 1] = -(s * inv)
        return coeffs


def nullspace_basis(ctx: FieldContext, rows, ncols: int) -> list[Row]:
    """Basis of {x : row . x = 0 for every row}, x over columns 0..ncols-1.

    One basis vector per free column, computed by back-substitution through
    the pivot rows in decreasing column order.
    """
    ech = Echelon(ctx)
    for row in rows:
        if row:
            ech.add(row)
    pivots = ech.pivot_rows
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec: Row = {free: ctx.one}
        for col in sorted(pivots.keys(), reverse=True):
            if col >= free:
                continue
            row = pivots[col]
            acc = ctx.zero
            for c, s in row.items():
                if c != col and c in vec:
                    acc = acc + s * vec[c]
            if not acc.is_zero():
                vec[col] = -(acc / row[col])
        basis.append(vec)
    return basis


def solve_linear(ctx: FieldContext, rows: list[Row], rhs: list[Scalar]):
    """One solution x of A x = b (rows of A, dense-ish rhs), or None.

    Intended for small systems; performs full elimination with an augmented
    right-hand-side column placed above all real columns.
    """
    if len(rows) != len(rhs):
        raise ValueError("rhs length must match row count")
    ncols = 0
    for row in rows:
        if row:
            ncols = max(ncols, max(row.keys()) + 1)
    aug = ncols  # rhs column index
    ech = Echelon(ctx)
    for row, b in zip(rows, rhs):
        lifted = dict(row)
        if not b.is_zero():
            lifted[aug] = b
        rem = ech.reduce(lifted)
        if rem and min(rem.keys()) == aug:
            return None  # 0 = nonzero
        if rem:
            ech.pivot_rows[min(rem.keys())] = rem
    # Back-substitute using the reduced pivot rows, free vars set to zero.
    x = [ctx.zero] * ncols
    for col in sorted(ech.pivot_rows.keys(), reverse=True):
        if col == aug:
            continue
        row = ech.pivot_rows[col]
        acc = row.get(aug, ctx.zero)
        for c, s in row.items():
            if c != col and c != aug:
                acc = acc - s * x[c]
        x[col] = acc / row[col]
    return x
