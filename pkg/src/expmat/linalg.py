"""Exact dense linear algebra on matrices of raw field values (lists of rows)."""

from __future__ import annotations

from typing import Sequence

from .errors import SingularMatrix
from .field import FieldCtx

Matrix = list  # list[list[raw]]


def identity(ctx: FieldCtx, n: int) -> Matrix:
    return [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)]


def zeros(ctx: FieldCtx, r: int, c: int) -> Matrix:
    return [[ctx.zero] * c for _ in range(r)]


def mat_mul(ctx: FieldCtx, a: Matrix, b: Matrix) -> Matrix:
    add, mul = ctx.add, ctx.mul
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        r = []
        for j in range(cols):
            acc = ctx.zero
            for k, x in enumerate(row):
                if x != 0:
                    acc = add(acc, mul(x, b[k][j]))
            r.append(acc)
        out.append(r)
    return out


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)]


def rref(ctx: FieldCtx, a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns; lowest-index pivot choice."""
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not ctx.is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ctx.inv(m[r][c])
        m[r] = [ctx.mul(inv, x) for x in m[r]]
        for i in range(rows):
            if i != r and not ctx.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(ctx: FieldCtx, a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(ctx, a)[1])


def nullspace(ctx: FieldCtx, a: Matrix, ncols: int | None = None) -> list[list]:
    """Basis of {v : a v = 0}, one vector per free column, in column order."""
    if not a:
        n = ncols or 0
        return [[ctx.one if i == j else ctx.zero for i in range(n)] for j in range(n)]
    n = len(a[0])
    r, piv = rref(ctx, a)
    basis = []
    for free in range(n):
        if free in piv:
            continue
        v = [ctx.zero] * n
        v[free] = ctx.one
        for row, pc in zip(r, piv):
            v[pc] = ctx.neg(row[free])
        basis.append(v)
    return basis


def inverse(ctx: FieldCtx, a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + idr for row, idr in zip(a, identity(ctx, n))]
    r, piv = rref(ctx, aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in r]


def det(ctx: FieldCtx, a: Matrix):
    m = [list(r) for r in a]
    n = len(m)
    d = ctx.one
    for c in range(n):
        piv = next((i for i in range(c, n) if not ctx.is_zero(m[i][c])), None)
        if piv is None:
            return ctx.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = ctx.neg(d)
        d = ctx.mul(d, m[c][c])
        inv = ctx.inv(m[c][c])
        for i in range(c + 1, n):
            if not ctx.is_zero(m[i][c]):
                f = ctx.mul(m[i][c], inv)
                m[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[i], m[c])]
    return d


def is_invertible(ctx: FieldCtx, a: Matrix) -> bool:
    return not ctx.is_zero(det(ctx, a))


def mat_pow(ctx: FieldCtx, a: Matrix, k: int) -> Matrix:
    out = identity(ctx, len(a))
    for _ in range(k):
        out = mat_mul(ctx, out, a)
    return out


def is_zero_matrix(ctx: FieldCtx, a: Matrix) -> bool:
    return all(ctx.is_zero(x) for row in a for x in row)


def in_span(ctx: FieldCtx, vectors: Sequence[Sequence], v: Sequence) -> bool:
    if not vectors:
        return all(ctx.is_zero(x) for x in v)
    return rank(ctx, [list(u) for u in vectors] + [list(v)]) == rank(ctx, [list(u) for u in vectors])
