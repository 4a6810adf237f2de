"""Exhaustive ground truth over small finite fields.

Every search walks candidates in a fixed lexicographic order (field
elements in ``FieldCtx.elements()`` order, matrices row-major) and returns
the first hit, so results are reproducible.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from . import linalg
from .errors import InputError, NotFiniteField, NotFound, TooLarge, Unsupported
from .families import FamilyForm, build, match_shape
from .field import FieldCtx
from .matrix import ExpMatrix, PolyMatrix, as_exponential
from .ppoly import PPoly, apply_gl

DEFAULT_MAX_CANDIDATES = 10 ** 7
HARD_MAX_CANDIDATES = 10 ** 8
MAX_ORACLE_ORDER = 9


def max_candidates() -> int:
    """Ceiling from EXPMAT_MAX_CANDIDATES, clamped to 10^8."""
    raw = os.environ.get("EXPMAT_MAX_CANDIDATES")
    if raw is None:
        return DEFAULT_MAX_CANDIDATES
    try:
        v = int(raw)
    except ValueError as exc:
        raise InputError(f"EXPMAT_MAX_CANDIDATES must be an integer, got {raw!r}") from exc
    return max(1, min(v, HARD_MAX_CANDIDATES))


def _check_budget(count: int, what: str) -> None:
    limit = max_candidates()
    if count > limit:
        raise TooLarge(f"{what}: {count} candidates exceed the ceiling {limit}")


def _finite(ctx: FieldCtx) -> None:
    if ctx.char == 0:
        raise NotFiniteField("exhaustive search needs a finite field")


def gl_order(q: int, n: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


# -- enumeration


@dataclass(frozen=True)
class EnumSpec:
    field: FieldCtx
    n: int
    family: Optional[str] = None
    degree_bound: int = 1  # largest exponent index i in T^(p^i)

    def families(self) -> list[str]:
        if self.family is not None:
            return [self.family]
        if self.n == 2:
            return ["Upper2"]
        return ["A12", "A21"] + (["J3"] if self.field.char >= 3 else [])

    def validate(self) -> None:
        _finite(self.field)
        if self.field.order > MAX_ORACLE_ORDER:
            raise TooLarge(f"field order {self.field.order} exceeds {MAX_ORACLE_ORDER}")
        if self.n not in (2, 3):
            raise Unsupported("enumeration covers n = 2 and n = 3")
        if not 0 <= self.degree_bound <= 3:
            raise TooLarge("degree bound must lie in 0..3")
        for fam in self.families():
            ok = {2: ("Upper2",), 3: ("A12", "A21", "A11", "J3")}[self.n]
            if fam not in ok:
                raise InputError(f"family {fam} does not exist for n = {self.n}")
            if fam == "J3" and self.field.char < 3:
                raise InputError("the J3 family needs an odd characteristic")

    def count(self) -> int:
        one = self.field.order ** (self.degree_bound + 1)
        sizes = {"Upper2": one, "A11": one, "A12": one * one, "A21": one * one,
                 "J3": (one - 1) * one}
        return sum(sizes[f] for f in self.families())


def all_ppolys(ctx: FieldCtx, degree_bound: int) -> Iterator[PPoly]:
    """Every sum c_i T^(p^i), i <= degree_bound, lexicographic in (c_0, c_1, ...)."""
    elems = list(ctx.elements())
    for cs in itertools.product(elems, repeat=degree_bound + 1):
        yield PPoly._make(ctx, list(cs))


def enumerate_params(spec: EnumSpec) -> Iterator[tuple[str, tuple]]:
    spec.validate()
    _check_budget(spec.count(), "enumeration")
    polys = list(all_ppolys(spec.field, spec.degree_bound))
    for fam in spec.families():
        if fam in ("Upper2", "A11"):
            for a in polys:
                yield fam, (a,)
        else:
            for a1, a2 in itertools.product(polys, repeat=2):
                if fam == "J3" and a1.is_zero():
                    continue
                yield fam, (a1, a2)


def enumerate_family(spec: EnumSpec) -> Iterator[ExpMatrix]:
    for fam, params in enumerate_params(spec):
        yield as_exponential(build(fam, params))


# -- searches


def _vectors(ctx: FieldCtx, n: int) -> list[list]:
    elems = list(ctx.elements())
    return [list(v) for v in itertools.product(elems, repeat=n)]


def _matrices(ctx: FieldCtx, n: int) -> Iterator[list]:
    """The identity first, then every matrix in lexicographic order."""
    ident = linalg.identity(ctx, n)
    yield ident
    vecs = _vectors(ctx, n)
    for rows in itertools.product(vecs, repeat=n):
        m = [list(r) for r in rows]
        if m != ident:
            yield m


def brute_linear_equiv(a: PolyMatrix, b: PolyMatrix) -> Optional[list]:
    """First P in GL(n, F_q) with P A = B P coefficientwise, or None (identity tried first)."""
    f = a.ctx
    f.check(b.ctx)
    _finite(f)
    if a.n != b.n:
        return None
    _check_budget(f.order ** (a.n * a.n), "linear equivalence search")
    am, bm = a.coefficient_matrices(), b.coefficient_matrices()
    if len(am) != len(bm):
        return None
    pairs = [(x, y) for x, y in zip(am, bm)][1:] + [(am[0], bm[0])]
    for p in _matrices(f, a.n):
        if all(linalg.mat_mul(f, p, x) == linalg.mat_mul(f, y, p) for x, y in pairs):
            if linalg.is_invertible(f, p):
                return p
    return None


def brute_gl2_tuple_equiv(alpha: Sequence[PPoly], beta: Sequence[PPoly]) -> Optional[list]:
    """First Q in GL(2, F_q) with (alpha1 alpha2) = (beta1 beta2) Q, or None."""
    f = alpha[0].ctx
    _finite(f)
    _check_budget(f.order ** 4, "GL(2) tuple search")
    target = list(alpha)
    for q in _matrices(f, 2):
        if linalg.is_invertible(f, q) and apply_gl(beta, q) == target:
            return q
    return None


def brute_conjugate_to_family(a: PolyMatrix) -> tuple[list, FamilyForm]:
    """First basis (u0, u1, u2) such that P A P^-1 has a family shape, P^-1 = [u0 u1 u2].

    Every shape is upper unipotent with (1, 2) entry zero or equal to the
    (0, 1) entry, so u0 must be fixed by A and A moves u1 only along u0;
    candidates failing that are pruned before u2 is chosen.
    """
    f = a.ctx
    _finite(f)
    if a.n != 3:
        raise Unsupported("family normalization is for 3x3 matrices")
    _check_budget(gl_order(f.order, 3), "conjugation search")
    form = match_shape(a)
    if form is not None:
        ident = linalg.identity(f, 3)
        return ident, FamilyForm(form.family, form.params, tuple(tuple(r) for r in ident))
    moves = a.coefficient_matrices()[1:]
    vecs = _vectors(f, 3)

    def image(m, v):
        return [_fsum(f, (f.mul(m[i][j], v[j]) for j in range(3))) for i in range(3)]

    for u0 in vecs:
        if all(f.is_zero(x) for x in u0) or any(any(image(m, u0)) for m in moves):
            continue
        for u1 in vecs:
            if linalg.rank(f, [u0, u1]) < 2:
                continue
            if any(not linalg.in_span(f, [u0], image(m, u1)) for m in moves):
                continue
            for u2 in vecs:
                if linalg.rank(f, [u0, u1, u2]) < 3:
                    continue
                pinv = linalg.transpose([u0, u1, u2])
                p = linalg.inverse(f, pinv)
                form = match_shape(a.conjugate(p))
                if form is not None:
                    return p, FamilyForm(form.family, form.params, tuple(tuple(r) for r in p))
    raise NotFound("no conjugate of this matrix has a family shape")


def _fsum(f: FieldCtx, xs) -> object:
    acc = f.zero
    for x in xs:
        acc = f.add(acc, x)
    return acc
