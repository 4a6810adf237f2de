"""Additive polynomials sum_i c_i T^(p^i) and their composition ring.

Composition is the Ore product: T^(p^i) o (b T^(p^j)) = b^(p^i) T^(p^(i+j)).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import linalg
from .errors import DimensionMismatch, NotAdditive, WrongCharacteristic, ZeroInput
from .field import FieldCtx, Scalar
from .poly import NEG_INF, Poly, _raw


class PPoly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Sequence = ()):
        if ctx.char == 0:
            raise WrongCharacteristic("p-polynomials need positive characteristic")
        self.ctx = ctx
        cs = [_raw(ctx, c) for c in coeffs]
        while cs and ctx.is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _make(cls, ctx: FieldCtx, cs: list) -> "PPoly":
        cs = list(cs)
        while cs and ctx.is_zero(cs[-1]):
            cs.pop()
        a = cls.__new__(cls)
        a.ctx = ctx
        a.coeffs = tuple(cs)
        return a

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "PPoly":
        return cls._make(ctx, [])

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "PPoly":
        return cls._make(ctx, [ctx.one])

    @classmethod
    def monomial(cls, ctx: FieldCtx, i: int, c=1) -> "PPoly":
        """c T^(p^i); c is a user value (Scalar or int)."""
        return cls._make(ctx, [ctx.zero] * i + [_raw(ctx, c)])

    @classmethod
    def monomial_raw(cls, ctx: FieldCtx, i: int, c) -> "PPoly":
        return cls._make(ctx, [ctx.zero] * i + [c])

    # -- properties

    @property
    def p(self) -> int:
        return self.ctx.char

    def index(self):
        """Largest i with c_i != 0 (-inf for zero)."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def degree(self):
        """Degree as an ordinary polynomial, p^index."""
        return self.p ** (len(self.coeffs) - 1) if self.coeffs else NEG_INF

    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.ctx.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, PPoly):
            return self.ctx == other.ctx and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx, self.coeffs))

    def __repr__(self) -> str:
        return self.to_poly().fmt()

    # -- linear structure

    def __add__(self, other: "PPoly") -> "PPoly":
        self.ctx.check(other.ctx)
        f = self.ctx
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (f.zero,) * (n - len(self.coeffs))
        b = other.coeffs + (f.zero,) * (n - len(other.coeffs))
        return PPoly._make(f, [f.add(x, y) for x, y in zip(a, b)])

    def __neg__(self) -> "PPoly":
        return PPoly._make(self.ctx, [self.ctx.neg(c) for c in self.coeffs])

    def __sub__(self, other: "PPoly") -> "PPoly":
        return self + (-other)

    def scale(self, c) -> "PPoly":
        return self.scale_raw(_raw(self.ctx, c))

    def scale_raw(self, c) -> "PPoly":
        f = self.ctx
        return PPoly._make(f, [f.mul(c, x) for x in self.coeffs])

    def __rmul__(self, c) -> "PPoly":
        if isinstance(c, (int, Scalar)):
            return self.scale(c)
        return NotImplemented

    def monic(self) -> "PPoly":
        if self.is_zero():
            raise ZeroInput("zero has no monic normalization")
        return self.scale_raw(self.ctx.inv(self.lead()))

    def padded(self, length: int) -> list:
        return list(self.coeffs) + [self.ctx.zero] * (length - len(self.coeffs))

    # -- ring structure

    def compose(self, other: "PPoly") -> "PPoly":
        """self(other(T))."""
        return ppoly_compose(self, other)

    def __call__(self, x):
        return self.to_poly()(x)

    def to_poly(self) -> Poly:
        f = self.ctx
        if not self.coeffs:
            return Poly.zero(f)
        cs = [f.zero] * (self.degree() + 1)
        for i, c in enumerate(self.coeffs):
            cs[self.p ** i] = c
        return Poly._make(f, cs)

    def to_json(self) -> dict:
        return {"ppoly": [self.ctx.to_json(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, ctx: FieldCtx, data) -> "PPoly":
        from .errors import InputError
        if isinstance(data, dict):
            data = data.get("ppoly")
        if not isinstance(data, list):
            raise InputError("p-polynomial must be {'ppoly': [c0, c1, ...]}")
        return cls._make(ctx, [ctx.from_json(c) for c in data])


def ppoly_from_poly(f: Poly) -> PPoly:
    ctx = f.ctx
    if ctx.char == 0:
        raise WrongCharacteristic("p-polynomials need positive characteristic")
    p = ctx.char
    out = []
    for j, c in enumerate(f.coeffs):
        if ctx.is_zero(c):
            continue
        i, q = 0, 1
        while q < j:
            q *= p
            i += 1
        if q != j:
            raise NotAdditive(f"T^{j} is not of the form T^(p^i) for p={p}")
        out += [ctx.zero] * (i + 1 - len(out))
        out[i] = c
    return PPoly._make(ctx, out)


def is_ppoly(f: Poly) -> bool:
    try:
        ppoly_from_poly(f)
    except NotAdditive:
        return False
    return True


def ppoly_compose(lam: PPoly, alpha: PPoly) -> PPoly:
    lam.ctx.check(alpha.ctx)
    f = lam.ctx
    if lam.is_zero() or alpha.is_zero():
        return PPoly.zero(f)
    out = [f.zero] * (len(lam.coeffs) + len(alpha.coeffs) - 1)
    for i, a in enumerate(lam.coeffs):
        if f.is_zero(a):
            continue
        for j, b in enumerate(alpha.coeffs):
            if not f.is_zero(b):
                out[i + j] = f.add(out[i + j], f.mul(a, f.frob(b, i)))
    return PPoly._make(f, out)


# -- degree reduction on pairs (alpha_1, alpha_2)


@dataclass(frozen=True)
class ReduceStep:
    """One elimination on an upper-right column pair.

    Case "i"/"ii": beta2 = alpha2 - lam o alpha1.  Case "iii":
    beta1 = alpha1 - lam o alpha2.  In case "ii" a nonzero remainder is
    followed by ``lam_back`` (beta1 = alpha1 - lam_back o beta2) so the
    maximum index always drops.
    """

    alpha1: PPoly
    alpha2: PPoly
    beta1: PPoly
    beta2: PPoly
    lam: PPoly
    case: str
    lam_back: Optional[PPoly] = None

    @property
    def terminal(self) -> bool:
        return self.beta1.is_zero() or self.beta2.is_zero()


def _eliminator(target: PPoly, by: PPoly) -> PPoly:
    """Single-term lam with lam o by cancelling the leading term of ``target``."""
    f = target.ctx
    shift = target.index() - by.index()
    c = f.div(target.lead(), f.frob(by.lead(), shift))
    return PPoly.monomial_raw(f, shift, c)


def reduce_step(alpha1: PPoly, alpha2: PPoly) -> ReduceStep:
    if alpha1.is_zero() or alpha2.is_zero():
        raise ZeroInput("reduce_step needs two nonzero p-polynomials")
    alpha1.ctx.check(alpha2.ctx)
    e, f_ = alpha1.index(), alpha2.index()
    if e < f_:
        lam = _eliminator(alpha2, alpha1)
        return ReduceStep(alpha1, alpha2, alpha1, alpha2 - lam.compose(alpha1), lam, "i")
    if e > f_:
        lam = _eliminator(alpha1, alpha2)
        return ReduceStep(alpha1, alpha2, alpha1 - lam.compose(alpha2), alpha2, lam, "iii")
    lam = _eliminator(alpha2, alpha1)
    beta2 = alpha2 - lam.compose(alpha1)
    if beta2.is_zero():
        return ReduceStep(alpha1, alpha2, alpha1, beta2, lam, "ii")
    back = _eliminator(alpha1, beta2)
    beta1 = alpha1 - back.compose(beta2)
    return ReduceStep(alpha1, alpha2, beta1, beta2, lam, "ii", back)


def reduce_loop(alpha1: PPoly, alpha2: PPoly) -> tuple[PPoly, str, list[ReduceStep]]:
    """Iterate reduce_step until one slot vanishes; returns (survivor, slot, trace)."""
    if alpha1.is_zero() or alpha2.is_zero():
        raise ZeroInput("reduce_loop needs two nonzero p-polynomials")
    steps: list[ReduceStep] = []
    a1, a2 = alpha1, alpha2
    while True:
        st = reduce_step(a1, a2)
        steps.append(st)
        a1, a2 = st.beta1, st.beta2
        if a2.is_zero():
            return a1, "first", steps
        if a1.is_zero():
            return a2, "second", steps


# -- spans and GL-orbits


def coefficient_matrix(polys: Sequence[PPoly]) -> tuple[list, int]:
    """Rows of coefficients with columns in *decreasing* index order."""
    width = max((len(a.coeffs) for a in polys), default=0)
    return [list(reversed(a.padded(width))) for a in polys], width


def linear_independent(polys: Sequence[PPoly]) -> tuple[bool, int]:
    if not polys:
        return True, 0
    ctx = polys[0].ctx
    m, width = coefficient_matrix(polys)
    r = linalg.rank(ctx, m) if width else 0
    return r == len(polys), r


def span_basis(polys: Sequence[PPoly]) -> list[PPoly]:
    """Canonical basis of the k-span: monic elements of distinct degrees,
    each with zero coefficient at the others' leading exponents, ordered
    by increasing degree."""
    if not polys:
        return []
    ctx = polys[0].ctx
    m, width = coefficient_matrix(polys)
    if width == 0:
        return []
    r, piv = linalg.rref(ctx, m)
    basis = [PPoly._make(ctx, list(reversed(r[i]))) for i in range(len(piv))]
    return sorted(basis, key=lambda a: a.index())


def span_canonical(polys: Sequence[PPoly], dim_expected: int) -> list[PPoly]:
    basis = span_basis(polys)
    if len(basis) != dim_expected:
        raise DimensionMismatch(f"span has dimension {len(basis)}, expected {dim_expected}")
    return basis


def coordinates(basis: Sequence[PPoly], polys: Sequence[PPoly]) -> list[list]:
    """Raw matrix Q with polys[j] = sum_i basis[i] * Q[i][j]; ``basis`` from span_basis."""
    ctx = basis[0].ctx
    out = [[ctx.zero] * len(polys) for _ in basis]
    for i, b in enumerate(basis):
        k = b.index()
        for j, a in enumerate(polys):
            out[i][j] = a.coeffs[k] if k < len(a.coeffs) else ctx.zero
    for j, a in enumerate(polys):
        acc = PPoly.zero(ctx)
        for i, b in enumerate(basis):
            acc = acc + b.scale_raw(out[i][j])
        if acc != a:
            raise DimensionMismatch(f"{a} is not in the span of {list(basis)}")
    return out


def apply_gl(polys: Sequence[PPoly], q: Sequence[Sequence]) -> list[PPoly]:
    """Row vector times matrix: (polys Q)_j = sum_i polys[i] Q[i][j]."""
    ctx = polys[0].ctx
    out = []
    for j in range(len(q[0])):
        acc = PPoly.zero(ctx)
        for i, a in enumerate(polys):
            acc = acc + a.scale_raw(q[i][j])
        out.append(acc)
    return out
