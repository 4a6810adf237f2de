"""Triangular linear locally nilpotent derivations (char 0), their flows,
and the slice-coordinate birational map that straightens the induced action."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence, Union

from . import linalg
from .birat import ProjMap, action_vars
from .errors import BadDerivationShape, WrongCharacteristic
from .field import FieldCtx
from .poly import LocElem, MPoly, Poly


class LinDerivation:
    """D with D(x0) = 0, D(x1) = x0 and D(x_i) linear in x0..x(i-1).

    ``images[i]`` is D(x_i) as an MPoly in x0..x(n-1) (extra variables such
    as T are allowed but must not occur).
    """

    __slots__ = ("ctx", "n", "images", "matrix")

    def __init__(self, ctx: FieldCtx, images: Sequence[MPoly]):
        if ctx.char != 0:
            raise WrongCharacteristic("derivation flows need characteristic 0")
        n = len(images)
        if n < 2:
            raise BadDerivationShape("need at least two variables")
        vars_ = action_vars(n)
        imgs = [m if m.vars == vars_ else m.rename(vars_) for m in images]
        mat = [[ctx.zero] * n for _ in range(n)]
        for i, m in enumerate(imgs):
            for e, c in m.terms.items():
                if sum(e) != 1 or e[n] != 0:
                    raise BadDerivationShape(f"D(x{i}) is not homogeneous linear in the x's")
                j = e.index(1)
                if j >= i:
                    raise BadDerivationShape(f"D(x{i}) involves x{j}; must only use x0..x{i - 1}")
                mat[i][j] = c
        want = [ctx.one] + [ctx.zero] * (n - 1)
        if mat[1] != want:
            raise BadDerivationShape("D(x1) must equal x0")
        self.ctx = ctx
        self.n = n
        self.images = tuple(imgs)
        self.matrix = mat
        # strictly triangular, so D^n kills every variable
        for i in range(n):
            m = MPoly.var(ctx, vars_, f"x{i}")
            for _ in range(n):
                m = self._apply(m)
            if not m.is_zero():
                raise BadDerivationShape("derivation is not locally nilpotent")

    @classmethod
    def from_matrix(cls, ctx: FieldCtx, mat: Sequence[Sequence]) -> "LinDerivation":
        """D(x_i) = sum_j mat[i][j] x_j for a raw scalar matrix."""
        n = len(mat)
        xs = MPoly.gens(ctx, action_vars(n))[:n]
        imgs = []
        for row in mat:
            acc = MPoly.zero(ctx, action_vars(n))
            for c, x in zip(row, xs):
                if not ctx.is_zero(c):
                    acc = acc + x.scale_raw(c)
            imgs.append(acc)
        return cls(ctx, imgs)

    def _apply(self, f: MPoly) -> MPoly:
        acc = MPoly.zero(self.ctx, f.vars)
        for i in range(self.n):
            img = self.images[i]
            if img.is_zero():
                continue
            d = f.derivative(f.vars.index(f"x{i}"))
            if not d.is_zero():
                acc = acc + d * (img if img.vars == f.vars else img.rename(f.vars))
        return acc


Ring = Union[MPoly, LocElem]


def derive(d: LinDerivation, f: Ring) -> Ring:
    """Leibniz extension; for a / x0^l the denominator passes through since D(x0) = 0."""
    if isinstance(f, LocElem):
        if f.den != 0:
            raise BadDerivationShape("only powers of x0 may be inverted")
        return LocElem(d._apply(f.num), f.power, f.den)
    return d._apply(f)


def _as_ring(t, vars_: tuple, ctx: FieldCtx) -> MPoly:
    if isinstance(t, MPoly):
        return t if t.vars == vars_ else t.rename(vars_)
    if isinstance(t, Poly):
        return t.to_mpoly(vars_, "T")
    return MPoly.constant(ctx, vars_, t)


def flow(d: LinDerivation, f: Ring, t) -> Ring:
    """phi_{D,t}(f) = sum_k D^k(f) t^k / k!, a finite sum."""
    ctx = d.ctx
    num = f.num if isinstance(f, LocElem) else f
    tt = _as_ring(t, num.vars, ctx)
    acc = MPoly.zero(ctx, num.vars)
    term, k, tk = num, 0, MPoly.constant(ctx, num.vars, 1)
    while not term.is_zero():
        acc = acc + (term * tk).scale_raw(Fraction(1, factorial(k)))
        term = d._apply(term)
        tk = tk * tt
        k += 1
    if isinstance(f, LocElem):
        return LocElem(acc, f.power, f.den)
    return acc


def sigma_slice(d: LinDerivation) -> tuple[ProjMap, ProjMap]:
    """Slice-coordinate map (1 : s : pi(x2/x0) : ... : pi(x(n-1)/x0)) and its inverse.

    Here s = x1/x0 and pi = phi_{D,-s}.  It takes the action of Exp of D's
    matrix to (y0 : y1 + t y0 : y2 : ...).  The inverse sends y to
    phi_{D,s}(x_i) with x1 -> 0 and x_j -> y_j, s = y1/y0, divided by y0.
    """
    ctx, n = d.ctx, d.n
    vars_ = action_vars(n)
    xs = MPoly.gens(ctx, vars_)[:n]
    zero = MPoly.zero(ctx, vars_)
    powers = [linalg.identity(ctx, n)]
    while not linalg.is_zero_matrix(ctx, powers[-1]):
        powers.append(linalg.mat_mul(ctx, powers[-1], d.matrix))
    top = len(powers) - 1  # D^top = 0

    def linform(row, images):
        acc = zero
        for c, x in zip(row, images):
            if not ctx.is_zero(c):
                acc = acc + x.scale_raw(c)
        return acc

    def build(images, s_num, sign, first_two):
        # component_i = sum_k sign^k/k! (D^k row i . images) s_num^k x0^(top-1-k)
        base = xs[0]
        comps = []
        for i in range(n):
            if first_two and i < 2:
                comps.append(xs[i] * xs[0] ** (top - 1))
                continue
            acc = zero
            for k in range(top):
                lf = linform(powers[k][i], images)
                if lf.is_zero():
                    continue
                c = Fraction(sign ** k, factorial(k))
                acc = acc + (lf * s_num ** k * base ** (top - 1 - k)).scale_raw(c)
            comps.append(acc)
        return ProjMap(ctx, n, comps).strip()

    fwd = build(xs, xs[1], -1, True)
    sub = [xs[0], zero] + xs[2:]
    inv = build(sub, xs[1], 1, False)
    return fwd, inv


sigma_lemma31 = sigma_slice  # name used by the published API contract
