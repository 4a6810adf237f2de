"""Unipotent family shapes parametrized by p-polynomials, and shape matching.

Names follow the position of the nonzero entries:

* ``upper2``: [[1, a], [0, 1]]
* ``A12``: first row (1, a1, a2), rest identity
* ``A21``: last column (a2, a1, 1), rest identity
* ``A11``: single entry a at (0, 2)
* ``J3``: [[1, a1, a1^2/2 + a2], [0, 1, a1], [0, 0, 1]], odd p, a1 != 0
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotAdditive, WrongCharacteristic, ZeroInput
from .field import FieldCtx
from .matrix import PolyMatrix
from .poly import Poly
from .ppoly import PPoly, ppoly_from_poly

FAMILIES = ("Upper2", "A12", "A21", "A11", "J3")


def _grid(ctx: FieldCtx, n: int, extra: dict) -> PolyMatrix:
    rows = [[Poly.one(ctx) if i == j else Poly.zero(ctx) for j in range(n)] for i in range(n)]
    for (i, j), p in extra.items():
        rows[i][j] = p
    return PolyMatrix(ctx, rows)


def upper2(alpha: PPoly) -> PolyMatrix:
    return _grid(alpha.ctx, 2, {(0, 1): alpha.to_poly()})


def a12(alpha1: PPoly, alpha2: PPoly) -> PolyMatrix:
    return _grid(alpha1.ctx, 3, {(0, 1): alpha1.to_poly(), (0, 2): alpha2.to_poly()})


def a21(alpha1: PPoly, alpha2: PPoly) -> PolyMatrix:
    return _grid(alpha1.ctx, 3, {(0, 2): alpha2.to_poly(), (1, 2): alpha1.to_poly()})


def a11(alpha: PPoly) -> PolyMatrix:
    return _grid(alpha.ctx, 3, {(0, 2): alpha.to_poly()})


def j3(alpha1: PPoly, alpha2: PPoly) -> PolyMatrix:
    f = alpha1.ctx
    if f.char < 3:
        raise WrongCharacteristic("the J3 family needs an odd characteristic")
    if alpha1.is_zero():
        raise ZeroInput("the J3 family needs a1 != 0")
    a = alpha1.to_poly()
    corner = (a * a).scale_raw(f.inv(f.from_int(2))) + alpha2.to_poly()
    return _grid(f, 3, {(0, 1): a, (0, 2): corner, (1, 2): a})


def build(family: str, params) -> PolyMatrix:
    return {"Upper2": upper2, "A12": a12, "A21": a21, "A11": a11, "J3": j3}[family](*params)


@dataclass(frozen=True)
class FamilyForm:
    """Recognized shape; ``conjugator`` P (raw) satisfies P A P^-1 = the displayed form."""

    family: str  # one of FAMILIES or "General"
    params: tuple = ()
    conjugator: Optional[tuple] = None
    normalized: bool = True

    def matrix(self) -> PolyMatrix:
        return build(self.family, self.params)

    def to_json(self) -> dict:
        d = {"family": self.family, "params": [a.to_json()["ppoly"] for a in self.params],
             "normalized": self.normalized}
        if self.conjugator is not None:
            d["conjugator"] = [list(r) for r in self.conjugator]
        return d


def _pp(p: Poly) -> Optional[PPoly]:
    try:
        return ppoly_from_poly(p)
    except NotAdditive:
        return None


def _unipotent_upper(a: PolyMatrix) -> bool:
    n = a.n
    for i in range(n):
        for j in range(n):
            e = a.entries[i][j]
            if i == j and e != Poly.one(a.ctx):
                return False
            if i > j and not e.is_zero():
                return False
    return True


def match_shape(a: PolyMatrix) -> Optional[FamilyForm]:
    """Exact pattern match against the displayed shapes (A12 tried before A21, then J3)."""
    f = a.ctx
    if f.char == 0 or not _unipotent_upper(a):
        return None
    if a.n == 2:
        al = _pp(a[0, 1])
        return FamilyForm("Upper2", (al,)) if al is not None else None
    if a.n != 3:
        return None
    top, corner, right = a[0, 1], a[0, 2], a[1, 2]
    if right.is_zero():
        p1, p2 = _pp(top), _pp(corner)
        if p1 is not None and p2 is not None:
            return FamilyForm("A12", (p1, p2))
    if top.is_zero():
        p1, p2 = _pp(right), _pp(corner)
        if p1 is not None and p2 is not None:
            return FamilyForm("A21", (p1, p2))
    if f.char >= 3 and top == right and not top.is_zero():
        p1 = _pp(top)
        p2 = _pp(corner - (top * top).scale_raw(f.inv(f.from_int(2))))
        if p1 is not None and p2 is not None:
            return FamilyForm("J3", (p1, p2))
    return None
