"""Birational classification with verified witness chains.

Each classifier returns the class invariant, the canonical matrix of the
class, and a chain of conjugations and birational maps from the input to
that canonical matrix.  Every chain is re-verified before it is returned
unless the caller opts out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import linalg
from .birat import (Witness, birational_step, conjugation_step, sigma_gl2,
                    sigma_quadratic, sigma_reduce, sigma_scaling, verify_chain)
from .errors import (DimensionMismatch, InternalInconsistency,
                     NotFound, NotNormalized, TooLarge, TriangularizationFailed,
                     Unsupported, WrongCharacteristic)
from .families import FamilyForm, a11, a12, a21, match_shape, upper2
from .field import FieldCtx, Scalar
from .lnd import LinDerivation, sigma_slice
from .matrix import (PolyMatrix, as_exponential, log_exponential,
                     nilpotent_jordan, upper_shift_block)
from .poly import Poly
from .ppoly import PPoly, coordinates, ppoly_compose, reduce_loop, span_basis

FIELD_POLICY = "all decisions and witnesses are over the input coefficient field"


@dataclass(frozen=True)
class BirClass:
    """Identity | Char0Standard | Line(monic a) | Plane(echelon pair)."""

    variant: str
    payload: tuple = ()

    def to_json(self) -> dict:
        d = {"variant": self.variant}
        if self.payload:
            d["ppolys"] = [a.to_json()["ppoly"] for a in self.payload]
            d["display"] = [repr(a) for a in self.payload]
        return d

    def __str__(self) -> str:
        if not self.payload:
            return self.variant
        return f"{self.variant}({', '.join(repr(a) for a in self.payload)})"


IDENTITY = BirClass("Identity")
CHAR0_STANDARD = BirClass("Char0Standard")


def canonical_matrix(cls: BirClass, ctx: FieldCtx, n: int) -> PolyMatrix:
    if cls.variant == "Identity":
        return PolyMatrix.identity(ctx, n)
    if cls.variant == "Char0Standard":
        return upper_shift_block(ctx, n)
    if cls.variant == "Line":
        return upper2(cls.payload[0]) if n == 2 else a11(cls.payload[0])
    if cls.variant == "Plane":
        return a12(*cls.payload)
    raise ValueError(f"unknown class {cls.variant}")


@dataclass
class ClassResult:
    bir_class: BirClass
    canonical: PolyMatrix
    witness: Witness
    verified: Optional[bool]
    family: Optional[FamilyForm] = None
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        d = {"class": self.bir_class.to_json(), "canonical_matrix": self.canonical.to_json(),
             "witness": self.witness.to_json(), "verified": self.verified,
             "field_policy": FIELD_POLICY}
        if self.family is not None:
            d["family"] = self.family.to_json()
        if self.notes:
            d["notes"] = self.notes
        return d


def _swap(ctx: FieldCtx, n: int, i: int, j: int) -> list:
    p = linalg.identity(ctx, n)
    p[i], p[j] = p[j], p[i]
    return p


def _finish(a: PolyMatrix, cls: BirClass, w: Witness, verify: bool,
            family: Optional[FamilyForm] = None, notes: Optional[list] = None) -> ClassResult:
    canon = canonical_matrix(cls, a.ctx, a.n)
    if w.end != canon:
        raise InternalInconsistency(f"witness ends at {w.end!r}, expected {canon!r}")
    verified = None
    if verify:
        rep = verify_chain(w)
        if not rep.ok:
            raise InternalInconsistency(f"witness failed re-verification: {rep.failures}")
        verified = True
    return ClassResult(cls, canon, w, verified, family, notes or [])


# -- characteristic zero


def classify_char0(a: PolyMatrix, verify: bool = True) -> ClassResult:
    f = a.ctx
    if f.char != 0:
        raise WrongCharacteristic("classify_char0 needs characteristic 0")
    a = as_exponential(a)
    n = a.n
    if n < 2:
        raise Unsupported("size must be at least 2")
    w = Witness(a, a)
    if a.is_identity():
        return _finish(a, IDENTITY, w, verify)
    target = upper_shift_block(f, n)
    if a == target:
        return _finish(a, CHAR0_STANDARD, w, verify)
    p, jordan = nilpotent_jordan(log_exponential(a))
    if p != linalg.identity(f, n):
        w.then(conjugation_step(a, p, "Jordan basis of the logarithm"))
    d = LinDerivation.from_matrix(f, jordan.entries)
    sigma, sigma_inv = sigma_slice(d)
    lower = [list(r) for r in PolyMatrix.identity(f, n).entries]
    lower[1][0] = Poly.T(f)
    lower = PolyMatrix(f, lower)
    if not sigma.is_identity():
        w.then(birational_step(w.end, lower, sigma, sigma_inv,
                               "slice coordinates of the derivation"))
    w.then(conjugation_step(w.end, _swap(f, n, 0, 1)))
    return _finish(a, CHAR0_STANDARD, w, verify)


# -- 2 x 2 in characteristic p


def _common_fixed_vector(a: PolyMatrix) -> list:
    f = a.ctx
    rows = [r for m in a.coefficient_matrices()[1:] for r in m]
    ker = linalg.nullspace(f, rows, a.n) if rows else linalg.nullspace(f, [], a.n)
    if not ker:
        raise TriangularizationFailed("coefficient matrices have no common kernel vector")
    return ker[0]


def _scale_to_monic(w: Witness, alpha: PPoly, n: int, make) -> PPoly:
    lead = alpha.lead()
    f = alpha.ctx
    if lead == f.one:
        return alpha
    monic = alpha.monic()
    slot = n - 1
    w.then(birational_step(w.end, make(monic), sigma_scaling(Scalar(f, lead), slot, n),
                           sigma_scaling(Scalar(f, f.inv(lead)), slot, n), "scale to monic"))
    return monic


def classify_2x2(a: PolyMatrix, verify: bool = True) -> ClassResult:
    f = a.ctx
    if f.char == 0:
        raise WrongCharacteristic("classify_2x2 is the positive-characteristic pipeline")
    if a.n != 2:
        raise DimensionMismatch("classify_2x2 needs a 2x2 matrix")
    a = as_exponential(a)
    w = Witness(a, a)
    if a.is_identity():
        return _finish(a, IDENTITY, w, verify)
    form = match_shape(a)
    if form is None:
        v = _common_fixed_vector(a)
        other = next(e for e in linalg.identity(f, 2) if not linalg.in_span(f, [v], e))
        p = linalg.inverse(f, linalg.transpose([v, other]))
        w.then(conjugation_step(a, p, "fixed vector first"))
        form = match_shape(w.end)
        if form is None:
            raise TriangularizationFailed(f"conjugate {w.end!r} is not upper unipotent")
    gamma = _scale_to_monic(w, form.params[0], 2, upper2)
    return _finish(a, BirClass("Line", (gamma,)), w, verify, form)


# -- 3 x 3 in characteristic p


def _line_from_a11(w: Witness, alpha: PPoly) -> BirClass:
    return BirClass("Line", (_scale_to_monic(w, alpha, 3, a11),))


def _route_a21(w: Witness, alpha1: PPoly, alpha2: PPoly, notes: list) -> BirClass:
    f = alpha1.ctx
    if alpha1.is_zero() and alpha2.is_zero():
        return IDENTITY
    if alpha1.is_zero():
        return _line_from_a11(w, alpha2)
    if not alpha2.is_zero():
        gamma, slot, steps = reduce_loop(alpha1, alpha2)
        notes.append({"reduction": [
            {"case": s.case, "lambda": repr(s.lam),
             "lambda_back": repr(s.lam_back) if s.lam_back is not None else None,
             "result": [repr(s.beta1), repr(s.beta2)]} for s in steps],
            "survivor_slot": slot})
        for s in steps:
            if s.case == "iii":
                mid = (s.alpha1 - ppoly_compose(s.lam, s.alpha2), s.alpha2)
            else:
                mid = (s.alpha1, s.alpha2 - ppoly_compose(s.lam, s.alpha1))
            sig, inv = sigma_reduce(s.lam, s.case)
            w.then(birational_step(w.end, a21(*mid), sig, inv, f"reduction case {s.case}"))
            if s.lam_back is not None:
                sig, inv = sigma_reduce(s.lam_back, "iii")
                w.then(birational_step(w.end, a21(s.beta1, s.beta2), sig, inv,
                                       "reduction case ii, second half"))
        if slot == "second":
            return _line_from_a11(w, gamma)
        alpha1 = gamma
    # A21(a1, 0): swapping the first two coordinates gives A11(a1)
    w.then(conjugation_step(w.end, _swap(f, 3, 0, 1)))
    return _line_from_a11(w, alpha1)


def _route_a12(w: Witness, alpha1: PPoly, alpha2: PPoly) -> BirClass:
    f = alpha1.ctx
    basis = span_basis([alpha1, alpha2])
    if not basis:
        return IDENTITY
    if len(basis) == 2:
        q = coordinates(basis, [alpha1, alpha2])
        if q != linalg.identity(f, 2):
            w.then(birational_step(w.end, a12(*basis), sigma_gl2(q, f),
                                   sigma_gl2(linalg.inverse(f, q), f), "echelon basis"))
        return BirClass("Plane", tuple(basis))
    if alpha1.is_zero():
        return _line_from_a11(w, alpha2)
    gamma = basis[0]
    row = coordinates(basis, [alpha1, alpha2])[0]
    second = [f.zero, f.one] if not f.is_zero(row[0]) else [f.one, f.zero]
    q = [row, second]
    zero = PPoly.zero(f)
    if q != linalg.identity(f, 2):
        w.then(birational_step(w.end, a12(gamma, zero), sigma_gl2(q, f),
                               sigma_gl2(linalg.inverse(f, q), f), "rank-one span"))
    w.then(conjugation_step(w.end, _swap(f, 3, 1, 2)))
    return _line_from_a11(w, gamma)


def recognize_family(a: PolyMatrix) -> FamilyForm:
    """Exact shape match, else a brute-force conjugation search when the field is small."""
    form = match_shape(a)
    if form is not None:
        return form
    if a.ctx.char == 0 or a.n != 3:
        return FamilyForm("General", normalized=False)
    from .oracle import brute_conjugate_to_family
    try:
        _, form = brute_conjugate_to_family(a)
    except (TooLarge, NotFound):
        return FamilyForm("General", normalized=False)
    return form


def classify_3x3(a: PolyMatrix, verify: bool = True) -> ClassResult:
    f = a.ctx
    if f.char == 0:
        raise WrongCharacteristic("classify_3x3 is the positive-characteristic pipeline")
    if a.n != 3:
        raise DimensionMismatch("classify_3x3 needs a 3x3 matrix")
    a = as_exponential(a)
    w = Witness(a, a)
    notes: list = []
    if a.is_identity():
        return _finish(a, IDENTITY, w, verify)
    form = recognize_family(a)
    if not form.normalized:
        raise NotNormalized("no family shape found and the field is too large for search")
    if form.conjugator is not None:
        w.then(conjugation_step(a, [list(r) for r in form.conjugator], "family normal form"))
    if form.family == "J3":
        sig, inv = sigma_quadratic(f)
        w.then(birational_step(w.end, a21(*form.params), sig, inv,
                               "quadratic map; indeterminate where x1 = x2 = 0"))
        cls = _route_a21(w, *form.params, notes)
    elif form.family == "A21":
        cls = _route_a21(w, *form.params, notes)
    else:
        cls = _route_a12(w, *form.params)
    return _finish(a, cls, w, verify, form, notes)


def classify(a: PolyMatrix, verify: bool = True) -> ClassResult:
    if a.ctx.char == 0:
        return classify_char0(a, verify)
    if a.n == 2:
        return classify_2x2(a, verify)
    if a.n == 3:
        return classify_3x3(a, verify)
    raise Unsupported(f"no classification is implemented for n = {a.n} in characteristic {a.ctx.char}")


@dataclass
class EquivResult:
    equivalent: bool
    class_a: ClassResult
    class_b: ClassResult
    witness: Optional[Witness]
    verified: Optional[bool]

    def to_json(self) -> dict:
        d = {"equivalent": self.equivalent, "class_a": self.class_a.bir_class.to_json(),
             "class_b": self.class_b.bir_class.to_json(), "verified": self.verified,
             "field_policy": FIELD_POLICY}
        if self.witness is not None:
            d["witness"] = self.witness.to_json()
        return d


def equiv_bir(a: PolyMatrix, b: PolyMatrix, verify: bool = True) -> EquivResult:
    """Compare invariants; on a match join A -> canonical <- B into one chain A -> B."""
    a.ctx.check(b.ctx)
    if a.n != b.n:
        raise DimensionMismatch("matrices have different sizes")
    ra, rb = classify(a, verify), classify(b, verify)
    if ra.bir_class != rb.bir_class:
        return EquivResult(False, ra, rb, None, None)
    w = ra.witness.concat(rb.witness.reversed())
    verified = None
    if verify:
        rep = verify_chain(w)
        if not rep.ok:
            raise InternalInconsistency(f"joined witness failed: {rep.failures}")
        verified = True
    return EquivResult(True, ra, rb, w, verified)
