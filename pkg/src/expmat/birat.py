"""Projective rational maps of P^(n-1) over k[T], the equivariance square,
explicit birational witnesses, and re-verifiable witness chains."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from . import linalg
from .errors import (DimensionMismatch, InputError, SingularMatrix,
                     WrongCharacteristic, ZeroInput, ZeroScalar)
from .field import FieldCtx, Scalar
from .matrix import PolyMatrix, action_of, is_exponential
from .poly import MPoly, _raw
from .ppoly import PPoly


@lru_cache(maxsize=None)
def action_vars(n: int) -> tuple:
    """Coordinates x0..x(n-1) of P^(n-1) followed by the group parameter T."""
    return tuple(f"x{i}" for i in range(n)) + ("T",)


class ProjMap:
    """(f_0 : ... : f_(n-1)), f_i homogeneous of one common degree in the x's."""

    __slots__ = ("ctx", "n", "components")

    def __init__(self, ctx: FieldCtx, n: int, components: Sequence[MPoly]):
        vars_ = action_vars(n)
        if len(components) != n:
            raise DimensionMismatch(f"expected {n} components, got {len(components)}")
        comps = []
        for c in components:
            ctx.check(c.ctx)
            comps.append(c if c.vars == vars_ else c.rename(vars_))
        if all(c.is_zero() for c in comps):
            raise ZeroInput("all components vanish")
        degs = {c.homogeneous_degree(range(n)) for c in comps if not c.is_zero()}
        if len(degs) != 1 or None in degs:
            raise DimensionMismatch("components are not homogeneous of one common degree")
        self.ctx = ctx
        self.n = n
        self.components = tuple(comps)

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "ProjMap":
        return cls(ctx, n, MPoly.gens(ctx, action_vars(n))[:n])

    @classmethod
    def linear(cls, ctx: FieldCtx, m: Sequence[Sequence]) -> "ProjMap":
        """x -> x . transpose(m) for a raw scalar matrix m."""
        n = len(m)
        xs = MPoly.gens(ctx, action_vars(n))[:n]
        comps = []
        for row in m:
            acc = MPoly.zero(ctx, action_vars(n))
            for c, x in zip(row, xs):
                if not ctx.is_zero(c):
                    acc = acc + x.scale_raw(c)
            comps.append(acc)
        return cls(ctx, n, comps)

    @property
    def vars(self) -> tuple:
        return action_vars(self.n)

    def degree(self) -> int:
        return next(c.homogeneous_degree(range(self.n)) for c in self.components if not c.is_zero())

    def __eq__(self, other) -> bool:
        return (isinstance(other, ProjMap) and self.n == other.n
                and self.components == other.components)

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return "(" + " : ".join(c.fmt() for c in self.components) + ")"

    def strip(self) -> "ProjMap":
        """Divide out the common monomial factor in the x's."""
        cont = None
        for c in self.components:
            if c.is_zero():
                continue
            m = c.monomial_content()[:self.n]
            cont = m if cont is None else tuple(min(a, b) for a, b in zip(cont, m))
        if cont is None or not any(cont):
            return self
        full = tuple(cont) + (0,)
        return ProjMap(self.ctx, self.n, [c.divide_monomial(full) for c in self.components])

    def compose(self, inner: "ProjMap") -> "ProjMap":
        """self o inner: substitute inner's components for x0..x(n-1)."""
        if inner.n != self.n:
            raise DimensionMismatch("maps live on different projective spaces")
        T = MPoly.var(self.ctx, self.vars, "T")
        images = list(inner.components) + [T]
        return ProjMap(self.ctx, self.n, [c.substitute(images) for c in self.components]).strip()

    def at(self, point: Sequence) -> list:
        """Evaluate at a point (user scalars); returns raw values, T must be absent."""
        f = self.ctx
        vals = [_raw(f, v) for v in point] + [f.zero]
        out = []
        for c in self.components:
            acc = f.zero
            for e, coef in c.terms.items():
                term = coef
                for v, k in zip(vals, e):
                    if k:
                        term = f.mul(term, f.power(v, k))
                acc = f.add(acc, term)
            out.append(acc)
        return out

    def is_identity(self) -> bool:
        return projectively_equal(self, ProjMap.identity(self.ctx, self.n))[0]

    def to_json(self) -> dict:
        return {"vars": list(self.vars), "degree": self.degree(),
                "components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, ctx: FieldCtx, data) -> "ProjMap":
        if not isinstance(data, dict) or "components" not in data:
            raise InputError("projective map must be {'components': [...]}")
        n = len(data["components"])
        vars_ = tuple(data.get("vars", action_vars(n)))
        if vars_ != action_vars(n):
            raise InputError(f"projective map variables must be {list(action_vars(n))}")
        pm = cls(ctx, n, [MPoly.from_json(ctx, vars_, c) for c in data["components"]])
        if "degree" in data and data["degree"] != pm.degree():
            raise InputError("declared degree does not match components")
        return pm


def projectively_equal(f: ProjMap, g: ProjMap) -> tuple[bool, Optional[tuple]]:
    """All cross-products f_i g_j - f_j g_i vanish; else the first offending (i, j, residual)."""
    if f.n != g.n:
        raise DimensionMismatch("maps live on different projective spaces")
    for i in range(f.n):
        for j in range(i + 1, f.n):
            r = f.components[i] * g.components[j] - f.components[j] * g.components[i]
            if not r.is_zero():
                return False, (i, j, r)
    return True, None


@dataclass
class EquivarianceReport:
    ok: bool
    pair: Optional[tuple[int, int]] = None
    residual: Optional[MPoly] = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        d = {"ok": self.ok}
        if not self.ok:
            d["pair"] = list(self.pair)
            d["residual"] = self.residual.fmt()
        return d


def verify_equivariance(sigma: ProjMap, a: PolyMatrix, b: PolyMatrix) -> EquivarianceReport:
    """sigma o mu_A = mu_B o sigma, up to a common factor."""
    if not (sigma.n == a.n == b.n):
        raise DimensionMismatch("sigma, A and B must have the same size")
    sigma.ctx.check(a.ctx)
    sigma.ctx.check(b.ctx)
    left = sigma.compose(action_of(a))
    right = action_of(b).compose(sigma)
    ok, bad = projectively_equal(left, right)
    if ok:
        return EquivarianceReport(True)
    return EquivarianceReport(False, (bad[0], bad[1]), bad[2])


def inverse_pair_ok(sigma: ProjMap, sigma_inv: ProjMap) -> bool:
    return sigma.compose(sigma_inv).is_identity() and sigma_inv.compose(sigma).is_identity()


# -- witness constructors


def sigma_scaling(lam, slot: int, n: int, ctx: Optional[FieldCtx] = None) -> ProjMap:
    """Multiply coordinate ``slot`` by lam (a Scalar, or a user value with ``ctx``)."""
    if isinstance(lam, Scalar):
        ctx = lam.ctx
        v = lam.v
    else:
        v = _raw(ctx, lam)
    if ctx.is_zero(v):
        raise ZeroScalar("scaling factor must be nonzero")
    m = linalg.identity(ctx, n)
    m[slot][slot] = v
    return ProjMap.linear(ctx, m)


def _substitution_map(lam: PPoly, case: str, sign: int) -> ProjMap:
    """Homogenized (u, v) -> (u + sign*lam(v), v) for case i/ii, (u, v + sign*lam(u)) for iii,
    in the chart u = x0/x2, v = x1/x2."""
    f = lam.ctx
    vars_ = action_vars(3)
    x0, x1, x2, _ = MPoly.gens(f, vars_)
    big = f.char ** lam.index()
    moved, source = (0, 1) if case in ("i", "ii") else (1, 0)
    comps = [x0 * x2 ** (big - 1), x1 * x2 ** (big - 1), x2 ** big]
    src = (x0, x1)[source]
    corr = MPoly.zero(f, vars_)
    for i, c in enumerate(lam.coeffs):
        if not f.is_zero(c):
            q = f.char ** i
            corr = corr + (src ** q * x2 ** (big - q)).scale_raw(c)
    comps[moved] = comps[moved] + corr if sign > 0 else comps[moved] - corr
    return ProjMap(f, 3, comps).strip()


def sigma_reduce(lam: PPoly, case: str) -> tuple[ProjMap, ProjMap]:
    """Elimination map for one reduction step and its inverse.

    Case i/ii takes upper-right column (a2, a1) to (a2 - lam o a1, a1);
    case iii takes it to (a2, a1 - lam o a2).
    """
    if case not in ("i", "ii", "iii"):
        raise InputError(f"unknown reduction case {case!r}")
    if lam.is_zero():
        ident = ProjMap.identity(lam.ctx, 3)
        return ident, ident
    return _substitution_map(lam, case, -1), _substitution_map(lam, case, +1)


def sigma_gl2(q: Sequence[Sequence], ctx: FieldCtx) -> ProjMap:
    """x -> x . (1 (+) transpose(Q)), i.e. (x0 : Q11 x1 + Q12 x2 : Q21 x1 + Q22 x2)."""
    if linalg.det(ctx, [list(r) for r in q]) == ctx.zero:
        raise SingularMatrix("Q is not invertible")
    m = [[ctx.one, ctx.zero, ctx.zero],
         [ctx.zero, q[0][0], q[0][1]],
         [ctx.zero, q[1][0], q[1][1]]]
    return ProjMap.linear(ctx, m)


def sigma_quadratic(ctx: FieldCtx) -> tuple[ProjMap, ProjMap]:
    """(x0 x2 - x1^2/2 : x1 x2 : x2^2) and its inverse with +x1^2/2."""
    if ctx.char in (0, 2):
        raise WrongCharacteristic("this quadratic map needs an odd prime characteristic")
    x0, x1, x2, _ = MPoly.gens(ctx, action_vars(3))
    half = ctx.inv(ctx.from_int(2))
    sq = (x1 * x1).scale_raw(half)
    fwd = ProjMap(ctx, 3, [x0 * x2 - sq, x1 * x2, x2 * x2])
    inv = ProjMap(ctx, 3, [x0 * x2 + sq, x1 * x2, x2 * x2])
    return fwd, inv


# -- witness chains


@dataclass
class WitnessStep:
    """One link: a conjugation P A P^-1 = B, or a birational sigma with explicit inverse."""

    kind: str  # "conjugation" | "birational"
    source: PolyMatrix
    target: PolyMatrix
    p: Optional[list] = None
    sigma: Optional[ProjMap] = None
    sigma_inv: Optional[ProjMap] = None
    note: Optional[str] = None

    def reversed(self) -> "WitnessStep":
        if self.kind == "conjugation":
            return WitnessStep("conjugation", self.target, self.source,
                               p=linalg.inverse(self.source.ctx, self.p), note=self.note)
        return WitnessStep("birational", self.target, self.source,
                           sigma=self.sigma_inv, sigma_inv=self.sigma, note=self.note)

    def to_json(self) -> dict:
        f = self.source.ctx
        d = {"kind": self.kind, "from": self.source.to_json(), "to": self.target.to_json()}
        if self.kind == "conjugation":
            d["P"] = [[f.to_json(x) for x in r] for r in self.p]
        else:
            d["sigma"] = self.sigma.to_json()
            d["sigma_inverse"] = self.sigma_inv.to_json()
        if self.note:
            d["note"] = self.note
        return d


def conjugation_step(a: PolyMatrix, p: list, note: Optional[str] = None) -> WitnessStep:
    return WitnessStep("conjugation", a, a.conjugate(p), p=p, note=note)


def birational_step(a: PolyMatrix, b: PolyMatrix, sigma: ProjMap, sigma_inv: ProjMap,
                    note: Optional[str] = None) -> WitnessStep:
    return WitnessStep("birational", a, b, sigma=sigma, sigma_inv=sigma_inv, note=note)


def verify_step(step: WitnessStep) -> tuple[bool, str]:
    a, b = step.source, step.target
    if a.n != b.n or a.ctx != b.ctx:
        return False, "endpoints differ in size or field"
    for m, name in ((a, "from"), (b, "to")):
        if not is_exponential(m).valid:
            return False, f"'{name}' matrix is not exponential"
    if step.kind == "conjugation":
        if step.p is None or len(step.p) != a.n or not linalg.is_invertible(a.ctx, step.p):
            return False, "P missing or singular"
        return (True, "ok") if a.conjugate(step.p) == b else (False, "P A P^-1 != B")
    if step.kind == "birational":
        if step.sigma is None or step.sigma_inv is None:
            return False, "sigma or its inverse missing"
        if step.sigma.n != a.n or step.sigma_inv.n != a.n:
            return False, "sigma has the wrong size"
        rep = verify_equivariance(step.sigma, a, b)
        if not rep.ok:
            return False, f"equivariance fails at components {rep.pair}: {rep.residual.fmt()}"
        if not inverse_pair_ok(step.sigma, step.sigma_inv):
            return False, "sigma and sigma_inverse are not mutually inverse"
        return True, "ok"
    return False, f"unknown step kind {step.kind!r}"


@dataclass
class Witness:
    start: PolyMatrix
    end: PolyMatrix
    steps: list[WitnessStep] = field(default_factory=list)

    def then(self, step: WitnessStep) -> "Witness":
        self.steps.append(step)
        self.end = step.target
        return self

    def reversed(self) -> "Witness":
        return Witness(self.end, self.start, [s.reversed() for s in reversed(self.steps)])

    def concat(self, other: "Witness") -> "Witness":
        return Witness(self.start, other.end, self.steps + other.steps)

    def to_json(self) -> dict:
        return {"start": self.start.to_json(), "end": self.end.to_json(),
                "steps": [s.to_json() for s in self.steps]}


@dataclass
class ChainReport:
    ok: bool
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"verified": self.ok, "failures": self.failures}


def verify_chain(w: Witness) -> ChainReport:
    """Check every link and that consecutive links share endpoints."""
    failures = []
    cur = w.start
    if not is_exponential(w.start).valid:
        failures.append({"step": None, "reason": "start matrix is not exponential"})
    for i, s in enumerate(w.steps):
        if s.source != cur:
            failures.append({"step": i, "reason": "step does not start where the previous ended"})
        ok, why = verify_step(s)
        if not ok:
            failures.append({"step": i, "reason": why})
        cur = s.target
    if cur != w.end:
        failures.append({"step": None, "reason": "chain does not end at the declared matrix"})
    return ChainReport(not failures, failures)


sigma_lemma56 = sigma_quadratic  # name used by the published API contract
