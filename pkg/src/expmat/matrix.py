"""Polynomial matrices A(T), the exponential axioms, and the char-0 Exp/Log correspondence."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Optional, Sequence

from . import linalg
from .errors import (DimensionMismatch, InternalInconsistency,
                     NonConstantDeterminant, NotExponential, NotNilpotent,
                     WrongCharacteristic)
from .field import FieldCtx, Scalar
from .poly import BIVARIATE_VARS, MPoly, Poly, bivariate_shift


class PolyMatrix:
    """Square matrix with entries in k[T]."""

    __slots__ = ("ctx", "n", "entries")

    def __init__(self, ctx: FieldCtx, entries: Sequence[Sequence]):
        n = len(entries)
        if n == 0 or any(len(r) != n for r in entries):
            raise DimensionMismatch("matrix must be square and nonempty")
        rows = []
        for r in entries:
            row = []
            for e in r:
                if isinstance(e, Poly):
                    ctx.check(e.ctx)
                    row.append(e)
                elif isinstance(e, (list, tuple)):
                    row.append(Poly(ctx, e))
                else:
                    row.append(Poly.constant(ctx, e))
            rows.append(tuple(row))
        self.ctx = ctx
        self.n = n
        self.entries = tuple(rows)

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "PolyMatrix":
        return cls(ctx, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_coefficients(cls, ctx: FieldCtx, mats: Sequence) -> "PolyMatrix":
        """Build sum_k mats[k] T^k from raw scalar matrices."""
        n = len(mats[0])
        return cls(ctx, [[Poly._make(ctx, [m[i][j] for m in mats]) for j in range(n)]
                         for i in range(n)])

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolyMatrix) and self.ctx == other.ctx
                and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.ctx, self.entries))

    def __repr__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(e.fmt() for e in r) + "]" for r in self.entries) + "]"

    def degree(self):
        return max(e.degree() for r in self.entries for e in r)

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        self.ctx.check(other.ctx)
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = Poly.zero(self.ctx)
                for k in range(n):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ctx, out)

    def coefficient_matrices(self) -> list:
        """[A_0, A_1, ...] with A(T) = sum_k A_k T^k, each a raw scalar matrix."""
        d = self.degree()
        d = 0 if d < 0 else d
        return [[[e.coeff(k) for e in r] for r in self.entries] for k in range(d + 1)]

    def at_zero(self) -> list:
        return [[e.coeff(0) for e in r] for r in self.entries]

    def conjugate(self, p: list) -> "PolyMatrix":
        """P A P^-1 for a raw invertible matrix P."""
        f = self.ctx
        pinv = linalg.inverse(f, p)
        mats = [linalg.mat_mul(f, linalg.mat_mul(f, p, m), pinv) for m in self.coefficient_matrices()]
        return PolyMatrix.from_coefficients(f, mats)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ctx, [list(r) for r in zip(*self.entries)])

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix(self.ctx, [[e.scale(c) for e in r] for r in self.entries])

    def det(self) -> Poly:
        return _det(self.ctx, [list(r) for r in self.entries])

    def is_identity(self) -> bool:
        return self == PolyMatrix.identity(self.ctx, self.n)

    def to_json(self) -> dict:
        return {"field": self.ctx.spec_json(), "n": self.n,
                "entries": [[e.to_json() for e in r] for r in self.entries]}


def _det(ctx: FieldCtx, rows: list) -> Poly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = Poly.zero(ctx)
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(ctx, minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


class ExpMatrix(PolyMatrix):
    """A PolyMatrix that passed :func:`is_exponential`; build one through that function."""

    __slots__ = ()


@dataclass
class ExpCheck:
    valid: bool
    matrix: Optional[ExpMatrix] = None
    condition: Optional[str] = None  # "identity-at-zero" | "group-law" | "determinant"
    entry: Optional[tuple[int, int]] = None  # 0-based
    residual: Optional[MPoly] = None
    bivariate_ok: bool = False
    coproduct_ok: bool = False

    def __bool__(self) -> bool:
        return self.valid

    def report(self) -> dict:
        d = {"valid": self.valid, "bivariate_check": self.bivariate_ok,
             "coproduct_check": self.coproduct_ok}
        if not self.valid:
            d["condition"] = self.condition
            if self.entry is not None:
                d["entry"] = [self.entry[0] + 1, self.entry[1] + 1]
            if self.residual is not None:
                d["residual"] = self.residual.fmt()
        return d


def _unit_at_zero(a: PolyMatrix) -> Optional[tuple[int, int]]:
    f = a.ctx
    for i, r in enumerate(a.entries):
        for j, e in enumerate(r):
            want = f.one if i == j else f.zero
            if e.coeff(0) != want:
                return (i, j)
    return None


def bivariate_check(a: PolyMatrix) -> tuple[Optional[tuple[int, int]], Optional[MPoly]]:
    """A(T+T') - A(T)A(T') entrywise in k[T,T']; first nonzero entry, else (None, None)."""
    vars_ = BIVARIATE_VARS
    left = [[e.to_mpoly(vars_, "T") for e in r] for r in a.entries]
    right = [[e.to_mpoly(vars_, "T") for e in r] for r in a.entries]
    # move the second factor into T'
    right = [[MPoly._make(a.ctx, vars_, {(y, x): c for (x, y), c in m.terms.items()}) for m in r]
             for r in right]
    for i in range(a.n):
        for j in range(a.n):
            prod = MPoly.zero(a.ctx, vars_)
            for k in range(a.n):
                prod = prod + left[i][k] * right[k][j]
            res = bivariate_shift(a.entries[i][j]) - prod
            if not res.is_zero():
                return (i, j), res
    return None, None


def coproduct_check(a: PolyMatrix) -> Optional[tuple[int, int]]:
    """Delta(a_ij) = sum_l a_il (x) a_lj in k[T] (x) k[T], and counit(a_ij) = delta_ij.

    Tensors are dicts {(m, r): coeff} for T^m (x) T^r.  Delta(T^k) uses the
    binomial expansion directly, independent of polynomial multiplication.
    """
    f = a.ctx
    for i in range(a.n):
        for j in range(a.n):
            if a.entries[i][j].coeff(0) != (f.one if i == j else f.zero):
                return (i, j)
    for i in range(a.n):
        for j in range(a.n):
            delta: dict = {}
            for k, c in enumerate(a.entries[i][j].coeffs):
                if f.is_zero(c):
                    continue
                for m in range(k + 1):
                    b = f.mul(f.from_int(comb(k, m)), c)
                    delta[(m, k - m)] = f.add(delta.get((m, k - m), f.zero), b)
            rhs: dict = {}
            for l in range(a.n):
                u, v = a.entries[i][l].coeffs, a.entries[l][j].coeffs
                for m, x in enumerate(u):
                    if f.is_zero(x):
                        continue
                    for r, y in enumerate(v):
                        if not f.is_zero(y):
                            rhs[(m, r)] = f.add(rhs.get((m, r), f.zero), f.mul(x, y))
            keys = set(delta) | set(rhs)
            if any(delta.get(key, f.zero) != rhs.get(key, f.zero) for key in keys):
                return (i, j)
    return None


def bivariate_verdict(a: PolyMatrix) -> bool:
    """Route one alone: A(0) = I and A(T+T') = A(T)A(T') in k[T,T']."""
    return _unit_at_zero(a) is None and bivariate_check(a)[0] is None


def coproduct_verdict(a: PolyMatrix) -> bool:
    """Route two alone: counit and coproduct identities in k[T] (x) k[T]."""
    return coproduct_check(a) is None


def is_exponential(a: PolyMatrix) -> ExpCheck:
    """Check A(0) = I and A(T)A(T') = A(T+T') by two independent routes."""
    bad0 = _unit_at_zero(a)
    entry, residual = (bad0, None) if bad0 else bivariate_check(a)
    biv_ok = entry is None
    cop_ok = coproduct_check(a) is None
    if biv_ok != cop_ok:
        raise InternalInconsistency("bivariate and coproduct checks disagree")
    if not biv_ok:
        cond = "identity-at-zero" if bad0 else "group-law"
        return ExpCheck(False, condition=cond, entry=entry, residual=residual)
    if a.det() != Poly.one(a.ctx):
        return ExpCheck(False, condition="determinant", bivariate_ok=True, coproduct_ok=True)
    m = ExpMatrix.__new__(ExpMatrix)
    m.ctx, m.n, m.entries = a.ctx, a.n, a.entries
    return ExpCheck(True, matrix=m, bivariate_ok=True, coproduct_ok=True)


def as_exponential(a: PolyMatrix) -> ExpMatrix:
    """Validate or raise NotExponential."""
    if isinstance(a, ExpMatrix):
        return a
    chk = is_exponential(a)
    if not chk.valid:
        raise NotExponential(f"not an exponential matrix: {chk.report()}")
    return chk.matrix


# -- characteristic zero


class NilMatrix:
    """Nilpotent scalar matrix over QQ (raw Fraction entries)."""

    __slots__ = ("ctx", "n", "entries")

    def __init__(self, ctx: FieldCtx, entries: Sequence[Sequence]):
        if ctx.char != 0:
            raise WrongCharacteristic("nilpotent logarithms are defined in characteristic 0")
        self.ctx = ctx
        self.n = len(entries)
        self.entries = [[ctx.scalar(x).v for x in r] for r in entries]
        if not linalg.is_zero_matrix(ctx, linalg.mat_pow(ctx, self.entries, self.n)):
            raise NotNilpotent("N^n != 0")

    @classmethod
    def _trusted(cls, ctx: FieldCtx, raw: list) -> "NilMatrix":
        m = cls.__new__(cls)
        m.ctx, m.n, m.entries = ctx, len(raw), raw
        return m

    def __eq__(self, other) -> bool:
        return isinstance(other, NilMatrix) and self.entries == other.entries

    def __repr__(self) -> str:
        return repr([[str(x) for x in r] for r in self.entries])

    def is_zero(self) -> bool:
        return linalg.is_zero_matrix(self.ctx, self.entries)

    def to_json(self) -> dict:
        return {"field": self.ctx.spec_json(), "n": self.n,
                "entries": [[self.ctx.to_json(x) for x in r] for r in self.entries]}


def exp_nilpotent(nil: NilMatrix) -> ExpMatrix:
    """Exp_N(T) = sum_{i<n} T^i N^i / i!."""
    f = nil.ctx
    if f.char != 0:
        raise WrongCharacteristic("Exp_N needs characteristic 0")
    mats = []
    power = linalg.identity(f, nil.n)
    for i in range(nil.n):
        inv = f.inv(f.from_int(factorial(i)))
        mats.append([[f.mul(inv, x) for x in r] for r in power])
        power = linalg.mat_mul(f, power, nil.entries)
    if not linalg.is_zero_matrix(f, power):
        raise NotNilpotent("N^n != 0")
    return as_exponential(PolyMatrix.from_coefficients(f, mats))


def log_exponential(a: PolyMatrix) -> NilMatrix:
    """The unique nilpotent N with A = Exp_N, read off as A'(0)."""
    f = a.ctx
    if f.char != 0:
        raise WrongCharacteristic("logarithm needs characteristic 0")
    mats = a.coefficient_matrices()
    raw = mats[1] if len(mats) > 1 else linalg.zeros(f, a.n, a.n)
    if not linalg.is_zero_matrix(f, linalg.mat_pow(f, raw, a.n)):
        raise InternalInconsistency("A'(0) is not nilpotent; input is not exponential")
    nil = NilMatrix._trusted(f, raw)
    if exp_nilpotent(nil) != a:
        raise InternalInconsistency("Exp(A'(0)) != A; input is not exponential")
    return nil


def nilpotent_jordan(nil: NilMatrix) -> tuple[list, NilMatrix]:
    """P with P N P^-1 = J: lower-shift Jordan blocks, sizes decreasing.

    Chain tops are picked greedily from nullspace bases of N^d, largest d
    first, so P is deterministic.
    """
    f, n, N = nil.ctx, nil.n, nil.entries
    if not linalg.is_zero_matrix(f, linalg.mat_pow(f, N, n)):
        raise NotNilpotent("N^n != 0")
    powers = [linalg.identity(f, n)]
    for _ in range(n):
        powers.append(linalg.mat_mul(f, powers[-1], N))
    kernels = [linalg.nullspace(f, powers[d], n) for d in range(n + 1)]
    top = next(d for d in range(n + 1) if linalg.is_zero_matrix(f, powers[d]))

    def apply(m, v):
        return [linalg.mat_mul(f, m, [[x] for x in v])[i][0] for i in range(n)]

    chains: list[tuple[list, int]] = []
    for d in range(top, 0, -1):
        span = [list(v) for v in kernels[d - 1]]
        span += [apply(powers[size - d], v) for v, size in chains if size > d]
        for v in kernels[d]:
            if not linalg.in_span(f, span, v):
                span.append(v)
                chains.append((v, d))
    cols = []
    for v, size in chains:
        for k in range(size):
            cols.append(apply(powers[k], v))
    pinv = linalg.transpose(cols)
    p = linalg.inverse(f, pinv)
    j = linalg.mat_mul(f, linalg.mat_mul(f, p, N), pinv)
    return p, NilMatrix._trusted(f, j)


def jordan_partition(nil: NilMatrix) -> list[int]:
    """Block sizes (decreasing) from the rank sequence of powers of N."""
    f, n = nil.ctx, nil.n
    ranks = [n]
    m = linalg.identity(f, n)
    for _ in range(n + 1):
        m = linalg.mat_mul(f, m, nil.entries)
        ranks.append(linalg.rank(f, m))
    # number of blocks of size >= k is rank(N^(k-1)) - rank(N^k)
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, n + 2)]
    sizes = []
    for k in range(n, 0, -1):
        exactly = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        sizes += [k] * exactly
    return sizes


def det_normalize(a: PolyMatrix) -> PolyMatrix:
    """(1/det A) A when det A is a nonzero constant."""
    d = a.det()
    if d.degree() != 0:
        raise NonConstantDeterminant(f"det = {d.fmt()}")
    return a.scale(Scalar(a.ctx, a.ctx.inv(d.coeff(0))))


def action_of(a: PolyMatrix):
    """The T-parametrized map x -> x . transpose(A(T)) on P^(n-1)."""
    from .birat import ProjMap, action_vars
    f, n = a.ctx, a.n
    vars_ = action_vars(n)
    xs = MPoly.gens(f, vars_)[:n]
    comps = []
    for i in range(n):
        acc = MPoly.zero(f, vars_)
        for j in range(n):
            e = a.entries[i][j]
            if not e.is_zero():
                acc = acc + e.to_mpoly(vars_, "T") * xs[j]
        comps.append(acc)
    return ProjMap(f, n, comps)


def upper_shift_block(ctx: FieldCtx, n: int) -> PolyMatrix:
    """[[1, T], [0, 1]] (+) I_(n-2), the standard nontrivial representative."""
    ents = [[Poly.one(ctx) if i == j else Poly.zero(ctx) for j in range(n)] for i in range(n)]
    ents[0][1] = Poly.T(ctx)
    return PolyMatrix(ctx, ents)
