"""Univariate (dense) and multivariate (sparse) polynomials over a FieldCtx.

Coefficients are raw field values (see :mod:`expmat.field`).
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import MixedFields
from .field import FieldCtx, Scalar

NEG_INF = float("-inf")


def _raw(ctx: FieldCtx, c):
    if isinstance(c, Scalar):
        ctx.check(c.ctx)
        return c.v
    if isinstance(c, int):
        return ctx.from_int(c)
    return ctx.from_json(c) if not _is_raw(ctx, c) else c


def _is_raw(ctx: FieldCtx, c) -> bool:
    from fractions import Fraction
    if ctx.char == 0:
        return isinstance(c, Fraction)
    return isinstance(c, int)


class Poly:
    """Dense polynomial in one variable T; ``coeffs`` low-to-high, trailing zeros stripped."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable = ()):
        self.ctx = ctx
        cs = [_raw(ctx, c) for c in coeffs]
        while cs and ctx.is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _make(cls, ctx: FieldCtx, cs: list) -> "Poly":
        while cs and ctx.is_zero(cs[-1]):
            cs.pop()
        p = cls.__new__(cls)
        p.ctx = ctx
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "Poly":
        return cls._make(ctx, [])

    @classmethod
    def one(cls, ctx: FieldCtx) -> "Poly":
        return cls._make(ctx, [ctx.one])

    @classmethod
    def constant(cls, ctx: FieldCtx, c) -> "Poly":
        return cls._make(ctx, [_raw(ctx, c)])

    @classmethod
    def monomial(cls, ctx: FieldCtx, deg: int, c=1) -> "Poly":
        return cls._make(ctx, [ctx.zero] * deg + [_raw(ctx, c)])

    @classmethod
    def T(cls, ctx: FieldCtx) -> "Poly":
        return cls.monomial(ctx, 1)

    # -- basic properties

    def degree(self):
        """Degree, with the zero polynomial at -inf."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ctx.zero

    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.ctx.zero

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ctx == other.ctx and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == Poly.constant(self.ctx, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx, self.coeffs))

    def __repr__(self) -> str:
        return self.fmt()

    def fmt(self, var: str = "T") -> str:
        if not self.coeffs:
            return "0"
        f = self.ctx
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if f.is_zero(c):
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            cs = f.fmt(c)
            if mono and cs == "1":
                parts.append(mono)
            elif mono:
                parts.append(f"({cs})*{mono}" if ("+" in cs or "/" in cs) else f"{cs}*{mono}")
            else:
                parts.append(cs)
        return " + ".join(parts)

    # -- arithmetic

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self.ctx.check(other.ctx)
            return other
        if isinstance(other, (int, Scalar)):
            return Poly.constant(self.ctx, other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other) -> "Poly":
        o = self._lift(other)
        f = self.ctx
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f.add(out[i], c)
        return Poly._make(f, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        f = self.ctx
        return Poly._make(f, [f.neg(c) for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Scalar):
            return self.scale_raw(other.v)
        o = self._lift(other)
        f = self.ctx
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Poly.zero(f)
        out = [f.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if f.is_zero(x):
                continue
            for j, y in enumerate(b):
                if not f.is_zero(y):
                    out[i + j] = f.add(out[i + j], f.mul(x, y))
        return Poly._make(f, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        return self.scale_raw(_raw(self.ctx, c))

    def scale_raw(self, c) -> "Poly":
        f = self.ctx
        return Poly._make(f, [f.mul(c, x) for x in self.coeffs])

    def __pow__(self, e: int) -> "Poly":
        result = Poly.one(self.ctx)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        """Evaluate at a raw value, Scalar, Poly or MPoly (Horner)."""
        if isinstance(x, Scalar):
            return Scalar(self.ctx, self.eval_raw(x.v))
        if isinstance(x, (Poly, MPoly)):
            acc = x * 0
            for c in reversed(self.coeffs):
                acc = acc * x + Scalar(self.ctx, c)
            return acc
        return self.eval_raw(_raw(self.ctx, x))

    def eval_raw(self, x):
        f = self.ctx
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def compose(self, g: "Poly") -> "Poly":
        """self(g(T))."""
        return self(g)

    def derivative(self) -> "Poly":
        f = self.ctx
        return Poly._make(f, [f.mul(f.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def to_mpoly(self, vars: Sequence[str], var: str = "T") -> "MPoly":
        """Embed into a multivariate ring, placing T at position ``vars.index(var)``."""
        k = list(vars).index(var)
        n = len(vars)
        terms = {}
        for i, c in enumerate(self.coeffs):
            if not self.ctx.is_zero(c):
                e = [0] * n
                e[k] = i
                terms[tuple(e)] = c
        return MPoly._make(self.ctx, tuple(vars), terms)

    def to_json(self) -> list:
        return [self.ctx.to_json(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, ctx: FieldCtx, data) -> "Poly":
        from .errors import InputError
        if not isinstance(data, list):
            raise InputError(f"polynomial must be a coefficient list, got {data!r}")
        return cls._make(ctx, [ctx.from_json(c) for c in data])


def _grlex_key(e: tuple) -> tuple:
    return (-sum(e), tuple(-x for x in e))


class MPoly:
    """Sparse polynomial in named variables; ``terms`` maps exponent tuples to raw coefficients."""

    __slots__ = ("ctx", "vars", "terms")

    def __init__(self, ctx: FieldCtx, vars: Sequence[str], terms: Mapping | None = None):
        self.ctx = ctx
        self.vars = tuple(vars)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(self.vars):
                raise ValueError(f"exponent {e} does not match variables {self.vars}")
            c = _raw(ctx, c)
            if not ctx.is_zero(c):
                clean[e] = c
        self.terms = clean

    @classmethod
    def _make(cls, ctx: FieldCtx, vars: tuple, terms: dict) -> "MPoly":
        p = cls.__new__(cls)
        p.ctx = ctx
        p.vars = vars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, ctx: FieldCtx, vars: Sequence[str]) -> "MPoly":
        return cls._make(ctx, tuple(vars), {})

    @classmethod
    def constant(cls, ctx: FieldCtx, vars: Sequence[str], c) -> "MPoly":
        c = _raw(ctx, c)
        if ctx.is_zero(c):
            return cls.zero(ctx, vars)
        return cls._make(ctx, tuple(vars), {(0,) * len(vars): c})

    @classmethod
    def constant_raw(cls, ctx: FieldCtx, vars: Sequence[str], c) -> "MPoly":
        if ctx.is_zero(c):
            return cls.zero(ctx, vars)
        return cls._make(ctx, tuple(vars), {(0,) * len(vars): c})

    @classmethod
    def var(cls, ctx: FieldCtx, vars: Sequence[str], name: str) -> "MPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls._make(ctx, vars, {tuple(e): ctx.one})

    @classmethod
    def gens(cls, ctx: FieldCtx, vars: Sequence[str]) -> list["MPoly"]:
        return [cls.var(ctx, vars, v) for v in vars]

    # -- properties

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.ctx == other.ctx and self.vars == other.vars and self.terms == other.terms
        if isinstance(other, int):
            return self == MPoly.constant(self.ctx, self.vars, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx, self.vars, frozenset(self.terms.items())))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def total_degree(self, idx: Sequence[int] | None = None):
        if not self.terms:
            return NEG_INF
        if idx is None:
            return max(sum(e) for e in self.terms)
        return max(sum(e[i] for i in idx) for e in self.terms)

    def degree_in(self, i: int):
        if not self.terms:
            return NEG_INF
        return max(e[i] for e in self.terms)

    def homogeneous_degree(self, idx: Sequence[int]):
        """Common degree in the variables ``idx``, or None if not homogeneous there."""
        degs = {sum(e[i] for i in idx) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None if degs else NEG_INF

    def __repr__(self) -> str:
        return self.fmt()

    def fmt(self) -> str:
        if not self.terms:
            return "0"
        f = self.ctx
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            cs = f.fmt(c)
            if mono and cs == "1":
                parts.append(mono)
            elif mono:
                parts.append(f"({cs})*{mono}" if ("+" in cs or "/" in cs) else f"{cs}*{mono}")
            else:
                parts.append(cs)
        return " + ".join(parts)

    # -- arithmetic

    def _lift(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self.ctx.check(other.ctx)
            if other.vars != self.vars:
                raise MixedFields(f"variable sets differ: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Scalar)):
            return MPoly.constant(self.ctx, self.vars, other)
        raise TypeError(f"cannot combine MPoly with {type(other).__name__}")

    def __add__(self, other) -> "MPoly":
        o = self._lift(other)
        f = self.ctx
        out = dict(self.terms)
        for e, c in o.terms.items():
            if e in out:
                s = f.add(out[e], c)
                if f.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return MPoly._make(f, self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        f = self.ctx
        return MPoly._make(f, self.vars, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        o = self._lift(other)
        f = self.ctx
        out: dict = {}
        add, mul, zero = f.add, f.mul, f.is_zero
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = mul(c1, c2)
                if e in out:
                    out[e] = add(out[e], c)
                else:
                    out[e] = c
        return MPoly._make(f, self.vars, {e: c for e, c in out.items() if not zero(c)})

    __rmul__ = __mul__

    def scale(self, c) -> "MPoly":
        return self.scale_raw(_raw(self.ctx, c))

    def scale_raw(self, c) -> "MPoly":
        f = self.ctx
        if f.is_zero(c):
            return MPoly.zero(f, self.vars)
        return MPoly._make(f, self.vars, {e: f.mul(c, x) for e, x in self.terms.items()})

    def frobenius_power(self, k: int) -> "MPoly":
        """self^(p^k) in characteristic p, computed termwise."""
        f = self.ctx
        q = f.char ** k
        return MPoly._make(f, self.vars,
                           {tuple(x * q for x in e): f.frob(c, k) for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power")
        f = self.ctx
        result = MPoly.constant(f, self.vars, 1)
        if n == 0:
            return result
        if f.char > 0 and len(self.terms) > 1:
            # base-p digits: self^n = prod (self^(p^k))^(d_k)
            k = 0
            while n:
                d = n % f.char
                if d:
                    base = self.frobenius_power(k)
                    result = result * _plain_pow(base, d)
                n //= f.char
                k += 1
            return result
        return _plain_pow(self, n)

    def derivative(self, i: int) -> "MPoly":
        f = self.ctx
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = f.mul(f.from_int(e[i]), c)
                if not f.is_zero(d):
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = d
        return MPoly._make(f, self.vars, out)

    def substitute(self, images: Sequence["MPoly"]) -> "MPoly":
        """Replace variable i by ``images[i]``; all images share one target ring."""
        if len(images) != len(self.vars):
            raise ValueError("one image per variable is required")
        f = self.ctx
        target = images[0]
        result = MPoly.zero(f, target.vars)
        cache: dict = {}

        def pw(i: int, k: int) -> MPoly:
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        for e, c in self.terms.items():
            term = MPoly.constant_raw(f, target.vars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            result = result + term
        return result

    def rename(self, vars: Sequence[str]) -> "MPoly":
        """Re-embed into a ring whose variables include all of ours (with possibly new ones)."""
        vars = tuple(vars)
        pos = [vars.index(v) for v in self.vars]
        n = len(vars)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for j, k in zip(pos, e):
                ne[j] = k
            out[tuple(ne)] = c
        return MPoly._make(self.ctx, vars, out)

    def drop_vars(self, vars: Sequence[str]) -> "MPoly":
        """Project to a smaller ring; fails if a dropped variable occurs."""
        vars = tuple(vars)
        keep = [self.vars.index(v) for v in vars]
        out = {}
        for e, c in self.terms.items():
            if sum(e) != sum(e[j] for j in keep):
                raise ValueError("polynomial involves a dropped variable")
            out[tuple(e[j] for j in keep)] = c
        return MPoly._make(self.ctx, vars, out)

    def evaluate(self, i: int, value) -> "MPoly":
        """Set variable i to a Scalar/int value, keeping the ring."""
        f = self.ctx
        v = _raw(f, value)
        out: dict = {}
        for e, c in self.terms.items():
            c2 = f.mul(c, f.power(v, e[i]))
            if f.is_zero(c2):
                continue
            ne = list(e)
            ne[i] = 0
            ne = tuple(ne)
            out[ne] = f.add(out[ne], c2) if ne in out else c2
        return MPoly._make(f, self.vars, {e: c for e, c in out.items() if not f.is_zero(c)})

    def monomial_content(self) -> tuple:
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(min(e[i] for e in self.terms) for i in range(len(self.vars)))

    def divide_monomial(self, m: Sequence[int]) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            ne = tuple(a - b for a, b in zip(e, m))
            if min(ne) < 0:
                raise ValueError("monomial does not divide polynomial")
            out[ne] = c
        return MPoly._make(self.ctx, self.vars, out)

    def mul_monomial(self, m: Sequence[int]) -> "MPoly":
        return MPoly._make(self.ctx, self.vars,
                           {tuple(a + b for a, b in zip(e, m)): c for e, c in self.terms.items()})

    def coefficient_in(self, i: int) -> dict[int, "MPoly"]:
        """Split by powers of variable i: {k: coefficient polynomial (var i removed)}."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            out.setdefault(k, {})[tuple(ne)] = c
        return {k: MPoly._make(self.ctx, self.vars, t) for k, t in out.items()}

    def to_json(self) -> list:
        return [[list(e), self.ctx.to_json(c)] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, ctx: FieldCtx, vars: Sequence[str], data) -> "MPoly":
        from .errors import InputError
        if not isinstance(data, list):
            raise InputError("multivariate polynomial must be a list of [exponents, coefficient]")
        terms: dict = {}
        f = ctx
        for item in data:
            if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], list)):
                raise InputError(f"bad term {item!r}")
            e = tuple(int(x) for x in item[0])
            if len(e) != len(vars) or min(e, default=0) < 0:
                raise InputError(f"bad exponent vector {item[0]!r}")
            c = f.from_json(item[1])
            terms[e] = f.add(terms[e], c) if e in terms else c
        return cls._make(ctx, tuple(vars), {e: c for e, c in terms.items() if not f.is_zero(c)})


def _plain_pow(p: MPoly, n: int) -> MPoly:
    result = MPoly.constant(p.ctx, p.vars, 1)
    base = p
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


BIVARIATE_VARS = ("T", "T'")


def bivariate_shift(f: Poly) -> MPoly:
    """f(T + T') as a polynomial in (T, T')."""
    T, T2 = MPoly.gens(f.ctx, BIVARIATE_VARS)
    return f(T + T2)


def poly_arith(f, g, op: str):
    """Dispatch on an operation name; ``compose`` substitutes g for the variable of univariate f."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "compose":
        if isinstance(f, Poly):
            return f(g)
        return f.substitute(g)
    raise ValueError(f"unknown operation {op!r}")


class LocElem:
    """a / x^l in k[x...][1/x], x the variable at ``den`` (default 0), l minimal."""

    __slots__ = ("num", "power", "den")

    def __init__(self, num: MPoly, power: int = 0, den: int = 0):
        if not num.terms:
            power = 0
        elif power > 0:
            k = min(power, min(e[den] for e in num.terms))
            if k:
                m = [0] * len(num.vars)
                m[den] = k
                num = num.divide_monomial(m)
                power -= k
        self.num = num
        self.power = power
        self.den = den

    @property
    def ctx(self) -> FieldCtx:
        return self.num.ctx

    @property
    def vars(self) -> tuple:
        return self.num.vars

    def _shift(self, k: int) -> MPoly:
        m = [0] * len(self.num.vars)
        m[self.den] = k
        return self.num.mul_monomial(m)

    def _lift(self, other) -> "LocElem":
        if isinstance(other, LocElem):
            return other
        if isinstance(other, MPoly):
            return LocElem(other, 0, self.den)
        if isinstance(other, (int, Scalar)):
            return LocElem(MPoly.constant(self.ctx, self.vars, other), 0, self.den)
        raise TypeError(f"cannot combine LocElem with {type(other).__name__}")

    def __add__(self, other) -> "LocElem":
        o = self._lift(other)
        L = max(self.power, o.power)
        return LocElem(self._shift(L - self.power) + o._shift(L - o.power), L, self.den)

    __radd__ = __add__

    def __neg__(self) -> "LocElem":
        return LocElem(-self.num, self.power, self.den)

    def __sub__(self, other) -> "LocElem":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "LocElem":
        return self._lift(other) - self

    def __mul__(self, other) -> "LocElem":
        if isinstance(other, (int, Scalar)):
            return LocElem(self.num * other, self.power, self.den)
        o = self._lift(other)
        return LocElem(self.num * o.num, self.power + o.power, self.den)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LocElem":
        return LocElem(self.num ** n, self.power * n, self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (LocElem, MPoly, int)):
            o = self._lift(other)
            return self.num == o.num and self.power == o.power
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.power))

    def __repr__(self) -> str:
        if self.power == 0:
            return self.num.fmt()
        v = self.vars[self.den]
        d = v if self.power == 1 else f"{v}^{self.power}"
        return f"({self.num.fmt()})/{d}"
