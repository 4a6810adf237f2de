"""Exact scalars: the rationals and finite fields GF(p^m).

Polynomials and matrices store *raw* values and call back into the owning
``FieldCtx`` for arithmetic; ``Scalar`` is the user-facing wrapper.

Raw representations:

* rationals: ``fractions.Fraction``
* GF(p): ``int`` in ``range(p)``
* GF(p^m), m > 1: ``int`` encoding the coefficient vector in base p
  (digit i is the coefficient of z^i, z a root of the modulus)
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (DivisionByZero, InputError, MixedFields, NotFiniteField,
                     NotIrreducible)

MAX_ORDER = 1 << 20

DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- dense polynomials over GF(p) as int lists, low-to-high; used only for moduli


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _polymod_p(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = [x % p for x in a]
    _trim(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        f = a[-1] * inv_lead % p
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - f * bc) % p
        _trim(a)
    return a


def is_irreducible_mod_p(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= m/2."""
    m = len(modulus) - 1
    if m < 1 or modulus[-1] % p == 0:
        return False
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _polymod_p(modulus, list(low) + [1], p):
                return False
    return True


def first_irreducible(p: int, m: int) -> tuple[int, ...]:
    for low in itertools.product(range(p), repeat=m):
        cand = low + (1,)
        if cand[0] != 0 and is_irreducible_mod_p(cand, p):
            return cand
    raise NotIrreducible(f"no irreducible polynomial of degree {m} over GF({p})")


class FieldCtx:
    """Field context. Obtain instances through :func:`rationals` or :func:`gf`."""

    __slots__ = ("char", "degree", "modulus", "order", "zero", "one",
                 "_exp", "_log", "_digits", "_key")

    def __init__(self, char: int, degree: int = 1, modulus: tuple[int, ...] | None = None):
        self.char = char
        self.degree = degree
        self.modulus = modulus
        self._key = (char, degree, modulus)
        if char == 0:
            self.order = None
            self.zero, self.one = Fraction(0), Fraction(1)
            return
        self.order = char ** degree
        self.zero, self.one = 0, 1
        if degree > 1:
            self._build_tables()

    # -- construction helpers

    def _build_tables(self) -> None:
        p, m, q = self.char, self.degree, self.order
        digits = [tuple((a // p ** i) % p for i in range(m)) for a in range(q)]
        self._digits = digits

        def mulz(a: int) -> int:
            # multiply by z and reduce by the monic modulus
            d = (0,) + digits[a]
            top = d[m]
            out = [(d[i] - top * self.modulus[i]) % p for i in range(m)]
            return sum(c * p ** i for i, c in enumerate(out))

        def mul_slow(a: int, b: int) -> int:
            acc, cur = 0, a
            for c in digits[b]:
                for _ in range(c):
                    acc = self._add_ext(acc, cur)
                cur = mulz(cur)
            return acc

        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = mul_slow(x, g)
                if len(exp) > q:
                    break
            if len(exp) == q - 1:
                self._exp = exp + exp
                log = [0] * q
                for k, v in enumerate(exp):
                    log[v] = k
                self._log = log
                return
        raise NotIrreducible(f"modulus {self.modulus} does not define a field")

    def _add_ext(self, a: int, b: int) -> int:
        if self.char == 2:
            return a ^ b
        p, da, db = self.char, self._digits[a], self._digits[b]
        return sum(((x + y) % p) * p ** i for i, (x, y) in enumerate(zip(da, db)))

    # -- identity

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldCtx) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        if self.char == 0:
            return "QQ"
        if self.degree == 1:
            return f"GF({self.char})"
        return f"GF({self.char}^{self.degree})"

    @property
    def is_finite(self) -> bool:
        return self.char > 0

    # -- raw arithmetic

    def add(self, a, b):
        if self.char == 0:
            return a + b
        if self.degree == 1:
            return (a + b) % self.char
        return self._add_ext(a, b)

    def neg(self, a):
        if self.char == 0:
            return -a
        if self.degree == 1:
            return (-a) % self.char
        if self.char == 2:
            return a
        p = self.char
        return sum(((-x) % p) * p ** i for i, x in enumerate(self._digits[a]))

    def sub(self, a, b):
        if self.char == 0:
            return a - b
        if self.degree == 1:
            return (a - b) % self.char
        return self._add_ext(a, self.neg(b))

    def mul(self, a, b):
        if self.char == 0:
            return a * b
        if self.degree == 1:
            return a * b % self.char
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero("inverse of zero")
        if self.char == 0:
            return 1 / a
        if self.degree == 1:
            return pow(a, self.char - 2, self.char)
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e: int):
        if e < 0:
            return self.power(self.inv(a), -e)
        if self.char == 0:
            return a ** e
        if self.degree == 1:
            return pow(a, e, self.char)
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self._exp[self._log[a] * e % (self.order - 1)]

    def is_zero(self, a) -> bool:
        return a == 0

    def from_int(self, n: int):
        if self.char == 0:
            return Fraction(n)
        n %= self.char
        return n  # base-p digit 0 carries the prime-field part

    def frob(self, a, times: int = 1):
        """a^(p^times); identity on prime fields."""
        if self.char == 0:
            raise NotFiniteField("Frobenius needs a finite field")
        if self.degree == 1 or a == 0:
            return a
        times %= self.degree
        return self.power(a, self.char ** times)

    def frob_inv(self, a, times: int = 1):
        if self.char == 0:
            raise NotFiniteField("Frobenius needs a finite field")
        return self.frob(a, (-times) % self.degree)

    def elements(self) -> Iterator:
        if self.char == 0:
            raise NotFiniteField("cannot enumerate the rationals")
        return iter(range(self.order))

    def nonzero_elements(self) -> Iterator:
        return iter(range(1, self.order))

    # -- I/O

    def fmt(self, a) -> str:
        if self.char == 0:
            return str(a)
        if self.degree == 1:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(self._digits[a]))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def to_json(self, a):
        if self.char == 0:
            return str(a)
        if self.degree == 1:
            return str(a)
        return list(self._digits[a])

    def from_json(self, v):
        try:
            if self.char == 0:
                if isinstance(v, float):
                    raise InputError("floating point coefficients are not exact")
                return Fraction(v)
            if isinstance(v, list):
                if len(v) > self.degree:
                    raise InputError(f"extension element {v} too long")
                return sum((int(c) % self.char) * self.char ** i for i, c in enumerate(v))
            if isinstance(v, bool) or isinstance(v, float):
                raise InputError(f"bad coefficient {v!r}")
            f = Fraction(v)
            num, den = f.numerator % self.char, f.denominator % self.char
            if den == 0:
                raise InputError(f"coefficient {v!r} has denominator divisible by p")
            return self.div(self.from_int(num), self.from_int(den))
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise InputError(f"bad coefficient {v!r}") from exc

    def spec_json(self) -> dict:
        if self.char == 0:
            return {"char": 0}
        d = {"char": self.char, "degree": self.degree}
        if self.modulus is not None:
            d["modulus"] = list(self.modulus)
        return d

    def check(self, other: "FieldCtx") -> None:
        if self is not other and self != other:
            raise MixedFields(f"{self!r} vs {other!r}")

    def scalar(self, v) -> "Scalar":
        if isinstance(v, Scalar):
            self.check(v.ctx)
            return v
        if isinstance(v, int):
            return Scalar(self, self.from_int(v))
        if isinstance(v, Fraction) and self.char == 0:
            return Scalar(self, v)
        return Scalar(self, self.from_json(v))


@functools.lru_cache(maxsize=None)
def rationals() -> FieldCtx:
    return FieldCtx(0)


@functools.lru_cache(maxsize=None)
def gf(p: int, m: int = 1, modulus: tuple[int, ...] | None = None) -> FieldCtx:
    """GF(p^m). Without a modulus a default (or the first irreducible) is chosen."""
    if not is_prime(p):
        raise InputError(f"characteristic {p} is not prime")
    if m < 1:
        raise InputError("extension degree must be positive")
    if p ** m > MAX_ORDER:
        raise InputError(f"GF({p}^{m}) exceeds the supported order {MAX_ORDER}")
    if m == 1:
        return FieldCtx(p, 1, None)
    if modulus is None:
        modulus = DEFAULT_MODULI.get((p, m)) or first_irreducible(p, m)
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != m + 1:
        raise NotIrreducible(f"modulus {modulus} does not have degree {m}")
    if modulus[-1] != 1:
        inv = pow(modulus[-1], p - 2, p)
        modulus = tuple(c * inv % p for c in modulus)
    if not is_irreducible_mod_p(modulus, p):
        raise NotIrreducible(f"{modulus} is reducible over GF({p})")
    return FieldCtx(p, m, modulus)


def field_from_json(spec: dict) -> FieldCtx:
    if not isinstance(spec, dict) or "char" not in spec:
        raise InputError("field spec needs a 'char' entry")
    p = int(spec["char"])
    if p == 0:
        return rationals()
    m = int(spec.get("degree", 1))
    mod = spec.get("modulus")
    return gf(p, m, tuple(mod) if mod is not None else None)


def field_from_string(s: str) -> FieldCtx:
    """Parse ``0``/``QQ``, ``p`` or ``p^m`` (also ``GF(p^m)``)."""
    t = s.strip().upper().replace("GF(", "").replace(")", "")
    if t in ("0", "Q", "QQ"):
        return rationals()
    try:
        if "^" in t:
            p, m = t.split("^")
            return gf(int(p), int(m))
        q = int(t)
        for p in range(2, q + 1):
            if q % p == 0:  # smallest prime factor; q must be a power of it
                m = 0
                while q % p == 0:
                    q //= p
                    m += 1
                if q == 1:
                    return gf(p, m)
                break
        return gf(int(t))
    except ValueError as exc:
        raise InputError(f"bad field {s!r}") from exc


class Scalar:
    """Immutable field element."""

    __slots__ = ("ctx", "v")

    def __init__(self, ctx: FieldCtx, v):
        self.ctx = ctx
        self.v = v

    def _coerce(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            self.ctx.check(other.ctx)
            return other
        if isinstance(other, int):
            return Scalar(self.ctx, self.ctx.from_int(other))
        if isinstance(other, Fraction):
            return self.ctx.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx.add(self.v, o.v))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx.sub(self.v, o.v))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx.sub(o.v, self.v))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx.mul(self.v, o.v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx.div(self.v, o.v))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx.div(o.v, self.v))

    def __neg__(self):
        return Scalar(self.ctx, self.ctx.neg(self.v))

    def __pow__(self, e: int):
        return Scalar(self.ctx, self.ctx.power(self.v, e))

    def inverse(self) -> "Scalar":
        return Scalar(self.ctx, self.ctx.inv(self.v))

    def frobenius(self, inverse: bool = False) -> "Scalar":
        f = self.ctx.frob_inv if inverse else self.ctx.frob
        return Scalar(self.ctx, f(self.v))

    def is_zero(self) -> bool:
        return self.ctx.is_zero(self.v)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.ctx == other.ctx and self.v == other.v
        if isinstance(other, int):
            return self.v == self.ctx.from_int(other)
        if isinstance(other, Fraction) and self.ctx.char == 0:
            return self.v == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx, self.v))

    def __repr__(self) -> str:
        return self.ctx.fmt(self.v)


def field_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    a.ctx.check(b.ctx)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def frobenius(a: Scalar, direction: str = "forward") -> Scalar:
    if direction not in ("forward", "inverse"):
        raise ValueError(f"unknown direction {direction!r}")
    return a.frobenius(inverse=direction == "inverse")
