"""Dense univariate polynomials and rational functions over a number field."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .numberfield import RATIONALS, AlgebraicNumber, NumberField

__all__ = ["UniPoly", "RationalFunction", "squarefree_decomposition", "poly_gcd"]


class UniPoly:
    """Polynomial with :class:`AlgebraicNumber` coefficients, ascending order.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs: Iterable = (), field: NumberField = RATIONALS):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, field, coeffs):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self = object.__new__(cls)
        self.field = field
        self.coeffs = tuple(cs)
        return self

    @classmethod
    def x(cls, field: NumberField = RATIONALS) -> "UniPoly":
        return cls._raw(field, (field.zero(), field.one()))

    @classmethod
    def constant(cls, c, field: NumberField = RATIONALS) -> "UniPoly":
        return cls._raw(field, (field(c),))

    # -- basic properties -------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def lc(self) -> AlgebraicNumber:
        return self.coeffs[-1] if self.coeffs else self.field.zero()

    def __getitem__(self, i: int) -> AlgebraicNumber:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero()

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc.is_one():
            return self
        inv = lc.inverse()
        return UniPoly._raw(self.field, [c * inv for c in self.coeffs])

    # -- coercion -------------------------------------------------------------
    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.field == self.field:
                return other
            if other.field.is_rational:
                return other.change_field(self.field)
            if self.field.is_rational:
                raise _PromotePoly(other.field)
            raise TypeError(f"incompatible fields {self.field!r} and {other.field!r}")
        if isinstance(other, (int, Fraction, AlgebraicNumber)):
            return UniPoly._raw(self.field, (self.field(other),))
        return NotImplemented

    def change_field(self, field: NumberField) -> "UniPoly":
        return UniPoly._raw(field, [field(c) for c in self.coeffs])

    def _binop(self, other, fn, reflected=False):
        try:
            o = self._coerce(other)
        except _PromotePoly as p:
            me = self.change_field(p.field)
            return fn(other, me) if reflected else fn(me, other)
        if o is NotImplemented:
            return NotImplemented
        return fn(o, self) if reflected else fn(self, o)

    # -- ring operations --------------------------------------------------------
    @staticmethod
    def _add(a, b):
        n, m = len(a.coeffs), len(b.coeffs)
        if n < m:
            a, b, n, m = b, a, m, n
        cs = list(a.coeffs)
        for i in range(m):
            cs[i] = cs[i] + b.coeffs[i]
        return UniPoly._raw(a.field, cs)

    @staticmethod
    def _sub(a, b):
        return UniPoly._add(a, -b)

    @staticmethod
    def _mul(a, b):
        if not a.coeffs or not b.coeffs:
            return UniPoly._raw(a.field, ())
        if len(b.coeffs) == 1:
            c = b.coeffs[0]
            return UniPoly._raw(a.field, [x * c for x in a.coeffs])
        if len(a.coeffs) == 1:
            c = a.coeffs[0]
            return UniPoly._raw(a.field, [c * y for y in b.coeffs])
        f = a.field
        if f.degree == 1:
            return _mul_rational(a, b)
        out = [None] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(b.coeffs):
                if y.is_zero():
                    continue
                t = x * y
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        zero = f.zero()
        return UniPoly._raw(f, [zero if c is None else c for c in out])

    def __add__(self, other):
        return self._binop(other, UniPoly._add)

    def __radd__(self, other):
        return self._binop(other, UniPoly._add, reflected=True)

    def __sub__(self, other):
        return self._binop(other, UniPoly._sub)

    def __rsub__(self, other):
        return self._binop(other, UniPoly._sub, reflected=True)

    def __mul__(self, other):
        return self._binop(other, UniPoly._mul)

    def __rmul__(self, other):
        return self._binop(other, UniPoly._mul, reflected=True)

    def __neg__(self):
        return UniPoly._raw(self.field, [-c for c in self.coeffs])

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = UniPoly._raw(self.field, (self.field.one(),))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        if len(rem) - 1 < db:
            return UniPoly._raw(f, ()), self
        inv = other.coeffs[-1].inverse()
        q = [f.zero()] * (len(rem) - db)
        bco = other.coeffs
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c.is_zero():
                continue
            c = c * inv
            s = k - db
            q[s] = c
            for i in range(db):
                if not bco[i].is_zero():
                    rem[s + i] = rem[s + i] - c * bco[i]
            rem[k] = f.zero()
        return UniPoly._raw(f, q), UniPoly._raw(f, rem[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def derivative(self) -> "UniPoly":
        return UniPoly._raw(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, value):
        acc = self.field.zero() if not isinstance(value, (complex, float)) else 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly._raw(self.field, ())
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def eval_complex(self, x: complex, root: complex | None = None) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + (c.to_complex(root) if self.field.degree > 1 else complex(c.rational()))
        return acc

    def numeric_coeffs(self, root: complex | None = None) -> list[complex]:
        if self.field.degree > 1:
            return [c.to_complex(root) for c in self.coeffs]
        return [complex(c.rational()) for c in self.coeffs]

    # -- comparison -------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, UniPoly):
            if len(self.coeffs) != len(other.coeffs):
                return False
            return all(a == b for a, b in zip(self.coeffs, other.coeffs))
        if isinstance(other, (int, Fraction, AlgebraicNumber)):
            if other == 0:
                return not self.coeffs
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        return format_poly(self, "x")

    def __repr__(self):
        return f"UniPoly({self})"


class _PromotePoly(Exception):
    def __init__(self, field):
        super().__init__()
        self.field = field


def _mul_rational(a: UniPoly, b: UniPoly) -> UniPoly:
    # rational fast path: scale to integers, convolve, restore denominators
    da = 1
    for c in a.coeffs:
        da = da * c.den // _gcd(da, c.den)
    db = 1
    for c in b.coeffs:
        db = db * c.den // _gcd(db, c.den)
    ia = [c.num[0] * (da // c.den) for c in a.coeffs]
    ib = [c.num[0] * (db // c.den) for c in b.coeffs]
    out = [0] * (len(ia) + len(ib) - 1)
    for i, x in enumerate(ia):
        if x:
            for j, y in enumerate(ib):
                out[i + j] += x * y
    den = da * db
    f = a.field
    return UniPoly._raw(f, [AlgebraicNumber._make(f, [c], den) for c in out])


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


def format_poly(p: UniPoly, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c.is_zero():
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if c.is_rational():
            r = c.rational()
            sign = "-" if r < 0 else "+"
            r = abs(r)
            if mon and r == 1:
                body = mon
            elif mon:
                body = f"{r}*{mon}"
            else:
                body = str(r)
        else:
            sign = "+"
            body = f"({c})" + (f"*{mon}" if mon else "")
        parts.append((sign, body))
    s0, b0 = parts[0]
    out = ("-" if s0 == "-" else "") + b0
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor (zero if both are zero)."""
    if a.field != b.field:
        a, b = _unify(a, b)
    if a.field.degree == 1:
        return _gcd_rational(a, b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _unify(a, b):
    if a.field.is_rational:
        return a.change_field(b.field), b
    if b.field.is_rational:
        return a, b.change_field(a.field)
    raise TypeError("incompatible fields")


def _gcd_rational(a: UniPoly, b: UniPoly) -> UniPoly:
    # primitive remainder sequence on integer polynomials; avoids Fraction blowup
    from math import gcd

    def prim(p):
        den = 1
        for c in p.coeffs:
            den = den * c.den // gcd(den, c.den)
        ints = [c.num[0] * (den // c.den) for c in p.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return [v // g for v in ints] if g else ints

    A, B = prim(a), prim(b)
    if len(A) < len(B):
        A, B = B, A
    while B:
        # pseudo-remainder of A by B
        r = list(A)
        lb = B[-1]
        db = len(B) - 1
        while len(r) - 1 >= db and r:
            lr = r[-1]
            s = len(r) - 1 - db
            r = [v * lb for v in r]
            for i in range(db + 1):
                r[s + i] -= lr * B[i]
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        g = 0
        for v in r:
            g = gcd(g, v)
        if g:
            r = [v // g for v in r]
        A, B = B, r
    f = a.field
    if not A:
        return UniPoly._raw(f, ())
    lead = A[-1]
    return UniPoly._raw(f, [f.from_rational(Fraction(v, lead)) for v in A])


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: return [(f_i, m_i)] with p = lc * prod f_i^m_i.

    Factors are monic, squarefree and pairwise coprime; multiplicities are
    strictly increasing and only nonconstant factors are returned.
    """
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    if p.degree < 1:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        fac = poly_gcd(b, d)
        if fac.degree > 0:
            out.append((fac.monic(), i))
        b = b.exact_div(fac)
        c = d.exact_div(fac)
        d = c - b.derivative()
        i += 1
    return out


class RationalFunction:
    """num/den in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        if not isinstance(num, UniPoly):
            num = UniPoly.constant(num) if not isinstance(den, UniPoly) else UniPoly.constant(num, den.field)
        if den is None:
            den = UniPoly._raw(num.field, (num.field.one(),))
        elif not isinstance(den, UniPoly):
            den = UniPoly.constant(den, num.field)
        if num.field != den.field:
            num, den = _unify(num, den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = UniPoly._raw(num.field, (num.field.one(),))
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            lc = den.lc()
            if not lc.is_one():
                inv = lc.inverse()
                num = UniPoly._raw(num.field, [c * inv for c in num.coeffs])
                den = UniPoly._raw(den.field, [c * inv for c in den.coeffs])
        self.num = num
        self.den = den

    @property
    def field(self) -> NumberField:
        return self.num.field

    @classmethod
    def from_poly(cls, p: UniPoly) -> "RationalFunction":
        return cls(p, UniPoly._raw(p.field, (p.field.one(),)), _reduced=True)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, UniPoly):
            return RationalFunction.from_poly(other)
        if isinstance(other, AlgebraicNumber) and not other.field.is_rational:
            return RationalFunction.from_poly(UniPoly.constant(other, other.field))
        if isinstance(other, (int, Fraction, AlgebraicNumber)):
            return RationalFunction.from_poly(UniPoly.constant(other, self.field))
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    @staticmethod
    def _add(a, b):
        if a.den == b.den:
            return RationalFunction(a.num + b.num, a.den)
        g = poly_gcd(a.den, b.den)
        if g.degree == 0:
            return RationalFunction(a.num * b.den + b.num * a.den, a.den * b.den)
        bd = b.den.exact_div(g)
        ad = a.den.exact_div(g)
        return RationalFunction(a.num * bd + b.num * ad, a.den * bd)

    @staticmethod
    def _mul(a, b):
        if a.is_zero() or b.is_zero():
            return RationalFunction(UniPoly._raw(a.field, ()))
        g1 = poly_gcd(a.num, b.den)
        g2 = poly_gcd(b.num, a.den)
        an, bd = (a.num.exact_div(g1), b.den.exact_div(g1)) if g1.degree > 0 else (a.num, b.den)
        bn, ad = (b.num.exact_div(g2), a.den.exact_div(g2)) if g2.degree > 0 else (b.num, a.den)
        num = an * bn
        den = ad * bd
        lc = den.lc()
        if not lc.is_one():
            inv = lc.inverse()
            num = num * inv
            den = den * inv
        return RationalFunction(num, den, _reduced=True)

    def _binop(self, other, fn, reflected=False):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.field != self.field:
            if o.field.is_rational:
                o = o.change_field(self.field)
            elif self.field.is_rational:
                me = self.change_field(o.field)
                return fn(o, me) if reflected else fn(me, o)
            else:
                raise TypeError("incompatible fields")
        return fn(o, self) if reflected else fn(self, o)

    def change_field(self, field: NumberField) -> "RationalFunction":
        return RationalFunction(self.num.change_field(field), self.den.change_field(field), _reduced=True)

    def __add__(self, other):
        return self._binop(other, RationalFunction._add)

    def __radd__(self, other):
        return self._binop(other, RationalFunction._add, reflected=True)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: RationalFunction._add(a, -b))

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: RationalFunction._add(a, -b), reflected=True)

    def __mul__(self, other):
        return self._binop(other, RationalFunction._mul)

    def __rmul__(self, other):
        return self._binop(other, RationalFunction._mul, reflected=True)

    def __truediv__(self, other):
        return self._binop(other, lambda a, b: RationalFunction._mul(a, b.inverse()))

    def __rtruediv__(self, other):
        return self._binop(other, lambda a, b: RationalFunction._mul(a, b.inverse()), reflected=True)

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction(self.num ** e, self.den ** e, _reduced=True)

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        num, den = self.den, self.num
        inv = den.lc().inverse()
        return RationalFunction(num * inv, den * inv, _reduced=True)

    def derivative(self) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, value):
        return self.num(value) / self.den(value)

    def eval_complex(self, x: complex, root: complex | None = None) -> complex:
        return self.num.eval_complex(x, root) / self.den.eval_complex(x, root)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, AlgebraicNumber, UniPoly)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


def as_poly_list(values: Sequence, field: NumberField = RATIONALS) -> UniPoly:
    return UniPoly(values, field)
