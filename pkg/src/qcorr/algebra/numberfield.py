"""Exact arithmetic in simple number fields Q(theta) = Q[theta]/(m(theta)).

Elements are stored as an integer coefficient vector over the power basis
1, theta, ..., theta^(d-1) together with a positive common denominator.
Minimal polynomials are monic with integer coefficients, so products of
integer vectors stay integral after reduction and only the denominators
need a gcd pass.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

__all__ = [
    "NumberField",
    "AlgebraicNumber",
    "RATIONALS",
    "ZeroDivisor",
    "IncompatibleFields",
]

Scalar = Union[int, Fraction, "AlgebraicNumber"]


class ZeroDivisor(ArithmeticError):
    """Raised when an element shares a factor with a reducible modulus."""


class IncompatibleFields(TypeError):
    """Raised when combining elements of two different fields."""


# --- dense polynomial helpers over Q (lists of Fractions, ascending) ---------


def _qtrim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _qdivmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        s = len(a) - len(b)
        q[s] = c
        for i, bi in enumerate(b):
            a[s + i] -= c * bi
        a.pop()
        _qtrim(a)
    return _qtrim(q), a


def _qmul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _qtrim(out)


def _qsub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _qtrim([Fraction(c) for c in out])


def _qgcdext(a: list, b: list) -> tuple[list, list]:
    """Return (g, s) with g = s*a mod b, g the monic gcd of a and b."""
    r0, r1 = _qtrim(list(a)), _qtrim(list(b))
    s0, s1 = [Fraction(1)], []
    while r1:
        q, r = _qdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qsub(s0, _qmul(q, s1))
    lc = r0[-1]
    return [c / lc for c in r0], [c / lc for c in s0]


class NumberField:
    """A simple algebraic extension Q(theta) given by a monic integer polynomial.

    ``min_poly`` lists coefficients in ascending order, e.g. ``(-7, 0, 1)``
    for theta^2 - 7.  The polynomial must be squarefree; irreducibility is
    not checked (a reducible modulus surfaces later as :class:`ZeroDivisor`).
    """

    __slots__ = ("name", "min_poly", "degree", "_fold")

    def __init__(self, name: str | None, min_poly: Sequence[int]):
        coeffs = tuple(int(c) for c in min_poly)
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have positive degree")
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        d = len(coeffs) - 1
        if d > 1:
            deriv = [Fraction(i * c) for i, c in enumerate(coeffs)][1:]
            g, _ = _qgcdext([Fraction(c) for c in coeffs], deriv)
            if len(g) > 1:
                raise ValueError("minimal polynomial is not squarefree")
        self.name = name
        self.min_poly = coeffs
        self.degree = d
        # theta^k for k = d .. 2d-2 in the power basis
        fold = []
        cur = [-c for c in coeffs[:-1]]
        for _ in range(max(d - 1, 0)):
            fold.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [ci - top * mi for ci, mi in zip(cur, coeffs[:-1])]
        self._fold = tuple(fold)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1 and self.min_poly == (0, 1)

    def __eq__(self, other):
        if not isinstance(other, NumberField):
            return NotImplemented
        return self.min_poly == other.min_poly and (
            self.name == other.name or self.is_rational
        )

    def __hash__(self):
        return hash((None if self.is_rational else self.name, self.min_poly))

    def __repr__(self):
        if self.is_rational:
            return "RATIONALS"
        return f"NumberField({self.name!r}, {list(self.min_poly)})"

    def __call__(self, value: Scalar | Sequence) -> "AlgebraicNumber":
        if isinstance(value, AlgebraicNumber):
            if value.field != self:
                if value.field.is_rational:
                    return self.from_rational(value.rational())
                raise IncompatibleFields(f"{value.field!r} vs {self!r}")
            return value
        if isinstance(value, (int, Fraction)):
            return self.from_rational(value)
        return self.from_coeffs(value)

    def from_rational(self, q: int | Fraction) -> "AlgebraicNumber":
        q = Fraction(q)
        return AlgebraicNumber._raw(
            self, (q.numerator,) + (0,) * (self.degree - 1), q.denominator
        )

    def from_coeffs(self, coeffs: Iterable) -> "AlgebraicNumber":
        fr = [Fraction(c) for c in coeffs]
        if len(fr) > self.degree:
            raise ValueError("coefficient vector longer than field degree")
        fr += [Fraction(0)] * (self.degree - len(fr))
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        return AlgebraicNumber._make(self, [int(c * den) for c in fr], den)

    def zero(self) -> "AlgebraicNumber":
        return self.from_rational(0)

    def one(self) -> "AlgebraicNumber":
        return self.from_rational(1)

    def gen(self) -> "AlgebraicNumber":
        if self.degree == 1:
            return self.from_rational(-self.min_poly[0])
        return self.from_coeffs([0, 1])

    def _reduce(self, prod: list[int]) -> list[int]:
        d = self.degree
        low = prod[:d] + [0] * max(0, d - len(prod))
        for k in range(d, len(prod)):
            c = prod[k]
            if c:
                row = self._fold[k - d]
                for i in range(d):
                    low[i] += c * row[i]
        return low

    def complex_roots(self) -> list[complex]:
        import numpy as np

        return [complex(r) for r in np.roots(list(reversed(self.min_poly)))]


RATIONALS = NumberField(None, (0, 1))


class AlgebraicNumber:
    """An element of a :class:`NumberField`, always kept in reduced form."""

    __slots__ = ("field", "num", "den", "_hash")

    @classmethod
    def _raw(cls, field, num, den):
        self = object.__new__(cls)
        self.field = field
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def _make(cls, field, num, den):
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = den
        for c in num:
            if g == 1:
                break
            g = gcd(g, c)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        return cls._raw(field, tuple(num), den)

    # -- coercion -------------------------------------------------------------
    def _coerce(self, other) -> "AlgebraicNumber":
        if isinstance(other, AlgebraicNumber):
            if other.field is self.field or other.field == self.field:
                return other
            if other.field.is_rational:
                return self.field.from_rational(other.rational())
            if self.field.is_rational:
                raise _Promote(other.field)
            raise IncompatibleFields(f"{self.field!r} vs {other.field!r}")
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def _binop(self, other, fn, reflected=False):
        try:
            o = self._coerce(other)
        except _Promote as p:
            me = p.field.from_rational(self.rational())
            return fn(other, me) if reflected else fn(me, other)
        if o is NotImplemented:
            return NotImplemented
        return fn(o, self) if reflected else fn(self, o)

    # -- predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    # -- arithmetic -----------------------------------------------------------
    @staticmethod
    def _add(a, b):
        if a.den == b.den:
            return AlgebraicNumber._make(a.field, [x + y for x, y in zip(a.num, b.num)], a.den)
        return AlgebraicNumber._make(
            a.field, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den
        )

    @staticmethod
    def _sub(a, b):
        if a.den == b.den:
            return AlgebraicNumber._make(a.field, [x - y for x, y in zip(a.num, b.num)], a.den)
        return AlgebraicNumber._make(
            a.field, [x * b.den - y * a.den for x, y in zip(a.num, b.num)], a.den * b.den
        )

    @staticmethod
    def _mul(a, b):
        f = a.field
        if f.degree == 1:
            return AlgebraicNumber._make(f, [a.num[0] * b.num[0]], a.den * b.den)
        an, bn = a.num, b.num
        prod = [0] * (2 * f.degree - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        prod[i + j] += x * y
        return AlgebraicNumber._make(f, f._reduce(prod), a.den * b.den)

    @staticmethod
    def _div(a, b):
        return AlgebraicNumber._mul(a, b.inverse())

    def __add__(self, other):
        return self._binop(other, AlgebraicNumber._add)

    def __radd__(self, other):
        return self._binop(other, AlgebraicNumber._add, reflected=True)

    def __sub__(self, other):
        return self._binop(other, AlgebraicNumber._sub)

    def __rsub__(self, other):
        return self._binop(other, AlgebraicNumber._sub, reflected=True)

    def __mul__(self, other):
        return self._binop(other, AlgebraicNumber._mul)

    def __rmul__(self, other):
        return self._binop(other, AlgebraicNumber._mul, reflected=True)

    def __truediv__(self, other):
        return self._binop(other, AlgebraicNumber._div)

    def __rtruediv__(self, other):
        return self._binop(other, AlgebraicNumber._div, reflected=True)

    def __neg__(self):
        return AlgebraicNumber._raw(self.field, tuple(-c for c in self.num), self.den)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = AlgebraicNumber._mul(result, base)
            e >>= 1
            if e:
                base = AlgebraicNumber._mul(base, base)
        return result

    def inverse(self) -> "AlgebraicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        f = self.field
        if self.is_rational():
            return f.from_rational(Fraction(self.den, self.num[0]))
        a = _qtrim([Fraction(c, self.den) for c in self.num])
        m = [Fraction(c) for c in f.min_poly]
        g, s = _qgcdext(a, m)
        if len(g) > 1:
            raise ZeroDivisor(f"{self} is a zero divisor modulo {f!r}")
        return f.from_coeffs(s)

    def norm(self) -> Fraction:
        """Field norm, via the determinant of the multiplication matrix."""
        import sympy

        d = self.field.degree
        basis = [self.field.from_coeffs([0] * i + [1]) for i in range(d)]
        cols = [(self * b).coeffs() for b in basis]
        mat = sympy.Matrix(d, d, lambda i, j: sympy.Rational(cols[j][i]))
        det = mat.det()
        return Fraction(int(det.p), int(det.q))

    # -- comparison / hashing -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, AlgebraicNumber):
            if other.field != self.field:
                if other.field.is_rational or self.field.is_rational:
                    return self.is_rational() and other.is_rational() and (
                        self.rational() == other.rational()
                    )
                return False
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.num, self.den, self.field.name))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # -- numerics / display -----------------------------------------------------
    def to_complex(self, root: complex | None = None) -> complex:
        if self.field.degree == 1:
            return complex(self.num[0] / self.den)
        if root is None:
            raise ValueError("an embedding root is required for non-rational fields")
        acc = 0j
        for c in reversed(self.num):
            acc = acc * root + c
        return acc / self.den

    def __str__(self):
        name = self.field.name or "theta"
        terms = []
        for i, c in enumerate(self.coeffs()):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mon = name if i == 1 else f"{name}^{i}"
                if c == 1:
                    terms.append(mon)
                elif c == -1:
                    terms.append(f"-{mon}")
                else:
                    terms.append(f"{c}*{mon}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return f"AlgebraicNumber({self})"


class _Promote(Exception):
    def __init__(self, field):
        super().__init__()
        self.field = field


def sqrt_rational(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    from math import isqrt

    q = Fraction(q)
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def embed(x: AlgebraicNumber, root: complex | None) -> complex:
    return x.to_complex(root) if x.field.degree > 1 else complex(x.rational())

