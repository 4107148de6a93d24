"""Elements u + v*w of K(s)[w]/(w^2 - R(s)) and their s-derivatives."""

from __future__ import annotations

from fractions import Fraction

from .poly import RationalFunction, UniPoly, poly_gcd

__all__ = ["QuadExtElement", "quadext_derivative"]


class QuadExtElement:
    """u + v*w with w^2 = R; u, v rational functions in the base variable."""

    __slots__ = ("u", "v", "R")

    def __init__(self, u, v, R: UniPoly, *, check: bool = False):
        self.u = _as_rf(u)
        self.v = _as_rf(v)
        self.R = R
        if check and poly_gcd(R, R.derivative()).degree > 0:
            raise ValueError("relation polynomial is not squarefree")

    @classmethod
    def w(cls, R: UniPoly) -> "QuadExtElement":
        return cls(RationalFunction(0), RationalFunction(1), R)

    @classmethod
    def base(cls, u, R: UniPoly) -> "QuadExtElement":
        return cls(u, RationalFunction(0), R)

    def _coerce(self, other):
        if isinstance(other, QuadExtElement):
            if other.R != self.R:
                raise ValueError("elements live on different curves")
            return other
        if isinstance(other, (int, Fraction, RationalFunction, UniPoly)):
            return QuadExtElement(other, 0, self.R)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExtElement(self.u + o.u, self.v + o.v, self.R)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExtElement(self.u - o.u, self.v - o.v, self.R)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return QuadExtElement(-self.u, -self.v, self.R)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        u1, v1, u2, v2 = self.u, self.v, o.u, o.v
        if v1.is_zero() and v2.is_zero():
            return QuadExtElement(u1 * u2, v1, self.R)
        if v2.is_zero():
            return QuadExtElement(u1 * u2, v1 * u2, self.R)
        if v1.is_zero():
            return QuadExtElement(u1 * u2, u1 * v2, self.R)
        return QuadExtElement(u1 * u2 + v1 * v2 * self.R, u1 * v2 + u2 * v1, self.R)

    __rmul__ = __mul__

    def conj(self) -> "QuadExtElement":
        return QuadExtElement(self.u, -self.v, self.R)

    def norm(self) -> RationalFunction:
        return self.u * self.u - self.v * self.v * self.R

    def inverse(self) -> "QuadExtElement":
        n = self.norm()
        if n.is_zero():
            raise ZeroDivisionError("element has zero norm")
        ni = n.inverse()
        return QuadExtElement(self.u * ni, -self.v * ni, self.R)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.v.is_zero():
            inv = o.u.inverse()
            return QuadExtElement(self.u * inv, self.v * inv, self.R)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = QuadExtElement(RationalFunction(1), RationalFunction(0), self.R)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return self.u.is_zero() and self.v.is_zero()

    def __eq__(self, other):
        if isinstance(other, QuadExtElement):
            return self.R == other.R and self.u == other.u and self.v == other.v
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self == o

    def __hash__(self):
        return hash((self.u, self.v, self.R))

    def derivative(self) -> "QuadExtElement":
        return quadext_derivative(self)

    def eval_complex(self, s: complex, w: complex, root: complex | None = None) -> complex:
        return self.u.eval_complex(s, root) + self.v.eval_complex(s, root) * w

    def __repr__(self):
        return f"QuadExtElement(u={self.u}, v={self.v}, R={self.R})"


def _as_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, UniPoly):
        return RationalFunction.from_poly(x)
    return RationalFunction(x)


def quadext_derivative(e: QuadExtElement) -> QuadExtElement:
    """d/ds of u + v*w using dw/ds = R' w / (2R)."""
    R = e.R
    du = e.u.derivative()
    if e.v.is_zero():
        return QuadExtElement(du, e.v, R)
    ratio = RationalFunction(R.derivative(), R * 2)
    return QuadExtElement(du, e.v.derivative() + e.v * ratio, R)
