"""Exact Belyi-map checks, the square-root correspondence and j-invariants.

For a map phi0 = P/Q the correspondent function is

    phi1 = 1/2 + sqrt(1 - phi0) / 2,    4 phi1 (1 - phi1) = phi0,

and since 1 - phi0 = (Q - P) Q / Q^2 the curve carrying phi1 is
y^2 = D(x), the squarefree part of (Q - P) Q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

import sympy

from .algebra import (
    RATIONALS,
    AlgebraicNumber,
    NumberField,
    QuadExtElement,
    RationalFunction,
    UniPoly,
    squarefree_decomposition,
)
from .passport import Partition, Passport

__all__ = [
    "BelyiMap",
    "FiberStructure",
    "NotBelyi",
    "verify_belyi",
    "QCorrespondence",
    "q_correspond",
    "q_identity_residual",
    "NotRegularOnCurve",
    "DegenerateRational",
    "UnsupportedGenus",
    "QuarticInvariants",
    "quartic_invariants",
    "j_invariant",
    "SingularCurve",
    "WeierstrassModel",
    "to_weierstrass",
    "same_j",
    "IncomparableFields",
]

FIBER_NAMES = ("0", "1", "inf")


class NotBelyi(ValueError):
    def __init__(self, message: str, deficit: int):
        super().__init__(message)
        self.deficit = deficit


class NotRegularOnCurve(ValueError):
    """phi1 would need a square root other than the curve's; ``D`` is the radicand found."""

    def __init__(self, message: str, D: UniPoly | None = None):
        super().__init__(message)
        self.D = D


class UnsupportedGenus(ValueError):
    pass


class DegenerateRational(ValueError):
    """The square root is rational: phi1 lives on the projective line.

    ``phi1`` holds the rational function when the leading unit is a square
    in the base field, else None.
    """

    def __init__(self, message: str, phi1: RationalFunction | None, unit):
        super().__init__(message)
        self.phi1 = phi1
        self.unit = unit


class SingularCurve(ValueError):
    pass


class IncomparableFields(TypeError):
    pass


# --------------------------------------------------------------------------
# ramification


@dataclass
class FiberStructure:
    """Per fiber: (multiplicity, factor degree) pairs, plus the point x=inf."""

    degree: int
    fibers: dict[str, list[tuple[int, int]]]
    infinity: tuple[str, int] | None  # (fiber name, multiplicity)

    def partition(self, name: str) -> Partition:
        parts = []
        for m, d in self.fibers[name]:
            parts += [m] * d
        if self.infinity and self.infinity[0] == name:
            parts.append(self.infinity[1])
        return Partition(parts)

    def ramification(self) -> int:
        return sum(sum(p - 1 for p in self.partition(k)) for k in FIBER_NAMES)

    @property
    def passport(self) -> Passport:
        return Passport(*(self.partition(k) for k in FIBER_NAMES))


def _fiber(poly: UniPoly) -> list[tuple[int, int]]:
    if poly.degree <= 0:
        return []
    return [(m, f.degree) for f, m in squarefree_decomposition(poly)]


def fiber_structure(phi: RationalFunction) -> FiberStructure:
    P, Q = phi.num, phi.den
    n = max(P.degree, Q.degree)
    if n <= 0:
        raise ValueError("constant map")
    W = P - Q
    fibers = {"0": _fiber(P), "1": _fiber(W), "inf": _fiber(Q)}
    infinity = None
    for name, poly in (("0", P), ("1", W), ("inf", Q)):
        if poly.degree < n:
            infinity = (name, n - max(poly.degree, 0))
            break
    return FiberStructure(n, fibers, infinity)


def verify_belyi(phi: RationalFunction) -> tuple[FiberStructure, Passport]:
    """Check that phi ramifies only over 0, 1 and infinity.

    Riemann-Hurwitz on the sphere: total ramification is 2n - 2, so the three
    fibers saturate it exactly when no other critical value exists.
    """
    fs = fiber_structure(phi)
    n = fs.degree
    total = 0
    for name in FIBER_NAMES:
        pts = sum(d for _m, d in fs.fibers[name])
        if fs.infinity and fs.infinity[0] == name:
            pts += 1
        total += n - pts
    need = 2 * n - 2
    assert total <= need, f"ramification {total} exceeds 2n-2 = {need}"
    if total < need:
        raise NotBelyi(f"ramification over 0,1,inf is {total}, short of {need}", need - total)
    for name in FIBER_NAMES:
        assert fs.partition(name).sum == n
    return fs, fs.passport


@dataclass
class BelyiMap:
    phi: RationalFunction
    label: str | None = None
    structure: FiberStructure | None = field(default=None, repr=False)
    passport: Passport | None = None

    def __post_init__(self):
        if isinstance(self.phi, UniPoly):
            self.phi = RationalFunction.from_poly(self.phi)

    @property
    def field(self) -> NumberField:
        return self.phi.field

    @property
    def degree(self) -> int:
        return max(self.phi.num.degree, self.phi.den.degree)

    def verify(self) -> Passport:
        self.structure, self.passport = verify_belyi(self.phi)
        return self.passport


# --------------------------------------------------------------------------
# the correspondence


def _square_split(q: Fraction) -> tuple[Fraction, Fraction]:
    """q = s^2 * r with r a squarefree integer (sign kept in r)."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("zero has no square split")
    sign = -1 if q < 0 else 1
    num, den = abs(q.numerator), q.denominator
    # q = num/den = num*den / den^2
    m = num * den
    r = 1
    s = 1
    for p, e in sympy.factorint(m).items():
        s *= p ** (e // 2)
        if e % 2:
            r *= p
    return Fraction(s, den), Fraction(sign * r)


def _is_rational_square(a: AlgebraicNumber) -> Fraction | None:
    if not a.is_rational():
        return None
    q = a.rational()
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


@dataclass
class QCorrespondence:
    S: UniPoly
    D: UniPoly
    Q: UniPoly
    infinity_branched: bool
    genus: str  # "0-rational", "0-conic" or "1"
    genus1_passport: Passport | None = None
    C: tuple[int, ...] = ()
    k: int = 0

    @property
    def u(self) -> RationalFunction:
        return RationalFunction(Fraction(1, 2))

    @property
    def v(self) -> RationalFunction:
        return RationalFunction(self.S, self.Q * 2)

    @property
    def phi1(self) -> QuadExtElement:
        """u + v*y on the curve y^2 = D."""
        return QuadExtElement(self.u, self.v, self.D)

    @property
    def branch_count(self) -> int:
        return self.D.degree + (1 if self.infinity_branched else 0)


def _decompose_radicand(F: UniPoly):
    """F = S^2 D, D squarefree; rational content squares go into S."""
    parts = squarefree_decomposition(F)
    S = UniPoly.constant(1, F.field)
    D = UniPoly.constant(1, F.field)
    for f, m in parts:
        S = S * f ** (m // 2)
        if m % 2:
            D = D * f
    c = F.lc()
    if c.is_rational():
        s, r = _square_split(c.rational())
        S = S * s
        D = D * r
    else:
        D = D * c
    return S, D


def primitive_pair(phi: RationalFunction) -> tuple[UniPoly, UniPoly]:
    """(P, Q) with phi = P/Q; over Q scaled to coprime integer coefficients."""
    P, Q = phi.num, phi.den
    if not phi.field.is_rational:
        return P, Q
    coeffs = [c.rational() for c in P.coeffs + Q.coeffs]
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    content = 0
    for c in coeffs:
        content = gcd(content, int(c * den))
    scale = Fraction(den, content)
    return P * scale, Q * scale


def q_correspond(m: BelyiMap | RationalFunction) -> QCorrespondence:
    """Curve and passport of phi1 = 1/2 + sqrt(1 - phi0)/2 for a Belyi phi0."""
    bm = m if isinstance(m, BelyiMap) else BelyiMap(m)
    if bm.passport is None:
        bm.verify()
    P, Q = primitive_pair(bm.phi)
    n = bm.degree
    F = (Q - P) * Q
    S, D = _decompose_radicand(F)
    inf_branched = F.degree % 2 == 1
    b = D.degree + (1 if inf_branched else 0)
    if D.degree <= 0:
        unit = D.lc()
        root = _is_rational_square(unit)
        phi1 = None
        if root is not None:
            phi1 = RationalFunction(Fraction(1, 2)) + RationalFunction(S * root, Q * 2)
        raise DegenerateRational(
            "1 - phi0 is a square times a constant; phi1 is rational", phi1, unit
        )
    if b > 4:
        raise UnsupportedGenus(f"{b} branch points give genus {(b - 2) // 2}")

    fs = bm.structure
    white = fs.partition("1")
    if b < 4:
        wc = white.counts()
        if not set(wc) - {1, 2}:
            k = wc[1]
            if k <= 4 and len(fs.partition("inf")) >= 4 - k:
                raise NotRegularOnCurve(
                    f"the radicand has {b} branch points; the passport "
                    f"{bm.passport} asks for {k} white and {4 - k} face branch points",
                    D,
                )
        return QCorrespondence(S, D, Q, inf_branched, "0-conic")

    # genus 1: read the passport of phi1 off the branching of the cover
    if any(mult > 2 for mult in white):
        raise NotRegularOnCurve("white points of valency > 2 make phi1 ramify over 1/2", D)
    A = list(fs.partition("0"))
    poles: list[int] = []
    C: list[int] = []
    for mult, deg in fs.fibers["inf"]:
        for _ in range(deg):
            if mult % 2:
                C.append(mult)
            else:
                poles += [mult // 2] * 2
    if fs.infinity and fs.infinity[0] == "inf":
        mult = fs.infinity[1]
        if inf_branched:
            C.append(mult)
        else:
            poles += [mult // 2] * 2
    p1 = Passport(Partition(A), Partition(A), Partition(poles + C))
    assert p1.degree == n
    k = sum(1 for mult in white if mult == 1)
    return QCorrespondence(S, D, Q, inf_branched, "1", p1, tuple(sorted(C, reverse=True)), k)


def q_identity_residual(phi0: RationalFunction, phi1) -> QuadExtElement | RationalFunction:
    """4 phi1 (1 - phi1) - phi0, reduced on the curve of phi1 if it has one."""
    return 4 * phi1 * (1 - phi1) - phi0


# --------------------------------------------------------------------------
# quartic invariants


@dataclass(frozen=True)
class QuarticInvariants:
    I: AlgebraicNumber
    J: AlgebraicNumber

    @property
    def discriminant_like(self) -> AlgebraicNumber:
        return 4 * self.I**3 - self.J**2


def quartic_invariants(D: UniPoly) -> QuarticInvariants:
    if D.degree not in (3, 4):
        raise ValueError(f"need a cubic or quartic, got degree {D.degree}")
    e, d, c, b, a = (D[i] for i in range(5))
    I = 12 * a * e - 3 * b * d + c * c
    J = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * b * b * e - 2 * c**3
    return QuarticInvariants(I, J)


def j_invariant(D: UniPoly) -> AlgebraicNumber:
    inv = quartic_invariants(D)
    den = inv.discriminant_like
    if den.is_zero():
        raise SingularCurve(f"{D} has a repeated root")
    return 6912 * inv.I**3 / den


@dataclass(frozen=True)
class WeierstrassModel:
    """Y^2 = X^3 + p X + q."""

    p: AlgebraicNumber
    q: AlgebraicNumber

    @property
    def j(self) -> AlgebraicNumber:
        den = 4 * self.p**3 + 27 * self.q**2
        if den.is_zero():
            raise SingularCurve("singular Weierstrass model")
        return 1728 * 4 * self.p**3 / den

    def cubic(self) -> UniPoly:
        f = self.p.field
        return UniPoly([self.q, self.p, 0, 1], f)

    def __str__(self):
        return f"Y^2 = X^3 + ({self.p})*X + ({self.q})"


def to_weierstrass(D: UniPoly) -> WeierstrassModel:
    inv = quartic_invariants(D)
    if inv.discriminant_like.is_zero():
        raise SingularCurve(f"{D} has a repeated root")
    return WeierstrassModel(-27 * inv.I, -27 * inv.J)


def _j_of(obj) -> AlgebraicNumber:
    if isinstance(obj, WeierstrassModel):
        return obj.j
    if isinstance(obj, UniPoly):
        return j_invariant(obj)
    if isinstance(obj, AlgebraicNumber):
        return obj
    return RATIONALS(obj)


def same_j(a, b) -> bool:
    """Equality of j-invariants, compared in a common field."""
    ja, jb = _j_of(a), _j_of(b)
    if ja.field == jb.field:
        return ja == jb
    if ja.is_rational() and jb.is_rational():
        return ja.rational() == jb.rational()
    if ja.field.is_rational or jb.field.is_rational:
        # a rational value equals a field element only if the latter is rational
        return ja.is_rational() and jb.is_rational() and ja.rational() == jb.rational()
    raise IncomparableFields(f"j values live in {ja.field!r} and {jb.field!r}")
