"""Algebraic Painleve VI solutions parametrised on an elliptic curve w^2 = R(s).

The residual of the equation

    q'' = 1/2 (1/q + 1/(q-1) + 1/(q-t)) q'^2 - (1/t + 1/(t-1) + 1/(q-t)) q'
          + q(q-1)(q-t) / (t^2 (t-1)^2)
            * (alpha + beta t/q^2 + gamma (t-1)/(q-1)^2 + delta t(t-1)/(q-t)^2)

(derivatives in t) is computed exactly in K(s)[w]/(w^2 - R).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import QuadExtElement, RationalFunction, UniPoly, squarefree_decomposition
from .belyi import _is_rational_square, j_invariant

__all__ = [
    "PVIParams",
    "AlgebraicSolution",
    "DegenerateParametrization",
    "pvi_residual",
    "verify_qform",
    "qform_element",
    "solution_curve_j",
    "NotAQForm",
]


class DegenerateParametrization(ValueError):
    """dt/ds vanishes identically."""


class NotAQForm(ValueError):
    pass


@dataclass(frozen=True)
class PVIParams:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction

    @classmethod
    def of(cls, *vals) -> "PVIParams":
        return cls(*(Fraction(v) for v in vals))

    def __iter__(self):
        return iter((self.alpha, self.beta, self.gamma, self.delta))

    def __str__(self):
        return "P_VI(" + ", ".join(str(v) for v in self) + ")"


@dataclass
class AlgebraicSolution:
    R: UniPoly
    q: QuadExtElement
    t: QuadExtElement
    params: PVIParams
    label: str = ""

    def __post_init__(self):
        if self.q.R != self.R or self.t.R != self.R:
            raise ValueError("q and t must live on the solution curve")


def pvi_residual(sol: AlgebraicSolution) -> QuadExtElement:
    """LHS - RHS of the equation, as an element u + v w (zero iff a solution)."""
    q, t = sol.q, sol.t
    a, b, c, d = sol.params
    ts = t.derivative()
    if ts.is_zero():
        raise DegenerateParametrization("t is constant along the curve")
    qt = q.derivative() / ts
    qtt = qt.derivative() / ts
    q1, t1, qmt = q - 1, t - 1, q - t
    rhs = (
        Fraction(1, 2) * (1 / q + 1 / q1 + 1 / qmt) * qt * qt
        - (1 / t + 1 / t1 + 1 / qmt) * qt
        + q * q1 * qmt / (t * t * t1 * t1)
        * (a + b * t / (q * q) + c * t1 / (q1 * q1) + d * t * t1 / (qmt * qmt))
    )
    return qtt - rhs


def verify_qform(f: QuadExtElement, inner: RationalFunction) -> bool:
    """True iff f = 1/2 + v w and (2f - 1)^2 = 1 - inner after w^2 -> R."""
    if f.u != RationalFunction(Fraction(1, 2)):
        return False
    g = 2 * f - 1
    return (g * g - (1 - inner)).is_zero()


def qform_element(inner: RationalFunction, R: UniPoly, sign: int = 1) -> QuadExtElement:
    """The value 1/2 + sign * sqrt(1 - inner)/2 written as u + v w on w^2 = R."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    rest = 1 - inner
    N, Dn = rest.num, rest.den
    G, rem = (N * Dn).divmod(R)
    if not rem.is_zero():
        raise NotAQForm("1 - inner is not R times a square")
    # G must be a constant square times a polynomial square
    root = UniPoly.constant(1, G.field)
    for fac, m in squarefree_decomposition(G):
        if m % 2:
            raise NotAQForm("1 - inner is not R times a square")
        root = root * fac ** (m // 2)
    lc = G.lc()
    if not lc.is_rational() or lc.rational() < 0:
        raise NotAQForm("leading coefficient is not a rational square")
    s = _is_rational_square(lc)
    if s is None:
        raise NotAQForm("leading coefficient is not a rational square")
    v = RationalFunction(root * (s * sign), Dn * 2)
    return QuadExtElement(RationalFunction(Fraction(1, 2)), v, R)


def solution_curve_j(sol: AlgebraicSolution | UniPoly):
    R = sol.R if isinstance(sol, AlgebraicSolution) else sol
    return j_invariant(R)
