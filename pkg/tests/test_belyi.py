from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from qcorr.algebra import RATIONALS, RationalFunction, UniPoly
from qcorr.belyi import (
    BelyiMap,
    DegenerateRational,
    NotBelyi,
    NotRegularOnCurve,
    SingularCurve,
    j_invariant,
    q_correspond,
    q_identity_residual,
    quartic_invariants,
    same_j,
    to_weierstrass,
    verify_belyi,
)

mpmath.mp.dps = 50

X = UniPoly.x()


# --- numeric oracle: j from the cross-ratio of the branch points ------------


def _mp_embeddings(field):
    if field.degree == 1:
        return [None]
    return mpmath.polyroots(list(reversed(field.min_poly)), maxsteps=200, extraprec=200)


def _mp_value(a, root):
    if a.field.degree == 1:
        return mpmath.mpf(a.num[0]) / a.den
    return sum(mpmath.mpf(c) * root**i for i, c in enumerate(a.num)) / a.den


def numeric_j(D: UniPoly, root) -> complex:
    coeffs = [_mp_value(D[i], root) for i in range(D.degree, -1, -1)]
    e = mpmath.polyroots(coeffs, maxsteps=400, extraprec=400)
    if len(e) == 3:
        lam = (e[2] - e[0]) / (e[1] - e[0])
    else:
        lam = (e[0] - e[2]) * (e[1] - e[3]) / ((e[0] - e[3]) * (e[1] - e[2]))
    return complex(256 * (lam**2 - lam + 1) ** 3 / (lam**2 * (lam - 1) ** 2))


def _close(a, b, rel=1e-6):
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


def _catalog_curves(catalog):
    out = []
    for e in catalog.values():
        if e.kind == "j-value":
            out.append((e.id, e.evaluator().curve))
        elif e.kind == "genus0-map" and e.expect == "verify":
            qc = q_correspond(e.belyi_map())
            if qc.genus == "1":
                out.append((e.id, qc.D))
            if e.evaluator().curve is not None:
                out.append((e.id + ":printed", e.evaluator().curve))
    return out


def test_j_matches_cross_ratio_oracle(catalog):
    curves = _catalog_curves(catalog)
    assert len(curves) >= 20
    for name, D in curves:
        j = j_invariant(D)
        for root in _mp_embeddings(D.field):
            exact = complex(_mp_value(j, root))
            assert _close(exact, numeric_j(D, root)), name


def test_known_j_values():
    assert j_invariant(X**3 - X) == RATIONALS(1728)
    assert j_invariant(X**4 + 4 * X**3 - 40 * X**2 - 200 * X + 500) == RATIONALS(-5000)
    D = X * (X + 8) * (4 * X + 5)
    assert j_invariant(D) == RATIONALS(Fraction(889**3, 270**2))
    assert to_weierstrass(D).j == j_invariant(D)


def test_weierstrass_model():
    D = X**4 + 3 * X**2 + 3
    w = to_weierstrass(D)
    inv = quartic_invariants(D)
    assert w.p == -27 * inv.I and w.q == -27 * inv.J
    assert w.j == j_invariant(D)
    assert not (4 * w.p**3 + 27 * w.q**2).is_zero()


def test_singular_curve():
    with pytest.raises(SingularCurve):
        j_invariant(X**2 * (X - 1))


@given(st.integers(-30, 30), st.integers(1, 20), st.integers(-30, 30))
def test_j_invariant_under_moebius(a, b, c):
    """j is unchanged by x -> b x + c and by reversal (x -> 1/x)."""
    D = X**3 - X
    moved = D.compose(UniPoly([c, b]))
    assert j_invariant(moved) == RATIONALS(1728)
    Dq = (X - 1) * (X - 2) * (X - 3) * (X - a) if a not in (1, 2, 3) else None
    if Dq is not None:
        rev = UniPoly(list(reversed(Dq.coeffs)))
        assert same_j(rev, Dq)


@given(
    st.lists(st.integers(-6, 6), min_size=2, max_size=5),
    st.lists(st.integers(-6, 6), min_size=1, max_size=5),
)
def test_random_maps_never_exceed_riemann_hurwitz(num, den):
    P, Q = UniPoly(num), UniPoly(den)
    if P.is_zero() or Q.is_zero():
        return
    phi = RationalFunction(P, Q)
    if phi.num.degree <= 0 and phi.den.degree <= 0:
        return
    try:
        fs, p = verify_belyi(phi)
    except NotBelyi:
        return
    n = fs.degree
    assert fs.ramification() == 2 * n - 2
    assert p.degree == n


def test_power_map_is_belyi():
    fs, p = verify_belyi(RationalFunction(X**5))
    assert str(p) == "[5 / 1^5 / 5]"


def test_chebyshev_is_belyi():
    T4 = 8 * X**4 - 8 * X**2 + 1
    phi = RationalFunction((1 - T4) * Fraction(1, 2))
    _, p = verify_belyi(phi)
    assert p.degree == 4 and str(p.overInf) == "4"


def test_identity_on_every_catalog_map(catalog):
    seen = 0
    for e in catalog.values():
        if e.kind != "genus0-map" or e.expect != "verify":
            continue
        bm = e.belyi_map()
        qc = q_correspond(bm)
        phi1 = qc.phi1
        g = 2 * phi1 - 1
        assert (g * g - (1 - bm.phi)).is_zero(), e.id
        assert q_identity_residual(bm.phi, phi1).is_zero()
        seen += 1
    assert seen >= 14


def test_structural_errors(catalog):
    with pytest.raises(NotRegularOnCurve) as info:
        q_correspond(catalog["psi3"].belyi_map())
    assert info.value.D.degree == 2
    with pytest.raises(DegenerateRational):
        q_correspond(catalog["isogeny-degenerate"].belyi_map())
    with pytest.raises(NotBelyi):
        BelyiMap(RationalFunction(X**3 - 3 * X)).verify()
