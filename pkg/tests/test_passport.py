from collections import Counter

import pytest
from hypothesis import given, strategies as st

from qcorr.passport import (
    DegenerateCorrespondence,
    InconsistentDecomposition,
    Partition,
    Passport,
    PassportError,
    correspondent_passports,
    decomposition_for,
    genus_of_passport,
    predict_genus1_passport,
)

from conftest import TARGETS


def test_parse_and_print():
    p = Passport.parse("[3^2 4/2^4 1^2/4 3^2]")
    assert p.over0.parts == (4, 3, 3)
    assert p.overInf == Partition([3, 4, 3])
    assert str(p) == "[4 3^2 / 2^4 1^2 / 4 3^2]"
    assert Passport.parse(str(p)) == p
    assert p.degree == 10


@pytest.mark.parametrize("bad", ["3 4 / 2^3 1 / 7", "[3/2 1]", "[3 x/2 1/3]", "[4/2 1/3]", "[0 3/3/3]"])
def test_malformed(bad):
    with pytest.raises(PassportError):
        Passport.parse(bad)


def test_genus():
    assert genus_of_passport(Passport.parse("[3^3/2^3 1^3/5 4]")) == 0
    assert genus_of_passport(Passport.parse("[3^3/3^3/5 2^2]")) == 1
    with pytest.raises(PassportError):
        genus_of_passport(Passport.parse("[1^2/1^2/1^2]"))  # negative genus
    with pytest.raises(PassportError):
        genus_of_passport(Passport.parse("[2/2/2]"))  # odd Euler count


@pytest.mark.parametrize("text", TARGETS)
def test_correspondence_invariants(text):
    p1 = Passport.parse(text)
    out = correspondent_passports(p1, include_degenerate=True)
    assert out
    inf1 = p1.overInf.counts()
    for p0, d in out:
        assert 2 * d.ell + d.k == p1.degree
        assert len(d.C) == 4 - d.k
        assert Counter(list(d.B) * 2 + list(d.C)) == inf1
        assert Counter([2 * b for b in d.B] + list(d.C)) == p0.overInf.counts()
        assert genus_of_passport(p0) == 0
        assert d.degenerate == (d.k == 0 and all(c % 2 == 0 for c in d.C))
        if not d.degenerate:
            assert all(c % 2 for c in d.C)
            assert predict_genus1_passport(p0, d) == p1
        else:
            with pytest.raises(DegenerateCorrespondence):
                predict_genus1_passport(p0, d)
    strict = [p for p, d in out if not d.degenerate]
    assert [p for p, _ in correspondent_passports(p1)] == strict


def test_non_genus1_input_has_no_correspondents():
    assert correspondent_passports(Passport.parse("[3^3/2^3 1^3/5 4]")) == []
    assert correspondent_passports(Passport.parse("[4 2/3 3/2 2 2]")) == []


def test_decomposition_for_rejects_bad_input():
    p0 = Passport.parse("[3^2 4/2^4 1^2/3^2 4]")
    d = decomposition_for(p0, [3, 3])
    assert d.B == (2,) and d.k == 2
    with pytest.raises(InconsistentDecomposition):
        decomposition_for(p0, [5, 3])
    with pytest.raises(InconsistentDecomposition):
        decomposition_for(p0, [3])  # leaves an odd unbranched face
    with pytest.raises(InconsistentDecomposition):
        decomposition_for(Passport.parse("[3^3/3 2^3/5 4]"), [5])


@st.composite
def genus1_symmetric(draw):
    """Random [A/A/B^2 C] with C odd, built from its decomposition."""
    k = draw(st.integers(0, 4))
    C = draw(st.lists(st.sampled_from([1, 3, 5, 7]), min_size=4 - k, max_size=4 - k))
    B = draw(st.lists(st.integers(1, 4), min_size=0, max_size=3))
    n = 2 * sum(B) + sum(C)
    # A must make the genus-1 Euler count work: 2 len(A) + len(inf) - n = 0
    inf = B * 2 + C
    need = n - len(inf)
    if need <= 0 or need % 2:
        return None
    m = need // 2
    if m > n:
        return None
    parts = [1] * m
    for i in range(n - m):
        parts[i % m] += 1
    return Passport.of(parts, parts, inf)


@given(genus1_symmetric())
def test_generated_passports_round_trip(p1):
    if p1 is None:
        return
    for p0, d in correspondent_passports(p1):
        assert d.genus1_passport == p1
        dd = decomposition_for(p0, d.C)
        assert dd.genus1_passport == p1
