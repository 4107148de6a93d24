import pytest

from conftest import TARGETS, enumerated
from qcorr.dessin import (
    BranchCountError,
    Dessin,
    InvalidSymmetry,
    LiftError,
    ParityObstruction,
    find_isomorphism,
    lift_double_cover,
    quotient_by_antisymmetry,
)
from qcorr.dessin import perm as P
from qcorr.dessin.symmetry import antisymmetry_fixed_count, classify_symmetries
from qcorr.passport import Passport, correspondent_passports


def _strict_cases():
    out = []
    for t in TARGETS:
        for p0, d in correspondent_passports(Passport.parse(t)):
            out.append((t, str(p0)))
    return out


STRICT = _strict_cases()


@pytest.mark.parametrize("target,p0", STRICT)
def test_lift_quotient_round_trip(target, p0):
    p1 = Passport.parse(target)
    downstairs = enumerated(p0)
    assert downstairs
    for d0 in downstairs:
        res = lift_double_cover(d0, "strict")
        up = res.upstairs
        assert up.genus == 1
        assert up.passport == p1
        pi = res.deck_involution
        assert all(pi[pi[i]] == i for i in range(up.n))
        assert P.conjugate(up.sigma0, pi) == up.sigma1
        assert antisymmetry_fixed_count(up, pi) == 4
        back = quotient_by_antisymmetry(up, pi)
        assert find_isomorphism(back, d0) is not None
        assert res.k == d0.passport.over1.counts()[1]


@pytest.mark.parametrize("target,p0", STRICT)
def test_lifts_are_the_antisymmetric_torus_dessins(target, p0):
    lifted = {lift_double_cover(d0, "strict").upstairs.canonical() for d0 in enumerated(p0)}
    anti = {d.canonical() for d in enumerated(target) if classify_symmetries(d).central_antisymmetries}
    assert lifted <= anti
    if len(STRICT_BY_TARGET[target]) == 1:
        assert lifted == anti


STRICT_BY_TARGET: dict = {}
for _t, _p in STRICT:
    STRICT_BY_TARGET.setdefault(_t, []).append(_p)


@pytest.mark.parametrize("p0", sorted({p for _, p in STRICT}))
def test_sheet_labels_do_not_matter(p0):
    for d0 in enumerated(p0):
        ref = lift_double_cover(d0, "strict").upstairs
        for twist in range(1, 16):
            res = lift_double_cover(d0, "strict", twist=twist)
            assert find_isomorphism(res.upstairs, ref) is not None
            assert antisymmetry_fixed_count(res.upstairs, res.deck_involution) == 4


def _faces_of_length(d, lengths):
    faces = P.cycles(P.compose(d.sigma0, d.sigma1))
    darts, used = [], set()
    for ln in lengths:
        i = next(i for i, f in enumerate(faces) if len(f) == ln and i not in used)
        used.add(i)
        darts.append(faces[i][0])
    return darts


def test_parity_obstruction():
    ds = enumerated("[5 3 / 2^3 1^2 / 2^2 4]")
    assert ds
    for d in ds:
        with pytest.raises(ParityObstruction):
            lift_double_cover(d, "chosen", _faces_of_length(d, [2, 2]))


def test_branch_count():
    ds = enumerated("[4^2 / 2^4 / 2^4]")
    assert ds
    for d in ds:
        with pytest.raises(BranchCountError):
            lift_double_cover(d, "strict")
    assert issubclass(BranchCountError, LiftError) and issubclass(ParityObstruction, LiftError)


def test_lift_rejects_bad_input():
    torus = enumerated("[5 3 / 5 3 / 2^4]")[0]
    with pytest.raises(LiftError):
        lift_double_cover(torus)
    star = Dessin.from_cycles(3, [(1, 2, 3)], [(1, 2, 3)])
    with pytest.raises(LiftError):
        lift_double_cover(star)
    d = enumerated("[5 3 / 2^2 1^4 / 4^2]")[0]
    with pytest.raises(ValueError):
        lift_double_cover(d, "strict", [0])
    with pytest.raises(ValueError):
        lift_double_cover(d, "sideways")


def test_quotient_rejects_bad_symmetries():
    up = enumerated("[3^2 4 / 3^2 4 / 3^2 2^2]")
    n = up[0].n
    with pytest.raises(InvalidSymmetry):
        quotient_by_antisymmetry(up[0], list(range(n - 1)))
    with pytest.raises(InvalidSymmetry):
        quotient_by_antisymmetry(up[0], list(range(n)))  # identity does not swap colours
    cyc = list(range(1, n)) + [0]
    with pytest.raises(InvalidSymmetry):
        quotient_by_antisymmetry(up[0], cyc)
    # a colour swap with no fixed structures has a torus quotient
    zero = [(d, pi) for d in up for pi, c in classify_symmetries(d).fixed_structure_counts.items() if c == 0]
    assert zero
    d, pi = zero[0]
    with pytest.raises(InvalidSymmetry):
        quotient_by_antisymmetry(d, pi)
