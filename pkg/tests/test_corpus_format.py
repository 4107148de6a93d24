from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qcorr.algebra import RationalFunction, UniPoly
from qcorr.corpus import load_catalog
from qcorr.corpus.format import (
    DegreeMismatch,
    Evaluator,
    ParseError,
    UnknownGenerator,
    parse_catalog,
    parse_expr,
    parse_map_file,
    print_entry,
)
from qcorr.corpus.format import print_expr

X = UniPoly.x()


def _ev(text):
    return Evaluator(var="x")(parse_expr(text))


def test_catalog_round_trip():
    entries = load_catalog()
    assert len(entries) >= 50
    text = "\n\n".join(print_entry(e) for e in entries)
    again = parse_catalog(text)
    assert [print_entry(e) for e in again] == [print_entry(e) for e in entries]


def test_implicit_multiplication_and_precedence():
    assert _ev("2x(x + 1)") == RationalFunction(2 * X * X + 2 * X)
    assert _ev("-x^2") == RationalFunction(-(X * X))
    assert _ev("(-x)^2") == RationalFunction(X * X)
    assert _ev("x^-1") == RationalFunction(UniPoly.constant(1), X)
    assert _ev("x^(-2)") == RationalFunction(UniPoly.constant(1), X * X)
    assert _ev("1/2x") == RationalFunction(X * Fraction(1, 2))
    assert _ev("6(112/25)^3") == RationalFunction(UniPoly.constant(6 * Fraction(112, 25) ** 3))


@st.composite
def exprs(draw, depth=0):
    if depth > 3 or draw(st.booleans()):
        return draw(st.sampled_from(["x", "2", "3/4", "x", "7"]))
    op = draw(st.sampled_from(["+", "-", "*", "/", "^", "neg", "()", "jux"]))
    a = draw(exprs(depth=depth + 1))
    if op == "neg":
        return f"-{a}"
    if op == "()":
        return f"({a})"
    if op == "^":
        return f"({a})^{draw(st.integers(0, 3))}"
    b = draw(exprs(depth=depth + 1))
    if op == "jux":
        return f"({a})({b})"
    return f"{a} {op} {b}"


@given(exprs())
def test_printed_expression_reparses_to_same_value(text):
    try:
        v = _ev(text)
    except ZeroDivisionError:
        return
    node = parse_expr(text)
    printed = print_expr(node)
    assert parse_expr(printed) == parse_expr(print_expr(parse_expr(printed)))
    assert _ev(printed) == v


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("id : a\nkind : genus0-map\nmap : (x + 1", 3, 13),
        ("id : a\nkind : genus0-map\nmap : x + * 2", 3, 11),
        ("id : a\nkind : genus0-map\n\nmap : x $ 2", 4, 9),
    ],
)
def test_syntax_errors_have_positions(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_map_file(text)
    assert info.value.line == line
    assert info.value.col == col


def test_unknown_and_duplicate_keys():
    with pytest.raises(ParseError, match="unknown key") as info:
        parse_map_file("id : a\nkind : genus0-map\ncolour : red")
    assert info.value.line == 3 and info.value.col == 1
    with pytest.raises(ParseError, match="duplicate"):
        parse_map_file("id : a\nid : b\nkind : genus0-map")
    with pytest.raises(ParseError, match="missing"):
        parse_map_file("id : a")


def test_unknown_generator():
    text = "id : a\nkind : genus0-map\nfield r : r^2 - 7\nmap : θ x^2"
    with pytest.raises(UnknownGenerator) as info:
        parse_map_file(text)
    assert info.value.line == 4


def test_generator_power_beyond_degree():
    text = "id : a\nkind : genus0-map\nfield r : r^2 - 7\nmap : r^2 x"
    with pytest.raises(DegreeMismatch):
        parse_map_file(text)


def test_field_must_be_monic_integral():
    with pytest.raises(ParseError):
        parse_map_file("id : a\nkind : genus0-map\nfield r : 2r^2 - 7\nmap : x")
    with pytest.raises(ParseError):
        parse_map_file("id : a\nkind : genus0-map\nfield r : r^2 - 1/2\nmap : x")


def test_comments_and_quoted_ref():
    e = parse_map_file('# heading\nid : a  # trailing\nkind : j-value\nref : "why # not"\n')
    assert e.id == "a" and e.ref == "why # not"
    assert e.expect == "verify"


def test_duplicate_ids_rejected():
    with pytest.raises(ParseError, match="duplicate"):
        parse_catalog("id : a\nkind : j-value\n\nid : a\nkind : j-value\n")


def test_quintic_entry_has_degree_eleven(catalog):
    e = catalog["psi11-star"]
    field, gen = e.number_field()
    assert gen == "λ" and field.degree == 5
    phi = e.belyi_map().phi
    assert max(phi.num.degree, phi.den.degree) == 11


def test_let_bindings(catalog):
    e = catalog["psi12"]
    assert [name for name, _ in e.lets] == ["F", "G"]
    assert e.eval("map") == e.belyi_map().phi
