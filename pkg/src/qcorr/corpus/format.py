"""The map file format: a line-oriented ``key : value`` record.

Example::

    id : psi9
    kind : genus0-map
    map : -(x^3 + 45x - 450)^3 / (2916(3x - 5)^4)
    passport : [3^3 / 2^3 1^3 / 5 4]

Expressions allow ``+ - * / ^``, parentheses, implicit multiplication
(``2916(3x-5)^4``, ``1/2 ξ^2 x``), the field generator declared by a
``field`` line, the polynomial variable, the curve variable and ``let``
names.  ``Q{f}`` denotes 1/2 + sqrt(1 - f)/2 on the declared curve.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra import RATIONALS, NumberField, QuadExtElement, RationalFunction, UniPoly
from ..passport import Passport, PassportError

__all__ = [
    "ParseError",
    "UnknownGenerator",
    "DegreeMismatch",
    "CorpusEntry",
    "parse_map_file",
    "parse_catalog",
    "print_entry",
    "parse_expr",
    "print_expr",
    "Evaluator",
    "KEYS",
]


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
        self.reason = message


class UnknownGenerator(ParseError):
    pass


class DegreeMismatch(ParseError):
    pass


# key -> value type; the order is the canonical print order
KEYS = {
    "id": "word",
    "kind": "word",
    "tags": "words",
    "field": "field",
    "var": "word",
    "curve-var": "word",
    "let": "let",
    "map": "expr",
    "equals": "expr",
    "passport": "passport",
    "q-passport": "passport",
    "strict": "passports",
    "degenerate": "passports",
    "count": "int",
    "branch-faces": "ints",
    "curve": "expr",
    "phi1": "expr",
    "radicand": "expr",
    "iso-curve": "expr",
    "expect-j": "expr",
    "inner": "expr",
    "f": "expr",
    "q": "expr",
    "t": "expr",
    "params": "exprs",
    "perturbed": "exprs",
    "expect": "text",
    "ref": "string",
}
REPEATABLE = {"let"}


# --------------------------------------------------------------------------
# expressions

_TOKEN = re.compile(r"\s*(?:(\d+)|([^\W\d]\w*)|(.))", re.UNICODE)


@dataclass(frozen=True)
class Tok:
    kind: str  # num, name, op, end
    text: str
    line: int
    col: int


def _tokenize(text: str, line: int, col0: int) -> list[Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        col = col0 + start + 1
        if m.group(1):
            toks.append(Tok("num", m.group(1), line, col))
        elif m.group(2):
            toks.append(Tok("name", m.group(2), line, col))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^(){}":
                raise ParseError(f"unexpected character {ch!r}", line, col)
            toks.append(Tok("op", ch, line, col))
        pos = m.end()
    toks.append(Tok("end", "", line, col0 + len(text) + 1))
    return toks


# AST: ("num", int) ("sym", name, line, col) ("neg", a) ("add"|"sub"|"mul"|"div", a, b)
#      ("pow", a, int) ("Q", a)


class _Parser:
    def __init__(self, toks: list[Tok]):
        self.toks = toks
        self.i = 0

    @property
    def cur(self) -> Tok:
        return self.toks[self.i]

    def eat(self, text=None, kind=None) -> Tok:
        t = self.cur
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = text or kind
            got = t.text or "end of line"
            raise ParseError(f"expected {want!r}, found {got!r}", t.line, t.col)
        self.i += 1
        return t

    def parse(self):
        node = self.expr()
        if self.cur.kind != "end":
            raise ParseError(f"unexpected {self.cur.text!r}", self.cur.line, self.cur.col)
        return node

    def expr(self):
        node = self.term()
        while self.cur.text in ("+", "-") and self.cur.kind == "op":
            op = self.eat().text
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def _starts_atom(self) -> bool:
        t = self.cur
        return t.kind in ("num", "name") or (t.kind == "op" and t.text == "(")

    def term(self):
        node = self.unary()
        while True:
            t = self.cur
            if t.kind == "op" and t.text in ("*", "/"):
                self.eat()
                node = ("mul" if t.text == "*" else "div", node, self.unary())
            elif self._starts_atom():
                node = ("mul", node, self.power())
            else:
                return node

    def unary(self):
        if self.cur.kind == "op" and self.cur.text == "-":
            self.eat()
            return ("neg", self.unary())
        if self.cur.kind == "op" and self.cur.text == "+":
            self.eat()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if self.cur.kind == "op" and self.cur.text == "^":
            self.eat()
            paren = self.cur.text == "("
            if paren:
                self.eat("(")
            sign = 1
            if self.cur.text == "-":
                self.eat()
                sign = -1
            e = int(self.eat(kind="num").text) * sign
            if paren:
                self.eat(")")
            node = ("pow", node, e)
        return node

    def atom(self):
        t = self.cur
        if t.kind == "num":
            self.eat()
            return ("num", int(t.text))
        if t.kind == "name":
            self.eat()
            if t.text == "Q" and self.cur.text == "{":
                self.eat("{")
                inner = self.expr()
                self.eat("}")
                return ("Q", inner)
            return ("sym", t.text, t.line, t.col)
        if t.text == "(":
            self.eat("(")
            node = self.expr()
            self.eat(")")
            return node
        raise ParseError(f"unexpected {t.text or 'end of line'!r}", t.line, t.col)


def parse_expr(text: str, line: int = 1, col0: int = 0):
    return _Parser(_tokenize(text, line, col0)).parse()


_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}


def print_expr(node, parent: int = 0) -> str:
    kind = node[0]
    if kind == "num":
        return str(node[1])
    if kind == "sym":
        return node[1]
    if kind == "Q":
        return "Q{" + print_expr(node[1]) + "}"
    prec = _PREC[kind]
    if kind == "neg":
        s = "-" + print_expr(node[1], prec)
    elif kind == "pow":
        s = f"{print_expr(node[1], prec + 1)}^{node[2]}"
    else:
        op = {"add": " + ", "sub": " - ", "mul": "*", "div": "/"}[kind]
        # left-associative: the right operand needs parentheses at equal precedence
        s = print_expr(node[1], prec) + op + print_expr(node[2], prec + 1)
    return f"({s})" if prec < parent else s


class Evaluator:
    """Evaluate expression trees to rational functions or curve elements."""

    def __init__(self, field: NumberField = RATIONALS, gen: str | None = None,
                 var: str = "x", curve_var: str = "y", curve: UniPoly | None = None):
        self.field = field
        self.gen = gen
        self.var = var
        self.curve_var = curve_var
        self.curve = curve
        self.names: dict[str, object] = {}

    def define(self, name: str, node) -> None:
        self.names[name] = self(node)

    def __call__(self, node):
        kind = node[0]
        if kind == "num":
            return RationalFunction(UniPoly.constant(node[1], self.field))
        if kind == "sym":
            name, line, col = node[1], node[2], node[3]
            if name == self.var:
                return RationalFunction.from_poly(UniPoly.x(self.field))
            if name == self.gen:
                return RationalFunction(UniPoly.constant(self.field.gen(), self.field))
            if name == self.curve_var:
                if self.curve is None:
                    raise UnknownGenerator(f"{name!r} used without a curve line", line, col)
                return QuadExtElement.w(self.curve)
            if name in self.names:
                return self.names[name]
            raise UnknownGenerator(f"unknown symbol {name!r}", line, col)
        if kind == "neg":
            return -self(node[1])
        if kind == "pow":
            base, e = node[1], node[2]
            if base[0] == "sym" and base[1] == self.gen and e >= self.field.degree:
                raise DegreeMismatch(
                    f"{self.gen}^{e} exceeds the field degree {self.field.degree}",
                    base[2], base[3],
                )
            val = self(base)
            if e < 0:
                return 1 / val ** (-e)
            return val**e
        if kind == "Q":
            if self.curve is None:
                raise ParseError("Q{...} needs a curve line")
            from ..painleve import qform_element

            inner = self(node[1])
            return qform_element(_as_rational(inner), self.curve)
        a, b = self(node[1]), self(node[2])
        if kind == "add":
            return a + b
        if kind == "sub":
            return a - b
        if kind == "mul":
            return a * b
        return a / b


def _as_rational(v) -> RationalFunction:
    if isinstance(v, QuadExtElement):
        if not v.v.is_zero():
            raise ParseError("expected a rational function, got a curve element")
        return v.u
    return v


# --------------------------------------------------------------------------
# records


@dataclass
class CorpusEntry:
    id: str
    kind: str
    values: dict = field(default_factory=dict)  # key -> parsed value
    lets: list = field(default_factory=list)  # (name, ast)
    tags: tuple = ()

    # -- typed accessors ------------------------------------------------
    def get(self, key, default=None):
        return self.values.get(key, default)

    @property
    def ref(self) -> str:
        return self.values.get("ref", "")

    @property
    def expect(self) -> str:
        return self.values.get("expect", "verify")

    def number_field(self) -> tuple[NumberField, str | None]:
        fd = self.values.get("field")
        if fd is None:
            return RATIONALS, None
        name, poly = fd
        return NumberField(name, poly), name

    def evaluator(self) -> Evaluator:
        nf, gen = self.number_field()
        ev = Evaluator(nf, gen, self.values.get("var", "x"), self.values.get("curve-var", "y"))
        for name, node in self.lets:
            ev.define(name, node)
        if "curve" in self.values:
            ev.curve = _as_poly(ev(self.values["curve"]))
        return ev

    def eval(self, key: str):
        return self.evaluator()(self.values[key])

    def belyi_map(self):
        from ..belyi import BelyiMap

        phi = self.eval("map")
        return BelyiMap(_as_rational(phi), label=self.id)


def _as_poly(v) -> UniPoly:
    v = _as_rational(v)
    if v.den.degree != 0:
        raise ParseError("expected a polynomial")
    return v.num * v.den.lc().inverse()


_LINE = re.compile(r"^\s*([A-Za-z][\w-]*)(?:\s+(\S+))?\s*:\s*(.*?)\s*$")


def _parse_field_poly(name: str, text: str, line: int, col0: int) -> tuple:
    ast = parse_expr(text, line, col0)
    ev = Evaluator(RATIONALS, None, var=name, curve_var="\0")
    try:
        p = _as_poly(ev(ast))
    except UnknownGenerator as exc:
        raise UnknownGenerator(exc.reason, exc.line, exc.col) from None
    coeffs = [c.rational() for c in p.coeffs]
    if coeffs[-1] != 1 or any(c.denominator != 1 for c in coeffs):
        raise ParseError("field polynomial must be monic with integer coefficients", line, col0)
    return tuple(int(c) for c in coeffs)


def _strip_comment(raw: str) -> str:
    # '#' starts a comment unless inside a quoted string
    out, quoted = [], False
    for ch in raw:
        if ch == '"':
            quoted = not quoted
        if ch == "#" and not quoted:
            break
        out.append(ch)
    return "".join(out)


def parse_map_file(text: str, first_line: int = 1) -> CorpusEntry:
    values: dict = {}
    lets: list = []
    field_name = None
    for offset, raw in enumerate(text.splitlines()):
        lineno = first_line + offset
        body = _strip_comment(raw)
        if not body.strip():
            continue
        m = _LINE.match(body)
        if not m:
            raise ParseError("expected 'key : value'", lineno, 1)
        key, arg, val = m.group(1), m.group(2), m.group(3)
        col0 = m.start(3)
        if key not in KEYS:
            raise ParseError(f"unknown key {key!r}", lineno, m.start(1) + 1)
        if key in values and key not in REPEATABLE:
            raise ParseError(f"duplicate key {key!r}", lineno, m.start(1) + 1)
        typ = KEYS[key]
        if (arg is not None) != (typ in ("field", "let")):
            raise ParseError(f"malformed {key!r} line", lineno, m.start(1) + 1)
        if typ == "field":
            field_name = arg
            values[key] = (arg, _parse_field_poly(arg, val, lineno, col0))
        elif typ == "let":
            lets.append((arg, parse_expr(val, lineno, col0)))
            values.setdefault("let", True)
        elif typ == "expr":
            values[key] = parse_expr(val, lineno, col0)
        elif typ == "exprs":
            values[key] = [parse_expr(p, lineno, col0) for p in val.split(",")]
        elif typ == "passport":
            values[key] = _passport(val, lineno, col0)
        elif typ == "passports":
            values[key] = () if val == "none" else tuple(
                _passport(p, lineno, col0) for p in val.split(";")
            )
        elif typ == "ints":
            if not re.fullmatch(r"\d+(\s+\d+)*", val):
                raise ParseError("expected integers", lineno, col0 + 1)
            values[key] = tuple(int(v) for v in val.split())
        elif typ == "int":
            if not re.fullmatch(r"\d+", val):
                raise ParseError("expected an integer", lineno, col0 + 1)
            values[key] = int(val)
        elif typ == "string":
            if not (len(val) >= 2 and val[0] == val[-1] == '"'):
                raise ParseError("expected a quoted string", lineno, col0 + 1)
            values[key] = val[1:-1]
        elif typ == "words":
            values[key] = tuple(val.replace(",", " ").split())
        else:
            if not val:
                raise ParseError(f"empty value for {key!r}", lineno, col0 + 1)
            values[key] = val
    for req in ("id", "kind"):
        if req not in values:
            raise ParseError(f"missing {req!r} line", first_line, 1)
    entry = CorpusEntry(values["id"], values["kind"], values, lets, values.get("tags", ()))
    _check_symbols(entry, field_name)
    return entry


def _passport(text: str, line: int, col: int) -> Passport:
    try:
        return Passport.parse(text.strip())
    except PassportError as exc:
        raise ParseError(str(exc), line, col + 1) from None


def _check_symbols(entry: CorpusEntry, gen: str | None) -> None:
    """Reject unknown names early, with their position."""
    known = {entry.values.get("var", "x"), entry.values.get("curve-var", "y")}
    if gen:
        known.add(gen)
    deg = entry.number_field()[0].degree if gen else 1

    def walk(node):
        kind = node[0]
        if kind == "sym":
            if node[1] not in known:
                raise UnknownGenerator(f"unknown symbol {node[1]!r}", node[2], node[3])
        elif kind == "pow":
            b = node[1]
            if b[0] == "sym" and b[1] == gen and node[2] >= deg:
                raise DegreeMismatch(f"{gen}^{node[2]} exceeds the field degree {deg}",
                                     b[2], b[3])
            walk(b)
        elif kind in ("neg", "Q"):
            walk(node[1])
        elif kind != "num":
            walk(node[1])
            walk(node[2])

    for name, node in entry.lets:
        walk(node)
        known.add(name)
    for key, typ in KEYS.items():
        if key not in entry.values:
            continue
        if typ == "expr":
            walk(entry.values[key])
        elif typ == "exprs":
            for node in entry.values[key]:
                walk(node)


def parse_catalog(text: str) -> list[CorpusEntry]:
    """Entries separated by blank lines; comment-only blocks are skipped."""
    entries = []
    block: list[str] = []
    start = 1
    for lineno, raw in enumerate(text.splitlines() + [""], 1):
        if raw.strip():
            if not block:
                start = lineno
            block.append(raw)
            continue
        if block and any(_strip_comment(b).strip() for b in block):
            entries.append(parse_map_file("\n".join(block), start))
        block = []
    ids = [e.id for e in entries]
    dup = {i for i in ids if ids.count(i) > 1}
    if dup:
        raise ParseError(f"duplicate ids {sorted(dup)}")
    return entries


def print_entry(entry: CorpusEntry) -> str:
    lines = []
    for key, typ in KEYS.items():
        if key == "let":
            for name, node in entry.lets:
                lines.append(f"let {name} : {print_expr(node)}")
            continue
        if key not in entry.values:
            continue
        v = entry.values[key]
        if typ == "field":
            name, coeffs = v
            lines.append(f"field {name} : {_print_field_poly(name, coeffs)}")
        elif typ == "expr":
            lines.append(f"{key} : {print_expr(v)}")
        elif typ == "exprs":
            lines.append(f"{key} : " + ", ".join(print_expr(n) for n in v))
        elif typ == "passport":
            lines.append(f"{key} : {v}")
        elif typ == "passports":
            lines.append(f"{key} : " + ("none" if not v else " ; ".join(str(p) for p in v)))
        elif typ == "string":
            lines.append(f'{key} : "{v}"')
        elif typ in ("words", "ints"):
            lines.append(f"{key} : " + " ".join(str(w) for w in v))
        else:
            lines.append(f"{key} : {v}")
    return "\n".join(lines) + "\n"


def _print_field_poly(name: str, coeffs) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mon = "" if k == 0 else (name if k == 1 else f"{name}^{k}")
        mag = abs(c)
        body = str(mag) if not mon else (mon if mag == 1 else f"{mag}*{mon}")
        terms.append(("-" if c < 0 else "+", body))
    out = terms[0][1] if terms[0][0] == "+" else "-" + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
