"""Surface syntax for positive-primitive set descriptions.

A formula looks like

    ambient 2; pp(E y1 : x1 - 2*y1 = 0) & !pp(x2 = 1/3)

`ambient <n>;` fixes the free variables x1 .. xn.  A pp atom is a
conjunction of rational linear equations, optionally prefixed by an
existential block `E y1 .. ym :` binding auxiliary variables.  Atoms
combine with ! & | and parentheses, with the usual precedence
(! binds tightest, then &, then |).

Parsing produces a small AST whose atoms store canonical coefficient
rows; `format_formula` prints it back in the same syntax, and
`elaborate` turns it into the boolean tree over raw linear systems
that the geometry and counting layers consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cosets import LinearSystem
from .defsets import And, Leaf, Not, Or
from .errors import FormulaError

_KEYWORDS = {"ambient", "pp", "E"}
_SYMBOLS = ";:&|!()=+-*"


@dataclass(frozen=True)
class Token:
    kind: str  # int | var | keyword | symbol | eof
    text: str
    line: int
    col: int


def _fail(msg: str, tok: Token):
    raise FormulaError(msg, tok.line, tok.col)


def tokenize(text: str) -> list[Token]:
    toks = []
    line, col, i = 1, 1, 0
    while i < len(text):
        c = text[i]
        if c == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if c in " \t\r":
            col, i = col + 1, i + 1
            continue
        start_col = start = None
        if c.isdigit():
            start, start_col = i, col
            while i < len(text) and text[i].isdigit():
                i, col = i + 1, col + 1
            toks.append(Token("int", text[start:i], line, start_col))
            continue
        if c.isalpha() or c == "_":
            start, start_col = i, col
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i, col = i + 1, col + 1
            word = text[start:i]
            if word in _KEYWORDS:
                toks.append(Token("keyword", word, line, start_col))
            elif word[0] in "xy" and word[1:].isdigit() and int(word[1:]) >= 1:
                toks.append(Token("var", word, line, start_col))
            else:
                raise FormulaError(f"unknown name {word!r}", line, start_col)
            continue
        if c in _SYMBOLS or c == "/":
            toks.append(Token("symbol", c, line, col))
            col, i = col + 1, i + 1
            continue
        raise FormulaError(f"stray character {c!r}", line, col)
    toks.append(Token("eof", "", line, col))
    return toks


# AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class PPAtom:
    """Conjunction of linear equations; rows are x coefficients, then y
    coefficients for `bound` existential variables, then the right side."""

    ambient: int
    bound: int
    rows: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class FNot:
    sub: object


@dataclass(frozen=True)
class FAnd:
    parts: tuple


@dataclass(frozen=True)
class FOr:
    parts: tuple


@dataclass(frozen=True)
class Formula:
    ambient: int
    root: object


class _Parser:
    def __init__(self, toks: list[Token]):
        self.toks = toks
        self.pos = 0

    def peek(self) -> Token:
        return self.toks[self.pos]

    def next(self) -> Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.next()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            got = tok.text or "end of input"
            _fail(f"expected {want!r}, found {got!r}", tok)
        return tok

    def at_symbol(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "symbol" and tok.text == text

    # grammar ---------------------------------------------------------

    def formula(self) -> Formula:
        self.expect("keyword", "ambient")
        tok = self.expect("int")
        ambient = int(tok.text)
        if ambient < 1:
            _fail("ambient dimension must be at least 1", tok)
        self.expect("symbol", ";")
        self.ambient = ambient
        root = self.or_expr()
        tail = self.next()
        if tail.kind != "eof":
            _fail(f"unexpected {tail.text!r} after formula", tail)
        return Formula(ambient, root)

    def or_expr(self):
        parts = [self.and_expr()]
        while self.at_symbol("|"):
            self.next()
            parts.append(self.and_expr())
        return parts[0] if len(parts) == 1 else FOr(tuple(parts))

    def and_expr(self):
        parts = [self.not_expr()]
        while self.at_symbol("&"):
            self.next()
            parts.append(self.not_expr())
        return parts[0] if len(parts) == 1 else FAnd(tuple(parts))

    def not_expr(self):
        if self.at_symbol("!"):
            self.next()
            return FNot(self.not_expr())
        return self.primary()

    def primary(self):
        tok = self.peek()
        if tok.kind == "keyword" and tok.text == "pp":
            return self.pp_atom()
        if self.at_symbol("("):
            self.next()
            inner = self.or_expr()
            self.expect("symbol", ")")
            return inner
        _fail(f"expected a pp atom or '(', found {tok.text or 'end of input'!r}",
              tok)

    def pp_atom(self) -> PPAtom:
        self.expect("keyword", "pp")
        self.expect("symbol", "(")
        bound = 0
        if self.peek().kind == "keyword" and self.peek().text == "E":
            self.next()
            seen = []
            while self.peek().kind == "var":
                tok = self.next()
                if tok.text[0] != "y":
                    _fail("existential block binds y-variables only", tok)
                idx = int(tok.text[1:])
                if idx != len(seen) + 1:
                    _fail(f"existential variables must be y1, y2, ... in "
                          f"order; found {tok.text!r}", tok)
                seen.append(idx)
            if not seen:
                _fail("existential block needs at least one variable",
                      self.peek())
            self.expect("symbol", ":")
            bound = len(seen)
        rows = [self.equation(bound)]
        while self.at_symbol("&"):
            self.next()
            rows.append(self.equation(bound))
        self.expect("symbol", ")")
        return PPAtom(self.ambient, bound, tuple(rows))

    def equation(self, bound: int) -> tuple:
        lhs_coeffs, lhs_const = self.linear_sum(bound)
        self.expect("symbol", "=")
        rhs_coeffs, rhs_const = self.linear_sum(bound)
        width = self.ambient + bound
        coeffs = [lhs_coeffs[i] - rhs_coeffs[i] for i in range(width)]
        return tuple(coeffs + [rhs_const - lhs_const])

    def linear_sum(self, bound: int):
        coeffs = [Fraction(0)] * (self.ambient + bound)
        const = Fraction(0)
        sign = Fraction(1)
        if self.at_symbol("-"):
            self.next()
            sign = Fraction(-1)
        while True:
            c, var_slot = self.term(bound)
            if var_slot is None:
                const += sign * c
            else:
                coeffs[var_slot] += sign * c
            if self.at_symbol("+"):
                self.next()
                sign = Fraction(1)
            elif self.at_symbol("-"):
                self.next()
                sign = Fraction(-1)
            else:
                return coeffs, const

    def term(self, bound: int):
        """One summand: returns (coefficient, variable slot or None)."""
        tok = self.peek()
        if tok.kind == "var":
            return Fraction(1), self.var_slot(bound)
        if tok.kind != "int":
            _fail(f"expected a number or variable, found "
                  f"{tok.text or 'end of input'!r}", tok)
        value = Fraction(int(self.next().text))
        if self.at_symbol("/"):
            self.next()
            den_tok = self.expect("int")
            if int(den_tok.text) == 0:
                _fail("zero denominator", den_tok)
            value /= int(den_tok.text)
        if self.at_symbol("*"):
            self.next()
            return value, self.var_slot(bound)
        return value, None

    def var_slot(self, bound: int) -> int:
        tok = self.expect("var")
        idx = int(tok.text[1:])
        if tok.text[0] == "x":
            if idx > self.ambient:
                _fail(f"x{idx} exceeds the ambient dimension {self.ambient}",
                      tok)
            return idx - 1
        if bound == 0:
            _fail(f"{tok.text!r} is not bound by an existential block", tok)
        if idx > bound:
            _fail(f"{tok.text!r} exceeds the {bound} bound variable(s)", tok)
        return self.ambient + idx - 1


def parse_formula(text: str) -> Formula:
    return _Parser(tokenize(text)).formula()


# printing ------------------------------------------------------------------


def _frac_str(c: Fraction) -> str:
    return str(c)


def _row_str(row, ambient: int) -> str:
    names = [f"x{i + 1}" for i in range(ambient)]
    names += [f"y{j + 1}" for j in range(len(row) - 1 - ambient)]
    terms = []
    for c, name in zip(row[:-1], names):
        if c == 0:
            continue
        mag = abs(c)
        body = name if mag == 1 else f"{_frac_str(mag)}*{name}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        lhs = "0"
    else:
        sign, body = terms[0]
        lhs = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            lhs += f" {sign} {body}"
    rhs = row[-1]
    if rhs < 0:
        return f"{lhs} = -{_frac_str(-rhs)}"
    return f"{lhs} = {_frac_str(rhs)}"


def _atom_str(atom: PPAtom) -> str:
    prefix = ""
    if atom.bound:
        names = " ".join(f"y{j + 1}" for j in range(atom.bound))
        prefix = f"E {names} : "
    eqs = " & ".join(_row_str(row, atom.ambient) for row in atom.rows)
    return f"pp({prefix}{eqs})"


def _node_str(node, parent: str) -> str:
    if isinstance(node, PPAtom):
        return _atom_str(node)
    if isinstance(node, FNot):
        return "!" + _node_str(node.sub, "not")
    if isinstance(node, FAnd):
        body = " & ".join(_node_str(p, "and") for p in node.parts)
        return f"({body})" if parent in ("not", "and") else body
    body = " | ".join(_node_str(p, "or") for p in node.parts)
    return f"({body})" if parent in ("not", "and", "or") else body


def format_formula(formula: Formula) -> str:
    return f"ambient {formula.ambient}; " + _node_str(formula.root, "top")


# elaboration ---------------------------------------------------------------


def _elaborate_node(node):
    if isinstance(node, PPAtom):
        return Leaf(LinearSystem.make(node.ambient, node.bound,
                                      [list(r) for r in node.rows]))
    if isinstance(node, FNot):
        return Not(_elaborate_node(node.sub))
    if isinstance(node, FAnd):
        parts = [_elaborate_node(p) for p in node.parts]
        expr = parts[0]
        for p in parts[1:]:
            expr = And(expr, p)
        return expr
    parts = [_elaborate_node(p) for p in node.parts]
    expr = parts[0]
    for p in parts[1:]:
        expr = Or(expr, p)
    return expr


def elaborate(formula: Formula):
    """Boolean tree over raw linear systems, ready for normalization."""
    return _elaborate_node(formula.root)
