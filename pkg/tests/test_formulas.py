import random
from fractions import Fraction

import pytest

from modelk.defsets import And, Leaf, Not, boolean_normalize, k0_class
from modelk.errors import FormulaError
from modelk.formulas import (FAnd, FNot, FOr, Formula, PPAtom, elaborate,
                             format_formula, parse_formula, tokenize)


def atom(ambient, bound, rows):
    return PPAtom(ambient, bound,
                  tuple(tuple(Fraction(v) for v in r) for r in rows))


# --- tokenizing and positions -------------------------------------------------

def test_token_positions():
    toks = tokenize("ambient 2;\n pp(x1 = 0)")
    assert [(t.kind, t.text) for t in toks[:3]] == [
        ("keyword", "ambient"), ("int", "2"), ("symbol", ";")]
    pp = toks[3]
    assert (pp.line, pp.col) == (2, 2)
    assert toks[-1].kind == "eof"


def test_unknown_name_position():
    with pytest.raises(FormulaError) as info:
        tokenize("ambient 1; pp(z3 = 0)")
    assert (info.value.line, info.value.col) == (1, 15)
    assert "z3" in str(info.value) and "line 1" in str(info.value)


def test_stray_character_position():
    with pytest.raises(FormulaError) as info:
        tokenize("ambient 1;\npp(x1 @ 0)")
    assert (info.value.line, info.value.col) == (2, 7)


# --- parsing -------------------------------------------------------------------

def test_simple_atom_rows():
    f = parse_formula("ambient 2; pp(2*x1 + 1/2*x2 = 3)")
    assert f.ambient == 2
    assert f.root == atom(2, 0, [["2", "1/2", "3"]])


def test_variables_collected_across_both_sides():
    f = parse_formula("ambient 2; pp(x1 + 1 = x2 - 2)")
    assert f.root == atom(2, 0, [[1, -1, -3]])
    g = parse_formula("ambient 1; pp(3*x1 - x1 = 4)")
    assert g.root == atom(1, 0, [[2, 4]])


def test_existential_block():
    f = parse_formula("ambient 2; pp(E y1 y2 : x1 - y1 = 0 & y2 = 1)")
    assert f.root == atom(2, 2, [[1, 0, -1, 0, 0], [0, 0, 0, 1, 1]])


def test_precedence_and_parens():
    f = parse_formula(
        "ambient 1; pp(x1 = 0) | pp(x1 = 1) & !pp(x1 = 2)")
    assert isinstance(f.root, FOr)
    right = f.root.parts[1]
    assert isinstance(right, FAnd)
    assert isinstance(right.parts[1], FNot)
    g = parse_formula(
        "ambient 1; (pp(x1 = 0) | pp(x1 = 1)) & !pp(x1 = 2)")
    assert isinstance(g.root, FAnd)
    assert isinstance(g.root.parts[0], FOr)


def test_double_negation_parses():
    f = parse_formula("ambient 1; !!pp(x1 = 0)")
    assert isinstance(f.root, FNot) and isinstance(f.root.sub, FNot)


def test_parse_errors_carry_positions():
    cases = [
        ("ambient 0; pp(x1 = 0)", "ambient"),
        ("ambient 1; pp(x2 = 0)", "exceeds the ambient"),
        ("ambient 1; pp(y1 = 0)", "not bound"),
        ("ambient 1; pp(E y2 : x1 = y2)", "in order"),
        ("ambient 1; pp(E : x1 = 0)", "at least one"),
        ("ambient 1; pp(E y1 : x1 = y2)", "exceeds the 1 bound"),
        ("ambient 1; pp(x1 = 1/0)", "zero denominator"),
        ("ambient 1; pp(x1 = 0", "expected"),
        ("ambient 1; pp(x1 = 0) pp(x1 = 1)", "unexpected"),
        ("ambient 1; pp(x1 == 0)", "expected"),
        ("pp(x1 = 0)", "ambient"),
    ]
    for text, fragment in cases:
        with pytest.raises(FormulaError) as info:
            parse_formula(text)
        assert fragment in str(info.value), text
        assert info.value.line is not None, text


# --- printing ------------------------------------------------------------------

def test_format_canonical_sample():
    f = parse_formula(
        "ambient 2;  pp( E y1 :  x1  - 2*y1 = 0 )  &  !pp( x2 = 1/3 )")
    assert format_formula(f) == (
        "ambient 2; pp(E y1 : x1 - 2*y1 = 0) & !pp(x2 = 1/3)")


def test_format_handles_signs_and_zero_rows():
    f = parse_formula("ambient 2; pp(0 = 1/2 & -x1 - 3/2*x2 = -7)")
    out = format_formula(f)
    assert "0 = 1/2" in out and "-x1 - 3/2*x2 = -7" in out
    assert parse_formula(out) == f


def test_format_parenthesizes_by_context():
    f = parse_formula("ambient 1; !(pp(x1 = 0) | pp(x1 = 1))")
    assert format_formula(f) == "ambient 1; !(pp(x1 = 0) | pp(x1 = 1))"
    g = parse_formula("ambient 1; (pp(x1 = 0) | pp(x1 = 1)) & pp(x1 = 2)")
    assert format_formula(g) == (
        "ambient 1; (pp(x1 = 0) | pp(x1 = 1)) & pp(x1 = 2)")


def test_round_trip_is_identity_on_ast():
    texts = [
        "ambient 1; pp(x1 = 0)",
        "ambient 3; pp(E y1 : x1 - y1 = 0 & x2 + y1 = 1) | !pp(x3 = -2/5)",
        "ambient 2; !(pp(x1 = 0) & pp(x2 = 0)) | pp(x1 - x2 = 1/7)",
        "ambient 2; pp(1/2*x1 + 2/3*x2 = -5/6)",
    ]
    for text in texts:
        f = parse_formula(text)
        assert parse_formula(format_formula(f)) == f, text


def _random_atom(rng, ambient):
    bound = rng.choice([0, 0, 1, 2])
    rows = []
    for _ in range(rng.randint(1, 2)):
        row = [Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2, 3]))
               for _ in range(ambient + bound)]
        row.append(Fraction(rng.randint(-6, 6), rng.choice([1, 2])))
        rows.append(tuple(row))
    return PPAtom(ambient, bound, tuple(rows))


def _random_node(rng, ambient, depth):
    if depth <= 0 or rng.random() < 0.4:
        return _random_atom(rng, ambient)
    shape = rng.choice(["not", "and", "or"])
    if shape == "not":
        return FNot(_random_node(rng, ambient, depth - 1))
    parts = tuple(_random_node(rng, ambient, depth - 1)
                  for _ in range(rng.randint(2, 3)))
    return FAnd(parts) if shape == "and" else FOr(parts)


def test_seeded_round_trips():
    rng = random.Random(977)
    for _ in range(60):
        ambient = rng.randint(1, 3)
        f = Formula(ambient, _random_node(rng, ambient, 2))
        text = format_formula(f)
        assert parse_formula(text) == f, text


# --- elaboration -----------------------------------------------------------------

def test_elaborate_structure():
    f = parse_formula("ambient 2; pp(x1 = 0) & !pp(x2 = 0)")
    expr = elaborate(f)
    assert isinstance(expr, And)
    assert isinstance(expr.left, Leaf) and isinstance(expr.right, Not)
    system = expr.left.payload
    assert system.ambient == 2 and system.bound == 0
    assert system.rows == ((Fraction(1), Fraction(0), Fraction(0)),)


def test_elaborate_semantics():
    f = parse_formula("ambient 2; pp(E y1 : x1 - 2*y1 = 0) & !pp(x2 = 1/3)")
    cls = k0_class(boolean_normalize(elaborate(f), f.ambient))
    # the existential solves for every x1: a plane minus a line
    assert cls.degree == 2
    assert cls.evaluate(5) == 25 - 5


def test_elaborate_flattens_chains():
    f = parse_formula("ambient 1; pp(x1 = 0) | pp(x1 = 1) | pp(x1 = 2)")
    cls = k0_class(boolean_normalize(elaborate(f), 1))
    assert cls.evaluate(10) == 3 and cls.degree == 0
