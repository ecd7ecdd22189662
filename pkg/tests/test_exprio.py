"""Parser and printer tests: grammar, errors with offsets, round-trips."""

import random

import pytest

from conftest import property_algebras, random_ncpoly
from heisenpoly.exprio import ParseError, parse, parse_scalar, print_poly
from heisenpoly.identities import build, suite_grid
from heisenpoly.ncalg import (
    borel_a,
    borel_b,
    heisenberg_classical,
    heisenberg_q,
    quantum_plane,
)
from heisenpoly.scalars import ALPHA, Q, CoeffPoly, q_pow, qnum, rational, v_pow

CL = heisenberg_classical()
HQ = heisenberg_q()
QP = quantum_plane()


# -- parsing -----------------------------------------------------------------


def test_parse_spec_examples():
    assert parse("b*a*(b*a-1)", CL) == CL.word([("b", 2), ("a", 2)])
    assert parse("a*b - q*b*a - 1", HQ).is_zero
    assert parse("a*b*a", CL) == CL.word([("b", 1), ("a", 2)]) + CL.gen("a")


def test_parse_result_is_normal_ordered():
    p = parse("a^2*b", CL)
    assert p.is_normal
    assert p == CL.word([("b", 1), ("a", 2)]) + 2 * CL.gen("a")


def test_parse_index_exceeds_p():
    with pytest.raises(ParseError) as err:
        parse("b3*a1", QP)
    assert "index 3 exceeds p=2" in str(err.value)
    assert err.value.offset == 0


def test_parse_unknown_generator():
    with pytest.raises(ParseError) as err:
        parse("b*x", CL)
    assert err.value.offset == 2
    with pytest.raises(ParseError):
        parse("ba", CL)  # implicit multiplication rejected as unknown name
    with pytest.raises(ParseError):
        parse("a1*b1", CL)  # indexless algebra uses plain a, b
    with pytest.raises(ParseError):
        parse("a*b", borel_a())  # Borel uses A, B
    assert parse("A*B", borel_a()) == parse("q*B*A + A", borel_a())


def test_parse_syntax_error_offsets():
    for text, offset in [("b*", 2), ("(b*a", 4), ("b^", 2), ("3/", 1), ("*a", 0), ("b^1/2", 2)]:
        with pytest.raises(ParseError) as err:
            parse(text, CL)
        assert err.value.offset == offset, text


def test_parse_whitespace_insensitive():
    assert parse("  b * a\t- 1 ", CL) == parse("b*a-1", CL)


def test_parse_negative_exponents_scalar_only():
    assert parse("q^-1*b*a", HQ) == HQ.word([("b", 1), ("a", 1)], coeff=q_pow(-1))
    assert parse("(2*q)^-2*b", HQ) == HQ.word([("b", 1)], coeff=rational(1, 4) * q_pow(-2))
    with pytest.raises(ParseError):
        parse("b^-1", CL)
    with pytest.raises(ParseError):
        parse("(b*a)^-1", CL)
    with pytest.raises(ParseError):
        parse("alpha^-1", CL)
    with pytest.raises(ParseError):
        parse("(1+q)^-1", HQ)


def test_parse_qnumber_literal():
    assert parse("{3}*b", CL) == CL.word([("b", 1)], coeff=qnum(3))
    with pytest.raises(ParseError):
        parse("{x}", CL)


def test_parse_leading_minus():
    assert parse("-b*a + 1", CL) == CL.one() - CL.word([("b", 1), ("a", 1)])


def test_parse_scalar_examples():
    assert parse_scalar("{3}") == 1 + Q + Q ** 2
    assert parse_scalar("-2/3") == rational(-2, 3)
    assert parse_scalar("q^2*alpha") == CoeffPoly.monomial(v=4, alpha=1)
    assert parse_scalar("v^3") == v_pow(3)
    with pytest.raises(ParseError):
        parse_scalar("b*a")
    with pytest.raises(ParseError):
        parse_scalar("2//3")


# -- printing -----------------------------------------------------------------


def test_print_spec_examples():
    p = CL.word([("b", 1), ("a", 1)]) + 1
    assert print_poly(p) == "b*a + 1"
    pq = HQ.word([("b", 2), ("a", 2)], coeff=Q) + HQ.word([("b", 1), ("a", 1)])
    assert print_poly(pq) == "q*b^2*a^2 + b*a"


def test_print_zero():
    assert print_poly(CL.zero()) == "0"


def test_print_multi_term_coefficients_parenthesized():
    p = HQ.word([("b", 1), ("a", 1)], coeff=1 + Q)
    assert print_poly(p) == "(1 + q)*b*a"


def test_print_constant_terms_flattened():
    p = CL.word([("b", 1), ("a", 1)]) + CL.scalar(1 + Q) - CL.scalar(2 * ALPHA)
    text = print_poly(p)
    assert text == "b*a + 1 - 2*alpha + q"
    assert parse(text, CL) == p


def test_print_requires_normal_form():
    with pytest.raises(ValueError):
        print_poly(CL.word([("a", 1), ("b", 1)]))


def test_print_graded_lex_order():
    _, rhs = build("E15", n=1, p=2)
    text = print_poly(rhs.normal_order())
    assert text == "b1^2*a1^2 + 2*b1*b2*a1*a2 + b2^2*a2^2"


def test_print_negative_leading_coefficient():
    p = -CL.word([("b", 1), ("a", 1)]) + 1
    assert print_poly(p) == "-b*a + 1"
    assert parse(print_poly(p), CL) == p


# -- round-trips ----------------------------------------------------------------


def test_round_trip_identity_corpus():
    cases = []
    for tag in ("E2", "E13", "E19", "E23", "E30", "E32", "BB"):
        params = next(iter(suite_grid(tag, 2, 2, 2)))
        lhs, rhs = build(tag, **{k: 2 if k == "n" else v for k, v in params.items()})
        cases += [lhs.normal_order(), rhs.normal_order()]
    for poly in cases:
        text = print_poly(poly)
        assert parse(text, poly.algebra) == poly
        assert print_poly(parse(text, poly.algebra)) == text


def test_round_trip_random_polys():
    rng = random.Random(37)
    for algebra in property_algebras():
        for _ in range(40):
            poly = random_ncpoly(rng, algebra, max_terms=3, max_letters=5).normal_order()
            text = print_poly(poly)
            assert parse(text, algebra) == poly, text


def random_expression(rng: random.Random, algebra, depth: int = 0) -> str:
    def atom():
        roll = rng.random()
        if roll < 0.45:
            return rng.choice(algebra.gen_names)
        if roll < 0.6:
            return str(rng.randint(0, 9))
        if roll < 0.7:
            return f"{rng.randint(1, 9)}/{rng.randint(1, 9)}"
        if roll < 0.8:
            return rng.choice(["q", "v", "alpha", "eps"]) if algebra.central != "c" else "c"
        if roll < 0.9:
            return "{%d}" % rng.randint(0, 4)
        if depth < 2:
            return "(" + random_expression(rng, algebra, depth + 1) + ")"
        return rng.choice(algebra.gen_names)

    def factor():
        base = atom()
        if rng.random() < 0.3:
            return f"{base}^{rng.randint(0, 3)}"
        return base

    def term():
        return "*".join(factor() for _ in range(rng.randint(1, 3)))

    parts = [term()]
    for _ in range(rng.randint(0, 2)):
        parts.append(rng.choice(["+", "-"]))
        parts.append(term())
    return " ".join(parts)


def test_round_trip_random_grammar_strings():
    rng = random.Random(41)
    algebras = [CL, HQ, QP, borel_a(), borel_b(), heisenberg_classical(2)]
    checked = 0
    while checked < 200:
        algebra = rng.choice(algebras)
        text = random_expression(rng, algebra)
        value = parse(text, algebra)
        printed = print_poly(value)
        assert parse(printed, algebra) == value, (text, printed)
        assert print_poly(parse(printed, algebra)) == printed
        checked += 1


def test_print_injective_on_corpus():
    rng = random.Random(43)
    seen = {}
    for _ in range(120):
        poly = random_ncpoly(rng, CL, max_terms=3, max_letters=4).normal_order()
        text = print_poly(poly)
        if text in seen:
            assert seen[text] == poly
        else:
            seen[text] = poly
