"""Polynomial arithmetic, determinants and the parser."""

import random
from fractions import Fraction

import pytest
import sympy

from madic import (
    MadicError,
    ParseError,
    Polynomial,
    PrimeField,
    QQ,
    determinant,
    jacobian,
    minors,
    parse_polynomial,
)
from madic.poly import NEG_INF, PolyMatrix, det_bareiss, det_cofactor


def P(text, vars=("x", "y", "z")):
    return parse_polynomial(text, vars)


def test_ring_axioms_random():
    rng = random.Random(7)
    vars = ("x", "y")

    def rand_poly():
        terms = {}
        for _ in range(rng.randint(0, 5)):
            e = (rng.randint(0, 3), rng.randint(0, 3))
            terms[e] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        return Polynomial(QQ, vars, terms)

    for _ in range(200):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) * c == a * c + b * c
        assert a - a == Polynomial.zero(vars, QQ)


def test_degree_of_zero_is_neg_inf():
    z = Polynomial.zero(("x",), QQ)
    assert z.degree() == NEG_INF
    assert z.is_zero()


def test_diff_product_rule():
    a = P("x^2*y + z")
    b = P("y^3 - x")
    lhs = (a * b).diff("y")
    rhs = a.diff("y") * b + a * b.diff("y")
    assert lhs == rhs


def test_subs_composition():
    f = P("x^2 + y", ("x", "y"))
    g = {"x": P("y + 1", ("x", "y")), "y": P("x", ("x", "y"))}
    out = f.subs(g)
    assert out == P("(y+1)^2 + x", ("x", "y"))


def test_parse_rejects_unknown_variable():
    with pytest.raises(ParseError):
        parse_polynomial("x + w", ("x", "y"))


def test_parse_rational_coefficients():
    p = parse_polynomial("3/2*x - 1/3", ("x",))
    assert p.terms[(1,)] == Fraction(3, 2)
    assert p.terms[(0,)] == Fraction(-1, 3)


def test_parse_implicit_multiplication():
    assert P("(1+x)(1-x)") == P("1 - x^2")


def test_gfp_arithmetic():
    F5 = PrimeField(5)
    p = parse_polynomial("3*x + 4", ("x",), field=F5)
    q = parse_polynomial("2*x + 3", ("x",), field=F5)
    assert (p + q) == parse_polynomial("2", ("x",), field=F5)


def _rand_matrix(rng, n, vars=("x", "y")):
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            terms = {
                (rng.randint(0, 2), rng.randint(0, 2)): Fraction(rng.randint(-3, 3))
                for _ in range(rng.randint(0, 3))
            }
            row.append(Polynomial(QQ, vars, terms))
        rows.append(row)
    return PolyMatrix(rows)


def test_bareiss_matches_cofactor():
    rng = random.Random(11)
    for n in (1, 2, 3, 4):
        for _ in range(20):
            m = _rand_matrix(rng, n)
            assert det_bareiss(m) == det_cofactor(m)


def test_determinant_matches_sympy():
    rng = random.Random(13)
    xs, ys = sympy.symbols("x y")
    for _ in range(10):
        m = _rand_matrix(rng, 3)
        ours = determinant(m)
        sym = sympy.Matrix(
            [[sympy.sympify(str(e)) for e in row] for row in m.entries]
        ).det()
        assert sympy.simplify(sympy.sympify(str(ours)) - sym) == 0


def test_jacobian_rows_are_equations():
    fs = [P("x*z"), P("y^2")]
    j = jacobian(fs, ["x", "y", "z"])
    assert j.entries[0][0] == P("z")
    assert j.entries[0][2] == P("x")
    assert j.entries[1][1] == P("2*y")


def test_minors_edge_cases():
    fs = [P("x*z"), P("y^2")]
    j = jacobian(fs, ["x", "y", "z"])
    assert minors(j, 0) == [Polynomial.constant(1, ("x", "y", "z"), QQ)]
    assert minors(j, 3) == []
    twos = minors(j, 2)
    assert any(not m.is_zero() for m in twos)


def test_exact_division_error():
    from madic.poly import exact_div

    with pytest.raises(MadicError):
        exact_div(P("x^2 + 1"), P("x"))
    assert exact_div(P("x^2 - y^2"), P("x - y")) == P("x + y")
