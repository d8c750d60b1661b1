"""Weierstrass preparation, division, and the generic Euclidean division."""

import random
from fractions import Fraction

import pytest

from madic import (
    DistinguishedPolynomial,
    LinearChange,
    MadicError,
    QQ,
    TruncatedSeries,
    divide_series,
    generic_euclid,
    parse_polynomial,
    parse_series,
    prepare,
    regularize,
    w_divide,
    y_regular_order,
)

XY = ("x", "y")


def S(text, vars=XY, precision=None):
    poly, prec = parse_series(text, vars)
    return TruncatedSeries.from_polynomial(poly, precision or prec)


def test_y_regular_order():
    assert y_regular_order(S("y^2 + x*y^5 + O(m^10)")).value == 2
    assert y_regular_order(S("1 + y + O(m^10)")).value == 0
    assert not y_regular_order(S("x + x*y + O(m^10)")).finite


def test_regularize_identity_when_already_regular():
    u = S("y^2 + x^2 + O(m^8)")
    change, out = regularize(u)
    assert change.is_identity()
    assert out == u


def test_regularize_shears_to_minimal_order():
    # y^2 + x has order 1 but is y-regular of order 2; a shear fixes that
    change, out = regularize(S("y^2 + x + O(m^8)"))
    assert not change.is_identity()
    yo = y_regular_order(out)
    assert yo.finite and yo.value == 1


def test_regularize_pure_x_power():
    change, out = regularize(S("x^2 + O(m^8)"))
    assert not change.is_identity()
    yo = y_regular_order(out)
    assert yo.finite and yo.value == 2
    # the change is invertible: applying the inverse restores the input
    back = change.inverse().apply_series(out)
    assert back == S("x^2 + O(m^8)")


def test_linear_change_composition():
    c = LinearChange(1, 2, 0, 1, QQ)
    s = S("x^2 + y^3 + O(m^9)")
    assert c.inverse().apply_series(c.apply_series(s)) == s


def test_prepare_documented_example():
    u = S("(1+x)(y^2 + x*y + x^2) + O(m^16)")
    unit, dist = prepare(u)
    assert unit == S("1 + x + O(m^16)")
    assert dist.r == 2
    assert dist.coeffs[0] == TruncatedSeries.from_polynomial(
        parse_polynomial("x", ("x",)), 16
    )
    assert dist.coeffs[1] == TruncatedSeries.from_polynomial(
        parse_polynomial("x^2", ("x",)), 16
    )


def test_prepare_unit_input():
    u = S("1 + x + y + O(m^8)")
    unit, dist = prepare(u)
    assert dist.r == 0
    assert unit == u


def test_distinguished_coefficients_must_vanish_at_origin():
    one = TruncatedSeries.constant(1, ("x",), 8)
    with pytest.raises(MadicError):
        DistinguishedPolynomial(1, [one])


def _rand_unit(rng, N):
    terms = {(0, 0): Fraction(rng.choice([1, -1, 2, 3]))}
    for _ in range(rng.randint(0, 6)):
        e = (rng.randint(0, 3), rng.randint(0, 3))
        if e != (0, 0):
            terms[e] = Fraction(rng.randint(-3, 3))
    return TruncatedSeries(QQ, XY, N, terms)


def _rand_dist(rng, N, rmax=3):
    r = rng.randint(1, rmax)
    coeffs = []
    for _ in range(r):
        terms = {
            (rng.randint(1, 4),): Fraction(rng.randint(-3, 3))
            for _ in range(rng.randint(0, 2))
        }
        coeffs.append(TruncatedSeries(QQ, ("x",), N, terms))
    return DistinguishedPolynomial(r, coeffs)


def test_prepare_round_trip_randomized():
    """unit * distinguished -> prepare recovers both factors bit-exactly."""
    rng = random.Random(5)
    N = 24
    for _ in range(200):
        u = _rand_unit(rng, N)
        dist = _rand_dist(rng, N)
        prod = u * dist.to_series(XY, N)
        unit2, dist2 = prepare(prod)
        assert dist2.r == dist.r
        assert dist2.coeffs == dist.coeffs
        assert unit2 == u


def _rand_series(rng, N, nterms=8, maxdeg=6):
    terms = {}
    for _ in range(rng.randint(1, nterms)):
        e = (rng.randint(0, maxdeg), rng.randint(0, maxdeg))
        terms[e] = Fraction(rng.randint(-4, 4))
    return TruncatedSeries(QQ, XY, N, terms)


def test_w_divide_recomposition_randomized():
    """a*q + sum_j rem_j y^j reproduces the dividend mod m^N."""
    rng = random.Random(9)
    N = 24
    for _ in range(200):
        g = _rand_series(rng, N)
        dist = _rand_dist(rng, N)
        q, rems = w_divide(g, dist)
        recomposed = dist.to_series(XY, N) * q
        y = TruncatedSeries.variable("y", XY, N)
        for j, rem in enumerate(rems):
            biv = TruncatedSeries(
                QQ, XY, N, {(e[0], 0): c for e, c in rem.terms.items()}
            )
            recomposed = recomposed + biv * y**j
        assert recomposed == g


def test_w_divide_documented_example():
    g = S("y^3 + O(m^12)")
    dist = DistinguishedPolynomial(
        2,
        [
            TruncatedSeries.zero(("x",), 12),
            TruncatedSeries.from_polynomial(parse_polynomial("-x", ("x",)), 12),
        ],
    )
    q, rems = w_divide(g, dist)
    assert q == S("y + O(m^12)")
    assert rems[0].is_zero_to_precision()
    assert rems[1] == TruncatedSeries.from_polynomial(parse_polynomial("x", ("x",)), 12)


def test_generic_euclid_v_squared():
    vars = ("x", "V", "A1")
    P = parse_polynomial("V^2", vars)
    res = generic_euclid(P, 1, "V", ["A1"])
    assert res.quotient == parse_polynomial("V - A1", vars)
    assert res.remainder == parse_polynomial("A1^2", vars)
    assert res.remainder_coefficient(0) == parse_polynomial("A1^2", vars)


def test_generic_euclid_low_degree_input():
    vars = ("x", "V", "A1", "A2")
    P = parse_polynomial("x*V + 1", vars)
    res = generic_euclid(P, 2, "V", ["A1", "A2"])
    assert res.quotient.is_zero()
    assert res.remainder == P


def test_generic_euclid_identity():
    # P = A*Q + R exactly, as polynomials
    vars = ("x", "V", "A1", "A2")
    P = parse_polynomial("V^4 + x*V^2 + 1", vars)
    res = generic_euclid(P, 2, "V", ["A1", "A2"])
    A = parse_polynomial("V^2 + A1*V + A2", vars)
    assert A * res.quotient + res.remainder == P


def test_generic_euclid_degree_bounds_randomized():
    """deg_V(R) < r and deg(R) <= deg(P) on random inputs."""
    rng = random.Random(17)
    for _ in range(300):
        r = rng.randint(1, 3)
        a_names = [f"A{i}" for i in range(1, r + 1)]
        vars = ("x", "V") + tuple(a_names)
        terms = {}
        for _ in range(rng.randint(1, 6)):
            e = [0] * len(vars)
            e[0] = rng.randint(0, 2)
            e[1] = rng.randint(0, 5)
            for k in range(r):
                e[2 + k] = rng.randint(0, 1)
            terms[tuple(e)] = Fraction(rng.randint(-3, 3))
        from madic import Polynomial

        P = Polynomial(QQ, vars, terms)
        if P.is_zero():
            continue
        res = generic_euclid(P, r, "V", a_names)
        assert res.remainder.degree_in("V") < r
        assert res.remainder.degree() <= P.degree()


def test_divide_series_by_unit():
    v = S("x + x^2 + O(m^10)")
    u = S("1 + x + O(m^10)")
    q = divide_series(v, u)
    assert q * u == v


def test_divide_series_univariate_shift():
    v, _ = parse_series("2*x^5 + x^8 + O(m^12)", ("x",))
    v = TruncatedSeries.from_polynomial(v, 12)
    u, _ = parse_series("x^2 + x^3 + O(m^12)", ("x",))
    u = TruncatedSeries.from_polynomial(u, 12)
    q = divide_series(v, u)
    assert (q * u.truncate(q.precision)) == v.truncate(q.precision)


def test_divide_series_bivariate():
    v = S("x^2*y + x^3 + O(m^14)")
    u = S("x + O(m^14)")
    q = divide_series(v, u)
    assert (q * u.truncate(q.precision)) == v.truncate(q.precision)


def test_divide_series_inexact_fails():
    with pytest.raises(MadicError):
        divide_series(S("y + O(m^8)"), S("x + O(m^8)"))


def test_divide_series_order_check():
    v, _ = parse_series("x^3 + O(m^10)", ("x",))
    v = TruncatedSeries.from_polynomial(v, 10)
    u, _ = parse_series("x^2 + O(m^10)", ("x",))
    u = TruncatedSeries.from_polynomial(u, 10)
    assert divide_series(v, u, order_check=1) is not None
    with pytest.raises(MadicError):
        divide_series(v, u, order_check=2)
