"""Weierstrass preparation and division at finite precision, linear
y-regularization, generic Euclidean division with its degree bound, and
certified exact division of truncated series.

Division is the classical x-adic recursion: slice the dividend and divisor
into coefficients of powers of x, then solve slice by slice, inverting the
unit part of the divisor's x^0 slice in k[[y]].  Stored terms are treated as
the exact representative of the series; results are truncated back to the
working precision.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .errors import MadicError, PrecisionError
from .fields import QQ
from .poly import Polynomial
from .series import OrderValue, TruncatedSeries


def y_regular_order(u):
    """Order of u(0, y) as a univariate series; a marker if it vanishes."""
    if len(u.vars) != 2:
        raise MadicError("y-regularity is a bivariate notion")
    degs = [e[1] for e in u.terms if e[0] == 0]
    if not degs:
        return OrderValue.at_least(u.precision)
    return OrderValue(min(degs))


class LinearChange:
    """An invertible linear change of the two series variables.

    Acts on (x, y) by x -> a*x + b*y, y -> c*x + d*y.  The inverse is stored
    and verified by composition at construction time.
    """

    def __init__(self, a, b, c, d, field=QQ):
        a, b, c, d = (field.convert(v) for v in (a, b, c, d))
        det = field.sub(field.mul(a, d), field.mul(b, c))
        if field.is_zero(det):
            raise MadicError("linear change must be invertible")
        self.field = field
        self.matrix = (a, b, c, d)
        inv_det = field.inv(det)
        self.inverse_matrix = (
            field.mul(d, inv_det),
            field.neg(field.mul(b, inv_det)),
            field.neg(field.mul(c, inv_det)),
            field.mul(a, inv_det),
        )
        composed = self._compose(self.matrix, self.inverse_matrix)
        if composed != (field.one(), field.zero(), field.zero(), field.one()):
            raise MadicError("inverse verification failed")

    @classmethod
    def shear(cls, lam, field=QQ):
        """x -> x + lam*y, y -> y."""
        return cls(1, lam, 0, 1, field)

    @classmethod
    def identity(cls, field=QQ):
        return cls(1, 0, 0, 1, field)

    def is_identity(self):
        f = self.field
        return self.matrix == (f.one(), f.zero(), f.zero(), f.one())

    def _compose(self, m1, m2):
        f = self.field
        a, b, c, d = m1
        e, g, h, i = m2
        return (
            f.add(f.mul(a, e), f.mul(b, h)),
            f.add(f.mul(a, g), f.mul(b, i)),
            f.add(f.mul(c, e), f.mul(d, h)),
            f.add(f.mul(c, g), f.mul(d, i)),
        )

    def inverse(self):
        out = LinearChange.identity(self.field)
        out.matrix, out.inverse_matrix = self.inverse_matrix, self.matrix
        return out

    def _images_poly(self, vars, field):
        x = Polynomial.variable(vars[0], vars, field)
        y = Polynomial.variable(vars[1], vars, field)
        a, b, c, d = self.matrix
        return {vars[0]: x.scale(a) + y.scale(b), vars[1]: x.scale(c) + y.scale(d)}

    def apply_poly(self, p, series_vars):
        """Substitute the change into the series variables of a polynomial."""
        return p.subs(
            {
                v: img.extend_vars(p.vars)
                for v, img in self._images_poly(series_vars, p.field).items()
            }
        )

    def apply_series(self, s):
        """Substitute the change into a bivariate truncated series.

        Monomials map to homogeneous polynomials of the same degree, so the
        m-adic order and the precision are preserved.
        """
        if len(s.vars) != 2:
            raise MadicError("linear changes act on bivariate series")
        f = s.field
        images = self._images_poly(s.vars, f)
        sx = TruncatedSeries.from_polynomial(images[s.vars[0]], s.precision)
        sy = TruncatedSeries.from_polynomial(images[s.vars[1]], s.precision)
        out = TruncatedSeries.zero(s.vars, s.precision, f)
        cache = ({}, {})
        for (i, j), c in s.terms.items():
            term = TruncatedSeries.constant(c, s.vars, s.precision, f)
            if i:
                if i not in cache[0]:
                    cache[0][i] = sx ** i
                term = term * cache[0][i]
            if j:
                if j not in cache[1]:
                    cache[1][j] = sy ** j
                term = term * cache[1][j]
            out = out + term
        return out

    def __repr__(self):
        return f"LinearChange{self.matrix}"


def regularize(u, seed=0, max_tries=256):
    """Find a shear x -> x + lam*y making u y-regular of order exactly ord(u).

    Over the rationals lam runs deterministically over 0, 1, 2, ...; over a
    prime field lam=0 is tried first, then random nonzero residues.
    """
    o = u.order()
    if not o.finite:
        raise PrecisionError("series is zero to precision; cannot regularize")
    if o.value >= u.precision:
        raise PrecisionError("precision too low to certify the order")

    def candidates():
        if u.field.characteristic == 0:
            k = 0
            while True:
                yield k
                k += 1
        else:
            yield 0
            rng = random.Random(seed)
            p = u.field.characteristic
            while True:
                yield rng.randrange(1, p)

    tried = 0
    for lam in candidates():
        change = LinearChange.shear(lam, u.field)
        v = u if lam == 0 else change.apply_series(u)
        yo = y_regular_order(v)
        if yo.finite and yo.value == o.value:
            return change, v
        tried += 1
        if tried >= max_tries:
            break
    raise MadicError("no shear made the series y-regular of its order")


@dataclass
class DistinguishedPolynomial:
    """y^r + a_1(x) y^(r-1) + ... + a_r(x) with every a_i(0) = 0."""

    r: int
    coeffs: list  # univariate TruncatedSeries a_1 ... a_r

    def __post_init__(self):
        if len(self.coeffs) != self.r:
            raise MadicError("need exactly r coefficient series")
        for a in self.coeffs:
            if len(a.vars) != 1:
                raise MadicError("coefficients must be univariate")
            if not a.field.is_zero(a.constant_term()):
                raise MadicError("a_i(0) must vanish for a Weierstrass polynomial")

    def to_series(self, vars, precision):
        """The distinguished polynomial as a bivariate series in `vars`."""
        if self.r == 0:
            fld = QQ
            return TruncatedSeries.constant(1, vars, precision, fld)
        fld = self.coeffs[0].field
        terms = {(0, self.r): fld.one()}
        for p, a in enumerate(self.coeffs, start=1):
            ypow = self.r - p
            for (i,), c in a.terms.items():
                if i + ypow < precision:
                    key = (i, ypow)
                    terms[key] = fld.add(terms.get(key, fld.zero()), c)
        return TruncatedSeries(fld, vars, precision, terms)

    def serialize(self):
        parts = [f"y^{self.r}"]
        for p, a in enumerate(self.coeffs, start=1):
            parts.append(f"[{a}] y^{self.r - p}" if self.r - p else f"[{a}]")
        return " + ".join(parts)


def _x_slices(terms):
    """Split bivariate terms into {x_exp: {y_exp: coeff}}."""
    slices = {}
    for (i, j), c in terms.items():
        slices.setdefault(i, {})[j] = c
    return slices


def _uni_mul(a, b, field, ycap):
    out = {}
    for i, ca in a.items():
        for j, cb in b.items():
            if i + j > ycap:
                continue
            k = i + j
            prev = out.get(k)
            out[k] = field.mul(ca, cb) if prev is None else field.add(prev, field.mul(ca, cb))
    return {k: c for k, c in out.items() if not field.is_zero(c)}


def _uni_inverse(a, field, ycap):
    """Inverse of a unit univariate coefficient dict, to degree ycap."""
    c0 = a.get(0)
    if c0 is None or field.is_zero(c0):
        raise MadicError("not a unit")
    inv0 = field.inv(c0)
    out = {0: inv0}
    for k in range(1, ycap + 1):
        acc = field.zero()
        for j, cj in a.items():
            if 0 < j <= k:
                acc = field.add(acc, field.mul(cj, out.get(k - j, field.zero())))
        v = field.neg(field.mul(inv0, acc))
        if not field.is_zero(v):
            out[k] = v
    return out


def weierstrass_divide(g, u, r):
    """Divide g by a y-regular series u of order r:
    g = u*q + sum_j rem_j(x) y^j with j < r.

    Returns (q, [rem_0, ..., rem_{r-1}]); q is bivariate, the remainders are
    univariate series in x.  Stored terms are treated as exact; outputs are
    truncated to the common precision.
    """
    g._check(u)
    N = min(g.precision, u.precision)
    fld = g.field
    yo = y_regular_order(u)
    if not yo.finite or yo.value != r:
        raise MadicError(
            "divisor is not y-regular of the stated order; regularize first"
        )
    # each x-slice step shifts the working y-degrees down by r, so a
    # truncation error above the cap can migrate into the output after
    # about cap/r slices; slice i of the quotient therefore needs
    # y-degrees up to N + r*(N-1-i) to keep all dropped terms
    # unreachable within the x-range of the output
    ycap = N + r * N
    uslices = _x_slices(u.terms)
    gslices = _x_slices(g.terms)
    e_unit = {j - r: c for j, c in uslices.get(0, {}).items()}
    if min(e_unit) != 0:
        raise MadicError("divisor x^0 slice has unexpected y-order")
    e_inv = _uni_inverse(e_unit, fld, ycap)

    q_slices = {}
    rem_slices = {}
    for i in range(N):
        cap = N + r * (N - 1 - i)
        h = dict(gslices.get(i, {}))
        for j in range(1, i + 1):
            uj = uslices.get(j)
            qk = q_slices.get(i - j)
            if not uj or not qk:
                continue
            prod = _uni_mul(uj, qk, fld, cap + r)
            for k, c in prod.items():
                v = fld.sub(h.get(k, fld.zero()), c)
                if fld.is_zero(v):
                    h.pop(k, None)
                else:
                    h[k] = v
        rem_slices[i] = {k: c for k, c in h.items() if k < r}
        tail = {k - r: c for k, c in h.items() if k >= r}
        q_slices[i] = _uni_mul(tail, e_inv, fld, cap)

    q_terms = {}
    for i, sl in q_slices.items():
        for j, c in sl.items():
            if i + j < N:
                q_terms[(i, j)] = c
    q = TruncatedSeries(fld, g.vars, N, q_terms)
    rems = []
    xvar = (g.vars[0],)
    for j in range(r):
        terms = {}
        for i, sl in rem_slices.items():
            if j in sl:
                terms[(i,)] = sl[j]
        rems.append(TruncatedSeries(fld, xvar, N, terms))
    return q, rems


def prepare(u, precision=None):
    """Weierstrass preparation: u = unit * dist, for u y-regular of order r.

    Computed by dividing y^r by u; the remainder gives the distinguished
    coefficients and the quotient is the unit's inverse.  Deterministic, so
    re-running reproduces identical coefficients.
    """
    if precision is not None and precision < u.precision:
        u = u.truncate(precision)
    yo = y_regular_order(u)
    if not yo.finite:
        raise MadicError("series is not y-regular; apply regularize() first")
    r = yo.value
    if r >= u.precision:
        raise PrecisionError("y-regular order at or beyond precision")
    if r == 0:
        return u, DistinguishedPolynomial(0, [])
    fld = u.field
    yr = TruncatedSeries(fld, u.vars, u.precision, {(0, r): fld.one()})
    q, rems = weierstrass_divide(yr, u, r)
    # y^r = u*q + rem  =>  u*q = y^r - rem =: dist, and unit = q^{-1}
    coeffs = []
    for p in range(1, r + 1):
        coeffs.append(-rems[r - p])
    dist = DistinguishedPolynomial(r, coeffs)
    unit = q.inverse()
    return unit, dist


def w_divide(g, a, precision=None):
    """Weierstrass division of a bivariate series by a distinguished
    polynomial: g = a*q + sum_{j<r} rem_j(x) y^j."""
    if precision is not None and precision < g.precision:
        g = g.truncate(precision)
    if a.r == 0:
        return g, []
    aser = a.to_series(g.vars, g.precision)
    return weierstrass_divide(g, aser, a.r)


@dataclass
class GenericDivisionResult:
    """P = A*Q + R for the generic monic divisor A(V) = V^r + A_1 V^(r-1) +
    ... + A_r; deg_V(R) < r and deg(R) <= deg(P)."""

    quotient: Polynomial
    remainder: Polynomial
    r: int
    v_var: str

    def remainder_coefficient(self, l):
        """Coefficient of V^l in R, as a polynomial with V removed from use."""
        i = self.remainder.vars.index(self.v_var)
        terms = {}
        for e, c in self.remainder.terms.items():
            if e[i] == l:
                ne = list(e)
                ne[i] = 0
                terms[tuple(ne)] = c
        return Polynomial(self.remainder.field, self.remainder.vars, terms)


def generic_euclid(P, r, v_var, a_vars):
    """Euclidean division of P by the generic monic polynomial
    A(V) = V^r + A_1 V^(r-1) + ... + A_r with indeterminate coefficients.

    The recursion peels the leading V-term: P -> P - P_e V^(e-r) A(V).
    """
    if len(a_vars) != r:
        raise MadicError("need exactly r generic coefficient variables")
    vars = tuple(P.vars) + tuple(v for v in (v_var, *a_vars) if v not in P.vars)
    P = P.extend_vars(vars)
    fld = P.field
    V = Polynomial.variable(v_var, vars, fld)
    A = V ** r
    for p, av in enumerate(a_vars, start=1):
        A = A + Polynomial.variable(av, vars, fld) * V ** (r - p)

    vi = vars.index(v_var)
    Q = Polynomial.zero(vars, fld)
    work = P
    while True:
        if work.is_zero():
            break
        e = max(x[vi] for x in work.terms)
        if e < r:
            break
        lead_terms = {}
        for ex, c in work.terms.items():
            if ex[vi] == e:
                ne = list(ex)
                ne[vi] = 0
                lead_terms[tuple(ne)] = c
        Pe = Polynomial(fld, vars, lead_terms)
        shift = Pe * V ** (e - r)
        Q = Q + shift
        work = work - shift * A
    return GenericDivisionResult(Q, work, r, v_var)


def divide_series(v, u, order_check=None):
    """Certified exact division v / u of truncated series.

    Raises MadicError when v is not a multiple of u to the available
    precision.  The quotient's precision drops by ord(u).  `order_check`,
    when given, additionally requires ord(v/u) >= order_check.
    """
    v._check(u)
    uo = u.order()
    if not uo.finite:
        raise MadicError("division by a series that vanishes to precision")
    if uo.value == 0:
        q = v * u.inverse()
    elif len(v.vars) == 1:
        k = uo.value
        if any(e[0] < k for e in v.terms):
            raise MadicError("series division is not exact")
        prec = min(v.precision, u.precision) - k
        fld = v.field
        shifted_v = TruncatedSeries(fld, v.vars, prec, {(e[0] - k,): c for e, c in v.terms.items()})
        shifted_u = TruncatedSeries(fld, u.vars, prec, {(e[0] - k,): c for e, c in u.terms.items()})
        q = shifted_v * shifted_u.inverse()
    else:
        r = uo.value
        N = min(v.precision, u.precision)
        if N <= 2 * r + 1:
            raise PrecisionError("precision too low for series division")
        change, u_reg = regularize(u)
        v_reg = v if change.is_identity() else change.apply_series(v)
        unit, dist = prepare(u_reg)
        q_reg, rems = w_divide(v_reg, dist)
        for j, rem in enumerate(rems):
            ro = rem.order()
            if ro.finite and ro.value + j < N - 2 * r:
                raise MadicError("series division is not exact")
        q_reg = q_reg * unit.inverse()
        q = q_reg if change.is_identity() else change.inverse().apply_series(q_reg)
        q = q.truncate(N - r)
    if order_check is not None and not q.order().ge(order_check):
        raise MadicError(
            f"quotient order {q.order()} below required {order_check}"
        )
    return q
