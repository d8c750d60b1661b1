"""Truncated formal power series in one or two variables.

A TruncatedSeries stores the terms of total degree < N (the precision) of an
element of k[[x]] or k[[x,y]].  The m-adic order of an apparently-zero
truncated series cannot be certified, so `ord` returns a lower-bound marker
`at least N` in that case and callers must branch on it explicitly.

Norms e^{-ord} are never materialized as floats: every comparison is an
integer comparison on orders.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainMismatchError, MadicError, PrecisionError
from .fields import QQ, check_same_field
from .poly import Polynomial


@dataclass(frozen=True)
class OrderValue:
    """Either a finite m-adic order, or `at least N` for a series whose
    stored terms all vanish."""

    value: int
    finite: bool = True

    @classmethod
    def at_least(cls, n):
        return cls(n, False)

    def ge(self, k):
        """True when the order is certainly >= k."""
        return self.value >= k

    def lt(self, k):
        """True when the order is certainly < k."""
        return self.finite and self.value < k

    def __str__(self):
        return str(self.value) if self.finite else f"at-least-precision({self.value})"

    def to_json(self):
        if self.finite:
            return {"kind": "finite", "value": self.value}
        return {"kind": "at-least-precision", "value": self.value}


@dataclass(frozen=True)
class Norm:
    """The symbolic norm e^{-ord}; an upper bound e^{-N} for an apparently
    zero series."""

    order: OrderValue

    def __str__(self):
        if self.order.finite:
            return f"e^-{self.order.value}"
        return f"<= e^-{self.order.value}"


class TruncatedSeries:
    __slots__ = ("field", "vars", "precision", "terms")

    def __init__(self, field, vars, precision, terms):
        vars = tuple(vars)
        if len(vars) not in (1, 2):
            raise MadicError("series live in one or two variables")
        if precision <= 0:
            raise MadicError("precision must be positive")
        self.field = field
        self.vars = vars
        self.precision = precision
        self.terms = {
            e: c
            for e, c in terms.items()
            if sum(e) < precision and not field.is_zero(c)
        }

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars, precision, field=QQ):
        return cls(field, vars, precision, {})

    @classmethod
    def constant(cls, value, vars, precision, field=QQ):
        c = field.convert(value)
        return cls(field, vars, precision, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, name, vars, precision, field=QQ):
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(field, vars, precision, {tuple(e): field.one()})

    @classmethod
    def from_polynomial(cls, p, precision):
        return cls(p.field, p.vars, precision, p.terms)

    def to_polynomial(self):
        return Polynomial(self.field, self.vars, dict(self.terms))

    # -- basics -------------------------------------------------------

    def _check(self, other):
        check_same_field(self.field, other.field)
        if self.vars != other.vars:
            raise DomainMismatchError(
                f"series variables differ: {self.vars} vs {other.vars}"
            )

    def is_zero_to_precision(self):
        return not self.terms

    def order(self):
        if not self.terms:
            return OrderValue.at_least(self.precision)
        return OrderValue(min(sum(e) for e in self.terms))

    def norm(self):
        return Norm(self.order())

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), self.field.zero())

    def is_unit(self):
        return not self.field.is_zero(self.constant_term())

    def truncate(self, precision):
        if precision > self.precision:
            raise PrecisionError(
                f"cannot raise precision {self.precision} -> {precision}"
            )
        return TruncatedSeries(self.field, self.vars, precision, self.terms)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = TruncatedSeries.constant(other, self.vars, self.precision, self.field)
        self._check(other)
        f = self.field
        prec = min(self.precision, other.precision)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = f.add(out.get(e, f.zero()), c)
        return TruncatedSeries(f, self.vars, prec, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return TruncatedSeries(
            f, self.vars, self.precision, {e: f.neg(c) for e, c in self.terms.items()}
        )

    def __sub__(self, other):
        if isinstance(other, int):
            other = TruncatedSeries.constant(other, self.vars, self.precision, self.field)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = TruncatedSeries.constant(other, self.vars, self.precision, self.field)
        self._check(other)
        f = self.field
        prec = min(self.precision, other.precision)
        out = {}
        for ea, ca in self.terms.items():
            da = sum(ea)
            for eb, cb in other.terms.items():
                if da + sum(eb) >= prec:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                prev = out.get(e)
                out[e] = f.mul(ca, cb) if prev is None else f.add(prev, f.mul(ca, cb))
        return TruncatedSeries(f, self.vars, prec, out)

    __rmul__ = __mul__

    def scale(self, c):
        f = self.field
        c = f.convert(c)
        return TruncatedSeries(
            f, self.vars, self.precision, {e: f.mul(cc, c) for e, cc in self.terms.items()}
        )

    def __pow__(self, n):
        if n < 0:
            raise MadicError("negative series power")
        out = TruncatedSeries.constant(1, self.vars, self.precision, self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def inverse(self):
        """Multiplicative inverse of a unit, by Newton doubling."""
        c0 = self.constant_term()
        if self.field.is_zero(c0):
            raise MadicError("series is not a unit")
        f = self.field
        inv = TruncatedSeries.constant(f.inv(c0), self.vars, 1, f)
        prec = 1
        while prec < self.precision:
            prec = min(2 * prec, self.precision)
            u = TruncatedSeries(f, self.vars, prec, self.terms)
            inv = TruncatedSeries(f, self.vars, prec, inv.terms)
            inv = inv * (2 - u * inv)
        return inv

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.field == other.field
            and self.vars == other.vars
            and self.precision == other.precision
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, self.vars, self.precision, frozenset(self.terms.items())))

    def __str__(self):
        body = str(self.to_polynomial())
        return f"{body} + O(m^{self.precision})"

    def __repr__(self):
        return f"<series {self}>"


class SeriesVector:
    """A nonempty tuple of series over a common ring at uniform precision."""

    def __init__(self, entries):
        entries = list(entries)
        if not entries:
            raise MadicError("empty series vector")
        first = entries[0]
        for s in entries[1:]:
            first._check(s)
            if s.precision != first.precision:
                raise MadicError("series vector requires uniform precision")
        self.entries = entries
        self.vars = first.vars
        self.field = first.field
        self.precision = first.precision

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def order(self):
        """Min of the coordinate orders (the vector norm's exponent)."""
        finite = [s.order() for s in self.entries]
        vals = [o for o in finite if o.finite]
        if not vals:
            return OrderValue.at_least(self.precision)
        return min(vals, key=lambda o: o.value)

    def __str__(self):
        return "(" + ", ".join(str(s) for s in self.entries) + ")"


def distance(u, v):
    """Ultrametric distance: the max-norm of u - v."""
    if len(u) != len(v):
        raise DomainMismatchError("series vectors of different dimensions")
    diffs = [a - b for a, b in zip(u, v)]
    return Norm(SeriesVector(diffs).order())


def evaluate(f, zbar, assignment):
    """Substitute a series vector into a polynomial.

    Series variables of f map to themselves; each other variable must appear
    in `assignment`, a map from variable name to coordinate index of `zbar`.
    The result is exact modulo m^N for N the vector's precision.
    """
    prec = zbar.precision
    field = zbar.field
    svars = zbar.vars
    images = {}
    for v in f.vars:
        if v in svars:
            images[v] = TruncatedSeries.variable(v, svars, prec, field)
        elif v in assignment:
            images[v] = zbar[assignment[v]]
        elif any(e[f.vars.index(v)] for e in f.terms):
            raise MadicError(f"unassigned unknown {v!r} in evaluation")
    out = TruncatedSeries.zero(svars, prec, field)
    cache = {v: {} for v in images}
    for e, c in f.terms.items():
        term = TruncatedSeries.constant(c, svars, prec, field)
        for v, x in zip(f.vars, e):
            if x == 0:
                continue
            if v not in images:
                raise MadicError(f"unassigned unknown {v!r} in evaluation")
            powers = cache[v]
            if x not in powers:
                powers[x] = images[v] ** x
            term = term * powers[x]
        out = out + term
    return out


def ideal_order(gens, zbar, assignment):
    """Min order of the generators evaluated at zbar; a generating set
    suffices since evaluation is linear over the ambient ring."""
    orders = [evaluate(g, zbar, assignment).order() for g in gens]
    finite = [o for o in orders if o.finite]
    if not finite:
        return OrderValue.at_least(zbar.precision)
    return min(finite, key=lambda o: o.value)


def default_precision(gamma_bound, target_order, slack=8):
    """Working precision: enough headroom for Newton doubling past the
    requested bound.  The slack constant is arbitrary."""
    return max(gamma_bound, 2 * target_order + slack)
