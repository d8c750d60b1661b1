"""Groebner-basis engine: Buchberger, membership, intersection, colon ideals,
the Elkik Jacobian ideal and radical membership via the Rabinowitsch trick.

Default order is degrevlex; intersections eliminate a fresh tag variable with
a block order.  Ideal equality is decided by mutual normal-form reduction of
generators, never by comparing bases.
"""

from __future__ import annotations

import heapq
import itertools

from .errors import CapacityError, DomainMismatchError, MadicError
from .poly import Polynomial, exact_div, jacobian, minors

# Fresh variables injected by the engine; the public parser cannot produce
# identifiers starting with an underscore, so collisions are impossible.
TAG_VAR = "_t"
RABINOWITSCH_VAR = "_w"

ELKIK_SUBSET_CAP = 20


class MonomialOrder:
    """A global monomial order: degrevlex, lex, or a two-block elimination
    order (first `split` variables dominate, degrevlex inside each block)."""

    def __init__(self, kind="degrevlex", split=0):
        if kind not in ("degrevlex", "lex", "block"):
            raise MadicError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.split = split

    def key(self, e):
        if self.kind == "degrevlex":
            return _drl_key(e)
        if self.kind == "lex":
            return tuple(e)
        k = self.split
        return (_drl_key(e[:k]), _drl_key(e[k:]))

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.split == other.split
        )

    def __repr__(self):
        if self.kind == "block":
            return f"block({self.split})"
        return self.kind


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def _drl_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _lt(p, order):
    return max(p.terms, key=order.key)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def normal_form_terms(terms, basis_lt, order, field):
    """Fully reduce a term dict by a list of (lt_exp, lc, terms) divisors."""
    work = dict(terms)
    rem = {}
    while work:
        e = max(work, key=order.key)
        c = work.pop(e)
        for glt, glc, gterms in basis_lt:
            if _divides(glt, e):
                q = tuple(x - y for x, y in zip(e, glt))
                fac = field.div(c, glc)
                for ge, gc in gterms.items():
                    if ge == glt:
                        continue
                    ne = tuple(x + y for x, y in zip(q, ge))
                    nc = field.sub(
                        work.get(ne, rem.pop(ne, field.zero())), field.mul(fac, gc)
                    )
                    if field.is_zero(nc):
                        work.pop(ne, None)
                    else:
                        work[ne] = nc
                break
        else:
            rem[e] = c
    return rem


def _prepared(basis, order):
    return [(_lt(g, order), g.terms[_lt(g, order)], g.terms) for g in basis]


def normal_form(p, basis, order=DEGREVLEX):
    """Normal form of p modulo a Groebner basis; zero iff p is a member."""
    if isinstance(basis, Ideal):
        basis = basis.groebner(order)
        order = basis.basis_order
        basis = basis.cached_basis
    live = [g for g in basis if not g.is_zero()]
    rem = normal_form_terms(p.terms, _prepared(live, order), order, p.field)
    return Polynomial(p.field, p.vars, rem)


def buchberger(gens, order=DEGREVLEX):
    """Reduced Groebner basis of the ideal generated by `gens`."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    field = gens[0].field
    vars = gens[0].vars
    for g in gens:
        if g.vars != vars or g.field != field:
            raise DomainMismatchError("generators over different rings")

    basis = []
    for g in gens:
        g = normal_form(g, basis, order)
        if not g.is_zero():
            basis.append(g)

    lts = [_lt(g, order) for g in basis]
    pairs = []
    counter = itertools.count()
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            lcm = _lcm(lts[i], lts[j])
            heapq.heappush(pairs, (order.key(lcm), next(counter), i, j, lcm))

    done = set()
    while pairs:
        _, _, i, j, lcm = heapq.heappop(pairs)
        done.add((i, j))
        # product criterion
        if all(a + b == c for a, b, c in zip(lts[i], lts[j], lcm)):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(lts[k], lcm):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik in done and pjk in done:
                    skip = True
                    break
        if skip:
            continue
        s = _spoly(basis[i], basis[j], lts[i], lts[j], lcm, field)
        rem = normal_form_terms(s, _prepared(basis, order), order, field)
        if not rem:
            continue
        g = Polynomial(field, vars, rem)
        basis.append(g)
        lts.append(_lt(g, order))
        new = len(basis) - 1
        for k in range(new):
            lcm = _lcm(lts[k], lts[new])
            heapq.heappush(pairs, (order.key(lcm), next(counter), k, new, lcm))

    return _reduce_basis(basis, lts, order, field, vars)


def _spoly(f, g, ltf, ltg, lcm, field):
    uf = tuple(a - b for a, b in zip(lcm, ltf))
    ug = tuple(a - b for a, b in zip(lcm, ltg))
    cf = f.terms[ltf]
    cg = g.terms[ltg]
    res = {}
    for e, c in f.terms.items():
        ne = tuple(a + b for a, b in zip(e, uf))
        res[ne] = field.add(res.get(ne, field.zero()), field.div(c, cf))
    for e, c in g.terms.items():
        ne = tuple(a + b for a, b in zip(e, ug))
        v = field.sub(res.get(ne, field.zero()), field.div(c, cg))
        if field.is_zero(v):
            res.pop(ne, None)
        else:
            res[ne] = v
    return res


def _reduce_basis(basis, lts, order, field, vars):
    # minimalize: drop generators whose leading term another one divides
    keep = []
    for i, lt in enumerate(lts):
        if any(
            j != i and _divides(lts[j], lt) and (lts[j] != lt or j < i)
            for j in range(len(basis))
        ):
            continue
        keep.append(i)
    minimal = [basis[i] for i in keep]
    # tail-reduce each element against the others and make it monic
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        rem = normal_form_terms(g.terms, _prepared(others, order), order, field)
        if not rem:
            continue
        lt = max(rem, key=order.key)
        lc = rem[lt]
        rem = {e: field.div(c, lc) for e, c in rem.items()}
        reduced.append(Polynomial(field, vars, rem))
    reduced.sort(key=lambda g: order.key(_lt(g, order)))
    return reduced


class Ideal:
    """An ideal given by generators, with a lazily cached reduced basis."""

    def __init__(self, generators, order=DEGREVLEX):
        self.generators = list(generators)
        if not self.generators:
            raise MadicError("an Ideal needs at least one generator (possibly 0)")
        self.vars = self.generators[0].vars
        self.field = self.generators[0].field
        for g in self.generators:
            if g.vars != self.vars or g.field != self.field:
                raise DomainMismatchError("generators over different rings")
        self.default_order = order
        self.cached_basis = None
        self.basis_order = None

    def groebner(self, order=None):
        order = order or self.default_order
        if self.cached_basis is None or self.basis_order != order:
            self.cached_basis = buchberger(self.generators, order)
            self.basis_order = order
        return self

    def normal_form(self, p):
        self.groebner()
        return normal_form(p, self.cached_basis, self.basis_order)

    def contains(self, p):
        return self.normal_form(p).is_zero()

    def is_zero(self):
        return all(g.is_zero() for g in self.generators)

    def __add__(self, other):
        if isinstance(other, Ideal):
            return Ideal(self.generators + other.generators, self.default_order)
        return NotImplemented

    def serialize(self):
        return [str(g) for g in self.generators]

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators[:6])
        more = ", ..." if len(self.generators) > 6 else ""
        return f"Ideal({gens}{more})"


def ideal_equal(I, J):
    """Ideal equality by mutual normal-form reduction of generators."""
    return all(I.contains(g) for g in J.generators) and all(
        J.contains(g) for g in I.generators
    )


def _with_fresh_var(polys, name):
    some = polys[0]
    new_vars = (name,) + some.vars
    return [p.extend_vars(new_vars) for p in polys], new_vars


def _drop_var(p, name, target_vars):
    i = p.vars.index(name)
    terms = {}
    for e, c in p.terms.items():
        if e[i] != 0:
            raise MadicError("polynomial still involves the eliminated variable")
        terms[tuple(x for k, x in enumerate(e) if k != i)] = c
    return Polynomial(p.field, target_vars, terms)


def intersect(I, J):
    """I ∩ J by eliminating a tag variable t from t*I + (1-t)*J."""
    if I.vars != J.vars or I.field != J.field:
        raise DomainMismatchError("ideals over different rings")
    if I.is_zero() or J.is_zero():
        return Ideal([Polynomial.zero(I.vars, I.field)])
    polys = I.generators + J.generators
    lifted, new_vars = _with_fresh_var(polys, TAG_VAR)
    t = Polynomial.variable(TAG_VAR, new_vars, I.field)
    one = Polynomial.constant(1, new_vars, I.field)
    gens = [t * g for g in lifted[: len(I.generators)]]
    gens += [(one - t) * g for g in lifted[len(I.generators) :]]
    basis = buchberger(gens, MonomialOrder("block", split=1))
    kept = []
    for g in basis:
        if g.terms and all(e[0] == 0 for e in g.terms):
            kept.append(_drop_var(g, TAG_VAR, I.vars))
    if not kept:
        kept = [Polynomial.zero(I.vars, I.field)]
    return Ideal(kept)


def colon(J, I):
    """The ideal quotient (J : I) = {g : g*I ⊆ J}.

    Computed per generator of I via (J : (g)) = (J ∩ (g)) / g, then
    intersected over the generators.
    """
    if J.vars != I.vars or J.field != I.field:
        raise DomainMismatchError("ideals over different rings")
    result = None
    nonzero = [g for g in I.generators if not g.is_zero()]
    if not nonzero:
        # (J : (0)) is the whole ring
        return Ideal([Polynomial.constant(1, J.vars, J.field)])
    for g in nonzero:
        if J.is_zero():
            quot = Ideal([Polynomial.zero(J.vars, J.field)])
        else:
            meet = intersect(J, Ideal([g]))
            quot = Ideal(
                [exact_div(h, g) for h in meet.generators if not h.is_zero()]
                or [Polynomial.zero(J.vars, J.field)]
            )
        result = quot if result is None else intersect(result, quot)
    return result


def elkik_ideal(fs, diff_vars):
    """Jacobian ideal of a presentation: the sum over all subsets E of the
    equations of (|E|x|E| Jacobian minors of the rows E) * ((f_i, i in E) : I).

    Returns the raw generator list as an Ideal, without Groebner
    post-processing.  The empty subset contributes (1) * ((0) : I), which is
    zero over a domain.
    """
    fs = list(fs)
    if not fs:
        raise MadicError("need at least one equation")
    n = len(fs)
    if n > ELKIK_SUBSET_CAP:
        raise CapacityError(
            f"subset enumeration over {n} equations exceeds the cap of "
            f"{ELKIK_SUBSET_CAP} (2^n blow-up)"
        )
    vars = fs[0].vars
    field = fs[0].field
    I = Ideal(fs)
    jac = jacobian(fs, diff_vars)
    gens = []
    for h in range(0, n + 1):
        if h > len(diff_vars):
            break  # the minor ideal is zero for h beyond the column count
        for E in itertools.combinations(range(n), h):
            if h == 0:
                sub_minors = [Polynomial.constant(1, vars, field)]
                col = colon(Ideal([Polynomial.zero(vars, field)]), I)
            else:
                sub = jac.submatrix(E, range(len(diff_vars)))
                sub_minors = minors(sub, h)
                col = colon(Ideal([fs[i] for i in E]), I)
            for d in sub_minors:
                if d.is_zero():
                    continue
                for k in col.generators:
                    p = d * k
                    if not p.is_zero():
                        gens.append(p)
    if not gens:
        gens = [Polynomial.zero(vars, field)]
    return Ideal(gens)


def radical_member(p, I):
    """p ∈ √I, decided by the Rabinowitsch trick: 1 ∈ I + (1 - w*p)."""
    lifted, new_vars = _with_fresh_var(I.generators + [p], RABINOWITSCH_VAR)
    w = Polynomial.variable(RABINOWITSCH_VAR, new_vars, I.field)
    one = Polynomial.constant(1, new_vars, I.field)
    gens = lifted[:-1] + [one - w * lifted[-1]]
    basis = buchberger(gens, DEGREVLEX)
    return len(basis) == 1 and basis[0].is_constant() and not basis[0].is_zero()
