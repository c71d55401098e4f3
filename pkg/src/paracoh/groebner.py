"""Buchberger's algorithm, monomial ideals and radical membership.

The engine works on plain dicts ``{exponent: coefficient}`` over any
field whose elements support ``+ - * /`` and truthiness.  It is used both
for the parameter side (coefficients in QQ, variables t) and for the
x side (coefficients in K(t) or QQ).
"""

from functools import lru_cache
from itertools import combinations

from .arith import TermOrder, XPoly, divides, exp_add, exp_lcm, exp_sub

# ---------------------------------------------------------------- dict polys


def lead(p, order):
    return max(p, key=order.key)


def monic(p, order):
    inv = 1 / p[lead(p, order)]
    return {e: c * inv for e, c in p.items()}


def _sub_multiple(p, g, c, shift):
    """p -= c * x^shift * g, in place."""
    for ge, gc in g.items():
        e = exp_add(ge, shift)
        v = p.get(e)
        v = -c * gc if v is None else v - c * gc
        if v:
            p[e] = v
        else:
            p.pop(e, None)


def normal_form(p, basis, order):
    """Full reduction of p by a list of (head, monic poly) pairs."""
    p = dict(p)
    rem = {}
    key = order.key
    while p:
        e = max(p, key=key)
        c = p[e]
        for h, g in basis:
            if divides(h, e):
                _sub_multiple(p, g, c, exp_sub(e, h))
                break
        else:
            rem[e] = c
            del p[e]
    return rem


def spoly(f, hf, g, hg):
    m = exp_lcm(hf, hg)
    out = {}
    for e, c in f.items():
        out[exp_add(e, exp_sub(m, hf))] = c
    _sub_multiple(out, g, 1, exp_sub(m, hg))
    return out


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def interreduce(polys, order):
    """Reduced basis from a Groebner basis given as monic dicts."""
    items = [(lead(g, order), g) for g in polys if g]
    items.sort(key=lambda hg: order.key(hg[0]))
    minimal = []
    for i, (h, g) in enumerate(items):
        if any(divides(h2, h) for h2, _ in items[:i]):
            continue
        if any(divides(h2, h) and h2 != h for h2, _ in items[i + 1:]):
            continue
        minimal.append((h, g))
    out = []
    for i, (h, g) in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = {e: c for e, c in g.items() if e != h}
        red = normal_form(tail, others, order)
        red[h] = g[h]
        out.append((h, red))
    out.sort(key=lambda hg: order.key(hg[0]), reverse=True)
    return [g for _, g in out]


def buchberger_dicts(F, order, stop_on_unit=False):
    """Reduced Groebner basis of dict polynomials, heads made monic.

    Pairs are treated with the normal strategy (smallest lcm first, ties
    by generator indices) together with Buchberger's two criteria.
    """
    if order.local:
        raise ValueError("Buchberger needs a global order")
    basis = []
    pending = set()

    def add(p):
        p = monic(p, order)
        h = lead(p, order)
        k = len(basis)
        basis.append((h, p))
        for i in range(k):
            pending.add((i, k))
        return h

    for f in F:
        r = normal_form(f, basis, order)
        if r:
            h = add(r)
            if stop_on_unit and not any(h):
                return [r]
    while pending:
        i, j = min(pending, key=lambda ij: (order.key(exp_lcm(basis[ij[0]][0], basis[ij[1]][0])), ij))
        pending.discard((i, j))
        hi, gi = basis[i]
        hj, gj = basis[j]
        if _coprime(hi, hj):
            continue
        m = exp_lcm(hi, hj)
        chain = False
        for k, (hk, _) in enumerate(basis):
            if k in (i, j) or not divides(hk, m):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                chain = True
                break
        if chain:
            continue
        r = normal_form(spoly(gi, hi, gj, hj), basis, order)
        if r:
            h = add(r)
            if stop_on_unit and not any(h):
                return [monic(r, order)]
    return interreduce([g for _, g in basis], order)


def buchberger(F, order):
    """Reduced Groebner basis of a list of XPoly over a field."""
    if not F:
        return []
    flavor = F[0].flavor
    G = buchberger_dicts([f.terms for f in F if f], order)
    return [XPoly(g, flavor) for g in G]


def reduce_xpoly(f, G, order):
    basis = [(g.head(order), g.monic(order).terms) for g in G]
    return XPoly(normal_form(f.terms, basis, order), f.flavor)


# ---------------------------------------------------------------- monomial ideals


def minimal_generators(T):
    T = set(map(tuple, T))
    return {a for a in T if not any(b != a and divides(b, a) for b in T)}


def in_monomial_ideal(e, M):
    return any(divides(g, e) for g in M)


def is_zero_dim(M, nvars):
    for i in range(nvars):
        if not any(g[i] > 0 and sum(g) == g[i] for g in M):
            return False
    return True


def dimension(M, nvars):
    M = minimal_generators(M)
    for size in range(nvars, -1, -1):
        for S in combinations(range(nvars), size):
            Sset = set(S)
            if not any(all(k == 0 or i in Sset for i, k in enumerate(g)) for g in M):
                return size
    return 0


def standard_monomials(M, nvars):
    if not is_zero_dim(M, nvars):
        raise ValueError("monomial ideal is not zero-dimensional; staircase is infinite")
    M = minimal_generators(M)
    zero = (0,) * nvars
    if in_monomial_ideal(zero, M):
        return set()
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for e in frontier:
            for i in range(nvars):
                f = e[:i] + (e[i] + 1,) + e[i + 1:]
                if f not in seen and not in_monomial_ideal(f, M):
                    seen.add(f)
                    nxt.append(f)
        frontier = nxt
    return seen


def neighbors(T, nvars):
    out = set()
    for e in T:
        for i in range(nvars):
            out.add(e[:i] + (e[i] + 1,) + e[i + 1:])
    return out


# ---------------------------------------------------------------- parameter ideals


def param_order(m):
    """tdeg-revlex on the parameters, first declared parameter most significant."""
    return TermOrder("tdegrevlex", tuple(reversed(range(m))))


@lru_cache(maxsize=None)
def ideal_basis(E):
    """Reduced Groebner basis (as ring elements) of a tuple of ring elements."""
    E = [e for e in E if e]
    if not E:
        return ()
    ring = E[0].ring
    order = param_order(ring.ngens)
    G = buchberger_dicts([dict(e) for e in E], order)
    return tuple(ring.from_dict(g) for g in G)


def param_nf(p, G):
    """Normal form of a ring element modulo a reduced basis from ideal_basis."""
    if not G or not p:
        return p
    ring = p.ring
    order = param_order(ring.ngens)
    basis = _monic_basis(G, order)
    return ring.from_dict(normal_form(dict(p), basis, order))


@lru_cache(maxsize=None)
def _monic_basis(G, order):
    out = []
    for g in G:
        g = monic(dict(g), order)
        out.append((lead(g, order), g))
    return out


@lru_cache(maxsize=None)
def _radical_member(p, E):
    if not p:
        return True
    m = p.ring.ngens
    order = param_order(m + 1)
    polys = [{e + (0,): c for e, c in g.items()} for g in E if g]
    aux = {(0,) * (m + 1): p.ring.domain.one}
    for e, c in p.items():
        aux[e + (1,)] = -c
    polys.append(aux)
    G = buchberger_dicts(polys, order, stop_on_unit=True)
    return any(not any(lead(g, order)) for g in G)


def radical_member(p, E):
    """True iff p lies in the radical of the ideal generated by E."""
    return _radical_member(p, ideal_basis(tuple(E)))


def _eliminate_last(polys, m):
    """Generators of (polys) meet K[t_1..t_m], polys living in m+1 variables."""
    order = TermOrder("lex", tuple(reversed(range(m))) + (m,))
    G = buchberger_dicts(polys, order)
    return [{e[:m]: c for e, c in g.items()} for g in G if not any(e[m] for e in g)]


@lru_cache(maxsize=None)
def saturate_by(E, n):
    """Reduced basis of E : n^infinity, E a reduced basis from ideal_basis."""
    ring = n.ring
    m = ring.ngens
    polys = [{e + (0,): c for e, c in g.items()} for g in E]
    aux = {(0,) * (m + 1): ring.domain.one}
    for e, c in n.items():
        aux[e + (1,)] = -c
    polys.append(aux)
    out = _eliminate_last(polys, m)
    return ideal_basis(tuple(ring.from_dict(g) for g in out))


@lru_cache(maxsize=None)
def intersect(I, J):
    """Reduced basis of the intersection of two ideals given by reduced bases."""
    if not I or not J:
        return ()
    ring = (I + J)[0].ring
    m = ring.ngens
    polys = []
    for g in I:
        polys.append({e + (1,): c for e, c in g.items()})
    for g in J:
        p = {e + (0,): c for e, c in g.items()}
        for e, c in g.items():
            p[e + (1,)] = -c
        polys.append(p)
    out = _eliminate_last(polys, m)
    return ideal_basis(tuple(ring.from_dict(g) for g in out))
