"""Constructible parameter sets V(E) minus V(N).

A point lies in the stratum when every e in E vanishes there and not
every n in N does.  An empty N means nothing is removed.  Strata are
stored canonically: E is replaced by the reduced Groebner basis of the
ideal it generates, N by normal forms modulo E, and every generator is
an integer primitive polynomial with positive leading coefficient.
"""

import random
from functools import lru_cache, reduce
from itertools import islice
from math import gcd

from sympy import Poly, Symbol
from sympy.polys.domains import QQ

from .arith import TermOrder, eval_poly, rat, render_param
from .groebner import buchberger_dicts, ideal_basis, intersect, param_nf, radical_member, saturate_by

ZERO = "zero"
NONZERO = "nonzero"
SPLIT = "split"


def primitive(p):
    """Integer primitive associate of a ring element, positive leading coefficient."""
    if not p:
        return p
    _, q = p.clear_denoms()
    g = reduce(gcd, (int(c.numerator) for c in q.values()))
    q = q.quo_ground(QQ(g))
    if q.LC < 0:
        q = -q
    return q


def _sort_key(p):
    return (max(sum(m) for m in p.monoms()), str(p))


def _canonical_basis(E):
    G = ideal_basis(tuple(E))
    if len(G) == 1 and not G[0].is_ground:
        G = (G[0].sqf_part(),)
    G = tuple(sorted((primitive(g) for g in G), key=_sort_key))
    if any(g.is_ground for g in G):
        G = (G[0].ring.one,)
    return G


def _reduce_neqs(neqs, G):
    """Squarefree primitive normal forms of the removed equations.

    None when nothing is removed (no neqs, or one of them is a unit mod G),
    () when every neq vanishes mod G, which empties the stratum.
    """
    if not neqs:
        return None
    out = set()
    for n in neqs:
        r = param_nf(n, G)
        if not r:
            continue
        if r.is_ground or (G and any(g.is_ground for g in ideal_basis(G + (r,)))):
            return None
        out.add(primitive(r.sqf_part()))
    return tuple(sorted(out, key=_sort_key))


class Stratum:
    __slots__ = ("ring", "eqs", "neqs", "_hash")

    def __init__(self, ring, eqs=(), neqs=()):
        """Build the canonical form of V(eqs) minus V(neqs)."""
        self.ring = ring
        eqs = [ring(e) for e in eqs]
        neqs = [ring(n) for n in neqs]
        G = _canonical_basis(tuple(primitive(e) for e in eqs if e))
        N = _reduce_neqs(neqs, G)
        if N and G and G != (ring.one,):
            S = reduce(intersect, (saturate_by(G, n) for n in N))
            S = _canonical_basis(S)
            if S != G:
                G = S
                N = _reduce_neqs(N, G)
        if N == ():
            G = (ring.one,)
        self.eqs = G
        self.neqs = N or ()
        self._hash = hash((G, self.neqs))

    @classmethod
    def full(cls, ring):
        return cls(ring)

    def __eq__(self, other):
        return (isinstance(other, Stratum) and self.eqs == other.eqs
                and self.neqs == other.neqs)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Stratum({self.render()})"

    def render(self):
        names = tuple(str(s) for s in self.ring.symbols)
        e = ", ".join(render_param(p, names) for p in self.eqs) or "0"
        text = f"V({e})"
        if self.neqs:
            text += " \\ V(" + ", ".join(render_param(p, names) for p in self.neqs) + ")"
        return text

    __str__ = render

    def to_dict(self):
        names = tuple(str(s) for s in self.ring.symbols)
        return {"eqs": [render_param(p, names) for p in self.eqs],
                "neqs": [render_param(p, names) for p in self.neqs]}

    # ------------------------------------------------------------ logic

    def is_empty(self):
        return _is_empty(self)

    def contains(self, point):
        point = tuple(rat(a) for a in point)
        if any(eval_poly(e, point) for e in self.eqs):
            return False
        if not self.neqs:
            return True
        return any(eval_poly(n, point) for n in self.neqs)

    def nf(self, p):
        return param_nf(p, self.eqs)

    def simplify(self, c):
        """A field element equal to c at every point of V(E)."""
        if not self.eqs or (c.numer.is_ground and c.denom.is_ground):
            return c
        return _simplify(self, c)

    def _simplify(self, c):
        num = self.nf(c.numer)
        if not num:
            return c.field.zero
        den = self.nf(c.denom)
        if not den:
            raise ZeroDivisionError(f"denominator {c.denom} vanishes on {self}")
        return c.field(num) / c.field(den)

    def classify(self, p):
        """ZERO if p vanishes on the whole stratum, NONZERO if nowhere, else SPLIT."""
        return _classify(self, self.ring(p))

    def refine(self, h):
        """(self meet V(h), self minus V(h)), with empty parts replaced by None."""
        h = self.ring(h)
        a = Stratum(self.ring, self.eqs + (h,), self.neqs)
        b = Stratum(self.ring, self.eqs, _times(self.neqs, h))
        return (None if a.is_empty() else a, None if b.is_empty() else b)

    def components(self):
        """Disjoint pieces along the rational factors of a principal E."""
        if len(self.eqs) != 1 or self.eqs[0].is_ground:
            return [self]
        _, factors = self.eqs[0].factor_list()
        if len(factors) < 2:
            return [self]
        factors = sorted((primitive(f) for f, _ in factors), key=_sort_key)
        out, seen = [], ()
        for f in factors:
            N = self.neqs
            for g in seen:
                N = _times(N, g)
            piece = Stratum(self.ring, (f,), N)
            if not piece.is_empty():
                out.append(piece)
            seen += (f,)
        return out

    def meet(self, other):
        if not self.neqs:
            N = other.neqs
        elif not other.neqs:
            N = self.neqs
        else:
            N = tuple(a * b for a in self.neqs for b in other.neqs)
        return Stratum(self.ring, self.eqs + other.eqs, N)

    # ------------------------------------------------------------ sampling

    def sample_points(self, k=1, attempts=400, seed=0):
        """Up to k distinct rational points of the stratum (best effort)."""
        found = []
        for pt in islice(_candidates(self, seed), attempts):
            if pt not in found and self.contains(pt):
                found.append(pt)
                if len(found) >= k:
                    break
        return found

    def sample_point(self, attempts=400, seed=0):
        pts = self.sample_points(1, attempts, seed)
        return pts[0] if pts else None


@lru_cache(maxsize=200000)
def _simplify(A, c):
    return A._simplify(c)


def _times(N, h):
    if not N:
        return (h,)
    return tuple(n * h for n in N)


@lru_cache(maxsize=None)
def _is_empty(A):
    if A.eqs == (A.ring.one,):
        return True
    if not A.neqs:
        return False
    return all(radical_member(n, A.eqs) for n in A.neqs)


@lru_cache(maxsize=None)
def _classify(A, p):
    p = A.nf(p)
    if not p:
        return ZERO
    if p.is_ground:
        return NONZERO
    if Stratum(A.ring, A.eqs + (p,), A.neqs).is_empty():
        return NONZERO
    if Stratum(A.ring, A.eqs, _times(A.neqs, p)).is_empty():
        return ZERO
    return SPLIT


# ---------------------------------------------------------------- sample search

_SMALL = [QQ(v) for v in (0, 1, -1, 2, -2, 3, -3)] + [
    QQ(1, 2), QQ(-1, 2), QQ(1, 3), QQ(-1, 3), QQ(3, 2), QQ(-3, 2), QQ(5), QQ(-5), QQ(2, 3)]


def _free_values(seed):
    rng = random.Random(seed)
    extra = [QQ(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(6)]
    vals = []
    for v in _SMALL + extra:
        if v not in vals:
            vals.append(v)
    return vals


def _candidates(A, seed):
    ring = A.ring
    m = ring.ngens
    if A.eqs == (ring.one,):
        return
    lex = TermOrder("lex", tuple(reversed(range(m))))
    G = buchberger_dicts([dict(e) for e in A.eqs], lex) if A.eqs else []
    by_var = {}
    for g in G:
        main = min(i for e in g for i in range(m) if e[i])
        by_var.setdefault(main, []).append(g)
    free = _free_values(seed)
    z = Symbol("z")

    def values_for(k, assigned):
        polys = []
        for g in by_var.get(k, []):
            coeffs = {}
            for e, c in g.items():
                v = c
                for i in range(k + 1, m):
                    if e[i]:
                        v *= assigned[i] ** e[i]
                coeffs[e[k]] = coeffs.get(e[k], QQ.zero) + v
            u = Poly.from_dict({(d,): c for d, c in coeffs.items() if c}, z, domain=QQ) if any(coeffs.values()) else None
            if u is not None:
                polys.append(u)
        if not polys:
            return free
        g = reduce(lambda a, b: a.gcd(b), polys)
        if g.degree() <= 0:
            return []
        return sorted((QQ.from_sympy(r) for r in g.ground_roots()), key=lambda r: (abs(r), r))

    def walk(k, assigned):
        if k < 0:
            yield tuple(assigned[i] for i in range(m))
            return
        for v in values_for(k, assigned):
            assigned[k] = v
            yield from walk(k - 1, assigned)
        assigned.pop(k, None)

    yield from walk(m - 1, {})
