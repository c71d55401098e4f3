"""Parametric reduced standard bases read off local cohomology bases.

With the cohomology computed under a global tdeg-lex order, the failed
head terms FL are exactly the head terms of the reduced standard basis
for the inverse (local) order, and the lower-term coefficients of the
classes give the tails.  Other local orders go through a parametric
row echelon form of the class coefficient matrix.
"""

from dataclasses import dataclass, field
from functools import reduce

from .arith import X_SPACE, XI_SPACE, XPoly, contract
from .cohomology import alcohomology, coho_order
from .groebner import minimal_generators, neighbors
from .paramlinear import prref


@dataclass
class StdBasisSegment:
    stratum: object
    basis: list
    order: object
    cohomology: object = None
    columns: list = field(default_factory=list)
    matrix: list = field(default_factory=list)
    echelon: list = field(default_factory=list)

    def heads(self):
        return [p.head(self.order) for p in self.basis]


def sb_transfer(SList, LList, G, order, one=None):
    """x-polynomials for the exponents in G.

    ``order`` is the global order the classes' head terms refer to; the
    classes must have unit head coefficients.
    """
    if one is None:
        if not SList:
            raise ValueError("need the field unit when SList is empty")
        one = next(iter(SList[0].terms.values())).field.one
    rows = [(s.head(order), s) for s in SList]
    out = []
    for lam in G:
        terms = {lam: one}
        if lam in LList:
            for kappa, s in rows:
                c = s.terms.get(lam)
                if c:
                    terms[kappa] = -c
        out.append(XPoly(terms, X_SPACE))
    return out


def _sorted_basis(basis, local):
    """Ascending by head term, compared under the global inverse of ``local``."""
    g = local.inverse()
    return sorted(basis, key=lambda p: g.key(p.head(local)))


def standard_bases_tdl(F, ctx, nu=None, strategy="saturation", precedence=None, plcs=None):
    """Reduced standard bases for the local order inverse to the cohomology order."""
    plcs = plcs or alcohomology(F, ctx, nu=nu, strategy=strategy, precedence=precedence)
    order = coho_order(ctx.n, precedence)
    local = order.inverse()
    one = ctx.field.one
    segs = []
    for seg in plcs.S:
        basis = sb_transfer(seg.SList, seg.LList, seg.FL, order, one)
        segs.append(StdBasisSegment(seg.A, _sorted_basis(basis, local), local, seg))
    return segs, plcs.D


def standard_bases_any(F, ctx, local, nu=None, strategy="saturation", precedence=None, plcs=None):
    """Reduced standard bases for an arbitrary local order via parametric echelon forms."""
    if not local.local:
        raise ValueError("standard_bases_any needs a local order")
    plcs = plcs or alcohomology(F, ctx, nu=nu, strategy=strategy, precedence=precedence)
    glob = local.inverse()
    one = ctx.field.one
    segs = []
    for seg in plcs.S:
        v = glob.sorted(reduce(set.union, (s.exponents() for s in seg.SList), set()), reverse=True)
        M = [[s.terms.get(e, ctx.field.zero) for e in v] for s in seg.SList]
        branches = prref(M, seg.A) if M else [(seg.A, [])]
        for A, R in branches:
            SL = [XPoly({e: c for e, c in zip(v, row) if c}, XI_SPACE) for row in R]
            SL = [s for s in SL if s]
            heads = {s.head(glob) for s in SL}
            L = reduce(set.union, (s.exponents() for s in SL), set()) - heads
            T = heads | set(seg.MList)
            FLp = minimal_generators(neighbors(T, ctx.n) - T)
            basis = sb_transfer(SL, L, FLp, glob, one)
            segs.append(StdBasisSegment(A, _sorted_basis(basis, local), local, seg, v, M, R))
    segs.sort(key=lambda s: s.stratum.render())
    return segs, plcs.D


def residue_member(h, classes):
    """True iff h pairs to zero with every class (constant term of h * psi)."""
    zero = (0,) * h.nvars if h else None
    if zero is None:
        return True
    return all(not contract(h, psi).terms.get(zero) for psi in classes)


def clear_denominators(p):
    """The associate of p with coprime integer-polynomial coefficients."""
    if not p:
        return p
    field = next(iter(p.terms.values())).field
    den = reduce(lambda a, b: a.lcm(b), (c.denom for c in p.terms.values()))
    nums = [c.numer * den.quo(c.denom) for c in p.terms.values()]
    q = reduce(lambda a, b: a.gcd(b), nums)
    scale = field(den) / field(q)
    return XPoly({e: c * scale for e, c in p.terms.items()}, p.flavor)
