"""Comprehensive Groebner systems by branch-and-split Buchberger.

Buchberger runs over K(t) with every basis element monic.  Before a new
element is accepted its head coefficient is classified on the current
stratum: if it vanishes there the head term is dropped, if it never
vanishes the element is accepted, and otherwise the stratum is split and
both branches continue independently.  Since every head coefficient we
divide by is nonvanishing on the branch, specializing at any point of
the branch commutes with every reduction step.
"""

from dataclasses import dataclass
from functools import reduce
from math import gcd

from sympy.polys.domains import QQ

from .arith import XPoly, X_SPACE, exp_lcm, divides
from .groebner import _coprime, interreduce, lead, monic, normal_form, spoly
from .strata import NONZERO, ZERO, Stratum


@dataclass
class CGSSegment:
    stratum: Stratum
    gens: list
    order: object

    def heads(self):
        return [g.head(self.order) for g in self.gens]


class _Branch:
    __slots__ = ("A", "basis", "pending", "todo")

    def __init__(self, A, basis, pending, todo):
        self.A = A
        self.basis = basis
        self.pending = pending
        self.todo = todo

    def fork(self, A, todo):
        return _Branch(A, list(self.basis), set(self.pending), list(self.todo) + todo)


def _simplify(p, A):
    if not A.eqs:
        return p
    out = {}
    for e, c in p.items():
        c = A.simplify(c)
        if c:
            out[e] = c
    return out


def _next_pair(br, order):
    while br.pending:
        i, j = min(br.pending, key=lambda ij: (
            order.key(exp_lcm(br.basis[ij[0]][0], br.basis[ij[1]][0])), ij))
        br.pending.discard((i, j))
        hi, gi = br.basis[i]
        hj, gj = br.basis[j]
        if _coprime(hi, hj):
            continue
        m = exp_lcm(hi, hj)
        chained = any(
            k not in (i, j) and divides(hk, m)
            and (min(i, k), max(i, k)) not in br.pending
            and (min(j, k), max(j, k)) not in br.pending
            for k, (hk, _) in enumerate(br.basis))
        if chained:
            continue
        return spoly(gi, hi, gj, hj)
    return None


def _advance(br, order):
    """Run the branch to completion or to its next split.

    Returns None when the branch is finished, else the child branches.
    """
    while True:
        if br.todo:
            p = br.todo.pop()
        else:
            p = _next_pair(br, order)
            if p is None:
                return None
        r = _simplify(normal_form(p, br.basis, order), br.A)
        while r:
            h = lead(r, order)
            status = br.A.classify(r[h].numer)
            if status == ZERO:
                del r[h]
                continue
            if status == NONZERO:
                r = monic(r, order)
                k = len(br.basis)
                br.basis.append((h, r))
                br.pending.update((i, k) for i in range(k))
                break
            vanish, keep = br.A.refine(r[h].numer)
            children = []
            if keep is not None:
                children.append(br.fork(keep, [r]))
            if vanish is not None:
                rest = {e: c for e, c in r.items() if e != h}
                children.append(br.fork(vanish, [rest] if rest else []))
            return children


def _clear(p, A, order):
    """Denominator-free primitive associate of a monic branch element."""
    p = _simplify(p, A)
    dens = [c.denom for c in p.values()]
    L = reduce(lambda a, b: a.lcm(b), dens)
    nums = {}
    for e, c in p.items():
        c = c * L
        nums[e] = c.numer.mul_ground(1 / c.denom.LC)
    g = reduce(lambda a, b: a.gcd(b), nums.values())
    nums = {e: c.exquo(g) for e, c in nums.items()}
    den = reduce(lambda a, b: a * b // gcd(a, b),
                 (int(q.denominator) for c in nums.values() for q in c.values()))
    num = reduce(gcd, (int((q * den).numerator) for c in nums.values() for q in c.values()))
    scale = QQ(den, num)
    if nums[lead(p, order)].LC < 0:
        scale = -scale
    field = next(iter(p.values())).field
    return XPoly({e: field(c * scale) for e, c in nums.items()}, X_SPACE)


def cgs(F, order, A0=None, ctx=None):
    """Comprehensive Groebner system of F on A0 (whole parameter space by default)."""
    if order.local:
        raise ValueError("cgs needs a global order")
    F = [f for f in F if f]
    if A0 is None:
        ring = (ctx.ring if ctx is not None else
                next(iter(F[0].terms.values())).field.ring)
        A0 = Stratum.full(ring)
    todo = [dict(f.terms) for f in reversed(F)]
    stack = [_Branch(A0, [], set(), todo)]
    done = []
    while stack:
        br = stack.pop()
        children = _advance(br, order)
        if children is None:
            done.append(br)
        else:
            stack.extend(reversed(children))
    out = []
    for br in done:
        G = interreduce([g for _, g in br.basis], order)
        gens = [_clear(g, br.A, order) for g in G]
        out.append(CGSSegment(br.A, gens, order))
    out.sort(key=lambda s: s.stratum.render())
    return out
