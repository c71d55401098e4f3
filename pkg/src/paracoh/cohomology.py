"""Bases of algebraic local cohomology classes with parameters.

A class is a xi-polynomial; x-polynomials act on it by contraction.
Head terms are taken with respect to a global tdeg-lex order on xi and
the basis of H_F is grown from the bottom up, one head candidate at a
time, splitting the parameter space whenever the linear system deciding
a candidate does.
"""

import logging
from dataclasses import dataclass, field, replace

from .arith import XI_SPACE, X_SPACE, TermOrder, XPoly, contract, divides
from .cgs import cgs
from .groebner import is_zero_dim, minimal_generators, neighbors, standard_monomials
from .paramlinear import ParamLinSystem, ParamSolutionBranch, psolve

log = logging.getLogger(__name__)


def coho_order(n, precedence=None):
    return TermOrder("tdeglex", tuple(precedence) if precedence else tuple(range(n)))


def _deg(e):
    return sum(e)


def _unit(n, i, k=1):
    return tuple(k if j == i else 0 for j in range(n))


# ---------------------------------------------------------------- records


@dataclass
class CohoState:
    A: object
    CT: set = field(default_factory=set)
    GList: list = field(default_factory=list)  # [(degree, frozenset)] ascending
    d: int = 0
    Td: set = field(default_factory=set)
    SList: list = field(default_factory=list)
    MList: frozenset = frozenset()
    LList: set = field(default_factory=set)
    FL: set = field(default_factory=set)
    LL: set = field(default_factory=set)
    EL: set = field(default_factory=set)
    RR: set = field(default_factory=set)
    UU: set = field(default_factory=set)

    def copy(self, A=None):
        return CohoState(
            self.A if A is None else A, set(self.CT), list(self.GList), self.d,
            set(self.Td), list(self.SList), self.MList, set(self.LList), set(self.FL),
            set(self.LL), set(self.EL), set(self.RR), set(self.UU))

    def heads(self, order):
        return {s.head(order) for s in self.SList}

    def size(self):
        return len(self.SList) + len(self.MList)


@dataclass
class CohoSegment:
    """One stratum of a parametric local cohomology system."""

    A: object
    SList: list
    MList: frozenset
    LList: frozenset
    FL: frozenset
    order: TermOrder

    @property
    def dimension(self):
        return len(self.SList) + len(self.MList)

    def heads(self):
        return [s.head(self.order) for s in self.SList]

    def basis(self, ctx):
        """MList monomials followed by SList classes, ascending by head."""
        one = ctx.field.one
        out = [XPoly({e: one}, XI_SPACE) for e in self.MList] + list(self.SList)
        return sorted(out, key=lambda p: self.order.key(p.head(self.order)))


@dataclass
class Rejection:
    """A stratum where the ideal is not zero-dimensional at the origin."""

    stratum: object
    reason: str
    witnesses: tuple = ()


@dataclass
class PLCS:
    S: list
    rejected: list

    @property
    def D(self):
        return [r.stratum for r in self.rejected]


# ---------------------------------------------------------------- zero-dimensionality


def zero_dimension(F, order=None, ctx=None, A0=None):
    """Split a CGS of F into safe (zero-dimensional) and danger segments."""
    n = len(next(iter(F[0].terms)))
    order = order or TermOrder("tdegrevlex", tuple(range(n)))
    safe, danger = [], []
    for seg in cgs(F, order, A0=A0, ctx=ctx):
        if is_zero_dim(seg.heads(), n):
            safe.append(seg)
            continue
        for B in seg.stratum.components():
            danger.append(replace(seg, stratum=B) if B is not seg.stratum else seg)
    return safe, danger


# ---------------------------------------------------------------- monomial elements


def _monomial_cgs(A, GP, order):
    mons = []
    for g in GP:
        for e, c in g.terms.items():
            mons.append(XPoly({e: c}, X_SPACE))
    out = []
    for seg in cgs(mons, order, A0=A):
        G = minimal_generators(seg.heads())
        out.append((seg.stratum, G))
    return out


def mono_safe(A, GP, order):
    """[(A', MList, G)] for a safe CGS segment."""
    n = order.nvars
    return [(B, frozenset(standard_monomials(G, n)), frozenset(G))
            for B, G in _monomial_cgs(A, GP, order)]


def mono_danger(A, GP, order):
    """As mono_safe, with MList empty where G is not zero-dimensional."""
    n = order.nvars
    out = []
    for B, G in _monomial_cgs(A, GP, order):
        M = standard_monomials(G, n) if is_zero_dim(G, n) else set()
        out.append((B, frozenset(M), frozenset(G)))
    return out


def initial_state(A, M, G):
    groups = {}
    for g in G:
        groups.setdefault(_deg(g), set()).add(g)
    GList = [(k, frozenset(groups[k])) for k in sorted(groups)]
    d = GList[0][0] if GList else 0
    return CohoState(A, GList=GList, d=d, MList=frozenset(M))


# ---------------------------------------------------------------- head terms


def hlem(T, TListd):
    """Neighbours of T all of whose lower neighbours lie in TListd."""
    if not T:
        return set()
    n = len(next(iter(T)))
    out = set()
    for tau in neighbors(T, n):
        if all(tau[i] == 0 or tau[:i] + (tau[i] - 1,) + tau[i + 1:] in TListd
               for i in range(n)):
            out.add(tau)
    return out


def nonmember(T, FL):
    return {tau for tau in T if not any(divides(phi, tau) for phi in FL)}


def head_cand(Td, GList, TListd, FL, d):
    """New head candidates; returns (CT, GList, Td, d).

    Whenever the candidates move to another degree, d follows them and
    Td restarts empty, so Td always holds confirmed heads of degree d.
    """
    if not Td and not GList:
        return set(), GList, Td, d
    if not Td:
        k, G = GList[0]
        return set(G), GList[1:], set(), k
    up = nonmember(hlem(Td, TListd), FL)
    if not GList or GList[0][0] - d > 1:
        return up, GList, set(), d + 1
    k, G = GList[0]
    if k - d != 1:
        raise AssertionError(f"pending head terms of degree {k} behind degree {d}")
    return up | set(G), GList[1:], set(), d + 1


# ---------------------------------------------------------------- lower terms


def llem(Ne, SHeads, MList, LList):
    """Members of Ne all of whose lower neighbours are heads, monomials or lower terms."""
    pool = set(SHeads) | set(MList) | set(LList)
    return hlem_from(Ne, pool)


def hlem_from(Ne, pool):
    out = set()
    for tau in Ne:
        n = len(tau)
        if all(tau[i] == 0 or tau[:i] + (tau[i] - 1,) + tau[i + 1:] in pool for i in range(n)):
            out.add(tau)
    return out


def low_cand(gamma, SHeads, MList, LList, LL, UU, RR, EL, order):
    """Lower-term candidates for gamma; returns (CL, UU, EL, RR)."""
    kg = order.key(gamma)
    U = {a for a in UU if order.key(a) < kg}
    if not LL:
        LU = llem(U, SHeads, MList, LList)
        UU = UU - U
        EL = EL | LU
    else:
        UU = (UU - U) - {gamma}
        RR = U | RR
        n = len(gamma)
        nb = neighbors(LL, n)
        B = {b for b in nb if order.key(b) > kg}
        UU = B | UU
        D = llem(nb - B, SHeads, MList, LList)
        EL = (D - (D & RR)) | RR
    blocked = set(SHeads) | set(MList)
    CL = {lam for lam in EL | LList if order.key(lam) < kg and lam not in blocked}
    return CL, UU, EL, RR


def renew_low(Z, EL, psi, LList, RR=frozenset()):
    """Update (EL, LL, RR, LList) after a candidate succeeded (Z=1) or failed (Z=0).

    For Z=1 ``psi`` is the lower part of the new class (XPoly or set of
    exponents); for Z=0 it is the failed head exponent.
    """
    if Z == 0:
        return set(EL) | {psi}, set(), set(), set(LList)
    terms = set(psi.terms) if isinstance(psi, XPoly) else set(psi)
    LL = terms & set(EL)
    LList = set(LList) | LL
    EL, RR = set(EL), set(RR)
    if LL:
        RR = EL - LL
        EL = set()
    return EL, LL, RR, LList


# ---------------------------------------------------------------- one element


def _equations(gamma, CL, F, one):
    """Rows [a_1..a_k, b] of the linear conditions f * psi = 0."""
    rows = []
    zero = one - one
    for f in F:
        eqs = {}
        for col, lam in enumerate(CL + [gamma]):
            img = contract(f, XPoly({lam: one}, XI_SPACE))
            for mu, c in img.terms.items():
                eqs.setdefault(mu, {})[col] = c
        for mu in sorted(eqs, reverse=True):
            row = [zero] * (len(CL) + 1)
            for col, c in eqs[mu].items():
                row[col] = row[col] + c
            if any(row):
                rows.append(row)
    return rows


def one_element(gamma, CL, st, F, order):
    """Test xi^gamma + sum c_l xi^l for membership in H_F; one state per branch."""
    one = next(iter(F[0].terms.values())).field.one
    CL = sorted(CL, key=order.key, reverse=True)
    names = list(range(len(CL)))
    rows = _equations(gamma, CL, F, one)
    if rows:
        branches, nosol = psolve(ParamLinSystem(names, rows, st.A))
    else:
        branches = [ParamSolutionBranch(st.A, {i: one - one for i in names}, tuple(names))]
        nosol = []
    out = []
    for br in branches:
        terms = {gamma: one}
        for i, lam in enumerate(CL):
            c = br.assignment[i]
            if c:
                c = br.stratum.simplify(c)
                if c:
                    terms[lam] = c
        if br.free:
            log.info("free lower-term coefficients set to zero for %s on %s", gamma, br.stratum)
        psi = XPoly(terms, XI_SPACE)
        new = st.copy(br.stratum)
        new.SList.append(psi)
        new.Td.add(gamma)
        lower = XPoly({e: c for e, c in terms.items() if e != gamma}, XI_SPACE)
        new.EL, new.LL, new.RR, new.LList = renew_low(1, st.EL, lower, st.LList, st.RR)
        out.append(new)
    for B in nosol:
        new = st.copy(B)
        new.FL.add(gamma)
        new.EL, new.LL, new.RR, new.LList = renew_low(0, st.EL, gamma, st.LList)
        out.append(new)
    return out


# ---------------------------------------------------------------- Algorithms 6 and 12


def _on(A, p):
    """p with every coefficient simplified modulo the equations of A."""
    return XPoly({e: A.simplify(c) for e, c in p.terms.items()}, p.flavor)


def _finish(st, order):
    SList = [_on(st.A, p) for p in st.SList]
    return CohoSegment(st.A, sorted(SList, key=lambda p: order.key(p.head(order))),
                       st.MList, frozenset(st.LList), frozenset(st.FL), order)


def _drive(states, F, order, bound=None):
    """Run the BodySafe loop; with a bound, states exceeding it are rejected."""
    done, rejected = [], []
    stack = list(states)
    while stack:
        st = stack.pop()
        if bound is not None and st.size() > bound:
            rejected.append(Rejection(st.A, f"more than {bound} independent classes"))
            continue
        if not st.CT:
            while True:
                TListd = {m for m in st.MList if _deg(m) == st.d} | st.Td
                st.CT, st.GList, st.Td, st.d = head_cand(st.Td, st.GList, TListd, st.FL, st.d)
                if st.CT or (not st.Td and not st.GList):
                    break
            if not st.CT:
                done.append(_finish(st, order))
                continue
        gamma = min(st.CT, key=order.key)
        st.CT.discard(gamma)
        CL, st.UU, st.EL, st.RR = low_cand(
            gamma, st.heads(order), st.MList, st.LList, st.LL, st.UU, st.RR, st.EL, order)
        stack.extend(reversed(one_element(gamma, CL, st, F, order)))
    done.sort(key=lambda s: s.A.render())
    rejected.sort(key=lambda r: r.stratum.render())
    return done, rejected


def body_safe(AC, F, order):
    return _drive([s.copy() for s in AC], F, order)[0]


def body_danger_bound(nu, DL, F, order):
    return _drive([s.copy() for s in DL], F, order, bound=nu)


# ---------------------------------------------------------------- saturation


def saturate(F, nu, ctx):
    one = ctx.field.one
    return list(F) + [XPoly({_unit(ctx.n, i, nu): one}, X_SPACE) for i in range(ctx.n)]


def _max_exp(M):
    return max((max(e) for e in M), default=0)


def truncated(st, F, nu, ctx, order):
    """Segments of H for F + (x_1^nu, ..., x_n^nu) grown from a danger state."""
    return body_safe([st], saturate(F, nu, ctx), order)


def body_danger_saturation(nu, DL, F, ctx, order, auto=False):
    """Compare truncations at nu and nu+1; equal spaces give H_F itself."""
    segs, rejected = [], []
    work = [(s.copy(), nu, auto) for s in DL]
    while work:
        st, k, retry = work.pop()
        k = max(k, _max_exp(st.MList) + 1, 2)
        H1 = truncated(st, F, k, ctx, order)
        H2 = truncated(st, F, k + 1, ctx, order)
        for s1 in H1:
            for s2 in H2:
                B = s1.A.meet(s2.A)
                if B.is_empty():
                    continue
                if s1.dimension == s2.dimension:
                    segs.append(replace(s1, A=B, SList=[_on(B, p) for p in s1.SList]))
                    continue
                h1 = set(s1.heads()) | set(s1.MList)
                wit = tuple(c for c in s2.SList if c.head(order) not in h1)
                if retry and all(_deg(c.head(order)) >= k - 1 for c in wit):
                    log.info("truncations differ at nu=%d on %s; retrying with %d", k, B, 2 * k)
                    work.append((st.copy(B), 2 * k, False))
                    continue
                rejected.append(Rejection(
                    B, f"truncated cohomology grows from {s1.dimension} to {s2.dimension}"
                    f" between nu={k} and nu={k + 1}", wit))
    segs.sort(key=lambda s: s.A.render())
    rejected.sort(key=lambda r: r.stratum.render())
    return segs, rejected


# ---------------------------------------------------------------- driver


def default_nu(F, n):
    return n * max(f.max_degree() for f in F) + 2


def alcohomology(F, ctx, nu=None, strategy="saturation", precedence=None, cgs_order=None):
    """Parametric local cohomology system of F."""
    if strategy not in ("saturation", "bound"):
        raise ValueError(f"unknown strategy {strategy!r}")
    F = [f for f in F if f]
    if not F:
        raise ValueError("need at least one nonzero generator")
    n = ctx.n
    order = coho_order(n, precedence)
    cgs_order = cgs_order or TermOrder("tdegrevlex", order.precedence)
    safe, danger = zero_dimension(F, cgs_order, ctx)
    AC = []
    for seg in safe:
        for B, M, G in mono_safe(seg.stratum, seg.gens, order):
            AC.append(initial_state(B, M, G))
    S = body_safe(AC, F, order)
    DL, rejected = [], []
    for seg in danger:
        for B, M, G in mono_danger(seg.stratum, seg.gens, order):
            if is_zero_dim(G, n):
                DL.append(initial_state(B, M, G))
            else:
                rejected.append(Rejection(B, "monomial support is not zero-dimensional"))
    if DL:
        auto = nu is None
        k = default_nu(F, n) if auto else nu
        if strategy == "bound":
            co, rej = body_danger_bound(k, DL, F, order)
        else:
            co, rej = body_danger_saturation(k, DL, F, ctx, order, auto=auto)
        S += co
        rejected += rej
    S.sort(key=lambda s: s.A.render())
    rejected = _merge_rejections(rejected)
    rejected.sort(key=lambda r: r.stratum.render())
    return PLCS(S, rejected)


def _merge_rejections(rejected):
    """Glue V(E) minus V(N) and V(E + N) back into V(E) when both fail alike."""
    out = list(rejected)
    changed = True
    while changed:
        changed = False
        for a in out:
            A = a.stratum
            if not A.neqs or a.witnesses:
                continue
            closure = type(A)(A.ring, A.eqs + A.neqs)
            for b in out:
                if b is not a and b.stratum == closure and b.reason == a.reason and not b.witnesses:
                    out = [r for r in out if r is not a and r is not b]
                    out.append(Rejection(type(A)(A.ring, A.eqs), a.reason))
                    changed = True
                    break
            if changed:
                break
    return out
