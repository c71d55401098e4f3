"""Brute-force truncated annihilator, used to cross-check the pipeline.

Plain linear algebra over QQ (sympy's DomainMatrix); nothing here shares
code with the cohomology algorithms beyond the contraction rule itself.
"""

from itertools import product

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .arith import XI_SPACE, XPoly, contract, rat


def monomials_upto(n, D):
    """Exponents of total degree at most D, in a fixed order."""
    return [e for e in product(range(D + 1), repeat=n) if sum(e) <= D]


def _q(c):
    if hasattr(c, "numer"):
        if not (c.numer.is_ground and c.denom.is_ground):
            raise ValueError("oracle needs parameter-free input")
        return c.numer.LC / c.denom.LC if c.numer else QQ.zero
    return rat(c)


def oracle_kernel(F, D, field=None):
    """A basis (reduced echelon form) of {psi : deg psi <= D, f * psi = 0 for f in F}.

    Classes are returned as xi-space XPoly whose coefficients live in
    ``field`` (default: the coefficient field of F).
    """
    F = [f for f in F if f]
    if not F:
        raise ValueError("oracle needs at least one nonzero generator")
    n = F[0].nvars
    if field is None:
        field = next(iter(F[0].terms.values())).field
    cols = monomials_upto(n, D)
    rows = {}
    for j, lam in enumerate(cols):
        psi = XPoly({lam: field.one}, XI_SPACE)
        for i, f in enumerate(F):
            for mu, c in contract(f, psi).terms.items():
                rows.setdefault((i, mu), {})[j] = _q(c)
    mat = [[r.get(j, QQ.zero) for j in range(len(cols))] for r in rows.values()]
    if not mat:
        mat = [[QQ.zero] * len(cols)]
    M = DomainMatrix(mat, (len(mat), len(cols)), QQ)
    null = M.nullspace().to_Matrix()
    if null.rows == 0 or all(v == 0 for v in null):
        return []
    basis = DomainMatrix.from_Matrix(null).convert_to(QQ).rref()[0].to_Matrix()
    out = []
    for r in range(basis.rows):
        terms = {cols[j]: field(rat(basis[r, j])) for j in range(len(cols)) if basis[r, j] != 0}
        if terms:
            out.append(XPoly(terms, XI_SPACE))
    return out


def coefficient_rank(classes, cols=None):
    """Rank over QQ of parameter-free classes."""
    classes = [c for c in classes if c]
    if not classes:
        return 0
    cols = cols or sorted(set().union(*(c.terms for c in classes)))
    mat = [[_q(c.terms[e]) if e in c.terms else QQ.zero for e in cols] for c in classes]
    return DomainMatrix(mat, (len(mat), len(cols)), QQ).rank()


def same_span(A, B):
    """True iff two lists of parameter-free classes span the same space."""
    cols = sorted(set().union(*(c.terms for c in list(A) + list(B) if c)) or {()})
    if cols == [()]:
        return True
    ra, rb = coefficient_rank(A, cols), coefficient_rank(B, cols)
    return ra == rb == coefficient_rank(list(A) + list(B), cols)
