"""Linear algebra over K(t) with case splits on pivot vanishing."""

import logging
from dataclasses import dataclass, field

from .arith import finv, fmul, fsub
from .strata import NONZERO, ZERO

log = logging.getLogger(__name__)


@dataclass
class ParamLinSystem:
    """Equations sum_j a_j c_j + b = 0 given as rows [a_1, ..., a_k, b]."""

    unknowns: list
    rows: list
    domain: object


@dataclass
class ParamSolutionBranch:
    stratum: object
    assignment: dict
    free: tuple = ()


@dataclass
class _Work:
    A: object
    M: list
    pivots: dict = field(default_factory=dict)  # column -> row


def _size(c):
    return len(c.numer) + len(c.denom)


def _tidy(M, A):
    if not A.eqs:
        return M
    return [[A.simplify(c) if c else c for c in row] for row in M]


def _pivot(M, r, c, A=None):
    """Gauss-Jordan step on entry (r, c), returning a new matrix.

    With a stratum A, only the rows that change are simplified modulo it.
    """
    inv = finv(M[r][c])
    prow = [fmul(v, inv) for v in M[r]]
    tidy = A is not None and A.eqs
    if tidy:
        prow = [A.simplify(v) if v else v for v in prow]
    out = []
    for i, row in enumerate(M):
        if i == r:
            out.append(prow)
            continue
        f = row[c]
        if not f:
            out.append(row)
            continue
        new = [fsub(a, fmul(f, b)) if b else a for a, b in zip(row, prow)]
        if tidy:
            new = [A.simplify(v) if v else v for v in new]
        out.append(new)
    return out


def _choose(work, cells):
    """Pick a pivot among candidate cells (already sorted).

    Returns ('pivot', cell), ('split', cell) or None when every candidate
    vanishes identically on the stratum (those entries get zeroed).
    """
    first_split = None
    for r, c in cells:
        status = work.A.classify(work.M[r][c].numer)
        if status == NONZERO:
            return "pivot", (r, c)
        if status == ZERO:
            work.M[r][c] = work.M[r][c].field.zero
        elif first_split is None:
            first_split = (r, c)
    if first_split is not None:
        return "split", first_split
    return None


def _branch_on(work, cell):
    """Split the stratum on the entry at cell; returns (vanishing, nonvanishing) works."""
    r, c = cell
    vanish, keep = work.A.refine(work.M[r][c].numer)
    out = []
    if vanish is not None:
        M = [list(row) for row in work.M]
        M[r][c] = M[r][c].field.zero
        out.append(_Work(vanish, _tidy(M, vanish), dict(work.pivots)))
    if keep is not None:
        out.append(_Work(keep, _tidy([list(row) for row in work.M], keep), dict(work.pivots)))
    return out


def _sparse_tidy(rows, A):
    if not A.eqs:
        return rows
    out = []
    for row in rows:
        new = {}
        for c, v in row.items():
            v = A.simplify(v)
            if v:
                new[c] = v
        out.append(new)
    return out


def _sparse_pivot(rows, r, c, A):
    inv = finv(rows[r][c])
    prow = {j: fmul(v, inv) for j, v in rows[r].items()}
    if A.eqs:
        prow = {j: A.simplify(v) for j, v in prow.items()}
    prow = {j: v for j, v in prow.items() if v}
    out = []
    for i, row in enumerate(rows):
        if i == r:
            out.append(prow)
            continue
        f = row.get(c)
        if f is None:
            out.append(row)
            continue
        new = dict(row)
        for j, v in prow.items():
            x = new.get(j)
            x = -fmul(f, v) if x is None else fsub(x, fmul(f, v))
            if x and A.eqs:
                x = A.simplify(x)
            if x:
                new[j] = x
            else:
                new.pop(j, None)
        out.append(new)
    return out


def psolve(sys):
    """Solve a parametric linear system.

    Returns (branches, nosolution).  Pivots are chosen among the entries
    with the fewest terms (ties: lowest row, then column), preferring one
    that never vanishes on the stratum; only when no such entry exists is
    the stratum split.  Free unknowns are set to zero.
    """
    k = len(sys.unknowns)
    branches, nosol = [], []
    rows = [{j: v for j, v in enumerate(r) if v} for r in sys.rows]
    stack = [(sys.domain, _sparse_tidy(rows, sys.domain), {})]
    while stack:
        A, rows, pivots = stack.pop()
        used = set(pivots.values())
        cells = [(_size(v), r, c) for r, row in enumerate(rows) if r not in used
                 for c, v in row.items() if c < k]
        if cells:
            cells.sort()
            kind, cell = None, None
            for _, r, c in cells:
                status = A.classify(rows[r][c].numer)
                if status == NONZERO:
                    kind, cell = "pivot", (r, c)
                    break
                if status == ZERO:
                    del rows[r][c]
                elif cell is None:
                    kind, cell = "split", (r, c)
            if kind is None:
                stack.append((A, rows, pivots))
                continue
            r, c = cell
            if kind == "split":
                vanish, keep = A.refine(rows[r][c].numer)
                if vanish is not None:
                    sub = [dict(row) for row in rows]
                    del sub[r][c]
                    stack.append((vanish, _sparse_tidy(sub, vanish), dict(pivots)))
                if keep is not None:
                    stack.append((keep, _sparse_tidy([dict(row) for row in rows], keep), dict(pivots)))
                continue
            rows = _sparse_pivot(rows, r, c, A)
            pivots[c] = r
            stack.append((A, rows, pivots))
            continue
        # consistency of the leftover rows
        bad = None
        for r, row in enumerate(rows):
            if r in used or k not in row:
                continue
            status = A.classify(row[k].numer)
            if status == ZERO:
                del row[k]
                continue
            bad = (r, status)
            break
        if bad is not None:
            r, status = bad
            if status == NONZERO:
                nosol.append(A)
            else:
                vanish, keep = A.refine(rows[r][k].numer)
                if keep is not None:
                    nosol.append(keep)
                if vanish is not None:
                    sub = [dict(row) for row in rows]
                    del sub[r][k]
                    stack.append((vanish, _sparse_tidy(sub, vanish), dict(pivots)))
            continue
        free = tuple(sys.unknowns[c] for c in range(k) if c not in pivots)
        if free:
            log.info("free unknowns set to zero on %s: %s", A, free)
        zero = sys.rows[0][0].field.zero if sys.rows else None
        assignment = {}
        for c, name in enumerate(sys.unknowns):
            if c in pivots:
                v = rows[pivots[c]].get(k)
                assignment[name] = -v if v is not None else zero
            else:
                assignment[name] = zero
        branches.append(ParamSolutionBranch(A, assignment, free))
    branches.sort(key=lambda b: b.stratum.render())
    nosol.sort(key=lambda A: A.render())
    return branches, nosol


def prref(M, A):
    """Reduced row echelon forms of a K(t) matrix, one per branch of A."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    out = []
    stack = [(A, _tidy([list(r) for r in M], A), 0, 0)]
    while stack:
        A, M, rank, col = stack.pop()
        while col < cols:
            cells = [(r, col) for r in range(rank, rows) if M[r][col]]
            cells.sort(key=lambda rc: (_size(M[rc[0]][rc[1]]), rc))
            w = _Work(A, M)
            choice = _choose(w, cells) if cells else None
            M = w.M
            if choice is None:
                col += 1
                continue
            kind, (r, c) = choice
            if kind == "split":
                for sub in _branch_on(w, (r, c)):
                    stack.append((sub.A, sub.M, rank, col))
                break
            M[rank], M[r] = M[r], M[rank]
            M = _pivot(M, rank, col, A)
            rank += 1
            col += 1
        else:
            out.append((A, M))
    out.sort(key=lambda b: b[0].render())
    return out
