import sympy
from hypothesis import given, settings, strategies as st

from paracoh.arith import Context, TermOrder, XPoly, X_SPACE, specialize
from paracoh.cgs import cgs
from paracoh.strata import Stratum

from conftest import problem, RUNNING, to_sympy, xp

REVLEX = TermOrder("tdegrevlex", (0, 1))


def reduced_gb(F, ctx, point, order):
    """sympy's reduced Groebner basis of the specialized F, monic, as a set."""
    xs = sympy.symbols(ctx.variables)
    gens = list(reversed([xs[i] for i in order.precedence]))
    polys = [e for e in (sympy.expand(to_sympy(f, ctx, point)) for f in F) if e != 0]
    if not polys:
        return set()
    G = sympy.groebner(polys, *gens, order="grevlex")
    return {sympy.expand(g / sympy.Poly(g, *gens).LC(order="grevlex")) for g in G.exprs}


def monic_specialized(seg, ctx, point):
    out = set()
    for g in seg.gens:
        h = specialize(g, point)
        c = h.terms[h.head(seg.order)]
        out.add(sympy.expand(to_sympy(h.scale(1 / c), ctx)))
    return out


def test_running_example_cgs():
    ctx, F = problem(RUNNING)
    segs = cgs(F, REVLEX, ctx=ctx)
    heads = {str(s.stratum): sorted(s.heads()) for s in segs}
    # t = 2 and t = -2 share head terms, so they arrive as one segment
    assert heads == {
        "V(t)": [(0, 3), (3, 0)],
        "V(t^2 - 4)": [(0, 3), (1, 2)],
        "V(0) \\ V(t^3 - 4*t)": [(0, 3), (1, 2), (3, 1), (5, 0)],
    }
    for seg in segs:
        for pt in seg.stratum.sample_points(3):
            assert monic_specialized(seg, ctx, pt) == reduced_gb(F, ctx, pt, REVLEX)


def test_danger_segments_specialize_to_monic_bases():
    ctx, F = problem(RUNNING)
    x1, x2 = sympy.symbols("x1 x2")
    # at t = -2 the listed generators are the negatives of the monic ones
    expect = {2: {x1**2*x2 + x2**3, x1**3 + x1*x2**2}, -2: {x2**3 - x1**2*x2, x1*x2**2 - x1**3}}
    for a, gb in expect.items():
        assert reduced_gb(F, ctx, (a,), REVLEX) == gb
        seg = next(s for s in cgs(F, REVLEX, ctx=ctx) if s.stratum.contains((a,)))
        assert monic_specialized(seg, ctx, (a,)) == gb


def test_parameter_free_input():
    ctx = Context(["x1", "x2"])
    F = [xp("x1^2 - x2", ctx), xp("x1*x2 - 1", ctx)]
    segs = cgs(F, REVLEX, ctx=ctx)
    assert len(segs) == 1 and segs[0].stratum == Stratum.full(ctx.ring)
    assert monic_specialized(segs[0], ctx, ()) == reduced_gb(F, ctx, (), REVLEX)


def test_vanishing_generator():
    ctx = Context(["x1"], ["t"])
    segs = cgs([xp("t*x1 - t", ctx)], TermOrder("tdegrevlex", (0,)), ctx=ctx)
    got = {str(s.stratum): [g.render(ctx) for g in s.gens] for s in segs}
    assert got == {"V(0) \\ V(t)": ["x1 - 1"], "V(t)": []}


term = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 1), st.integers(-2, 2))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(term, min_size=1, max_size=3), min_size=1, max_size=2),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_cgs_specializes_to_reduced_gb(gens, points):
    ctx = Context(["x1", "x2"], ["t"])
    K = ctx.field
    F = []
    for g in gens:
        terms = {}
        for a, b, k, c in g:
            terms[(a, b)] = terms.get((a, b), K.zero) + c * K.gens[0] ** k
        p = XPoly({e: v for e, v in terms.items() if v}, X_SPACE)
        if p:
            F.append(p)
    if not F:
        return
    segs = cgs(F, REVLEX, ctx=ctx)
    for a in points:
        hits = [s for s in segs if s.stratum.contains((a,))]
        assert len(hits) == 1
        assert monic_specialized(hits[0], ctx, (a,)) == reduced_gb(F, ctx, (a,), REVLEX)
