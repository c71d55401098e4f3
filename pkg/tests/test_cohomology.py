import pytest

from paracoh.arith import Context, TermOrder, XI_SPACE, XPoly
from paracoh.cohomology import (alcohomology, body_danger_bound, body_danger_saturation, coho_order,
                                head_cand, hlem, initial_state, llem, mono_danger, mono_safe,
                                nonmember, renew_low, truncated, zero_dimension)
from paracoh.parser import parse_expr
from paracoh.strata import Stratum

from conftest import RUNNING, problem

ORDER = coho_order(2)
M1 = {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1), (1, 2), (2, 2)}
M2 = {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)}


def cls(text, ctx):
    """A xi-class written with xi1, xi2 and the problem's parameters."""
    dual = Context(["xi1", "xi2"], ctx.params)
    return XPoly(parse_expr(text, dual).terms, XI_SPACE)


def normalized(p):
    h = p.head(ORDER)
    return p.scale(1 / p.terms[h])


# ---------------------------------------------------------------- head and lower term bookkeeping


def test_hlem_and_nonmember():
    T = {(1, 2), (0, 3)}
    TListd = M2 | T
    assert hlem(T, TListd) == {(1, 3), (0, 4)}
    assert hlem({(1, 0)}, {(1, 0), (0, 1)}) == {(2, 0), (1, 1)}
    assert hlem(set(), set()) == set()
    assert nonmember({(2, 2), (1, 3), (0, 4)}, {(3, 0), (2, 1)}) == {(1, 3), (0, 4)}
    assert nonmember({(4, 0)}, {(1, 0)}) == set()


def test_head_cand_steps():
    CT, GL, Td, d = head_cand(set(), [(3, frozenset({(3, 0), (0, 3)}))], set(), set(), 0)
    assert CT == {(3, 0), (0, 3)} and GL == [] and d == 3
    CT, *_ = head_cand({(1, 2), (0, 3)}, [], M2 | {(1, 2), (0, 3)}, {(3, 0), (2, 1)}, 3)
    assert CT == {(1, 3), (0, 4)}
    CT, *_ = head_cand({(0, 4)}, [], {(0, 4), (0, 3)} | M2, {(3, 0), (2, 1), (1, 3)}, 4)
    assert CT == {(0, 5)}


def test_llem_step():
    heads = {(1, 2), (0, 3), (0, 4)}
    LList = {(3, 0), (2, 1), (2, 2), (4, 0)}
    Ne = {(5, 0), (4, 1), (3, 2), (2, 3)}
    assert llem(Ne, heads, M2, LList) == {(5, 0)}
    assert llem(set(), heads, M2, LList) == set()
    assert llem({(1, 0)}, set(), {(0, 0)}, set()) == {(1, 0)}


def test_renew_low():
    ctx, _ = problem(RUNNING)
    t = ctx.field.gens[0]
    low = XPoly({(3, 0): -t / 2}, XI_SPACE)
    EL, LL, RR, LList = renew_low(1, {(3, 0), (2, 1)}, low, set())
    assert (EL, LL, RR, LList) == (set(), {(3, 0)}, {(2, 1)}, {(3, 0)})
    EL, *_ = renew_low(0, {(3, 0)}, (0, 3), set())
    assert EL == {(3, 0), (0, 3)}


# ---------------------------------------------------------------- zero_dimension and monomial elements


def test_zero_dimension_running_example():
    ctx, F = problem(RUNNING)
    safe, danger = zero_dimension(F, TermOrder("tdegrevlex", (0, 1)), ctx)
    assert sorted(str(s.stratum) for s in safe) == ["V(0) \\ V(t^3 - 4*t)", "V(t)"]
    assert sorted(str(s.stratum) for s in danger) == ["V(t + 2)", "V(t - 2)"]


def test_zero_dimension_trivial():
    ctx = Context(["x1", "x2"])
    safe, danger = zero_dimension([parse_expr("x1", ctx), parse_expr("x2", ctx)], ctx=ctx)
    assert len(safe) == 1 and not danger
    safe, danger = zero_dimension([parse_expr("x1*x2", ctx)], ctx=ctx)
    assert not safe and len(danger) == 1


def test_mono_safe_and_danger():
    ctx, F = problem(RUNNING)
    safe, danger = zero_dimension(F, TermOrder("tdegrevlex", (0, 1)), ctx)
    by = {str(s.stratum): s for s in safe + danger}
    [(B, M, G)] = mono_safe(by["V(t)"].stratum, by["V(t)"].gens, ORDER)
    assert M == M1 and G == {(3, 0), (0, 3)}
    [(B, M, G)] = mono_safe(by["V(0) \\ V(t^3 - 4*t)"].stratum, by["V(0) \\ V(t^3 - 4*t)"].gens, ORDER)
    assert M == M2 and G == {(3, 0), (2, 1), (1, 2), (0, 3)}
    [(B, M, G)] = mono_danger(by["V(t - 2)"].stratum, by["V(t - 2)"].gens, ORDER)
    assert M == M2 and G == {(3, 0), (2, 1), (1, 2), (0, 3)}
    one = Context(["x1"])
    [(B, M, G)] = mono_safe(Stratum.full(one.ring), [parse_expr("x1", one)], TermOrder("tdeglex", (0,)))
    assert M == {(0,)} and G == {(1,)}
    two = Context(["x1", "x2"])
    [(B, M, G)] = mono_danger(Stratum.full(two.ring), [parse_expr("x1", two)], ORDER)
    assert M == set() and G == {(1, 0)}


# ---------------------------------------------------------------- full pipeline


def test_running_example(running_plcs, running):
    ctx, _ = running
    segs = {str(s.A): s for s in running_plcs.S}
    assert set(segs) == {"V(0) \\ V(t^3 - 4*t)", "V(t)"}
    flat = segs["V(t)"]
    assert flat.SList == [] and flat.MList == M1 and flat.FL == {(3, 0), (0, 3)}
    gen = segs["V(0) \\ V(t^3 - 4*t)"]
    assert gen.MList == M2 and gen.dimension == 9
    assert gen.SList == [cls(c, ctx) for c in ("xi1*xi2^2 - t/2*xi1^3", "xi2^3 - 2/t*xi1^2*xi2",
                                               "xi2^4 - 2/t*xi1^2*xi2^2 + xi1^4")]
    assert gen.FL == {(3, 0), (2, 1), (1, 3), (0, 5)}
    assert gen.LList == {(3, 0), (2, 1), (2, 2), (4, 0)}
    assert sorted(str(r.stratum) for r in running_plcs.rejected) == ["V(t + 2)", "V(t - 2)"]


@pytest.mark.parametrize("strategy", ["bound", "saturation"])
def test_danger_strata_rejected(running, strategy):
    ctx, F = running
    P = alcohomology(F, ctx, nu=9, strategy=strategy)
    assert sorted(str(r.stratum) for r in P.rejected) == ["V(t + 2)", "V(t - 2)"]
    assert len(P.S) == 2


def _danger_state(F, ctx, name):
    _, danger = zero_dimension(F, TermOrder("tdegrevlex", (0, 1)), ctx)
    seg = next(d for d in danger if str(d.stratum) == name)
    [(B, M, G)] = mono_danger(seg.stratum, seg.gens, ORDER)
    return initial_state(B, M, G)


def test_body_danger_bound_edges(running):
    ctx, F = running
    st = _danger_state(F, ctx, "V(t - 2)")
    segs, rej = body_danger_bound(0, [st], F, ORDER)
    assert not segs and len(rej) == 1
    segs, rej = body_danger_bound(9, [st], F, ORDER)
    assert not segs and [str(r.stratum) for r in rej] == ["V(t - 2)"]


def test_truncations_at_t_equal_2(running):
    ctx, F = running
    st = _danger_state(F, ctx, "V(t - 2)")
    [h4] = truncated(st, F, 4, ctx, ORDER)
    [h5] = truncated(st, F, 5, ctx, ORDER)
    assert (h4.dimension, h5.dimension) == (9, 10)
    assert cls("xi1*xi2^3 - xi1^3*xi2", ctx) in h4.SList
    new = [c for c in h5.SList if c not in h4.SList]
    assert new == [cls("xi2^4 - xi1^2*xi2^2 + xi1^4", ctx)]
    segs, rej = body_danger_saturation(4, [st], F, ctx, ORDER)
    assert not segs and rej[0].witnesses == tuple(new)


def test_saturation_accepts_a_zero_dimensional_danger_stratum():
    # x1*x2 + x1^3 + x2^3 has an isolated singularity but a non-finite zero set
    ctx = Context(["x1", "x2"])
    F = [parse_expr("x2 + 3*x1^2", ctx), parse_expr("x1 + 3*x2^2", ctx),
         parse_expr("x1*x2 + x1^3 + x2^3", ctx)]
    P = alcohomology(F, ctx)
    assert not P.rejected and [s.dimension for s in P.S] == [1]


def test_two_parameter_example(two_param_plcs, two_param):
    ctx, _ = two_param
    segs = {str(s.A): s for s in two_param_plcs.S}
    assert {k: s.dimension for k, s in segs.items()} == {
        "V(0) \\ V(15*s^2*t - 2*s*t^2)": 7, "V(15*s - 2*t) \\ V(t)": 7, "V(t) \\ V(s)": 8}
    assert [str(r.stratum) for r in two_param_plcs.rejected] == ["V(s)"]
    reference = {
        "V(0) \\ V(15*s^2*t - 2*s*t^2)": [
            "s*xi2^3 - 1/3*t*xi1^2",
            "s^2*t*xi2^4 + (-5/3*s^2 + 2/9*s*t)*xi1*xi2^2 + (10/9*s - 4/27*t)*xi1^2 - 1/3*s*t^2*xi1^2*xi2"],
        "V(15*s - 2*t) \\ V(t)": ["s*xi2^3 - 1/3*t*xi1^2", "s*xi2^4 - 1/3*t*xi1^2*xi2"],
        "V(t) \\ V(s)": ["xi2^3", "s*xi1*xi2^2 - 2/3*xi1^2", "4/15*xi2^4 + s*xi1*xi2^3 - 2/3*xi1^2*xi2"],
    }
    for name, classes in reference.items():
        seg = segs[name]
        basis = {p for p in seg.basis(ctx)}
        for c in classes:
            p = normalized(cls(c, ctx))
            p = XPoly({e: seg.A.simplify(v) for e, v in p.terms.items()}, XI_SPACE)
            assert p in basis, (name, c)


def test_maximal_ideal():
    ctx = Context(["x1", "x2"])
    P = alcohomology([parse_expr("x1", ctx), parse_expr("x2", ctx)], ctx)
    [s] = P.S
    assert s.SList == [] and s.MList == {(0, 0)} and s.FL == {(1, 0), (0, 1)}


def test_errors():
    ctx = Context(["x1"])
    with pytest.raises(ValueError):
        alcohomology([parse_expr("x1", ctx)], ctx, strategy="guess")
    with pytest.raises(ValueError):
        alcohomology([XPoly({}, "x")], ctx)
