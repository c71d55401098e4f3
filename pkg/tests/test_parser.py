import pytest
from hypothesis import given, settings, strategies as st

from paracoh.arith import Context
from paracoh.parser import ParseError, parse_expr, parse_problem, render_problem, tokenize

from conftest import RUNNING

CTX = Context(["x1", "x2"], ["t"])


def test_running_example():
    spec = parse_problem(RUNNING)
    assert spec.variables == ["x1", "x2"] and spec.parameters == ["t"]
    ctx = spec.context()
    F = spec.polys(ctx)
    t = ctx.field.gens[0]
    assert F[0].terms == {(3, 0): 4, (1, 2): 2 * t}
    assert F[1].terms == {(2, 1): 2 * t, (0, 3): 4}


def test_parameter_coefficient():
    p = parse_expr("(t^2-4)*x2^5", CTX)
    t = CTX.field.gens[0]
    assert p.terms == {(0, 5): t ** 2 - 4}
    assert p.render(CTX) == "(t^2 - 4)*x2^5"


def test_rationals_and_signs():
    assert parse_expr("-3/6*x1 + x1", CTX) == parse_expr("1/2*x1", CTX)
    assert parse_expr("2/3^2", CTX) == parse_expr("4/9", CTX)
    assert parse_expr("x1/(2*t)", CTX) == parse_expr("1/2*x1", CTX).scale(1 / CTX.field.gens[0])


@pytest.mark.parametrize("text, where, what", [
    ("F = [x1^2 +", (1, 12), "expected a name, number or '('"),
    ("vars x1; F = [x1 + y];", (1, 20), "unknown identifier 'y'"),
    ("vars x1;\nF = [x1 $ 2];", (2, 9), "unexpected character '$'"),
    ("vars x1; params x1; F = [x1];", None, "both as a variable and as a parameter"),
    ("vars x1; F = [x1 - x1];", (1, 15), "generator 1 is zero"),
    ("vars x1; F = [x1]", (1, 18), "expected ';'"),
    ("vars x1, x2; order tdeglex x1; F = [x1];", (1, 28), "every variable exactly once"),
    ("vars x1; order grlex; F = [x1];", (1, 16), "unknown order"),
    ("vars x1; vars x2; F = [x1];", (1, 10), "duplicate vars"),
    ("vars x1; F = [x1 x1];", (1, 18), "expected ']'"),
    ("vars x1; F = [x1/x1];", (1, 18), "cannot divide"),
    ("params t; F = [t];", None, "no variables"),
])
def test_errors_have_locations(text, where, what):
    with pytest.raises(ParseError) as info:
        spec = parse_problem(text)
        spec.polys()
    err = info.value
    assert what in str(err)
    if where:
        assert (err.line, err.col) == where


def test_comments_and_order():
    spec = parse_problem("# comment\nvars x1, x2; # trailing\norder lex x2, x1;\nF = [x1 + x2];\n")
    assert spec.options == {"order": "lex", "precedence": ["x2", "x1"]}
    assert spec.order().precedence == (1, 0)
    assert spec.order(local=True).local


def test_tokenize_positions():
    toks = tokenize("vars\n  x1;")
    assert [(t.text, t.line, t.col) for t in toks[:2]] == [("vars", 1, 1), ("x1", 2, 3)]


names = st.sampled_from(["x1", "x2", "t", "2", "1/3", "(x1 - t)", "(t^2 - 4)"])


@st.composite
def exprs(draw):
    terms = []
    for _ in range(draw(st.integers(1, 4))):
        factors = draw(st.lists(names, min_size=1, max_size=3))
        k = draw(st.integers(1, 3))
        terms.append("*".join(factors) + (f"^{k}" if k > 1 else ""))
    signs = draw(st.lists(st.sampled_from([" + ", " - "]), min_size=len(terms), max_size=len(terms)))
    return terms[0] + "".join(s + t for s, t in zip(signs, terms[1:]))


@settings(max_examples=60, deadline=None)
@given(st.lists(exprs(), min_size=1, max_size=3))
def test_round_trip(gens):
    text = "vars x1, x2; params t; F = [" + ", ".join(gens) + "];"
    try:
        spec = parse_problem(text)
    except ParseError as e:
        assert "is zero" in str(e)
        return
    again = parse_problem(render_problem(spec))
    assert again == spec
    ctx = spec.context()
    # rendered polynomials parse back to themselves
    for p in spec.polys(ctx):
        assert parse_expr(p.render(ctx), ctx) == p
