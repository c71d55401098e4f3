from pathlib import Path

import pytest
import sympy

from paracoh.arith import specialize
from paracoh.parser import parse_expr, parse_problem

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"

RUNNING = "vars x1, x2; params t; F = [4*x1^3 + 2*t*x1*x2^2, 2*t*x1^2*x2 + 4*x2^3];"
TWO_PARAM = ("vars x1, x2; params s, t; "
             "F = [3*s*x1^2 + 2*x1*x2^2 + t*x2^3, 2*x1^2*x2 + 5*x2^4 + 3*t*x1*x2^2];")


def problem(text):
    spec = parse_problem(text)
    ctx = spec.context()
    return ctx, spec.polys(ctx)


def xp(text, ctx):
    return parse_expr(text, ctx)


def to_sympy(p, ctx, point=()):
    """A parameter-free (or specialized) XPoly as a sympy expression in x."""
    xs = sympy.symbols(ctx.variables)
    if point:
        p = specialize(p, point)
    expr = 0
    for e, c in p.terms.items():
        q = specialize(c, ()) if hasattr(c, "numer") else c
        mon = sympy.Mul(*[x ** k for x, k in zip(xs, e)])
        expr += sympy.Rational(int(q.numerator), int(q.denominator)) * mon
    return expr


@pytest.fixture(scope="session")
def running():
    return problem(RUNNING)


@pytest.fixture(scope="session")
def two_param():
    return problem(TWO_PARAM)


@pytest.fixture(scope="session")
def running_plcs(running):
    from paracoh.cohomology import alcohomology

    ctx, F = running
    return alcohomology(F, ctx, nu=4)


@pytest.fixture(scope="session")
def two_param_plcs(two_param):
    from paracoh.cohomology import alcohomology

    ctx, F = two_param
    return alcohomology(F, ctx)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if not lines:
        return
    terminalreporter.section("acceptance")
    for key in sorted(lines, key=lambda k: (int(k.split()[0]), k)):
        terminalreporter.write_line(lines[key])
