"""Exact arithmetic kernel.

Rationals are sympy's ``QQ`` elements (gmpy2 ``mpq`` when available).
Polynomials in the parameters t and rational functions in t are elements
of sympy's sparse ``PolyRing`` / ``FracField`` over ``QQ``; the field
cancels common factors on construction and keeps denominators with a
positive leading coefficient.  Polynomials in the main variables x (and
cohomology classes in the dual variables xi) are :class:`XPoly` values:
sparse maps from exponent tuples to field elements.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from sympy.polys.domains import QQ
from sympy.polys.fields import FracField
from sympy.polys.orderings import grlex

X_SPACE = "x"
XI_SPACE = "xi"


class SpecializationError(ArithmeticError):
    """A denominator vanishes at the requested point."""


def rat(v):
    """Coerce an int, Fraction, string or QQ element to a QQ element."""
    if isinstance(v, str):
        v = Fraction(v)
    if isinstance(v, Fraction):
        return QQ(v.numerator, v.denominator)
    return QQ.convert(v)


def to_fraction(q):
    return Fraction(int(q.numerator), int(q.denominator))


class Context:
    """Variable and parameter names plus the coefficient field K(t)."""

    def __init__(self, variables, params=()):
        self.variables = tuple(variables)
        self.params = tuple(params)
        if set(self.variables) & set(self.params):
            raise ValueError("variable and parameter names overlap")
        self.n = len(self.variables)
        self.m = len(self.params)
        self.field = FracField(self.params, QQ, grlex)
        self.ring = self.field.ring

    def __eq__(self, other):
        return (isinstance(other, Context) and self.variables == other.variables
                and self.params == other.params)

    def __hash__(self):
        return hash((self.variables, self.params))

    def __repr__(self):
        return f"Context({list(self.variables)}, {list(self.params)})"

    def coef(self, v):
        """A field element from a number, ring element or field element."""
        if hasattr(v, "numer") or hasattr(v, "ring") and v.ring is self.ring:
            return self.field(v)
        return self.field(rat(v))

    def param(self, i):
        return self.field.gens[i]

    def zero_exp(self):
        return (0,) * self.n

    def unit(self, i):
        e = [0] * self.n
        e[i] = 1
        return tuple(e)

    def monomial(self, exp, coef=1, flavor=X_SPACE):
        return XPoly({tuple(exp): self.coef(coef)}, flavor)

    def const(self, c, flavor=X_SPACE):
        return self.monomial(self.zero_exp(), c, flavor)

    def var(self, i):
        return self.monomial(self.unit(i))

    def xpoly(self, terms, flavor=X_SPACE):
        return XPoly({tuple(e): self.coef(c) for e, c in terms.items()}, flavor)


# ---------------------------------------------------------------- orders

ORDER_KINDS = ("lex", "tdeglex", "tdegrevlex")
_ALIASES = {"tdeg-lex": "tdeglex", "tdeg-revlex": "tdegrevlex", "grlex": "tdeglex",
            "grevlex": "tdegrevlex"}


@dataclass(frozen=True)
class TermOrder:
    """A monomial order.

    ``precedence`` lists variable indices from least to most significant
    in the global sense, so ``(0, 1)`` reads x1 < x2.  A local order is
    the exact inverse of the global order with the same kind and
    precedence.
    """

    kind: str
    precedence: tuple
    local: bool = False
    _rev: tuple = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        if kind not in ORDER_KINDS:
            raise ValueError(f"unknown order kind {self.kind!r}")
        if sorted(self.precedence) != list(range(len(self.precedence))):
            raise ValueError("precedence must be a permutation of variable indices")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "precedence", tuple(self.precedence))
        object.__setattr__(self, "_rev", tuple(reversed(self.precedence)))

    @classmethod
    def default(cls, kind, n, local=False):
        return cls(kind, tuple(range(n)), local)

    @property
    def nvars(self):
        return len(self.precedence)

    def global_key(self, e):
        if self.kind == "lex":
            return tuple(e[i] for i in self._rev)
        if self.kind == "tdeglex":
            return (sum(e),) + tuple(e[i] for i in self._rev)
        return (sum(e),) + tuple(-e[i] for i in self.precedence)

    def key(self, e):
        k = self.global_key(e)
        if self.local:
            return tuple(-v for v in k)
        return k

    def inverse(self):
        return TermOrder(self.kind, self.precedence, not self.local)

    def as_global(self):
        return TermOrder(self.kind, self.precedence, False)

    def sorted(self, exps, reverse=False):
        return sorted(exps, key=self.key, reverse=reverse)

    def max(self, exps):
        return max(exps, key=self.key)

    def describe(self, names):
        # the relation between single variables as this order sees them
        idx = self._rev if self.local else self.precedence
        chain = " < ".join(names[i] for i in idx)
        return f"{'local' if self.local else 'global'} {self.kind} ({chain})"


def compare(a, b, order):
    """-1, 0 or 1 as a is smaller than, equal to or larger than b."""
    if len(a) != len(b) or len(a) != order.nvars:
        raise ValueError("exponent length mismatch")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


# ---------------------------------------------------------------- exponents

def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def exp_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def exp_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def exp_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def degree(e):
    return sum(e)


# ---------------------------------------------------------------- XPoly

class XPoly:
    """Sparse polynomial over K(t) in x, or a class in the dual variables xi."""

    __slots__ = ("terms", "flavor")

    def __init__(self, terms=None, flavor=X_SPACE):
        self.terms = {e: c for e, c in (terms or {}).items() if c}
        self.flavor = flavor

    def _same(self, other):
        if other.flavor != self.flavor:
            raise TypeError("mixing x-space and xi-space polynomials")

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return (isinstance(other, XPoly) and self.flavor == other.flavor
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.flavor, frozenset(self.terms.items())))

    def __repr__(self):
        return f"XPoly({self.terms!r}, {self.flavor!r})"

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return XPoly(out, self.flavor)

    def __neg__(self):
        return XPoly({e: -c for e, c in self.terms.items()}, self.flavor)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return XPoly({}, self.flavor)
        return XPoly({e: c * v for e, v in self.terms.items()}, self.flavor)

    def shift(self, exp):
        return XPoly({exp_add(e, exp): c for e, c in self.terms.items()}, self.flavor)

    def __mul__(self, other):
        if not isinstance(other, XPoly):
            return self.scale(other)
        self._same(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = exp_add(e1, e2)
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return XPoly(out, self.flavor)

    __rmul__ = scale

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        one = XPoly({(0,) * self.nvars: self._one()}, self.flavor)
        out, base = one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def _one(self):
        return next(iter(self.terms.values())).field.one

    @property
    def nvars(self):
        return len(next(iter(self.terms))) if self.terms else 0

    def coeff(self, e):
        return self.terms.get(tuple(e))

    def exponents(self):
        return set(self.terms)

    def head(self, order):
        return order.max(self.terms)

    def head_coeff(self, order):
        return self.terms[self.head(order)]

    def monic(self, order):
        return self.scale(1 / self.head_coeff(order))

    def sorted_terms(self, order, reverse=True):
        return [(e, self.terms[e]) for e in order.sorted(self.terms, reverse=reverse)]

    def map_coeffs(self, fn):
        return XPoly({e: fn(c) for e, c in self.terms.items()}, self.flavor)

    def as_flavor(self, flavor):
        return XPoly(self.terms, flavor)

    def is_parameter_free(self):
        return all(c.numer.is_ground and c.denom.is_ground for c in self.terms.values())

    def max_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def render(self, ctx, order=None):
        order = order or TermOrder.default("tdeglex", ctx.n)
        names = ctx.variables if self.flavor == X_SPACE else xi_names(ctx.variables)
        return render_terms(self.sorted_terms(order), names, ctx.params)


def xi_names(variables):
    """Dual names: x1 -> xi1, anything else v -> xi_v."""
    return tuple("xi" + v[1:] if v.startswith("x") else "xi_" + v for v in variables)


def contract(f, psi):
    """The action x^a * xi^l = xi^(l-a) (zero unless l >= a), bilinearly."""
    if f.flavor != X_SPACE or psi.flavor != XI_SPACE:
        raise TypeError("contract expects an x-polynomial and a xi-class")
    out = {}
    for a, ca in f.terms.items():
        for lam, cl in psi.terms.items():
            if divides(a, lam):
                e = exp_sub(lam, a)
                v = out.get(e)
                out[e] = ca * cl if v is None else v + ca * cl
    return XPoly(out, XI_SPACE)


# ---------------------------------------------------------------- specialization

def eval_poly(p, point):
    """Value of a ring element at a rational point."""
    total = QQ.zero
    for mon, c in p.terms():
        v = c
        for a, k in zip(point, mon):
            if k:
                v *= a ** k
        total += v
    return total


def specialize(obj, point, ctx=None):
    """Substitute rational values for the parameters.

    XPoly coefficients become constant field elements; ring and field
    elements become QQ values.
    """
    point = tuple(rat(a) for a in point)
    if isinstance(obj, XPoly):
        out = {}
        for e, c in obj.terms.items():
            v = specialize(c, point)
            if v:
                out[e] = c.field(v)
        return XPoly(out, obj.flavor)
    if hasattr(obj, "numer"):
        den = eval_poly(obj.denom, point)
        if not den:
            raise SpecializationError(f"denominator {obj.denom} vanishes at {point}")
        return eval_poly(obj.numer, point) / den
    return eval_poly(obj, point)


# ---------------------------------------------------------------- rendering

def _fmt_q(q):
    return str(int(q.numerator)) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_mon(exp, names):
    parts = []
    for name, k in zip(names, exp):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def render_terms(terms, names_or_ctx, poly_names=None):
    """Render (exponent, coefficient) pairs in the given order.

    Coefficients may be QQ values, ring elements or field elements.
    """
    if isinstance(names_or_ctx, Context):
        names, poly_names = names_or_ctx.variables, names_or_ctx.params
    else:
        names = names_or_ctx
    out = []
    for exp, c in terms:
        mon = _fmt_mon(exp, names)
        sign, body = _coef_parts(c, poly_names)
        if not mon:
            piece = body
        elif body == "1":
            piece = mon
        else:
            piece = f"{body}*{mon}"
        out.append((sign, piece))
    if not out:
        return "0"
    text = ("-" if out[0][0] < 0 else "") + out[0][1]
    for sign, piece in out[1:]:
        text += (" - " if sign < 0 else " + ") + piece
    return text


def _coef_parts(c, poly_names):
    """(sign, text) for a coefficient; the text never starts with '-'."""
    if hasattr(c, "numer"):
        num, den = c.numer, c.denom
        if den.is_ground:
            return _coef_parts(num * (1 / den.LC), poly_names)
        ns = render_param(num, poly_names)
        sign = 1
        if len(num) == 1 and num.LC < 0:
            sign, ns = -1, render_param(-num, poly_names)
        if len(num) > 1:
            ns = f"({ns})"
        ds = render_param(den, poly_names)
        if len(den) > 1 or den.LC != 1:
            ds = f"({ds})"
        return sign, f"{ns}/{ds}"
    if hasattr(c, "ring"):
        if c.is_ground:
            return _coef_parts(c.LC if c else QQ.zero, poly_names)
        if len(c) == 1:
            if c.LC < 0:
                return -1, render_param(-c, poly_names)
            return 1, render_param(c, poly_names)
        return 1, f"({render_param(c, poly_names)})"
    q = rat(c)
    return (-1 if q < 0 else 1), _fmt_q(abs(q))


def render_param(p, names=None):
    """Render a parameter polynomial (ring element) in the input grammar."""
    names = names or tuple(str(s) for s in p.ring.symbols)
    if not p:
        return "0"
    out = []
    for mon, c in p.terms():
        m = _fmt_mon(mon, names)
        a = abs(c)
        if not m:
            piece = _fmt_q(a)
        elif a == 1:
            piece = m
        else:
            piece = f"{_fmt_q(a)}*{m}"
        out.append((c < 0, piece))
    text = ("-" if out[0][0] else "") + out[0][1]
    for neg, piece in out[1:]:
        text += (" - " if neg else " + ") + piece
    return text


def render_coeff(c, names=None):
    sign, body = _coef_parts(c, names)
    return ("-" if sign < 0 else "") + body


# ---------------------------------------------------------------- fast field ops
#
# sympy's FracField cancels through a multivariate gcd on every operation.
# When one side is a constant, or both denominators are constants, the
# canonical form (coprime integer numerator and denominator, positive
# leading denominator coefficient) follows from integer contents alone.


def _content(p):
    return reduce(gcd, (int(c.numerator) for c in p.values()), 0)


def _from_poly(f, P):
    """The field element equal to the QQ-polynomial P, f any field element."""
    if not P:
        return f.field.zero
    D = reduce(lcm, (int(c.denominator) for c in P.values()), 1)
    return f.raw_new(P.mul_ground(D) if D != 1 else P, P.ring(D))


def _as_poly(a):
    d = a.denom.LC
    return a.numer if d == 1 else a.numer.quo_ground(d)


def _scale(x, q):
    if not q or not x:
        return x.field.zero
    p, r = int(q.numerator), int(q.denominator)
    g1 = gcd(p, _content(x.denom))
    g2 = gcd(r, _content(x.numer))
    num = x.numer.mul_ground(QQ(p // g1, g2)) if (p // g1, g2) != (1, 1) else x.numer
    den = x.denom.mul_ground(QQ(r // g2, g1)) if (r // g2, g1) != (1, 1) else x.denom
    return x.raw_new(num, den)


def _const(a):
    return a.numer.LC / a.denom.LC if a.numer else QQ.zero


def fmul(a, b):
    if not a or not b:
        return a.field.zero
    ga, gb = a.denom.is_ground, b.denom.is_ground
    if ga and a.numer.is_ground:
        return _scale(b, _const(a))
    if gb and b.numer.is_ground:
        return _scale(a, _const(b))
    if ga and gb:
        return _from_poly(a, _as_poly(a) * _as_poly(b))
    return a * b


def fsub(a, b):
    if not b:
        return a
    if not a:
        return -b
    if a.denom.is_ground and b.denom.is_ground:
        return _from_poly(a, _as_poly(a) - _as_poly(b))
    return a - b


def finv(a):
    return a.raw_new(a.denom, a.numer) if a.numer.LC > 0 else a.raw_new(-a.denom, -a.numer)
