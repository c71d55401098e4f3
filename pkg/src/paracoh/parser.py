"""Problem files.

    problem := {stmt}
    stmt    := "vars" namelist ";" | "params" namelist ";"
             | "order" ordkind [namelist] ";"
             | "F" "=" "[" expr {"," expr} "]" ";"
    expr    := ["+"|"-"] term {("+"|"-") term}
    term    := factor {("*"|"/") factor}
    factor  := base ["^" natural]
    base    := name | integer | integer "/" integer | "(" expr ")"

Multiplication must be written out.  Division is allowed by nonzero
expressions in the parameters only, so every rendered result parses.  ``#`` starts a comment running to
the end of the line.  An order's namelist runs from the least to the
most significant variable.
"""

import re
from dataclasses import dataclass, field

from sympy.polys.domains import QQ

from .arith import ORDER_KINDS, X_SPACE, Context, TermOrder, XPoly

KEYWORDS = {"vars", "params", "order", "F"}


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.message, self.line, self.col = message, line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)


@dataclass
class Token:
    kind: str  # name, int, op, end
    text: str
    pos: int
    line: int
    col: int


_TOKEN = re.compile(r"\s*(?:(#[^\n]*)|([A-Za-z_][A-Za-z0-9_]*)|(\d+)|(.))", re.S)


def tokenize(text):
    out = []
    line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(pos):
        lo = 0
        for i, s in enumerate(line_starts):
            if s <= pos:
                lo = i
        return lo + 1, pos - line_starts[lo] + 1

    pos = 0
    while text[pos:].strip():
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        pos = m.end()
        if m.group(1) is not None:
            continue
        for kind, g in (("name", 2), ("int", 3), ("op", 4)):
            if m.group(g) is not None:
                start = m.start(g)
                line, col = where(start)
                if kind == "op" and m.group(g) not in "+-*/^()[],;=":
                    raise ParseError(f"unexpected character {m.group(g)!r}", line, col)
                out.append(Token(kind, m.group(g), start, line, col))
    line, col = where(len(text))
    out.append(Token("end", "", len(text), line, col))
    return out


@dataclass
class ProblemSpec:
    variables: list
    parameters: list = field(default_factory=list)
    generators: list = field(default_factory=list)
    options: dict = field(default_factory=dict)

    def context(self):
        return Context(self.variables, self.parameters)

    def polys(self, ctx=None):
        ctx = ctx or self.context()
        return [parse_expr(g, ctx) for g in self.generators]

    def order(self, local=False):
        """The order named by the problem (default tdeglex, x1 < x2 < ...)."""
        kind = self.options.get("order", "tdeglex")
        names = self.options.get("precedence") or self.variables
        idx = tuple(self.variables.index(v) for v in names)
        if local:
            idx = tuple(reversed(idx))
        return TermOrder(kind, idx, local)


class _Parser:
    def __init__(self, text, ctx=None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.ctx = ctx

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def take(self, kind=None, text=None):
        t = self.tok
        if (kind and t.kind != kind) or (text is not None and t.text != text):
            want = repr(text) if text is not None else kind
            got = "end of input" if t.kind == "end" else repr(t.text)
            raise self.error(f"expected {want}, found {got}")
        self.i += 1
        return t

    def at(self, text):
        return self.tok.kind == "op" and self.tok.text == text

    # ---------------------------------------------------------- statements

    def problem(self):
        spec = ProblemSpec([], [], [], {})
        seen = set()
        while self.tok.kind != "end":
            t = self.tok
            if t.kind != "name" or t.text not in KEYWORDS:
                raise self.error(f"expected a statement (vars, params, order or F), found {t.text!r}")
            if t.text in seen:
                raise self.error(f"duplicate {t.text} statement")
            seen.add(t.text)
            self.i += 1
            if t.text in ("vars", "params"):
                names = self.namelist()
                (spec.variables if t.text == "vars" else spec.parameters).extend(n.text for n in names)
            elif t.text == "order":
                kind = self.take("name")
                if kind.text not in ORDER_KINDS:
                    raise self.error(f"unknown order {kind.text!r}", kind)
                spec.options["order"] = kind.text
                if not self.at(";"):
                    spec.options["precedence"] = [n.text for n in self.namelist()]
                    spec.options["_prec_tok"] = self.toks[self.i - 1]
            else:
                self.take("op", "=")
                self.take("op", "[")
                spans = [self.expr_span()]
                while self.at(","):
                    self.i += 1
                    spans.append(self.expr_span())
                self.take("op", "]")
                spec.generators = spans
            self.take("op", ";")
        return spec

    def namelist(self):
        names = [self.take("name")]
        while self.at(","):
            self.i += 1
            names.append(self.take("name"))
        return names

    def expr_span(self):
        start = self.i
        val = self.expr(build=self.ctx is not None)
        toks = self.toks[start:self.i]
        if not toks:
            raise self.error("expected an expression")
        out = toks[0].text
        for a, b in zip(toks, toks[1:]):
            gap = self.text[a.pos + len(a.text):b.pos]
            out += (" " if gap else "") + b.text
        return (out, toks[0], val)

    # ---------------------------------------------------------- expressions

    def expr(self, build=True):
        neg = False
        if self.at("+") or self.at("-"):
            neg = self.tok.text == "-"
            self.i += 1
        val = self.term(build)
        if neg and build:
            val = -val
        while self.at("+") or self.at("-"):
            op = self.tok.text
            self.i += 1
            rhs = self.term(build)
            if build:
                val = val + rhs if op == "+" else val - rhs
        return val

    def term(self, build):
        val = self.factor(build)
        while self.at("*") or self.at("/"):
            op = self.tok
            self.i += 1
            start = self.tok
            rhs = self.factor(build)
            if not build:
                continue
            if op.text == "*":
                val = val * rhs
                continue
            # division only by a nonzero expression in the parameters
            zero = (0,) * len(self.ctx.variables)
            if not rhs or set(rhs.terms) != {zero}:
                what = "zero" if not rhs else "an expression in the variables"
                raise self.error(f"cannot divide by {what}", start)
            val = val.scale(1 / rhs.terms[zero])
        return val

    def factor(self, build):
        base = self.base(build)
        if self.at("^"):
            self.i += 1
            k = self.take("int")
            if build:
                base = base ** int(k.text)
        return base

    def base(self, build):
        t = self.tok
        if t.kind == "int":
            self.i += 1
            num = QQ(int(t.text))
            if self.at("/") and self.toks[self.i + 1].kind == "int":
                self.i += 1
                d = self.take("int")
                if int(d.text) == 0:
                    raise self.error("division by zero", d)
                num = QQ(int(t.text), int(d.text))
            return self.ctx.const(num) if build else None
        if t.kind == "name":
            self.i += 1
            if t.text in KEYWORDS:
                raise self.error(f"keyword {t.text!r} used as a name", t)
            if not build:
                return None
            return self.name(t)
        if self.at("("):
            self.i += 1
            val = self.expr(build)
            self.take("op", ")")
            return val
        got = "end of input" if t.kind == "end" else repr(t.text)
        raise self.error(f"expected a name, number or '(', found {got}")

    def name(self, t):
        ctx = self.ctx
        if t.text in ctx.variables:
            return ctx.var(ctx.variables.index(t.text))
        if t.text in ctx.params:
            return ctx.const(ctx.param(ctx.params.index(t.text)))
        raise self.error(f"unknown identifier {t.text!r}", t)


def parse_expr(text, ctx):
    """An x-space XPoly over K(t) from an expression in the input grammar."""
    p = _Parser(text, ctx)
    val = p.expr()
    if p.tok.kind != "end":
        raise p.error(f"unexpected {p.tok.text!r}")
    return XPoly(val.terms, X_SPACE)


def parse_problem(text):
    # names first, then a second pass that builds the polynomials
    spec = _Parser(text).problem()
    _validate(spec)
    built = _Parser(text, spec.context()).problem()
    for k, (_, tok, poly) in enumerate(built.generators, 1):
        if not poly:
            raise ParseError(f"generator {k} is zero", tok.line, tok.col)
    spec.generators = [g for g, _, _ in spec.generators]
    return spec


def _validate(spec):
    if not spec.variables:
        raise ParseError("no variables declared (missing 'vars' statement)")
    for names, what in ((spec.variables, "variable"), (spec.parameters, "parameter")):
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise ParseError(f"duplicate {what} {sorted(dup)[0]!r}")
    clash = set(spec.variables) & set(spec.parameters)
    if clash:
        raise ParseError(f"{sorted(clash)[0]!r} is declared both as a variable and as a parameter")
    prec = spec.options.pop("_prec_tok", None)
    if "precedence" in spec.options:
        names = spec.options["precedence"]
        if sorted(names) != sorted(spec.variables):
            raise ParseError("order must list every variable exactly once",
                             prec.line if prec else None, prec.col if prec else None)
    if not spec.generators:
        raise ParseError("no generators (missing 'F = [...]' statement)")


def render_problem(spec):
    lines = [f"vars {', '.join(spec.variables)};"]
    if spec.parameters:
        lines.append(f"params {', '.join(spec.parameters)};")
    if "order" in spec.options:
        line = f"order {spec.options['order']}"
        if spec.options.get("precedence"):
            line += " " + ", ".join(spec.options["precedence"])
        lines.append(line + ";")
    lines.append("F = [" + ", ".join(spec.generators) + "];")
    return "\n".join(lines) + "\n"
