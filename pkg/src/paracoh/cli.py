"""Command line front end.

    paracoh [--mode MODE] [options] [FILE]

Reads a problem (see paracoh.parser) from FILE or standard input and
prints either a text report or, with --json, a result document whose
top-level keys are always mode, input, segments, rejected, meta.
"""

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field

from .arith import TermOrder, _fmt_mon, rat, render_coeff, specialize, xi_names
from .cohomology import alcohomology, coho_order, default_nu, zero_dimension
from .oracle import oracle_kernel
from .parser import ParseError, parse_problem, render_problem
from .stdbasis import clear_denominators, standard_bases_any, standard_bases_tdl

MODES = ("zerodim", "cohomology", "stdbasis", "stdbasis-any", "oracle")

log = logging.getLogger("paracoh")


class InvariantViolation(RuntimeError):
    """An output failed one of the structural self-checks."""


@dataclass
class ResultDocument:
    mode: str
    input: dict
    segments: list = field(default_factory=list)
    rejected: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def to_dict(self):
        return {"mode": self.mode, "input": self.input, "segments": self.segments,
                "rejected": self.rejected, "meta": self.meta}

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        keys = ["mode", "input", "segments", "rejected", "meta"]
        if list(d) != keys:
            raise ValueError(f"result document keys must be {keys}")
        return cls(**d)


# ---------------------------------------------------------------- helpers


def _stratum(A):
    return A.to_dict()


def _exps(E, names):
    order = TermOrder("tdeglex", tuple(range(len(names))))
    return [_fmt_mon(e, names) or "1" for e in order.sorted(E)]


def _check(cond, msg):
    if not cond:
        raise InvariantViolation(msg)


def _check_segment(seg, n):
    heads = seg.heads()
    _check(len(set(heads)) == len(heads), f"repeated head terms on {seg.A}")
    _check(not set(heads) & set(seg.MList), f"head term also monomial basis element on {seg.A}")


def _check_reduced(sb):
    heads = sb.heads()
    from .arith import divides

    for p, h in zip(sb.basis, heads):
        _check(p.terms[h] == p.terms[h].field.one, f"head coefficient not 1 on {sb.stratum}")
        for e in p.terms:
            if e != h:
                _check(not any(divides(g, e) for g in heads), f"tail not reduced on {sb.stratum}")


def _rejection(r, ctx, order):
    out = {"stratum": _stratum(r.stratum), "reason": r.reason}
    if r.witnesses:
        out["witnesses"] = [w.render(ctx, order) for w in r.witnesses]
    return out


# ---------------------------------------------------------------- run


def run(mode, spec, nu=None, strategy="saturation", order=None, local=False,
        precedence=None, at=None, degree=None, clear=False, timing=False):
    """Dispatch a problem to the requested pipeline; returns a ResultDocument."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if strategy not in ("saturation", "bound"):
        raise ValueError(f"unknown strategy {strategy!r}")
    ctx = spec.context()
    F = spec.polys(ctx)
    opts = dict(spec.options)
    if order:
        opts["order"] = order
    if precedence:
        bad = [v for v in precedence if v not in spec.variables]
        if bad or sorted(precedence) != sorted(spec.variables):
            raise ValueError("--precedence must list every variable exactly once")
        opts["precedence"] = list(precedence)
    prec_idx = tuple(spec.variables.index(v) for v in (opts.get("precedence") or spec.variables))
    doc = ResultDocument(mode, {"problem": render_problem(spec)})
    t0 = time.perf_counter()
    xi = xi_names(ctx.variables)

    if mode == "zerodim":
        kind = opts.get("order", "tdegrevlex")
        if kind == "lex":
            raise ValueError("zerodim needs a total degree order")
        o = TermOrder(kind, prec_idx)
        safe, danger = zero_dimension(F, o, ctx)
        for seg in safe:
            doc.segments.append({"stratum": _stratum(seg.stratum), "verdict": "safe",
                                 "groebner_basis": [g.render(ctx, o) for g in seg.gens]})
        for seg in danger:
            doc.rejected.append({"stratum": _stratum(seg.stratum), "verdict": "danger",
                                 "groebner_basis": [g.render(ctx, o) for g in seg.gens]})
        doc.meta["cgs_order"] = o.describe(ctx.variables)

    elif mode in ("cohomology", "stdbasis", "stdbasis-any"):
        if opts.get("order", "tdeglex") != "tdeglex" and mode != "stdbasis-any":
            raise ValueError("the cohomology order is always tdeglex; only --precedence may change")
        cprec = prec_idx if mode != "stdbasis-any" else None
        plcs = alcohomology(F, ctx, nu=nu, strategy=strategy, precedence=cprec)
        co = coho_order(ctx.n, cprec)
        for seg in plcs.S:
            _check_segment(seg, ctx.n)
        doc.rejected = [_rejection(r, ctx, co) for r in plcs.rejected]
        doc.meta["cohomology_order"] = co.describe(xi)
        doc.meta["strategy"] = strategy
        doc.meta["nu"] = nu if nu is not None else default_nu(F, ctx.n)
        if mode == "cohomology":
            for seg in plcs.S:
                doc.segments.append({
                    "stratum": _stratum(seg.A), "dimension": seg.dimension,
                    "basis": [p.render(ctx, co) for p in seg.basis(ctx)],
                    "SList": [p.render(ctx, co) for p in seg.SList],
                    "MList": _exps(seg.MList, xi), "LList": _exps(seg.LList, xi),
                    "FL": _exps(seg.FL, xi)})
        else:
            if mode == "stdbasis":
                segs, _ = standard_bases_tdl(F, ctx, plcs=plcs, precedence=cprec)
            else:
                kind = opts.get("order", "tdeglex")
                names = opts.get("precedence") or spec.variables
                idx = tuple(spec.variables.index(v) for v in names)
                lo = TermOrder(kind, tuple(reversed(idx)), True) if local else TermOrder(kind, idx).inverse()
                segs, _ = standard_bases_any(F, ctx, lo, plcs=plcs)
            for sb in segs:
                _check_reduced(sb)
                basis = [clear_denominators(p) if clear else p for p in sb.basis]
                rec = {"stratum": _stratum(sb.stratum),
                       "dimension": sb.cohomology.dimension,
                       "standard_basis": [p.render(ctx, sb.order) for p in basis]}
                if mode == "stdbasis-any" and sb.columns:
                    rec["columns"] = [_exps([c], xi)[0] for c in sb.columns]
                    rec["echelon"] = [[_coef(c, ctx) for c in row] for row in sb.echelon]
                doc.segments.append(rec)
            doc.meta["local_order"] = segs[0].order.describe(ctx.variables) if segs else None

    else:  # oracle
        if at is None and ctx.m:
            raise ValueError("oracle mode needs --at with a value for every parameter")
        if degree is None:
            raise ValueError("oracle mode needs --degree")
        point = tuple(rat(a) for a in (at or ()))
        if len(point) != ctx.m:
            raise ValueError(f"--at needs {ctx.m} values")
        Fs = [specialize(f, point) for f in F]
        K = oracle_kernel(Fs, degree, ctx.field)
        order = coho_order(ctx.n)
        K.sort(key=lambda p: order.key(p.head(order)))
        doc.segments.append({"point": dict(zip(ctx.params, (_q(a) for a in point))), "degree": degree,
                             "dimension": len(K), "basis": [p.render(ctx, order) for p in K]})

    if timing:
        doc.meta["seconds"] = round(time.perf_counter() - t0, 3)
    return doc


def _q(a):
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def _coef(c, ctx):
    return render_coeff(c, ctx.params)


# ---------------------------------------------------------------- text


def _render_stratum(d):
    eqs = ", ".join(d["eqs"]) or "0"
    text = f"V({eqs})"
    if d["neqs"]:
        text += " \\ V(" + ", ".join(d["neqs"]) + ")"
    return text


def render_text(doc):
    lines = []
    for seg in doc.segments:
        if doc.mode == "oracle":
            where = ", ".join(f"{k} = {v}" for k, v in seg["point"].items()) or "no parameters"
            lines.append(f"at {where}, degree <= {seg['degree']}: "
                         f"dimension {seg['dimension']}")
            lines.append("  basis = {" + ", ".join(seg["basis"]) + "}")
            continue
        lines.append(f"if parameters belong to {_render_stratum(seg['stratum'])} then")
        if doc.mode == "zerodim":
            lines.append("  <F> is zero-dimensional; Groebner basis {" + ", ".join(seg["groebner_basis"]) + "}")
        elif doc.mode == "cohomology":
            lines.append(f"  basis of H_F (dimension {seg['dimension']}) = {{" + ", ".join(seg["basis"]) + "}")
        else:
            lines.append("  standard basis = {" + ", ".join(seg["standard_basis"]) + "}")
    for r in doc.rejected:
        what = ("<F> is not zero-dimensional in the polynomial ring" if doc.mode == "zerodim"
                else f"<F> is not zero-dimensional at the origin ({r['reason']})")
        lines.append(f"if parameters belong to {_render_stratum(r['stratum'])} then {what}")
        for w in r.get("witnesses", []):
            lines.append(f"  witness: {w}")
    for k, v in doc.meta.items():
        lines.append(f"# {k}: {v}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- main


def build_parser():
    p = argparse.ArgumentParser(prog="paracoh", description=(
        "Parametric local cohomology and standard bases of zero-dimensional ideals."))
    p.add_argument("file", nargs="?", default="-", help="problem file ('-' or omitted: standard input)")
    p.add_argument("--mode", choices=MODES, default="cohomology")
    p.add_argument("--order", choices=("lex", "tdeglex", "tdegrevlex"),
                   help="term order kind (stdbasis-any: target order; zerodim: CGS order)")
    p.add_argument("--precedence", help="comma separated variables, least significant first")
    p.add_argument("--local", action="store_true",
                   help="stdbasis-any: --order/--precedence describe the local order itself "
                        "(default: they describe its global inverse)")
    p.add_argument("--nu", type=int, help="truncation bound for danger strata")
    p.add_argument("--strategy", choices=("saturation", "bound"), default="saturation")
    p.add_argument("--json", action="store_true", help="emit the JSON result document")
    p.add_argument("--seed", type=int, default=0, help="seed for sample point searches")
    p.add_argument("--clear-denominators", action="store_true",
                   help="print standard bases with polynomial coefficients")
    p.add_argument("--at", help="oracle: comma separated parameter values, e.g. 1/2,3")
    p.add_argument("--degree", type=int, help="oracle: degree bound")
    p.add_argument("--timing", action="store_true", help="record wall time in meta")
    p.add_argument("-v", "--verbose", action="count", default=0)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    except OSError as e:
        print(f"paracoh: {e}", file=sys.stderr)
        return 1
    try:
        spec = parse_problem(text)
        doc = run(args.mode, spec, nu=args.nu, strategy=args.strategy, order=args.order,
                  local=args.local,
                  precedence=[v.strip() for v in args.precedence.split(",")] if args.precedence else None,
                  at=[v.strip() for v in args.at.split(",")] if args.at else None,
                  degree=args.degree, clear=args.clear_denominators, timing=args.timing)
    except ParseError as e:
        print(f"paracoh: parse error: {e}", file=sys.stderr)
        return 1
    except InvariantViolation as e:
        print(f"paracoh: invariant violation: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"paracoh: {e}", file=sys.stderr)
        return 1
    except Exception as e:  # noqa: BLE001 - anything else is a bug
        print(f"paracoh: internal error: {e!r}", file=sys.stderr)
        return 2
    sys.stdout.write(doc.to_json() if args.json else render_text(doc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
