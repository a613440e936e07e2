"""Command-line front end.

Every command accepts ``--class`` (inline ``"g; b'_1, ..., b'_{g+1}"`` or a
file with one class per line), ``--surface`` (``p2``, ``special:<d>``,
``nonspecial:<d>``), ``--budget`` and ``--output human|machine``.  Machine
output is blocks of ``key=value`` lines separated by blank lines; every value
is an exact token.

Exit codes: 0 success, 2 invalid input, 3 undecidable at the given budget,
4 generator constraint violated.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from itertools import islice

from . import dual_graph, generator, npi
from .discrete_class import (
    InvalidClass,
    contact_data,
    last_contact_closed_form,
    normalized_ratio,
    parse_class,
)
from .grid import ScanSpec, iter_grid, parse_deltas
from .numeric import DEFAULT_BUDGET, CertifiedIrrational, DomainError, Undecidable, format_exponent

EXIT_OK, EXIT_INVALID, EXIT_UNDECIDABLE, EXIT_GENERATOR = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error=usage\nmessage={message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def _tok(x) -> str:
    if isinstance(x, (tuple, list)):
        return ",".join(_tok(v) for v in x)
    if x is None:
        return "none"
    if isinstance(x, bool):
        return str(x).lower()
    return format_exponent(x) if isinstance(x, (Fraction, CertifiedIrrational)) else str(x)


def _approx(x) -> str:
    if isinstance(x, (tuple, list)):
        return ", ".join(_approx(v) for v in x)
    if isinstance(x, CertifiedIrrational):
        return f"{format_exponent(x)} (~{float(x):.6g}, approximate)"
    return _tok(x)


class Emitter:
    def __init__(self, mode: str, out):
        self.mode = mode
        self.out = out
        self._first = True

    def record(self, title: str, fields: dict) -> None:
        if self.mode == "machine":
            if not self._first:
                self.out.write("\n")
            self.out.write("".join(f"{k}={_tok(v)}\n" for k, v in fields.items()))
        else:
            self.out.write(f"{title}\n")
            width = max((len(k) for k in fields), default=0)
            for k, v in fields.items():
                self.out.write(f"  {k.ljust(width)}  {_approx(v)}\n")
        self._first = False

    def text(self, body: str) -> None:
        self.out.write(body)


def _load_classes(value: str, budget: int):
    if os.path.isfile(value):
        with open(value) as fh:
            lines = [ln.strip() for ln in fh]
        return [parse_class(ln, budget) for ln in lines if ln and not ln.startswith("#")]
    return [parse_class(value, budget)]


def _common(p):
    p.add_argument("--class", dest="cls", required=True, help="inline class or file")
    p.add_argument("--surface", default="p2", help="p2 | special:<d> | nonspecial:<d>")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--output", choices=("human", "machine"), default="human")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="npiclass", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _common(sub.add_parser("classify", help="NPI membership in one surface context"))
    _common(sub.add_parser("invariants", help="e, n, w, maximal contact values"))
    _common(sub.add_parser("thresholds", help="least special / greatest non-special delta"))

    g = sub.add_parser("graph", help="dual graph")
    _common(g)
    g.add_argument("--format", choices=("ascii", "dot", "structured"), default=None)
    g.add_argument("--truncate", type=int, default=8, help="CF digits kept in an irrational tail")

    gen = sub.add_parser("generate", help="extend an NPI class")
    _common(gen)
    gen.add_argument(
        "--mode",
        choices=("output1", "output2-irrational", "output2-integer", "chain"),
        default="output1",
    )
    gen.add_argument(
        "--strategy",
        action="append",
        default=None,
        help="enumerate[:maxden] | single:q/p | irrational:<token> | tail:<m> | "
        "max-integer-tail; repeat for chain",
    )
    gen.add_argument("--limit", type=int, default=10, help="max classes from enumerate")

    sc = sub.add_parser("scan", help="check the inclusions between NPI sets over a grid")
    sc.add_argument("--class", dest="cls", default=None, help="optional extra classes (file)")
    sc.add_argument("--max-g", type=int, default=2)
    sc.add_argument("--max-numerator", type=int, default=20)
    sc.add_argument("--max-denominator", type=int, default=5)
    sc.add_argument("--deltas", default="0:4")
    sc.add_argument("--irrational", default="", help="comma-separated tail tokens")
    sc.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sc.add_argument("--output", choices=("human", "machine"), default="human")
    return parser


def _cmd_classify(args, em):
    ctx = npi.parse_surface(args.surface)
    for t in _load_classes(args.cls, args.budget):
        v = npi.classify(t, ctx, args.budget)
        em.record(f"class {t}", {"class": str(t), **v.record()})
        if isinstance(v.member, npi.Unknown):
            return EXIT_UNDECIDABLE
    return EXIT_OK


def _cmd_invariants(args, em):
    for t in _load_classes(args.cls, args.budget):
        cd = contact_data(t)
        em.record(
            f"class {t}",
            {
                "class": str(t),
                "kind": t.kind.value,
                "g": t.g,
                "p": cd.p,
                "e": cd.e,
                "n": cd.n,
                "w": cd.w,
                "beta_bar": cd.beta_bar,
                "last_contact_closed_form": last_contact_closed_form(t),
                "normalized_ratio": normalized_ratio(t),
            },
        )
    return EXIT_OK


def _cmd_thresholds(args, em):
    for t in _load_classes(args.cls, args.budget):
        em.record(
            f"class {t}",
            {
                "class": str(t),
                "special_min_delta": npi.special_min_delta(t, args.budget),
                "nonspecial_max_delta": npi.nonspecial_max_delta(t, args.budget),
            },
        )
    return EXIT_OK


def _cmd_graph(args, em):
    fmt = args.format or ("structured" if args.output == "machine" else "ascii")
    for i, t in enumerate(_load_classes(args.cls, args.budget)):
        gr = dual_graph.build(t, args.truncate, args.budget)
        if i:
            em.text("\n")
        if args.output == "human" and fmt != "dot":
            em.text(f"# {t}\n")
        em.text(dual_graph.render(gr, fmt))
    return EXIT_OK


def _strategies(args, default):
    return [generator.parse_strategy(s) for s in (args.strategy or [default])]


def _cmd_generate(args, em):
    ctx = npi.parse_surface(args.surface)
    for t in _load_classes(args.cls, args.budget):
        if args.mode == "output1":
            (strategy,) = _strategies(args, "enumerate")[:1]
            line = generator.check_input(t, ctx)
            for new in islice(generator.output1(t, ctx, strategy, args.budget), args.limit):
                em.record(
                    "output1",
                    {
                        "input": str(t),
                        "context": ctx.token,
                        "bound": line.bound,
                        "choice": new.beta_prime(new.g),
                        "result": str(new),
                    },
                )
        elif args.mode == "output2-irrational":
            (strategy,) = _strategies(args, "irrational:phi")[:1]
            if not isinstance(strategy, generator.Irrational):
                raise DomainError("output2-irrational needs --strategy irrational:<token>")
            line = generator.check_input(t, ctx)
            new = generator.output2_irrational(t, ctx, strategy, args.budget)
            em.record(
                "output2-irrational",
                {
                    "input": str(t),
                    "context": ctx.token,
                    "bound": line.bound,
                    "choice": new.last,
                    "result": str(new),
                },
            )
        elif args.mode == "output2-integer":
            (strategy,) = _strategies(args, "max-integer-tail")[:1]
            res = generator.output2_integer(t, ctx, strategy, args.budget)
            em.record(
                "output2-integer",
                {
                    "input": str(t),
                    "context": ctx.token,
                    "capacity": res.capacity,
                    "max_tail": res.max_tail,
                    "choice": None if res.result is None else res.result.last,
                    "result": None if res.result is None else str(res.result),
                },
            )
        else:
            trace = generator.chain(t, ctx, _strategies(args, "enumerate"), args.budget)
            for k, step in enumerate(trace.steps, start=1):
                em.record(f"step {k}", {"step": k, **step.record()})
            if trace.stopped is not None:
                em.record("stopped", {"stopped": "not-extensible", "reason": str(trace.stopped)})
                return EXIT_GENERATOR
    return EXIT_OK


def _cmd_scan(args, em):
    spec = ScanSpec(
        max_g=args.max_g,
        max_numerator=args.max_numerator,
        max_denominator=args.max_denominator,
        deltas=parse_deltas(args.deltas),
        irrational_tails=tuple(t for t in args.irrational.split(",") if t),
    )
    classes = list(iter_grid(spec))
    if args.cls:
        classes += _load_classes(args.cls, args.budget)
    rep = npi.check_inclusions(classes, spec.deltas, args.budget)
    fields = {
        "classes": rep.classes,
        "skipped": rep.skipped,
        "deltas": spec.deltas,
        **{f"checked_{k}": v for k, v in rep.checked.items()},
        "violations": len(rep.violations),
        "undecided": len(rep.undecided),
        **{f"witnesses_{k}": len(v) for k, v in rep.witnesses.items()},
    }
    for k, ws in rep.witnesses.items():
        if ws:
            t, d = ws[0]
            fields[f"first_witness_{k}"] = f"{t} @ delta={d}"
    em.record("inclusion scan", fields)
    for part, t, d in rep.violations:
        em.record("violation", {"part": part, "class": str(t), "delta": d})
    if rep.undecided:
        return EXIT_UNDECIDABLE
    return EXIT_OK if not rep.violations else 1


_COMMANDS = {
    "classify": _cmd_classify,
    "invariants": _cmd_invariants,
    "thresholds": _cmd_thresholds,
    "graph": _cmd_graph,
    "generate": _cmd_generate,
    "scan": _cmd_scan,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    em = Emitter(args.output, out)

    def fail(code, kind, exc):
        if args.output == "machine":
            err.write(f"error={kind}\nmessage={exc}\n")
        else:
            err.write(f"error ({kind}): {exc}\n")
        return code

    try:
        return _COMMANDS[args.command](args, em)
    except (generator.NotExtensible, generator.RejectedChoice) as exc:
        return fail(EXIT_GENERATOR, type(exc).__name__, exc)
    except InvalidClass as exc:
        return fail(EXIT_INVALID, "invalid-class", exc)
    except Undecidable as exc:
        return fail(EXIT_UNDECIDABLE, "undecidable", exc)
    except (DomainError, ValueError, OSError) as exc:
        return fail(EXIT_INVALID, type(exc).__name__, exc)


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
