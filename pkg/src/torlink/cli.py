"""Command line: classify, link, grid, verify.

Exit codes: 0 success, 1 usage or input error, 2 mathematical rejection,
3 property failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .classify import classify
from .errors import InputError, MathError, TorlinkError
from .exactla import field_from_name
from .koszul import koszul_homology
from .linkage import REGIMES, check_presentation, link_step, link_table, link_with_sequence
from .poly import _split_top_level, format_ideal, parse_polynomial, read_ideal
from .theorems import admissible_class, format_grid_csv, format_grid_text, grid_records
from .toralg import read_table, table_to_json, write_table
from .verify import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_PROPERTY = 0, 1, 2, 3


@dataclass
class RunReport:
    command: str
    inputs: dict
    outputs: dict = field(default_factory=dict)
    seed: int = 0
    seconds: float = 0.0

    def to_json(self):
        return asdict(self)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _field_arg(text):
    try:
        return field_from_name(text)
    except TorlinkError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the run report as JSON")
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="torlink", description="Tor algebra classes of codimension 3 ideals and their links.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", parents=[common], help="class of an ideal or a multiplication table")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--ideal", type=Path)
    src.add_argument("--table", type=Path)
    c.add_argument("--field", type=_field_arg, help="override the coefficient field (Q or F<p>)")
    c.add_argument("--emit-table", type=Path, help="write the normalized table here")

    k = sub.add_parser("link", parents=[common], help="link an ideal or a normalized table")
    src = k.add_mutually_exclusive_group(required=True)
    src.add_argument("--ideal", type=Path)
    src.add_argument("--table", type=Path)
    k.add_argument("--with", dest="sequence", help='regular sequence "f1;f2;f3" inside the ideal')
    k.add_argument("--regime", choices=REGIMES)
    k.add_argument("--field", type=_field_arg)
    k.add_argument("--out", type=Path, help="write the linked ideal here")

    g = sub.add_parser("grid", parents=[common], help="admissible classes for given m and n")
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--format", choices=("text", "csv", "json"), default="text")

    v = sub.add_parser("verify", parents=[common], help="run a property suite")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--trials", type=int)
    return p


def _load(args):
    if args.ideal is not None:
        I = read_ideal(args.ideal, args.field)
        K = koszul_homology(I)
        return I, K, K.algebra
    return None, None, read_table(args.table, args.field)


def cmd_classify(args, report):
    I, K, A = _load(args)
    c = classify(A, args.seed)
    ok, advisories = admissible_class(c.label, c.m, c.n)
    report.outputs = {"classification": c.to_json(), "admissible": ok, "advisories": advisories}
    if K is not None:
        report.outputs["betti"] = list(K.betti)
    if args.emit_table:
        write_table(c.normalized, args.emit_table, {"label": str(c.label)})
        report.outputs["normalized_table"] = str(args.emit_table)
    lines = [c.summary()]
    if not ok:
        lines.append("warning: class outside the admissible range for these m, n")
    lines += [f"advisory: {a}" for a in advisories]
    return lines, EXIT_OK


def _parse_sequence(text, F):
    parts = [chunk for _, chunk in _split_top_level(text.replace(";", ","))]
    if len(parts) != 3:
        raise InputError("--with needs exactly three polynomials separated by ';'")
    return [parse_polynomial(t, F) for t in parts]


def cmd_link(args, report):
    if args.table is not None:
        if args.regime is None:
            raise InputError("--table needs --regime")
        A = read_table(args.table, args.field)
        c = classify(A, args.seed)
        pres = link_table(c.normalized, c, args.regime)
        v = check_presentation(c.label, c.m, c.n, pres)
        report.outputs = {"input": c.to_json(), "presentation": pres.to_json(), "verdict": v.to_json()}
        lines = [
            f"input: {c.summary()}",
            f"regime {args.regime}: m'={pres.m_linked} n'={pres.n_linked} splits={len(pres.splits)}",
            f"bounds: p'>={pres.p_lower} q'>={pres.q_lower} r'>={pres.r_lower}",
            _verdict_line(v),
        ]
        return lines, EXIT_OK if v.ok else EXIT_PROPERTY

    I, K, A = _load(args)
    if args.sequence:
        link = link_with_sequence(I, _parse_sequence(args.sequence, I.field), args.seed, K)
        before, after, linked, seq = link.before, link.after, link.linked, link.sequence
        verdicts = link.verdicts
        ok = link.ok
        extra = {
            "phi1_rank": link.phi1_rank,
            "phi2_rank": link.phi2_rank,
            "predicted": {"m": link.predicted[0], "n": link.predicted[1]},
        }
        info = [f"rank phi1={link.phi1_rank} phi2={link.phi2_rank}; predicted m'={link.predicted[0]} n'={link.predicted[1]}"]
        if not link.minimal:
            info.append("sequence is not part of a minimal generating set; only the rank formulas apply")
        elif not verdicts:
            info.append("slots match no regime layout; only the rank formulas apply")
    else:
        step = link_step(I, args.regime, args.seed, K)
        before, after, linked, seq = step.before, step.after, step.linked, step.sequence
        verdicts = [step.verdict]
        ok = step.verdict.ok
        extra = {"regime": step.regime}
        info = [f"regime {step.regime}"]
    if args.out:
        args.out.write_text(f"# {after.summary()}\n" + format_ideal(linked))
    report.outputs = {
        "input": before.to_json(),
        "sequence": [str(f) for f in seq],
        "linked_ideal": [str(g) for g in linked.generators],
        "linked": after.to_json(),
        "verdicts": [v.to_json() for v in verdicts],
        "ok": ok,
        **extra,
    }
    lines = [
        f"input: {before.summary()}",
        "sequence: " + "; ".join(str(f) for f in seq),
        *info,
        "linked ideal: (" + ", ".join(str(g) for g in linked.generators) + ")",
        f"linked: {after.summary()}",
    ]
    lines += [_verdict_line(v) for v in verdicts]
    return lines, EXIT_OK if ok else EXIT_PROPERTY


def _verdict_line(v):
    if v.ok:
        return f"{v.regime}: pass ({len(v.clauses)} clauses)"
    return f"{v.regime}: FAIL " + ", ".join(v.failures())


def cmd_grid(args, report):
    if args.m < 3 or args.n < 1:
        raise InputError("grid needs m >= 3 and n >= 1")
    records = grid_records(args.m, args.n)
    report.outputs = {"classes": records}
    if args.format == "csv":
        return [format_grid_csv(args.m, args.n).rstrip("\n")], EXIT_OK
    if args.format == "json":
        return [json.dumps(records, indent=2)], EXIT_OK
    return [format_grid_text(args.m, args.n)], EXIT_OK


def cmd_verify(args, report):
    names = SUITES if args.suite == "all" else (args.suite,)
    results = [run_suite(name, args.seed, args.trials) for name in names]
    report.outputs = {"suites": [r.to_json() for r in results]}
    lines = []
    for r in results:
        lines.append(f"{r.summary()} in {r.seconds:.1f}s")
        for case, detail in r.failures:
            lines.append(f"  FAIL {case}: {detail}")
    code = EXIT_OK if all(r.ok for r in results) else EXIT_PROPERTY
    return lines, code


COMMANDS = {"classify": cmd_classify, "link": cmd_link, "grid": cmd_grid, "verify": cmd_verify}


def main(argv=None):
    args = build_parser().parse_args(argv)
    inputs = {k: (str(v) if isinstance(v, Path) else v) for k, v in vars(args).items() if k not in ("json", "command")}
    if inputs.get("field") is not None:
        inputs["field"] = str(args.field)
    report = RunReport(args.command, inputs, seed=args.seed)
    t = time.perf_counter()
    try:
        lines, code = COMMANDS[args.command](args, report)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MathError as exc:
        print(f"rejected: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    report.seconds = round(time.perf_counter() - t, 3)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
