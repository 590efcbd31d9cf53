"""Command-line interface.

Exit codes: 0 success / PASS, 1 theorem violation (counterexample),
2 invalid input or usage, 3 hypotheses not met for ``trace``.
"""

from __future__ import annotations

import argparse
import json
import sys

from .criticality import is_critical, is_vertex_critical
from .dichromatic import chi_witness
from .errors import HypothesisError, ParseError, PreconditionError, TheoremViolation
from .families import FAMILIES, gen_instance
from .matching import ge_decompose, verify_ge_structure
from .pipeline import ProofTrace, run_proof_pipeline
from .textio import format_classes, parse_digraph, parse_graph, serialize_digraph
from .verifier import MAX_ORDER, verify_theorem_up_to

FORMAT_VERSION = 1

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_HYPOTHESES = 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="ascii") as f:
            return f.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _doc(command: str, **body) -> dict:
    return {"format_version": FORMAT_VERSION, "command": command, **body}


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _cmd_chi(args) -> tuple[int, dict, str]:
    G = parse_digraph(_read(args.file))
    k, P = chi_witness(G)
    text = f"chi = {k}\n{format_classes(P.classes)}" if P.classes else f"chi = {k}"
    return EXIT_OK, _doc("chi", n=G.n, chi=k, colouring=P.as_lists()), text


def _cmd_critical(args) -> tuple[int, dict, str]:
    G = parse_digraph(_read(args.file))
    if G.n == 0:
        raise UsageError("criticality is undefined for the empty digraph")
    k, _ = chi_witness(G)
    vc = is_vertex_critical(G, k)
    cr = is_critical(G, k)
    text = f"chi = {k}\nvertex-critical: {_yes(vc)}\ncritical: {_yes(cr)}"
    return EXIT_OK, _doc("critical", n=G.n, chi=k, vertex_critical=vc, critical=cr), text


def _cmd_ge(args) -> tuple[int, dict, str]:
    H = parse_graph(_read(args.file))
    dec = ge_decompose(H)
    cert = verify_ge_structure(H, dec)
    body = {
        "n": H.n,
        "D": list(dec.D), "A": list(dec.A), "C": list(dec.C),
        "components": [list(comp) for comp in dec.components], "c": dec.c,
        "certificate": cert.as_dict(),
    }

    def fmt(vs):
        return "{" + ", ".join(map(str, vs)) + "}"

    lines = [
        f"D = {fmt(dec.D)}",
        f"A = {fmt(dec.A)}",
        f"C = {fmt(dec.C)}",
        f"c = {dec.c}: " + " ".join(fmt(comp) for comp in dec.components),
        f"nu = {cert.matching_number}",
        f"perfect matching on C: {'pass' if cert.perfect_on_C else 'FAIL'}",
        "factor-critical components of H[D]: "
        + ("pass" if all(cert.factor_critical_components) else "FAIL"),
        f"nu = (|V| + |A| - c)/2 = {cert.formula_value}: {'pass' if cert.size_formula else 'FAIL'}",
    ]
    code = EXIT_OK if cert.passed else EXIT_VIOLATION
    if not cert.passed:
        lines.append("VIOLATION: Gallai-Edmonds certificate failed")
    return code, _doc("ge", **body), "\n".join(lines)


def render_trace(trace: ProofTrace) -> str:
    lines = [f"n = {trace.n}, k = {trace.k}, 2k - 2 = {2 * trace.k - 2}",
             f"vertex-critical: {_yes(trace.vertex_critical)}"]
    if trace.exploratory:
        lines.append("mode: exploratory" + ("" if trace.hypotheses_met else " (hypotheses not met; non-conclusive)"))
    for step in trace.steps:
        lines.append(f"[{'PASS' if step.passed else 'FAIL'}] {step.name}: {step.claim}")
        for key, value in step.values.items():
            if key in ("per_u", "certificate"):
                continue
            lines.append(f"    {key} = {json.dumps(value)}")
    lines.append(f"complement components: {len(trace.complement_components)}")
    return "\n".join(lines)


def _cmd_trace(args) -> tuple[int, dict, str]:
    G = parse_digraph(_read(args.file))
    try:
        trace = run_proof_pipeline(G, exploratory=args.exploratory)
    except HypothesisError as exc:
        doc = _doc("trace", status="hypotheses_not_met", failed=exc.failed)
        return EXIT_HYPOTHESES, doc, "hypotheses not met: " + "; ".join(exc.failed)
    except TheoremViolation as exc:
        doc = _doc("trace", status="violation", violation={"step": exc.step}, trace=exc.trace.as_dict())
        text = render_trace(exc.trace) + f"\nVIOLATION: step {exc.step} failed\n{serialize_digraph(G)}"
        return EXIT_VIOLATION, doc, text
    status = "pass" if trace.conclusive else "non_conclusive"
    text = render_trace(trace) + f"\nresult: {status.upper().replace('_', '-')}"
    return EXIT_OK, _doc("trace", status=status, trace=trace.as_dict()), text


def _cmd_verify(args) -> tuple[int, dict, str]:
    if not 0 <= args.max_n <= MAX_ORDER:
        raise UsageError(f"--max-n must lie in [0, {MAX_ORDER}]")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    report = verify_theorem_up_to(args.max_n, dedup=args.dedup, jobs=args.jobs,
                                  full_trace=args.full_trace, census=not args.hunt)
    header = f"{'n':>2} {'scanned':>9} {'vertex-critical':>16} {'in-bound':>9} {'verified':>9}"
    if args.timing:
        header += f" {'seconds':>8}"
    lines = [header]
    for o in report.orders:
        row = f"{o.n:>2} {o.scanned:>9} {o.vertex_critical:>16} {o.in_bound:>9} {o.verified:>9}"
        if args.timing:
            row += f" {o.seconds:>8.2f}"
        lines.append(row)
    for bad in report.counterexamples:
        lines.append(f"VIOLATION: n = {bad['n']}, k = {bad['k']}: {bad['reason']}\n{bad['digraph']}")
    lines.append(f"verdict: {report.verdict}")
    code = EXIT_OK if report.verdict == "PASS" else EXIT_VIOLATION
    return code, _doc("verify", report=report.as_dict(timing=args.timing)), "\n".join(lines)


def _cmd_gen(args) -> tuple[int, dict, str]:
    parts = None
    if args.parts:
        parts = tuple(parse_digraph(_read(p)) for p in args.parts)
    try:
        G = gen_instance(args.family, k=args.k, n=args.n, parts=parts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = serialize_digraph(G)
    return EXIT_OK, _doc("gen", family=args.family, digraph=text), text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit one structured JSON document")

    parser = argparse.ArgumentParser(prog="critdigraph", parents=[common],
                                     description="Dichromatic numbers, critical digraphs and "
                                                 "the disconnected-complement theorem.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chi", parents=[common], help="dichromatic number with a witness colouring")
    p.add_argument("file")
    p.set_defaults(func=_cmd_chi)

    p = sub.add_parser("critical", parents=[common], help="vertex-critical / critical check")
    p.add_argument("file")
    p.set_defaults(func=_cmd_critical)

    p = sub.add_parser("ge", parents=[common], help="Gallai-Edmonds decomposition of an undirected graph")
    p.add_argument("file")
    p.set_defaults(func=_cmd_ge)

    p = sub.add_parser("trace", parents=[common], help="replay the proof on one digraph")
    p.add_argument("file")
    p.add_argument("--exploratory", action="store_true",
                   help="run every step even if the hypotheses fail")
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("verify", parents=[common], help="exhaustive check up to a given order")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--dedup", action="store_true", help="one digraph per isomorphism class")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--full-trace", action="store_true", help="replay the proof on every in-bound instance")
    p.add_argument("--hunt", action="store_true",
                   help="skip the census; only examine digraphs that could be counterexamples")
    p.add_argument("--timing", action="store_true", help="include wall-clock times")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("gen", parents=[common], help="generate a named digraph")
    p.add_argument("--family", required=True, choices=FAMILIES)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--k", type=int)
    group.add_argument("--n", type=int)
    group.add_argument("--parts", nargs=2, metavar=("F1", "F2"))
    p.set_defaults(func=_cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    as_json = getattr(args, "json", False)
    try:
        code, doc, text = args.func(args)
    except (ParseError, PreconditionError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if as_json:
            print(_dump(_doc(args.command, error=str(exc))))
        return EXIT_USAGE
    print(_dump(doc) if as_json else text)
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
