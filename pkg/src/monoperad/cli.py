"""Command-line front end.

Exit status: 0 on success, 1 when a check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from importlib import resources
from pathlib import Path

from .bijections import object_from_json, object_to_word, word_to_object
from .families import Family, enumerate_family, hilbert_prefix, parse_family
from .monoid import parse_monoid
from .presentations import PresentationReport, catalog, verify_presentation, with_rules
from .rewriting import StepCapExceeded, normalize_trace, parse_rules
from .trees import format_tree, parse_tree
from .words import check_axioms, format_letters, parse_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump_json(data: object) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


def _table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths).rstrip())
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Expected sequences


def load_expected(path: str | None) -> dict[str, list[int]]:
    """Sequences keyed by family name; ``None`` selects the bundled fixture file."""
    if path is None:
        text = resources.files("monoperad").joinpath("data/expected.json").read_text(encoding="utf-8")
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad expectation file: {exc}") from None
    return data.get("sequences", data)


def compare_counts(found: Sequence[int], expected: Sequence[int]) -> str | None:
    """Message naming the first arity where the two sequences differ, or None."""
    for n, (a, b) in enumerate(zip(found, expected), start=1):
        if a != b:
            return f"first diverging arity {n}: found {a}, expected {b}"
    return None


def _check_expect(args: argparse.Namespace, family: Family, counts: Sequence[int]) -> tuple[int, dict]:
    if args.expect is False:
        return EXIT_OK, {}
    table = load_expected(None if args.expect is True else args.expect)
    if str(family) not in table:
        raise UsageError(f"no expected sequence for {family}")
    mismatch = compare_counts(counts, table[str(family)])
    return (EXIT_FAIL if mismatch else EXIT_OK), {"expected": table[str(family)], "mismatch": mismatch}


# ---------------------------------------------------------------------------
# Subcommands


def cmd_enumerate(args: argparse.Namespace) -> tuple[int, str]:
    family = parse_family(args.family)
    table = enumerate_family(family, args.max_arity)
    status, extra = _check_expect(args, family, table.counts)
    if args.format == "json":
        return status, _dump_json(table.to_json(counts_only=args.counts_only) | extra)
    if args.counts_only:
        rows = [(n, c) for n, c in enumerate(table.counts, start=1)]
        out = _table(("n", "count"), rows)
    else:
        rows = [(n, len(level), " ".join(format_letters(w.letters) for w in level))
                for n, level in enumerate(table.levels, start=1)]
        out = _table(("n", "count", "elements"), rows)
    return status, f"family {family}\n{out}" + _expect_lines(extra)


def _expect_lines(extra: dict) -> str:
    if not extra:
        return ""
    return "\n" + (extra["mismatch"] or "matches expected sequence")


def cmd_hilbert(args: argparse.Namespace) -> tuple[int, str]:
    family = parse_family(args.family)
    counts = hilbert_prefix(family, args.max_arity)
    status, extra = _check_expect(args, family, counts)
    if args.format == "json":
        return status, _dump_json({"family": str(family), "coefficients": list(counts)} | extra)
    series = " + ".join(f"{c} t^{n}" for n, c in enumerate(counts, start=1))
    return status, f"{family}: {series} + ..." + _expect_lines(extra)


def _presentation(args: argparse.Namespace):
    try:
        p = catalog(args.name, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.rules_file:
        try:
            text = Path(args.rules_file).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.rules_file}: {exc}") from None
        p = with_rules(p, parse_rules(text))
    return p


def _render_report(r: PresentationReport) -> str:
    def mark(v: bool | None) -> str:
        return "n/a" if v is None else ("pass" if v else "FAIL")

    lines = [
        f"presentation {r.name} (arity <= {r.max_arity}, {r.method})",
        f"  soundness           {mark(r.soundness.ok)}",
        f"  bounded termination {mark(r.termination_bounded)}",
        f"  measure             {mark(r.measure_ok)}",
        f"  counts              {mark(r.counts_match)}",
    ]
    if r.soundness.failing is not None:
        lhs, rhs = r.soundness.failing
        lines.append(f"  failing relation    {format_tree(lhs)} = {format_tree(rhs)}")
    if r.cycle is not None:
        lines.append("  cycle               " + " -> ".join(format_tree(t) for t in r.cycle))
    if r.measure_counterexample is not None:
        a, b = r.measure_counterexample
        lines.append(f"  measure violated by {format_tree(a)} -> {format_tree(b)}")
    if r.notes:
        lines.append(f"  notes               {r.notes}")
    rows = [(c.n, c.found, c.expected, "" if c.match else "MISMATCH") for c in r.counts]
    lines.append(_table(("n", "normal forms", "dimension", ""), rows))
    lines.append("verified" if r.verified else "NOT verified")
    return "\n".join(lines)


def cmd_verify(args: argparse.Namespace) -> tuple[int, str]:
    p = _presentation(args)
    report = verify_presentation(p, args.max_arity)
    status = EXIT_OK if report.verified else EXIT_FAIL
    if args.format == "json":
        data = report.to_json()
        data["seconds"] = round(report.seconds, 3)
        return status, _dump_json(data)
    return status, _render_report(report)


def cmd_axioms(args: argparse.Namespace) -> tuple[int, str]:
    spec = parse_monoid(args.monoid)
    report = check_axioms(
        spec, arity_cap=args.arity_cap, value_cap=args.value_cap, samples=args.samples, seed=args.seed
    )
    status = EXIT_OK if report.ok else EXIT_FAIL
    if args.format == "json":
        return status, _dump_json({
            "monoid": spec.name,
            "ok": report.ok,
            "cases": report.cases,
            "failures": [{"law": f.law, "detail": f.detail} for f in report.failures[:20]],
            "seed": args.seed,
        })
    rows = [(law, count) for law, count in sorted(report.cases.items())]
    lines = [f"operad laws on words over {spec.name} (seed {args.seed})", _table(("law", "cases"), rows)]
    lines += [f"FAIL {f.law}: {f.detail}" for f in report.failures[:20]]
    lines.append("pass" if report.ok else f"{len(report.failures)} failures")
    return status, "\n".join(lines)


def cmd_bijection(args: argparse.Namespace) -> tuple[int, str]:
    family = parse_family(args.family)
    if args.inverse:
        if args.object is None:
            raise UsageError("--inverse needs --object")
        try:
            data = json.loads(args.object)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad --object JSON: {exc}") from None
        obj = object_from_json(family, data)
        word = object_to_word(family, obj)
    else:
        if args.word is None:
            raise UsageError("--word is required (or --inverse with --object)")
        word = parse_word(args.word, family.spec)
        obj = word_to_object(family, word)
    rendered = obj.to_json()  # type: ignore[attr-defined]
    if args.format == "json":
        return EXIT_OK, _dump_json({"family": str(family), "word": format_letters(word.letters), "object": rendered})
    return EXIT_OK, f"{format_letters(word.letters)} <-> {json.dumps(rendered)}"


def cmd_rewrite(args: argparse.Namespace) -> tuple[int, str]:
    if args.rules_file:
        try:
            system = parse_rules(Path(args.rules_file).read_text(encoding="utf-8"))
        except OSError as exc:
            raise UsageError(f"cannot read {args.rules_file}: {exc}") from None
    elif args.presentation:
        try:
            system = catalog(args.presentation).orientation
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if system is None:
            raise UsageError(f"presentation {args.presentation} has no orientation")
    else:
        raise UsageError("rewrite needs --presentation or --rules-file")
    tree = parse_tree(args.tree)
    try:
        trace = normalize_trace(tree, system, step_cap=args.step_cap)
    except StepCapExceeded as exc:
        return EXIT_FAIL, f"step cap exceeded: {exc}"
    terms = [format_tree(t) for t in trace]
    if args.format == "json":
        data: dict = {"start": terms[0], "normal_form": terms[-1], "steps": len(terms) - 1}
        if args.trace:
            data["trace"] = terms
        return EXIT_OK, _dump_json(data)
    if args.trace:
        return EXIT_OK, "\n".join(f"{n}: {t}" for n, t in enumerate(terms))
    return EXIT_OK, terms[-1]


# ---------------------------------------------------------------------------
# Parser


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--seed", type=_nonnegative, default=0)

    parser = argparse.ArgumentParser(prog="monoperad", description="Operads of words over monoids.")
    sub = parser.add_subparsers(dest="command", required=True)

    def expect_flag(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--expect", nargs="?", const=True, default=False, metavar="FILE",
            help="compare counts with an expected-sequence file (bundled fixtures when no file is given)",
        )

    p = sub.add_parser("enumerate", parents=[common], help="list family elements by arity")
    p.add_argument("--family", required=True)
    p.add_argument("--max-arity", type=_positive, default=6)
    p.add_argument("--counts-only", action="store_true")
    expect_flag(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("hilbert", parents=[common], help="first coefficients of the Hilbert series")
    p.add_argument("--family", required=True)
    p.add_argument("--max-arity", type=_positive, default=6)
    expect_flag(p)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("verify-presentation", parents=[common], help="check a presentation by rewriting")
    p.add_argument("--name", required=True)
    p.add_argument("--k", type=_nonnegative)
    p.add_argument("--max-arity", type=_positive, default=6)
    p.add_argument("--rules-file", help="replace the relations by the oriented rules of this file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check-axioms", parents=[common], help="check the operad laws on words")
    p.add_argument("--monoid", required=True, help="add, mult or cyclic:<L>")
    p.add_argument("--arity-cap", type=_positive, default=3)
    p.add_argument("--value-cap", type=_nonnegative, default=2)
    p.add_argument("--samples", type=_nonnegative, default=10_000)
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("bijection", parents=[common], help="word <-> combinatorial object")
    p.add_argument("--family", required=True)
    p.add_argument("--word")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--object", help="JSON rendering of the object (with --inverse)")
    p.set_defaults(func=cmd_bijection)

    p = sub.add_parser("rewrite", parents=[common], help="normalize a tree")
    p.add_argument("--presentation")
    p.add_argument("--rules-file")
    p.add_argument("--tree", required=True)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--step-cap", type=_positive, default=10_000)
    p.set_defaults(func=cmd_rewrite)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status, text = args.func(args)
    except (UsageError, ValueError, TypeError, KeyError, IndexError) as exc:
        print(f"monoperad: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
