"""Command-line front end: generate weighted class listings, run the verifier.

Coefficients are always rendered as exact fractions "p/q" in lowest
terms; output for fixed flags is byte-deterministic (classes are listed
in canonical key order), whatever the worker count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import verify as verification
from .canon import LinearCombination
from .graph import GraphError, Multigraph
from .recursion import BetaEngine, BlockLimits

_FAMILY_BY_FLAG = {
    "biconn": "biconn",
    "conn": "conn",
    "2edge": "two_edge",
    "2edge-cycles": "two_edge_cycles",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="autgraph",
        description="Generate multigraph isomorphism classes weighted by 1/|Aut|.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    generate = subparsers.add_parser(
        "generate", help="compute one family value and print its classes"
    )
    generate.add_argument("--family", required=True, choices=sorted(_FAMILY_BY_FLAG))
    generate.add_argument("--n", type=int, required=True, help="vertex count")
    generate.add_argument("--k", type=int, required=True, help="cyclomatic number")
    generate.add_argument("--s", type=int, default=0, help="external leg count")
    generate.add_argument(
        "--min-block-n", type=int, default=None, help="least vertex count per block"
    )
    generate.add_argument(
        "--min-block-k", type=int, default=None, help="least cyclomatic number per block"
    )
    generate.add_argument("--format", required=True, choices=("json", "dot", "table"))
    generate.add_argument("--cache", default=None, metavar="DIR", help="on-disk memo cache")
    generate.add_argument("--jobs", type=int, default=1, help="worker processes")

    verify = subparsers.add_parser("verify", help="check families against brute force")
    verify.add_argument("--max-order", type=int, required=True, help="bound on n+k")
    verify.add_argument("--s", type=int, default=0, help="check leg counts 0..S")
    verify.add_argument("--family", default="all", choices=["all", *sorted(_FAMILY_BY_FLAG)])
    verify.add_argument("--format", default="table", choices=("table", "json"))
    verify.add_argument("--jobs", type=int, default=1, help="worker processes")
    return parser


# ----------------------------------------------------------------------
# rendering

def _coefficient_str(coeff) -> str:
    return f"{coeff.numerator}/{coeff.denominator}"


def _edges_str(g: Multigraph) -> str:
    return " ".join(f"{u}-{v}" for u, v in g.edges) if g.edges else "-"


def _legs_str(g: Multigraph) -> str:
    return " ".join(f"{label}@{v}" for label, v in g.legs) if g.legs else "-"


def render_json(combo: LinearCombination) -> str:
    records = [
        {"graph": rep.to_json_dict(), "coefficient": _coefficient_str(coeff), "key": key.hex()}
        for key, coeff, rep in combo.terms()
    ]
    return json.dumps(records, indent=2) + "\n"


def render_table(combo: LinearCombination) -> str:
    rows = [
        (_coefficient_str(coeff), str(rep.n), _edges_str(rep), _legs_str(rep))
        for _, coeff, rep in combo.terms()
    ]
    header = ("coefficient", "n", "edges", "legs")
    widths = [
        max(len(header[col]), *(len(row[col]) for row in rows)) if rows else len(header[col])
        for col in range(4)
    ]
    lines = [
        "  ".join(header[col].ljust(widths[col]) for col in range(4)).rstrip(),
        "  ".join("-" * widths[col] for col in range(4)).rstrip(),
    ]
    for row in rows:
        lines.append("  ".join(row[col].ljust(widths[col]) for col in range(4)).rstrip())
    return "\n".join(lines) + "\n"


def render_dot(combo: LinearCombination) -> str:
    lines = []
    for index, (key, coeff, rep) in enumerate(combo.terms()):
        coefficient = _coefficient_str(coeff)
        lines.append(f"// class {index}: coefficient {coefficient}, key {key.hex()}")
        lines.append(f"graph class_{index} {{")
        lines.append(f'  label="{coefficient}";')
        lines.append("  node [shape=circle];")
        for v in range(1, rep.n + 1):
            lines.append(f"  v{index}_{v};")
        for u, v in rep.edges:
            lines.append(f"  v{index}_{u} -- v{index}_{v};")
        for label, v in rep.legs:
            lines.append(f'  leg{index}_{label} [shape=point, xlabel="{label}"];')
            lines.append(f"  v{index}_{v} -- leg{index}_{label};")
        lines.append("}")
        lines.append("")
    return "\n".join(lines)


_RENDERERS = {"json": render_json, "table": render_table, "dot": render_dot}


# ----------------------------------------------------------------------
# subcommands

def cmd_generate(args, parser: argparse.ArgumentParser) -> int:
    if (args.min_block_n is not None or args.min_block_k is not None) and args.family not in (
        "2edge",
        "2edge-cycles",
    ):
        parser.error("--min-block-n/--min-block-k apply only to 2edge and 2edge-cycles")
    options = None
    if args.min_block_n is not None or args.min_block_k is not None:
        options = BlockLimits(
            min_n=args.min_block_n if args.min_block_n is not None else 2,
            min_k=args.min_block_k if args.min_block_k is not None else 1,
        )
    cache_dir = os.environ.get("AUTGRAPH_CACHE") or args.cache
    family = _FAMILY_BY_FLAG[args.family]
    with BetaEngine(cache_dir=cache_dir, jobs=args.jobs) as engine:
        if family == "biconn":
            combo = engine.beta_biconn(args.n, args.k, args.s)
        elif family == "conn":
            combo = engine.beta_conn(args.n, args.k, args.s)
        elif family == "two_edge":
            combo = engine.beta_two_edge(args.n, args.k, args.s, options)
        else:
            combo = engine.beta_two_edge_cycles(args.n, args.k, args.s, options)
    sys.stdout.write(_RENDERERS[args.format](combo))
    return 0


def cmd_verify(args, parser: argparse.ArgumentParser) -> int:
    max_order = args.max_order
    if max_order > verification.DEFAULT_MAX_ORDER:
        raise GraphError(
            f"--max-order {max_order} exceeds the enumeration bound "
            f"{verification.DEFAULT_MAX_ORDER}"
        )
    if max_order < 2:
        raise GraphError("--max-order must be at least 2")
    if args.s > verification.MAX_LEGS:
        raise GraphError(f"--s must be at most {verification.MAX_LEGS}")
    families = (
        list(_FAMILY_BY_FLAG.values())
        if args.family == "all"
        else [_FAMILY_BY_FLAG[args.family]]
    )
    reports = []
    with BetaEngine(jobs=args.jobs) as engine:
        for family in families:
            needs_cycle = family in ("two_edge", "two_edge_cycles")
            for s in range(args.s + 1):
                for n in range(2, max_order + 1):
                    for k in range(1 if needs_cycle else 0, max_order - n + 1):
                        reports.append(
                            verification.verify_beta(family, n, k, s, engine=engine)
                        )
        lemmas = verification.verify_lemmas(bound=min(max(max_order, 3), 5), engine=engine)
    all_passed = all(report.passed for report in reports) and lemmas.passed
    if args.format == "json":
        payload = {
            "passed": all_passed,
            "beta": [report.to_json_dict() for report in reports],
            "lemmas": lemmas.to_json_dict(),
        }
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        for report in reports:
            sys.stdout.write(report.to_text() + "\n")
        sys.stdout.write(lemmas.to_text() + "\n")
        sys.stdout.write(f"overall: {'pass' if all_passed else 'FAIL'}\n")
    return 0 if all_passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "generate":
            return cmd_generate(args, parser)
        return cmd_verify(args, parser)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
