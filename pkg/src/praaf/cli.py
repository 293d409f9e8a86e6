"""``praaf`` command-line driver.

Exit codes: 0 success (or equivalence PASS), 1 equivalence FAIL,
2 input/usage error, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from itertools import islice

from .constellation import (
    DEFAULT_MAX_ELEMENTS,
    Stance,
    WorldMode,
    acceptance,
    count_elements,
    enumerate_worlds,
    extension_probability,
    total,
)
from .core import DEFAULT_MAX_ARGS, Semantics, enumerate_extensions, format_set, sorted_sets
from .errors import CapacityError, PraafError, UsageError
from .io import export_dot, format_probability, read_praaf, serialize_praaf
from .normal_form import GroundTruth, check_equivalence, to_normal_form

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


@dataclass
class CliConfig:
    mode: WorldMode = WorldMode.RAW
    semantics: Semantics = Semantics.ADMISSIBLE
    tolerance: float = 1e-9
    max_elements: int = DEFAULT_MAX_ELEMENTS
    max_args: int = DEFAULT_MAX_ARGS
    output: str = "table"
    eta_id: str = "eta"
    exact: bool = False

    def __post_init__(self):
        self.mode = WorldMode.parse(self.mode)
        self.semantics = Semantics.parse(self.semantics)
        if not self.tolerance > 0:
            raise UsageError("--tol must be positive")
        if self.max_elements < 1 or self.max_args < 1:
            raise UsageError("caps must be at least 1")
        if self.output not in ("table", "csv", "jsonl"):
            raise UsageError(f"unknown output format {self.output!r}")

    @property
    def caps(self) -> dict:
        return {"max_elements": self.max_elements, "max_args": self.max_args}

    @property
    def eta(self) -> GroundTruth:
        return GroundTruth(self.eta_id)


# -- output -----------------------------------------------------------------------


def _prob_value(p):
    return float(format_probability(p))


def _sets_text(sets) -> str:
    return ", ".join(format_set(s) for s in sorted_sets(sets))


def emit(rows: list[dict], fmt: str, out) -> None:
    """Write rows (dicts with identical keys) as an aligned table, CSV or JSON lines."""
    if not rows:
        return
    if fmt == "jsonl":
        for row in rows:
            out.write(json.dumps(row) + "\n")
        return
    columns = list(rows[0])
    cells = [[_cell(row.get(c)) for c in columns] for row in rows]
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(cells)
        return
    widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(columns)]
    for line in [columns] + cells:
        out.write("  ".join(v.ljust(w) for v, w in zip(line, widths)).rstrip() + "\n")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "T" if value else "F"
    if isinstance(value, float):
        return format_probability(value)
    if isinstance(value, list):
        return ", ".join(format_set(s) for s in value)
    return str(value)


# -- subcommands ------------------------------------------------------------------


def cmd_worlds(args, config: CliConfig, out) -> int:
    praaf = read_praaf(args.file, exact=config.exact)
    rows = []
    probs = []
    for world in enumerate_worlds(praaf, config.mode, config.max_elements):
        probs.append(world.probability)
        row = {
            "index": world.index,
            "world": " & ".join(world.literals()) or "(certain)",
            "probability": _prob_value(world.probability),
            "proper": world.proper,
        }
        if args.extensions:
            exts = enumerate_extensions(world.realized, config.semantics, config.max_args)
            row["extensions"] = [sorted(s) for s in sorted_sets(exts)]
        rows.append(row)
    if config.output == "jsonl":
        rows.append({"total": _prob_value(total(probs))})
        emit(rows, "jsonl", out)
    else:
        rows.append({"index": "total", "probability": _prob_value(total(probs))})
        emit(rows, config.output, out)
    return EXIT_OK


def cmd_extensions(args, config: CliConfig, out) -> int:
    praaf = read_praaf(args.file, exact=config.exact)
    if args.world is None:
        if count_elements(praaf):
            raise UsageError("input is probabilistic; select a world with --world <index>")
        aaf = praaf.structure()
    else:
        worlds = enumerate_worlds(praaf, config.mode, config.max_elements)
        world = next(islice(worlds, args.world, None), None) if args.world >= 0 else None
        if world is None:
            raise UsageError(f"no world with index {args.world}")
        aaf = world.realized
    exts = sorted_sets(enumerate_extensions(aaf, config.semantics, config.max_args))
    if config.output == "jsonl":
        emit([{"extension": sorted(s)} for s in exts], "jsonl", out)
    else:
        emit([{"extension": format_set(s)} for s in exts], config.output, out)
    return EXIT_OK


def _parse_set(text: str) -> frozenset:
    return frozenset(t.strip() for t in text.split(",") if t.strip())


def _emit_probability(label: dict, p, config: CliConfig, out) -> None:
    if config.output == "table":
        out.write(format_probability(p) + "\n")
    else:
        emit([{**label, "probability": _prob_value(p)}], config.output, out)


def cmd_prob(args, config: CliConfig, out) -> int:
    praaf = read_praaf(args.file, exact=config.exact)
    s = _parse_set(args.set)
    p = extension_probability(s, config.semantics, praaf, config.mode, **config.caps)
    label = {"set": format_set(s), "semantics": str(config.semantics), "mode": str(config.mode)}
    _emit_probability(label, p, config, out)
    return EXIT_OK


def cmd_accept(args, config: CliConfig, out) -> int:
    praaf = read_praaf(args.file, exact=config.exact)
    result = acceptance(args.arg, config.semantics, args.stance, praaf, config.mode, **config.caps)
    label = {
        "argument": args.arg,
        "stance": str(Stance.parse(args.stance).value),
        "semantics": str(config.semantics),
        "mode": str(config.mode),
    }
    _emit_probability(label, result.probability, config, out)
    if result.vacuous:
        print(
            f"note: {format_probability(result.vacuous)} of the skeptical mass comes from "
            f"worlds with no {config.semantics} extension",
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_transform(args, config: CliConfig, out) -> int:
    praaf = read_praaf(args.file, exact=config.exact)
    cert = to_normal_form(praaf, config.eta)
    document = serialize_praaf(cert.transformed)
    if args.output_file:
        with open(args.output_file, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(document)
        report = out
    else:
        out.write(document)
        report = sys.stderr
    if not cert.mapping:
        print("no probabilistic arguments; output is identical to the input", file=report)
        return EXIT_OK
    rows = [
        {
            "argument": m.argument,
            "p": _prob_value(m.original_p),
            "attack": f"{m.attack[0]}->{m.attack[1]}",
            "attack_p": _prob_value(m.attack_p),
        }
        for m in cert.mapping
    ]
    emit(rows, config.output, report)
    return EXIT_OK


def cmd_equiv(args, config: CliConfig, out) -> int:
    left = read_praaf(args.file_a, exact=config.exact)
    right = read_praaf(args.file_b, exact=config.exact)
    report = check_equivalence(
        left, right, config.eta, config.semantics, config.tolerance, config.mode, **config.caps
    )
    verdict = "PASS" if report.passed else "FAIL"
    out.write(
        f"{verdict} semantics={config.semantics} mode={config.mode} tol={config.tolerance:g} "
        f"extensions={len(report.left)}/{len(report.right)}\n"
    )
    if not report.passed:
        rows = [
            {
                "extension": format_set(d.extension),
                "left": _prob_value(d.left),
                "right": _prob_value(d.right),
            }
            for d in report.discrepancies
        ]
        emit(rows, config.output, out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_dot(args, config: CliConfig, out) -> int:
    praaf = read_praaf(args.file, exact=config.exact)
    text = export_dot(praaf, eta=config.eta_id)
    if args.output_file:
        with open(args.output_file, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--mode", choices=[m.value for m in WorldMode], default="raw")
    g.add_argument("--semantics", choices=[s.value for s in Semantics], default="admissible")
    g.add_argument("--tol", type=float, default=1e-9, help="equivalence tolerance")
    g.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS,
                   help="cap on probabilistic elements (2^N worlds)")
    g.add_argument("--max-args", type=int, default=DEFAULT_MAX_ARGS,
                   help="cap on arguments per realized framework")
    g.add_argument("--output", choices=["table", "csv", "jsonl"], default="table")
    g.add_argument("--eta", default="eta", help="id of the ground-truth argument")
    g.add_argument("--exact", action="store_true", help="rational arithmetic instead of floats")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="praaf", description="Exact inference for constellation probabilistic argumentation."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_common()]

    p = sub.add_parser("worlds", parents=common, help="list possible worlds")
    p.add_argument("file")
    p.add_argument("--extensions", action="store_true", help="add each world's extensions")
    p.set_defaults(handler=cmd_worlds)

    p = sub.add_parser("extensions", parents=common, help="extensions of an AAF or one world")
    p.add_argument("file")
    p.add_argument("--world", type=int, help="index of the world to realize")
    p.set_defaults(handler=cmd_extensions)

    p = sub.add_parser("prob", parents=common, help="probability that a set is an extension")
    p.add_argument("file")
    p.add_argument("--set", required=True, help='comma-separated ids; "" for the empty set')
    p.set_defaults(handler=cmd_prob)

    p = sub.add_parser("accept", parents=common, help="acceptance probability of an argument")
    p.add_argument("file")
    p.add_argument("--arg", required=True)
    p.add_argument("--stance", choices=[s.value for s in Stance], default="credulous")
    p.set_defaults(handler=cmd_accept)

    p = sub.add_parser("transform", parents=common, help="rewrite into probabilistic attack normal form")
    p.add_argument("file")
    p.add_argument("-o", dest="output_file")
    p.set_defaults(handler=cmd_transform)

    p = sub.add_parser("equiv", parents=common, help="check a PrAAF against its normal form")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(handler=cmd_equiv)

    p = sub.add_parser("dot", parents=common, help="Graphviz export")
    p.add_argument("file")
    p.add_argument("-o", dest="output_file")
    p.set_defaults(handler=cmd_dot)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        config = CliConfig(
            mode=args.mode,
            semantics=args.semantics,
            tolerance=args.tol,
            max_elements=args.max_elements,
            max_args=args.max_args,
            output=args.output,
            eta_id=args.eta,
            exact=args.exact,
        )
        return args.handler(args, config, out)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (PraafError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
