"""Command-line entry point: ingest -> encode -> mine -> rules -> report.

Defaults reproduce the published parameterization (support 0.03, confidence
0.60, lift 1.50); --minority-preset switches support to 0.02. Diagnostics go
to stderr, data to stdout or --output, so commands compose in pipelines.

Exit codes: 0 success (or "equivalent" for verify), 1 data error or
divergence, 2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import bench, ingest, verify
from .apriori import MinerConfig, mine_apriori
from .fpgrowth import mine_fpgrowth
from .model import ItemDictionary, TransactionDb, encode_rows
from .rules import CategoryConfig, Thresholds, categorize, generate_rules, rule_record
from .verify import OracleLimits, brute_force_frequent

DEFAULT_MIN_SUPPORT = 0.03
DEFAULT_MIN_CONFIDENCE = 0.60
DEFAULT_MIN_LIFT = 1.50
MINORITY_PRESET_MIN_SUPPORT = 0.02


class ConfigError(Exception):
    pass


class DataError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="electmine", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p):
        p.add_argument("--input", required=True, help="survey CSV path")
        p.add_argument("--schema", required=True, help="YAML schema path")
        p.add_argument("--output", default=None, help="write primary output here instead of stdout")
        p.add_argument("--format", choices=("table", "csv", "json"), default="table")
        p.add_argument("--threads", type=int, default=0,
                       help="parallelism cap, 0 = auto (current build runs single-threaded)")

    def add_thresholds(p):
        p.add_argument("--min-support", type=float, default=DEFAULT_MIN_SUPPORT)
        p.add_argument("--min-confidence", type=float, default=DEFAULT_MIN_CONFIDENCE)
        p.add_argument("--min-lift", type=float, default=DEFAULT_MIN_LIFT)
        p.add_argument("--strict-lift", action="store_true",
                       help="require lift strictly above the threshold")
        p.add_argument("--minority-preset", action="store_true",
                       help="minority-analysis preset: min-support 0.02")

    p = sub.add_parser("ingest", help="load, clean, and select survey columns")
    add_io(p)
    p.add_argument("--report", action="store_true", help="print the clean report to stderr")

    p = sub.add_parser("mine", help="mine frequent itemsets")
    add_io(p)
    p.add_argument("--algorithm", choices=("apriori", "fpgrowth", "oracle"), default="apriori")
    p.add_argument("--min-support", type=float, default=DEFAULT_MIN_SUPPORT)
    p.add_argument("--max-len", type=int, default=None)

    p = sub.add_parser("rules", help="mine, generate, and categorize association rules")
    add_io(p)
    add_thresholds(p)
    p.add_argument("--algorithm", choices=("apriori", "fpgrowth"), default="apriori")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--top", type=int, default=None, help="show only the top-k rules by lift")
    p.add_argument("--tags", default=None, help="comma list; keep only rules carrying all of them")

    p = sub.add_parser("compare", help="run both miners and report a comparison table")
    add_io(p)
    add_thresholds(p)
    p.add_argument("--algorithm", default="apriori,fpgrowth",
                   help="comma list of algorithms to compare")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--repeat", type=int, default=1, help="repeat runs, report minimum time")

    p = sub.add_parser("verify", help="cross-check apriori, fpgrowth, and the brute-force oracle")
    add_io(p)
    add_thresholds(p)
    p.add_argument("--max-oracle-items", type=int, default=20)

    return parser


def thresholds_from(args) -> Thresholds:
    min_support = MINORITY_PRESET_MIN_SUPPORT if args.minority_preset else args.min_support
    try:
        return Thresholds(
            min_support=min_support,
            min_confidence=args.min_confidence,
            min_lift=args.min_lift,
            strict_lift=args.strict_lift,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _load_pipeline(args) -> tuple[ItemDictionary, TransactionDb, ingest.CleanReport]:
    try:
        schema = ingest.load_schema(args.schema)
    except FileNotFoundError as exc:
        raise DataError(f"schema file not found: {args.schema}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"bad schema {args.schema}: {exc}") from exc
    try:
        loaded = ingest.load_csv(args.input, schema)
    except FileNotFoundError as exc:
        raise DataError(f"input file not found: {args.input}") from exc
    except ValueError as exc:
        raise DataError(str(exc)) from exc
    if loaded.ignored_columns:
        print(
            f"warning: {len(loaded.ignored_columns)} header columns not in schema, ignored",
            file=sys.stderr,
        )
    rows, report = ingest.clean(loaded.rows, schema, schema.consistency_rules)
    keep = schema.keep or tuple(c.name for c in schema.columns if c.kind != ingest.DROP)
    try:
        rows = ingest.select_features(rows, keep, schema)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    dictionary, db = encode_rows(rows, keep)
    return dictionary, db, report


def _emit(text: str, args) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _validate_support(value: float) -> None:
    if not 0.0 < value <= 1.0:
        raise ConfigError("min-support must be in (0,1]")


def cmd_ingest(args) -> int:
    dictionary, db, report = _load_pipeline(args)
    if args.report:
        print(report.as_text(), file=sys.stderr)
    lines = []
    for t in db.transactions:
        lines.append(";".join(dictionary.label_of(i) for i in t))
    _emit("\n".join(lines) + ("\n" if lines else ""), args)
    return 0


def cmd_mine(args) -> int:
    _validate_support(args.min_support)
    if args.max_len is not None and args.max_len < 1:
        raise ConfigError("max-len must be >= 1")
    dictionary, db, _ = _load_pipeline(args)
    if db.n_transactions == 0:
        raise DataError("empty transaction database")
    if args.algorithm == "apriori":
        frequent = mine_apriori(db, MinerConfig(args.min_support, args.max_len))
    elif args.algorithm == "fpgrowth":
        frequent = mine_fpgrowth(db, args.min_support)
        if args.max_len is not None:
            frequent = [fs for fs in frequent if len(fs.items) <= args.max_len]
    else:
        try:
            frequent = brute_force_frequent(db, args.min_support)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if args.max_len is not None:
            frequent = [fs for fs in frequent if len(fs.items) <= args.max_len]

    if args.format == "json":
        lines = [
            json.dumps(
                {
                    "items": [dictionary.label_of(i) for i in fs.items],
                    "count": fs.count,
                    "support": fs.support,
                }
            )
            for fs in frequent
        ]
        _emit("\n".join(lines) + ("\n" if lines else ""), args)
    elif args.format == "csv":
        import io

        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["items", "count", "support"])
        for fs in frequent:
            writer.writerow([";".join(dictionary.label_of(i) for i in fs.items), fs.count, repr(fs.support)])
        _emit(buf.getvalue(), args)
    else:
        rows = [["items", "count", "support"]]
        for fs in frequent:
            rows.append([";".join(dictionary.label_of(i) for i in fs.items), str(fs.count), f"{fs.support:.4f}"])
        _emit(_table(rows), args)
    return 0


def _table(rows: list[list[str]]) -> str:
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows) + "\n"


def cmd_rules(args) -> int:
    thresholds = thresholds_from(args)
    dictionary, db, _ = _load_pipeline(args)
    if db.n_transactions == 0:
        raise DataError("empty transaction database")
    if args.algorithm == "apriori":
        frequent = mine_apriori(db, MinerConfig(thresholds.min_support, args.max_len))
    else:
        frequent = mine_fpgrowth(db, thresholds.min_support)
        if args.max_len is not None:
            frequent = [fs for fs in frequent if len(fs.items) <= args.max_len]
    rules = categorize(generate_rules(frequent, db, thresholds), dictionary, CategoryConfig())
    if args.tags:
        wanted = {t.strip() for t in args.tags.split(",") if t.strip()}
        rules = [r for r in rules if wanted <= r.tags]
    if args.top is not None:
        rules = rules[: args.top]

    records = [rule_record(r, dictionary) for r in rules]
    if args.format == "json":
        lines = [json.dumps(rec) for rec in records]
        _emit("\n".join(lines) + ("\n" if lines else ""), args)
    elif args.format == "csv":
        import io

        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(
            ["antecedent", "consequent", "support", "confidence", "lift",
             "support_pct", "confidence_pct", "lift_display", "tags"]
        )
        for rec in records:
            writer.writerow(
                [";".join(rec["antecedent"]), ";".join(rec["consequent"]),
                 repr(rec["support"]), repr(rec["confidence"]), repr(rec["lift"]),
                 rec["support_pct"], rec["confidence_pct"], rec["lift_display"],
                 ";".join(rec["tags"])]
            )
        _emit(buf.getvalue(), args)
    else:
        rows = [["antecedent", "consequent", "support%", "confidence%", "lift", "tags"]]
        for rec in records:
            rows.append(
                [", ".join(rec["antecedent"]), ", ".join(rec["consequent"]),
                 rec["support_pct"], rec["confidence_pct"], rec["lift_display"],
                 ",".join(rec["tags"])]
            )
        _emit(_table(rows), args)
    return 0


def cmd_compare(args) -> int:
    thresholds = thresholds_from(args)
    algorithms = tuple(a.strip() for a in args.algorithm.split(",") if a.strip())
    unknown = [a for a in algorithms if a not in bench.MINERS]
    if unknown or not algorithms:
        raise ConfigError(f"unknown algorithm: {unknown[0] if unknown else '(none)'}")
    if args.repeat < 1:
        raise ConfigError("repeat must be >= 1")
    dictionary, db, _ = _load_pipeline(args)
    if db.n_transactions == 0:
        raise DataError("empty transaction database")
    report = bench.compare(
        db, dictionary, thresholds, CategoryConfig(),
        algorithms=algorithms, max_itemset_len=args.max_len, repeat=args.repeat,
    )
    if args.format == "json":
        _emit(report.as_json() + "\n", args)
    elif args.format == "csv":
        _emit(report.as_csv(), args)
    else:
        _emit(report.as_text() + "\n", args)
    return 0


def cmd_verify(args) -> int:
    thresholds = thresholds_from(args)
    _validate_support(thresholds.min_support)
    _, db, _ = _load_pipeline(args)
    if db.n_transactions == 0:
        raise DataError("empty transaction database")
    limits = OracleLimits(max_items=min(args.max_oracle_items, 24))
    if db.n_items > limits.max_items or db.n_transactions > limits.max_transactions:
        raise ConfigError("oracle limits exceeded")
    report = verify.check_equivalence(db, thresholds.min_support, thresholds, limits)
    _emit(report.as_text() + "\n", args)
    return 0 if report.equivalent else 1


COMMANDS = {
    "ingest": cmd_ingest,
    "mine": cmd_mine,
    "rules": cmd_rules,
    "compare": cmd_compare,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
