"""Side-by-side algorithm comparison: rule counts, category counts, metric
averages, and wall time per miner on identical inputs.

With equal thresholds the two miners are semantically equivalent, so every
column except wall time must match; the report annotation spells this out so
nobody "fixes" the implementation to reproduce asymmetric published counts.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .apriori import MinerConfig, mine_apriori
from .fpgrowth import mine_fpgrowth
from .model import FrequentItemset, ItemDictionary, TransactionDb
from .rules import EQUITY_TAG, MINORITY_TAG, CategoryConfig, Thresholds, categorize, generate_rules

PARITY_NOTE = (
    "note: with equal thresholds the algorithms are exact equivalents; "
    "identical rule counts and averages are the expected outcome."
)

MINERS: dict[str, Callable[[TransactionDb, float, int | None], list[FrequentItemset]]] = {
    "apriori": lambda db, ms, max_len: mine_apriori(db, MinerConfig(ms, max_len)),
    "fpgrowth": lambda db, ms, max_len: [
        fs for fs in mine_fpgrowth(db, ms) if max_len is None or len(fs.items) <= max_len
    ],
}


def time_run(thunk: Callable[[], object]) -> float:
    """Monotonic wall seconds of one call, millisecond resolution."""
    start = time.perf_counter()
    thunk()
    return round(time.perf_counter() - start, 3)


@dataclass(frozen=True)
class AlgorithmRow:
    algorithm: str
    total_rules: int = 0
    equity_rules: int = 0
    minority_rules: int = 0
    avg_support: float | None = None
    avg_confidence: float | None = None
    avg_lift: float | None = None
    wall_seconds: float = 0.0
    error: str | None = None


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[AlgorithmRow, ...]
    note: str = PARITY_NOTE

    def as_text(self) -> str:
        headers = [
            "algorithm", "rules", "equity", "minority",
            "avg_support", "avg_confidence", "avg_lift", "time_s",
        ]
        table = [headers]
        for row in self.rows:
            if row.error is not None:
                table.append([row.algorithm, f"error: {row.error}", "", "", "", "", "", ""])
                continue
            table.append([
                row.algorithm,
                str(row.total_rules),
                str(row.equity_rules),
                str(row.minority_rules),
                "-" if row.avg_support is None else f"{row.avg_support:.4f}",
                "-" if row.avg_confidence is None else f"{row.avg_confidence:.4f}",
                "-" if row.avg_lift is None else f"{row.avg_lift:.4f}",
                f"{row.wall_seconds:.3f}",
            ])
        widths = [max(len(r[i]) for r in table) for i in range(len(headers))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in table]
        lines.append(self.note)
        return "\n".join(lines)

    def as_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow([
            "algorithm", "total_rules", "equity_rules", "minority_rules",
            "avg_support", "avg_confidence", "avg_lift", "wall_seconds", "error",
        ])
        for row in self.rows:
            writer.writerow([
                row.algorithm, row.total_rules, row.equity_rules, row.minority_rules,
                "" if row.avg_support is None else repr(row.avg_support),
                "" if row.avg_confidence is None else repr(row.avg_confidence),
                "" if row.avg_lift is None else repr(row.avg_lift),
                row.wall_seconds, row.error or "",
            ])
        return buf.getvalue()

    def as_json(self) -> str:
        return json.dumps(
            {
                "note": self.note,
                "rows": [
                    {
                        "algorithm": r.algorithm,
                        "total_rules": r.total_rules,
                        "equity_rules": r.equity_rules,
                        "minority_rules": r.minority_rules,
                        "avg_support": r.avg_support,
                        "avg_confidence": r.avg_confidence,
                        "avg_lift": r.avg_lift,
                        "wall_seconds": r.wall_seconds,
                        "error": r.error,
                    }
                    for r in self.rows
                ],
            },
            indent=2,
        )


def compare(
    db: TransactionDb,
    dictionary: ItemDictionary,
    thresholds: Thresholds,
    category_config: CategoryConfig,
    algorithms: Sequence[str] = ("apriori", "fpgrowth"),
    max_itemset_len: int | None = None,
    repeat: int = 1,
) -> ComparisonReport:
    """Full mine -> rules -> categorize chain per algorithm on one input.

    Timing covers mining plus rule generation only (ingest is shared and
    excluded). With repeat > 1 the reported time is the minimum over runs.
    """
    if not algorithms:
        raise ValueError("at least one algorithm required")
    unknown = [a for a in algorithms if a not in MINERS]
    if unknown:
        raise ValueError(f"unknown algorithm: {unknown[0]}")
    rows = []
    for name in algorithms:
        miner = MINERS[name]
        try:
            tagged = None
            best = None
            for _ in range(max(1, repeat)):
                start = time.perf_counter()
                frequent = miner(db, thresholds.min_support, max_itemset_len)
                plain = generate_rules(frequent, db, thresholds)
                elapsed = time.perf_counter() - start
                best = elapsed if best is None else min(best, elapsed)
                tagged = categorize(plain, dictionary, category_config)
            n = len(tagged)
            rows.append(
                AlgorithmRow(
                    algorithm=name,
                    total_rules=n,
                    equity_rules=sum(EQUITY_TAG in r.tags for r in tagged),
                    minority_rules=sum(MINORITY_TAG in r.tags for r in tagged),
                    avg_support=sum(r.support for r in tagged) / n if n else None,
                    avg_confidence=sum(r.confidence for r in tagged) / n if n else None,
                    avg_lift=sum(r.lift for r in tagged) / n if n else None,
                    wall_seconds=round(best, 3),
                )
            )
        except Exception as exc:  # keep going with the other algorithms
            rows.append(AlgorithmRow(algorithm=name, error=str(exc)))
    return ComparisonReport(rows=tuple(rows))
