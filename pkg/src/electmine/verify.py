"""Brute-force oracle and cross-algorithm equivalence checks.

The oracle counts every nonempty subset of the item universe by full scans
over a bitmask representation. It shares nothing with the miners' counting
paths (no kernel, no FP-tree), so agreement is meaningful. The threshold
predicate and the ceil-based support cutoff are shared on purpose: they are
the filter contract, not part of the counting route.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .apriori import MinerConfig, mine_apriori
from .fpgrowth import mine_fpgrowth
from .model import FrequentItemset, ItemSet, TransactionDb, itemset_sort_key, support_cutoff
from .rules import AssociationRule, Thresholds, generate_rules, passes_thresholds


@dataclass(frozen=True)
class OracleLimits:
    max_items: int = 20
    max_transactions: int = 5000

    def __post_init__(self):
        if self.max_items > 24:
            raise ValueError("max_items must be <= 24 (subset enumeration)")


def _check_limits(db: TransactionDb, limits: OracleLimits) -> None:
    if db.n_items > limits.max_items or db.n_transactions > limits.max_transactions:
        raise ValueError("oracle limits exceeded")


def _subset_counts(db: TransactionDb) -> np.ndarray:
    """counts[mask] = transactions containing every item of the bitmask.

    Each subset is counted by a full scan over all transaction masks; the
    scan is vectorized but otherwise naive.
    """
    masks = np.zeros(db.n_transactions, dtype=np.int64)
    for row, t in enumerate(db.transactions):
        m = 0
        for item in t:
            m |= 1 << item
        masks[row] = m
    n_subsets = 1 << db.n_items
    counts = np.empty(n_subsets, dtype=np.int64)
    block = 4096
    for start in range(0, n_subsets, block):
        subsets = np.arange(start, min(start + block, n_subsets), dtype=np.int64)
        counts[start : start + len(subsets)] = (
            (masks[:, None] & subsets[None, :]) == subsets[None, :]
        ).sum(axis=0)
    return counts


def _mask_to_items(mask: int) -> ItemSet:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def brute_force_frequent(
    db: TransactionDb, min_support: float, limits: OracleLimits = OracleLimits()
) -> list[FrequentItemset]:
    """Every frequent itemset by exhaustive subset enumeration."""
    if db.n_transactions == 0:
        raise ValueError("empty transaction database")
    _check_limits(db, limits)
    min_count = support_cutoff(min_support, db.n_transactions)
    counts = _subset_counts(db)
    found = [
        (_mask_to_items(mask), int(counts[mask]))
        for mask in range(1, 1 << db.n_items)
        if counts[mask] >= min_count
    ]
    found.sort(key=lambda pair: itemset_sort_key(pair[0]))
    n = db.n_transactions
    return [FrequentItemset(items, count, count / n) for items, count in found]


def brute_force_rules(
    db: TransactionDb, thresholds: Thresholds, limits: OracleLimits = OracleLimits()
) -> list[AssociationRule]:
    """Every threshold-passing rule by direct counting.

    Evaluates every disjoint nonempty (X, Y) split; pairs whose union misses
    the support cutoff are filtered up front (they could never pass).
    """
    if db.n_transactions == 0:
        raise ValueError("empty transaction database")
    _check_limits(db, limits)
    n = db.n_transactions
    min_count = support_cutoff(thresholds.min_support, n)
    counts = _subset_counts(db)
    out: list[AssociationRule] = []
    for union_mask in range(1, 1 << db.n_items):
        c_union = int(counts[union_mask])
        if c_union < min_count:
            continue
        items = _mask_to_items(union_mask)
        if len(items) < 2:
            continue
        for ant_size in range(1, len(items)):
            for antecedent in combinations(items, ant_size):
                ant_mask = 0
                for item in antecedent:
                    ant_mask |= 1 << item
                cons_mask = union_mask & ~ant_mask
                c_ant = int(counts[ant_mask])
                c_cons = int(counts[cons_mask])
                if passes_thresholds(c_union, c_ant, c_cons, n, thresholds):
                    consequent = _mask_to_items(cons_mask)
                    out.append(
                        AssociationRule(
                            antecedent,
                            consequent,
                            c_union / n,
                            c_union / c_ant,
                            c_union * n / (c_ant * c_cons),
                        )
                    )
    out.sort(key=lambda r: (-r.lift, -r.confidence, r.antecedent, r.consequent))
    return out


@dataclass(frozen=True)
class EquivalenceReport:
    equivalent: bool
    detail: str

    def as_text(self) -> str:
        return "equivalent" if self.equivalent else f"divergent: {self.detail}"


def _first_divergence(name_a, result_a, name_b, result_b, what):
    set_a = {(fs.items, fs.count) for fs in result_a}
    set_b = {(fs.items, fs.count) for fs in result_b}
    for items, count in sorted(set_a - set_b, key=lambda p: itemset_sort_key(p[0])):
        return f"{what} {items} (count {count}) in {name_a} but not {name_b}"
    for items, count in sorted(set_b - set_a, key=lambda p: itemset_sort_key(p[0])):
        return f"{what} {items} (count {count}) in {name_b} but not {name_a}"
    return None


def _rule_key(rule: AssociationRule):
    return (rule.antecedent, rule.consequent)


def check_equivalence(
    db: TransactionDb,
    min_support: float,
    thresholds: Thresholds,
    limits: OracleLimits = OracleLimits(),
    miners: dict | None = None,
) -> EquivalenceReport:
    """Run apriori, fpgrowth, and (within limits) the oracle; report the
    first divergence in itemsets or generated rules, or "equivalent"."""
    if miners is None:
        miners = {
            "apriori": lambda d: mine_apriori(d, MinerConfig(min_support)),
            "fpgrowth": lambda d: mine_fpgrowth(d, min_support),
        }
    rule_thresholds = Thresholds(
        min_support=max(thresholds.min_support, min_support),
        min_confidence=thresholds.min_confidence,
        min_lift=thresholds.min_lift,
        strict_lift=thresholds.strict_lift,
    )
    results = {name: miner(db) for name, miner in miners.items()}
    in_limits = db.n_items <= limits.max_items and db.n_transactions <= limits.max_transactions
    if in_limits:
        results["oracle"] = brute_force_frequent(db, min_support, limits)

    names = list(results)
    baseline = names[0]
    for other in names[1:]:
        divergence = _first_divergence(baseline, results[baseline], other, results[other], "itemset")
        if divergence:
            return EquivalenceReport(False, divergence)

    rule_sets = {
        name: {_rule_key(r) for r in generate_rules(results[name], db, rule_thresholds)}
        for name in names
    }
    if in_limits:
        rule_sets["oracle-rules"] = {
            _rule_key(r) for r in brute_force_rules(db, rule_thresholds, limits)
        }
    rule_names = list(rule_sets)
    base_rules = rule_sets[rule_names[0]]
    for other in rule_names[1:]:
        diff = base_rules ^ rule_sets[other]
        if diff:
            ant, cons = sorted(diff)[0]
            where = rule_names[0] if (ant, cons) in base_rules else other
            return EquivalenceReport(False, f"rule {ant} -> {cons} only in {where}")
    return EquivalenceReport(True, "")


def random_db(
    seed: int,
    max_items: int = 15,
    max_transactions: int = 500,
) -> TransactionDb:
    """Seeded random database for property tests.

    Per-item inclusion is independent Bernoulli at a density drawn from
    [0.1, 0.9]. Above 8 items, items are partitioned into attribute groups
    and at most one included item per group survives (survey-style
    exclusivity); this also keeps the itemset lattice desk-scale.
    """
    rng = np.random.default_rng(seed)
    n_items = int(rng.integers(1, max_items + 1))
    n_transactions = int(rng.integers(1, max_transactions + 1))
    density = float(rng.uniform(0.1, 0.9))
    include = rng.random((n_transactions, n_items)) < density
    if n_items > 8:
        n_groups = max(3, n_items // 3)
        groups = np.sort(rng.integers(0, n_groups, size=n_items))
        for g in range(n_groups):
            members = np.flatnonzero(groups == g)
            if len(members) <= 1:
                continue
            sub = include[:, members]
            chosen = rng.integers(0, len(members), size=n_transactions)
            keep = np.zeros_like(sub)
            rows = np.arange(n_transactions)
            keep[rows, chosen] = sub[rows, chosen]
            # Rows where the chosen item was absent fall back to the first
            # included item of the group.
            fallback = sub.argmax(axis=1)
            has_any = sub.any(axis=1)
            missed = has_any & ~keep.any(axis=1)
            keep[rows[missed], fallback[missed]] = True
            include[:, members] = keep
    transactions = tuple(tuple(np.flatnonzero(row)) for row in include)
    transactions = tuple(tuple(int(i) for i in t) for t in transactions)
    return TransactionDb(transactions, n_items=n_items)
