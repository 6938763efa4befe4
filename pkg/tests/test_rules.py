import pytest

from electmine.apriori import MinerConfig, mine_apriori
from electmine.model import ItemDictionary, TransactionDb, encode_rows
from electmine.rules import (
    AssociationRule,
    CategoryConfig,
    Thresholds,
    categorize,
    format_lift,
    format_pct,
    generate_rules,
    rule_metrics,
    rule_record,
)


def test_thresholds_defaults():
    t = Thresholds()
    assert (t.min_support, t.min_confidence, t.min_lift) == (0.03, 0.60, 1.50)
    assert t.strict_lift is False


def test_thresholds_validation():
    with pytest.raises(ValueError):
        Thresholds(min_support=0.0)
    with pytest.raises(ValueError):
        Thresholds(min_confidence=1.5)
    with pytest.raises(ValueError):
        Thresholds(min_lift=-1.0)


def test_rule_invariants():
    with pytest.raises(ValueError):
        AssociationRule((0,), (0,), 0.1, 0.5, 1.0)
    with pytest.raises(ValueError):
        AssociationRule((), (1,), 0.1, 0.5, 1.0)


def test_metrics_d5_a_to_b(d5_db):
    assert rule_metrics({0}, {1}, d5_db) == (0.6, 0.75, 0.9375)


def test_metrics_d5_ab_to_c(d5_db):
    support, confidence, lift = rule_metrics({0, 1}, {2}, d5_db)
    assert support == pytest.approx(0.4)
    assert confidence == pytest.approx(2 / 3)
    assert lift == pytest.approx((2 / 3) / 0.8)


def test_lift_equals_confidence_when_consequent_everywhere():
    db = TransactionDb(((0, 1), (1,), (0, 1)), n_items=2)
    _, confidence, lift = rule_metrics({0}, {1}, db)
    assert lift == confidence


def test_metrics_unsupported_body(d5_db):
    extended = TransactionDb(d5_db.transactions, n_items=4)
    with pytest.raises(ValueError, match="unsupported rule body"):
        rule_metrics({3}, {0}, extended)


def test_d5_default_thresholds_no_rules(d5_db):
    frequent = mine_apriori(d5_db, MinerConfig(0.6))
    assert generate_rules(frequent, d5_db, Thresholds()) == []


def test_d5_zero_lift_six_rules(d5_db):
    frequent = mine_apriori(d5_db, MinerConfig(0.6))
    rules = generate_rules(frequent, d5_db, Thresholds(0.03, 0.60, 0.0))
    assert len(rules) == 6
    assert all(r.confidence == 0.75 for r in rules)
    # sorted: lift desc, confidence desc, antecedent then consequent lexicographic
    assert [(r.antecedent, r.consequent) for r in rules] == [
        ((0,), (1,)), ((0,), (2,)), ((1,), (0,)),
        ((1,), (2,)), ((2,), (0,)), ((2,), (1,)),
    ]


def test_perfect_implication_passes_defaults():
    db = TransactionDb(((0, 1), (0, 1), (2,), (2,)), n_items=3)
    frequent = mine_apriori(db, MinerConfig(0.03))
    rules = generate_rules(frequent, db, Thresholds())
    keyed = {(r.antecedent, r.consequent): r for r in rules}
    rule = keyed[((0,), (1,))]
    assert rule.confidence == 1.0
    assert rule.lift == 2.0


def test_incomplete_lattice_rejected(d5_db):
    frequent = mine_apriori(d5_db, MinerConfig(0.6))
    pairs_only = [fs for fs in frequent if len(fs.items) == 2]
    with pytest.raises(ValueError, match="incomplete itemset lattice"):
        generate_rules(pairs_only, d5_db, Thresholds(0.03, 0.60, 0.0))


def test_split_completeness(d5_db):
    # one 3-itemset yields 2^3 - 2 candidate splits when filters are off
    frequent = mine_apriori(d5_db, MinerConfig(0.2))
    rules = generate_rules(frequent, d5_db, Thresholds(0.2, 1e-9, 0.0))
    from_triple = [r for r in rules if len(r.antecedent) + len(r.consequent) == 3]
    assert len(from_triple) == 6


def test_lift_symmetry(d5_db):
    frequent = mine_apriori(d5_db, MinerConfig(0.2))
    rules = generate_rules(frequent, d5_db, Thresholds(0.2, 1e-9, 0.0))
    lifts = {(r.antecedent, r.consequent): r.lift for r in rules}
    for (ant, cons), lift in lifts.items():
        assert lifts[(cons, ant)] == lift


def test_strict_lift_flag():
    db = TransactionDb(((0, 1), (0, 1), (2,), (2,)), n_items=3)
    frequent = mine_apriori(db, MinerConfig(0.03))
    inclusive = generate_rules(frequent, db, Thresholds(0.03, 0.5, 2.0))
    strict = generate_rules(frequent, db, Thresholds(0.03, 0.5, 2.0, strict_lift=True))
    assert any(r.lift == 2.0 for r in inclusive)
    assert all(r.lift > 2.0 for r in strict)


def _dict(labels):
    return ItemDictionary(tuple(labels))


def test_categorize_equity():
    d = _dict(["q40_Not too confident", "q41_Not too confident"])
    rule = AssociationRule((0,), (1,), 0.0344, 0.614, 8.31)
    (tagged,) = categorize([rule], d, CategoryConfig())
    assert tagged.tags == {"equity"}


def test_categorize_minority():
    d = _dict(["race_Black", "q9_No"])
    rule = AssociationRule((0,), (1,), 0.03, 0.98, 1.87)
    (tagged,) = categorize([rule], d, CategoryConfig())
    assert "minority" in tagged.tags


def test_categorize_neither():
    d = _dict(["income_Low", "income_High"])
    rule = AssociationRule((0,), (1,), 0.1, 0.7, 2.0)
    (tagged,) = categorize([rule], d, CategoryConfig())
    assert tagged.tags == frozenset()


def test_categorize_excluded_race_value():
    d = _dict(["race_White", "q9_No"])
    rule = AssociationRule((0,), (1,), 0.1, 0.7, 2.0)
    (tagged,) = categorize([rule], d, CategoryConfig())
    assert "minority" not in tagged.tags


def test_percent_rendering():
    assert format_pct(0.0344, 2) == "3.44"
    assert format_pct(0.614, 1) == "61.4"
    assert format_lift(8.31) == "8.31"
    assert format_pct(0.75, 1) == "75.0"


def test_rounding_is_half_away_from_zero():
    assert format_pct(0.03445, 2) == "3.45"
    assert format_pct(0.6145, 1) == "61.5"


def test_rule_record_schema():
    d = _dict(["q40_Not too confident", "q41_Not too confident"])
    rule = AssociationRule((0,), (1,), 0.0344, 0.614, 8.31, tags=frozenset({"equity"}))
    rec = rule_record(rule, d)
    assert rec["antecedent"] == ["q40_Not too confident"]
    assert rec["consequent"] == ["q41_Not too confident"]
    assert (rec["support_pct"], rec["confidence_pct"], rec["lift_display"]) == ("3.44", "61.4", "8.31")
    assert rec["tags"] == ["equity"]


def test_metric_ranges_on_generated_rules():
    rows = [{"x": v, "y": w} for v, w in [("1", "1")] * 3 + [("1", "2")] * 2 + [("2", "2")] * 5]
    _, db = encode_rows(rows, ["x", "y"])
    frequent = mine_apriori(db, MinerConfig(0.05))
    rules = generate_rules(frequent, db, Thresholds(0.05, 1e-9, 0.0))
    counts = {fs.items: fs.count for fs in frequent}
    n = db.n_transactions
    for r in rules:
        assert 0.0 < r.support <= r.confidence <= 1.0
        assert r.support <= min(counts[r.antecedent], counts[r.consequent]) / n
