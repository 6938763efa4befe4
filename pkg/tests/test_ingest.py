import pytest

from electmine.ingest import (
    Bin,
    ColumnSpec,
    ConsistencyRule,
    SchemaSpec,
    bin_numeric,
    clean,
    load_csv,
    load_schema,
    select_features,
)

AGE_BINS = (
    Bin(18, 29, "18-29"),
    Bin(30, 44, "30-44"),
    Bin(45, 64, "45-64"),
    Bin(65, 120, "65+"),
)


def simple_schema():
    return SchemaSpec(
        columns=(
            ColumnSpec("q9"),
            ColumnSpec("age", kind="numeric_binned", bins=AGE_BINS),
        )
    )


def test_load_csv(tmp_path):
    path = tmp_path / "survey.csv"
    path.write_text("q9,age\nNo,35\nYes,70\n")
    result = load_csv(path, simple_schema())
    assert result.rows == [{"q9": "No", "age": "35"}, {"q9": "Yes", "age": "70"}]
    assert result.ignored_columns == ()


def test_load_csv_ignores_extra_column(tmp_path):
    path = tmp_path / "survey.csv"
    path.write_text("q9,age,weight\nNo,35,1.2\n")
    result = load_csv(path, simple_schema())
    assert result.rows == [{"q9": "No", "age": "35"}]
    assert len(result.ignored_columns) == 1


def test_load_csv_missing_schema_column(tmp_path):
    path = tmp_path / "survey.csv"
    path.write_text("q9\nNo\n")
    with pytest.raises(ValueError, match="age"):
        load_csv(path, simple_schema())


def test_load_csv_malformed_line(tmp_path):
    path = tmp_path / "survey.csv"
    path.write_text("q9,age\nNo,35,extra,cells\n")
    with pytest.raises(ValueError, match="line 2"):
        load_csv(path, simple_schema())


def test_clean_blanks_missing_cells():
    rows, report = clean([{"q9": "", "age": "35"}], simple_schema())
    assert rows == [{"age": "30-44"}]
    assert report.blanked_cells == {"q9": 1}


def test_clean_drops_contradictory_rows():
    rule = ConsistencyRule(
        "mail and election-day in-person voting both reported",
        (("q9", "mail"), ("age", "in-person")),
    )
    schema = SchemaSpec(columns=(ColumnSpec("q9"), ColumnSpec("age")))
    rows, report = clean([{"q9": "mail", "age": "in-person"}, {"q9": "No", "age": "ok"}], schema, [rule])
    assert rows == [{"q9": "No", "age": "ok"}]
    assert report.rows_dropped == {rule.description: 1}


def test_clean_identity_case():
    rows, report = clean([{"q9": "No", "age": "35"}], simple_schema())
    assert rows == [{"q9": "No", "age": "30-44"}]
    assert report.blanked_cells == {} and report.rows_dropped == {}


def test_clean_is_idempotent():
    raw = [{"q9": "NA", "age": "29"}, {"q9": "No", "age": "nope"}, {"q9": "Yes", "age": "15"}]
    once, _ = clean(raw, simple_schema())
    twice, report = clean(once, simple_schema())
    assert twice == once
    assert report.blanked_cells == {} and report.out_of_range == {}


def test_clean_counts_out_of_range():
    rows, report = clean([{"age": "17"}], simple_schema())
    assert rows == [{}]
    assert report.out_of_range == {"age": 1}


@pytest.mark.parametrize(
    "age,label",
    [(18, "18-29"), (29, "18-29"), (30, "30-44"), (44, "30-44"),
     (45, "45-64"), (64, "45-64"), (65, "65+"), (99, "65+")],
)
def test_bin_boundaries(age, label):
    assert bin_numeric(age, AGE_BINS) == label


def test_bin_out_of_range():
    with pytest.raises(ValueError, match="out of binning range"):
        bin_numeric(17, AGE_BINS)


def test_bins_partition_their_range():
    for age in range(18, 121):
        labels = [b.label for b in AGE_BINS if b.lower <= age <= b.upper]
        assert len(labels) == 1


def test_column_spec_validation():
    with pytest.raises(ValueError, match="reserved separator"):
        ColumnSpec("voter_location")
    with pytest.raises(ValueError, match="overlap"):
        ColumnSpec("age", kind="numeric_binned", bins=(Bin(0, 10, "a"), Bin(5, 20, "b")))
    with pytest.raises(ValueError, match="not unique"):
        ColumnSpec("age", kind="numeric_binned", bins=(Bin(0, 10, "a"), Bin(11, 20, "a")))


def test_select_features():
    rows = [{"q9": "No", "age": "35", "extra": "x"}]
    assert select_features(rows, ["q9"]) == [{"q9": "No"}]
    assert select_features(rows, []) == [{}]


def test_select_features_unknown_column():
    with pytest.raises(ValueError, match="absent from schema"):
        select_features([{"q9": "No"}], ["q77"], simple_schema())


def test_select_never_adds_attributes():
    rows = [{"q9": "No"}, {"age": "20"}]
    selected = select_features(rows, ["q9", "age"])
    for before, after in zip(rows, selected):
        assert set(after) <= set(before)


def test_load_schema_round_trip(tmp_path):
    path = tmp_path / "schema.yaml"
    path.write_text(
        """
missing_tokens: ["", "skip"]
columns:
  - name: q9
  - name: age
    kind: numeric_binned
    bins:
      - [18, 29, "18-29"]
      - [30, 120, "30+"]
keep: [q9, age]
consistency_rules:
  - description: "impossible combo"
    conjuncts:
      q9: "No"
      age: "17"
"""
    )
    schema = load_schema(path)
    assert [c.name for c in schema.columns] == ["q9", "age"]
    assert schema.keep == ("q9", "age")
    assert schema.default_missing_tokens == frozenset({"", "skip"})
    assert schema.consistency_rules[0].description == "impossible combo"
    assert schema.column("age").bins[1].label == "30+"


def test_shipped_spae_schema_parses():
    from pathlib import Path

    schema = load_schema(Path(__file__).parents[1] / "configs" / "spae2022.yaml")
    assert len(schema.keep) == 14
    assert schema.column("age").kind == "numeric_binned"
    assert len(schema.consistency_rules) >= 1
