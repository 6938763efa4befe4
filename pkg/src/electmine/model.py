"""Transaction data model.

Categorical records become transactions over an integer item universe: each
answered attribute=value pair maps to one item labeled "<attribute>_<value>".
Item ids are dense and assigned in first-encounter order so identical inputs
always produce identical encodings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

# An itemset is always a sorted, duplicate-free tuple of item ids.
ItemSet = tuple[int, ...]


def attribute_of(label: str) -> str:
    """Attribute prefix of an item label (everything before the first '_')."""
    return label.split("_", 1)[0]


def support_cutoff(min_support: float, n_transactions: int) -> int:
    """Absolute count an itemset needs: ceil(min_support * N), at least 1.

    A tiny slack absorbs binary-float noise so e.g. 0.05 * 20 counts as 1,
    not 2.
    """
    raw = min_support * n_transactions
    return max(1, math.ceil(raw - 1e-9 * max(1.0, raw)))


@dataclass(frozen=True)
class ItemDictionary:
    """Bijective map between item ids and "attribute_value" labels."""

    labels: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index: dict[str, int] = {}
        for i, label in enumerate(self.labels):
            if "_" not in label:
                raise ValueError(f"item label {label!r} has no attribute prefix")
            if label in index:
                raise ValueError(f"duplicate item label {label!r}")
            index[label] = i
        object.__setattr__(self, "index", index)

    def __len__(self) -> int:
        return len(self.labels)

    def id_of(self, label: str) -> int:
        return self.index[label]

    def label_of(self, item: int) -> str:
        if not 0 <= item < len(self.labels):
            raise KeyError(f"unknown item id {item}")
        return self.labels[item]

    def attribute_of_id(self, item: int) -> str:
        return attribute_of(self.label_of(item))


def decode_itemset(dictionary: ItemDictionary, items: Iterable[int]) -> list[str]:
    """Labels for an item-id set, in ascending item-id order."""
    return [dictionary.label_of(i) for i in sorted(set(items))]


@dataclass(frozen=True)
class TransactionDb:
    """Encoded dataset: transactions are sorted, duplicate-free item-id tuples."""

    transactions: tuple[ItemSet, ...]
    n_items: int
    matrix: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        transactions = tuple(tuple(t) for t in self.transactions)
        object.__setattr__(self, "transactions", transactions)
        mat = np.zeros((len(transactions), self.n_items), dtype=bool)
        for row, t in enumerate(transactions):
            if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
                raise ValueError(f"transaction {row} is not sorted and duplicate-free: {t}")
            if t and (t[0] < 0 or t[-1] >= self.n_items):
                raise ValueError(f"transaction {row} has an item id outside [0, {self.n_items})")
            mat[row, list(t)] = True
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def n_transactions(self) -> int:
        return len(self.transactions)


@dataclass(frozen=True)
class FrequentItemset:
    items: ItemSet
    count: int
    support: float

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("frequent itemset must occur at least once")


def itemset_sort_key(items: ItemSet):
    """Canonical output order: length ascending, then item ids lexicographic."""
    return (len(items), items)


def encode_rows(
    rows: Sequence[Mapping[str, str] | Iterable[tuple[str, str]]],
    attribute_order: Sequence[str],
) -> tuple[ItemDictionary, TransactionDb]:
    """Encode attribute->value records into an item dictionary and database.

    Item ids are assigned in first-encounter order, scanning rows in input
    order and each row's attributes in attribute_order. A record listing the
    same attribute twice is rejected: it signals an upstream cleaning failure.
    """
    order = list(attribute_order)
    order_set = set(order)
    labels: list[str] = []
    index: dict[str, int] = {}
    transactions: list[ItemSet] = []

    for row_no, row in enumerate(rows):
        if isinstance(row, Mapping):
            record = dict(row)
        else:
            record = {}
            for attr, value in row:
                if attr in record:
                    raise ValueError(f"row {row_no}: duplicate attribute {attr!r}")
                record[attr] = value
        unknown = set(record) - order_set
        if unknown:
            raise ValueError(f"row {row_no}: attributes not in attribute_order: {sorted(unknown)}")
        items = []
        for attr in order:
            if attr not in record:
                continue
            value = record[attr]
            if value == "":
                raise ValueError(f"row {row_no}: empty value for attribute {attr!r}")
            label = f"{attr}_{value}"
            item = index.get(label)
            if item is None:
                item = len(labels)
                index[label] = item
                labels.append(label)
            items.append(item)
        transactions.append(tuple(sorted(items)))

    dictionary = ItemDictionary(tuple(labels))
    db = TransactionDb(tuple(transactions), n_items=len(labels))
    return dictionary, db
