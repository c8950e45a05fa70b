"""Frequent itemset mining (Apriori and FP-Growth) and rule generation.

Transactions are recipe ingredient-id sets. Supports are kept as integer
transaction counts with the database size attached, and thresholds are
compared in exact rational arithmetic, so the two miners can be checked
against each other (and against brute force) with strict equality instead
of float tolerance.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import ConfigError, MiningError

DEFAULT_MIN_SUPPORT = 0.02
DEFAULT_MIN_CONFIDENCE = 0.2
DEFAULT_MAX_LEN = 6


def as_fraction(value, name: str) -> Fraction:
    """Normalize a user-facing ratio to an exact Fraction in (0, 1].

    Floats go through their decimal repr, so 0.02 means exactly 1/50 rather
    than the nearest binary double.
    """
    if isinstance(value, float):
        frac = Fraction(repr(value))
    else:
        try:
            frac = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"{name} must be a number, got {value!r}") from exc
    if not 0 < frac <= 1:
        raise ConfigError(f"{name} must be in (0, 1], got {value}")
    return frac


@dataclass(frozen=True)
class TransactionDB:
    """An immutable list of non-empty item sets, one per recipe."""

    transactions: tuple[frozenset[str], ...]

    def __post_init__(self):
        if any(not t for t in self.transactions):
            raise MiningError("transaction database contains an empty transaction")

    @property
    def n(self) -> int:
        return len(self.transactions)

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[str]]) -> "TransactionDB":
        return cls(tuple(frozenset(s) for s in sets))


@dataclass(frozen=True)
class FrequentItemset:
    items: frozenset[str]
    count: int
    n: int

    @property
    def support(self) -> Fraction:
        return Fraction(self.count, self.n)


@dataclass(frozen=True)
class AssociationRule:
    """antecedent -> consequent with exact support/confidence counts."""

    antecedent: frozenset[str]
    consequent: frozenset[str]
    support_count: int
    antecedent_count: int
    n: int

    @property
    def support(self) -> Fraction:
        return Fraction(self.support_count, self.n)

    @property
    def confidence(self) -> Fraction:
        return Fraction(self.support_count, self.antecedent_count)


@dataclass(frozen=True)
class MiningParams:
    min_support: float = DEFAULT_MIN_SUPPORT
    min_confidence: float = DEFAULT_MIN_CONFIDENCE
    algorithm: str = "apriori"
    max_len: int | None = DEFAULT_MAX_LEN

    def __post_init__(self):
        as_fraction(self.min_support, "min_support")
        as_fraction(self.min_confidence, "min_confidence")
        if self.algorithm not in ("apriori", "fp_growth"):
            raise ConfigError(f"unknown mining algorithm {self.algorithm!r}")
        if self.max_len is not None and self.max_len < 1:
            raise ConfigError("max_len must be >= 1")


def _min_count(min_support: Fraction, n: int) -> int:
    """Smallest integer count whose support ratio meets the threshold."""
    product = min_support * n
    return max(1, -(-product.numerator // product.denominator))


def mine_frequent_apriori(
    db: TransactionDB, min_support, max_len: int | None = None
) -> list[FrequentItemset]:
    """All itemsets with support >= min_support, by level-wise Apriori.

    Candidates of size k are joined from frequent (k-1)-itemsets sharing a
    (k-2)-prefix and pruned unless every (k-1)-subset is frequent, then
    counted in one pass over the transactions.
    """
    ms = as_fraction(min_support, "min_support")
    if db.n == 0:
        raise MiningError("cannot mine an empty transaction database")
    threshold = _min_count(ms, db.n)

    singles: dict[str, int] = {}
    for txn in db.transactions:
        for item in txn:
            singles[item] = singles.get(item, 0) + 1
    frequent: dict[frozenset[str], int] = {
        frozenset([item]): count for item, count in singles.items() if count >= threshold
    }
    level = sorted(tuple(sorted(s)) for s in frequent)

    k = 2
    while level and (max_len is None or k <= max_len):
        prev = {frozenset(t) for t in level}
        candidates = []
        for i, left in enumerate(level):
            for right in level[i + 1 :]:
                if left[: k - 2] != right[: k - 2]:
                    break
                candidate = tuple(sorted(set(left) | set(right)))
                cand_set = frozenset(candidate)
                if all(cand_set - {item} in prev for item in candidate):
                    candidates.append(cand_set)
        counts = {c: 0 for c in candidates}
        if counts:
            for txn in db.transactions:
                if len(txn) < k:
                    continue
                for cand in candidates:
                    if cand <= txn:
                        counts[cand] += 1
        survivors = {c: cnt for c, cnt in counts.items() if cnt >= threshold}
        frequent.update(survivors)
        level = sorted(tuple(sorted(s)) for s in survivors)
        k += 1

    return sorted(
        (FrequentItemset(items, count, db.n) for items, count in frequent.items()),
        key=lambda f: (len(f.items), tuple(sorted(f.items))),
    )


class _FPNode:
    __slots__ = ("item", "count", "parent", "children", "link")

    def __init__(self, item: str | None, parent: "_FPNode | None"):
        self.item = item
        self.count = 0
        self.parent = parent
        self.children: dict[str, _FPNode] = {}
        self.link: _FPNode | None = None


def _build_fp_tree(
    transactions: Iterable[tuple[tuple[str, ...], int]], threshold: int
) -> tuple[_FPNode, dict[str, tuple[int, list[_FPNode]]]]:
    """Build an FP-tree over weighted transactions, filtered by count threshold.

    Tree paths order items by descending frequency, ties broken by ascending
    item id, which fixes the tree shape deterministically.
    """
    counts: dict[str, int] = {}
    for items, weight in transactions:
        for item in items:
            counts[item] = counts.get(item, 0) + weight
    keep = {item: c for item, c in counts.items() if c >= threshold}
    order = {item: rank for rank, item in enumerate(sorted(keep, key=lambda i: (-keep[i], i)))}

    root = _FPNode(None, None)
    header: dict[str, tuple[int, list[_FPNode]]] = {
        item: (count, []) for item, count in keep.items()
    }
    for items, weight in transactions:
        path = sorted((i for i in items if i in keep), key=order.__getitem__)
        node = root
        for item in path:
            child = node.children.get(item)
            if child is None:
                child = _FPNode(item, node)
                node.children[item] = child
                header[item][1].append(child)
            child.count += weight
            node = child
    return root, header


def _mine_fp_tree(
    header: dict[str, tuple[int, list[_FPNode]]],
    suffix: frozenset[str],
    threshold: int,
    max_len: int | None,
    out: dict[frozenset[str], int],
) -> None:
    # Least-frequent items first; each becomes a suffix extension.
    for item in sorted(header, key=lambda i: (header[i][0], i)):
        total, nodes = header[item]
        itemset = suffix | {item}
        out[itemset] = total
        if max_len is not None and len(itemset) >= max_len:
            continue
        conditional = []
        for node in nodes:
            path = []
            parent = node.parent
            while parent is not None and parent.item is not None:
                path.append(parent.item)
                parent = parent.parent
            if path:
                conditional.append((tuple(path), node.count))
        if conditional:
            _, cond_header = _build_fp_tree(conditional, threshold)
            if cond_header:
                _mine_fp_tree(cond_header, itemset, threshold, max_len, out)


def mine_frequent_fpgrowth(
    db: TransactionDB, min_support, max_len: int | None = None
) -> list[FrequentItemset]:
    """All itemsets with support >= min_support, by FP-Growth.

    Produces exactly the same itemsets and counts as the Apriori miner;
    the pair is cross-checked in tests.
    """
    ms = as_fraction(min_support, "min_support")
    if db.n == 0:
        raise MiningError("cannot mine an empty transaction database")
    threshold = _min_count(ms, db.n)

    weighted = [(tuple(txn), 1) for txn in db.transactions]
    _, header = _build_fp_tree(weighted, threshold)
    found: dict[frozenset[str], int] = {}
    if header:
        _mine_fp_tree(header, frozenset(), threshold, max_len, found)
    return sorted(
        (FrequentItemset(items, count, db.n) for items, count in found.items()),
        key=lambda f: (len(f.items), tuple(sorted(f.items))),
    )


def generate_rules(
    frequents: Sequence[FrequentItemset], min_confidence
) -> list[AssociationRule]:
    """Emit every rule A -> F\\A with confidence >= min_confidence.

    Requires the frequent set to be downward-closed (Apriori and FP-Growth
    both guarantee this); rules are sorted by confidence desc, support desc,
    then antecedent.
    """
    mc = as_fraction(min_confidence, "min_confidence")
    if not frequents:
        return []
    n = frequents[0].n
    index: dict[frozenset[str], int] = {}
    for f in frequents:
        if f.n != n:
            raise MiningError("frequent itemsets disagree on transaction count")
        index[f.items] = f.count
    for items in index:
        if len(items) < 2:
            continue
        for item in items:
            if items - {item} not in index:
                raise MiningError(
                    f"frequent itemsets are not downward-closed: missing subset of {sorted(items)}"
                )

    rules = []
    for items in index:
        if len(items) < 2:
            continue
        members = sorted(items)
        support_count = index[items]
        for size in range(1, len(members)):
            for antecedent in combinations(members, size):
                a = frozenset(antecedent)
                a_count = index[a]
                if Fraction(support_count, a_count) >= mc:
                    rules.append(
                        AssociationRule(a, items - a, support_count, a_count, n)
                    )
    rules.sort(key=lambda r: (-r.confidence, -r.support, tuple(sorted(r.antecedent))))
    return rules


# --- serialization -----------------------------------------------------------

_CSV_COLUMNS = ["antecedent", "consequent", "support_count", "n", "support", "confidence"]


def rules_to_csv(rules: Sequence[AssociationRule], names: Mapping[str, str] | None = None) -> str:
    """Render rules as CSV; item ids map through ``names`` and join with '|'."""
    names = names or {}
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for rule in rules:
        writer.writerow(
            [
                "|".join(sorted(names.get(i, i) for i in rule.antecedent)),
                "|".join(sorted(names.get(i, i) for i in rule.consequent)),
                rule.support_count,
                rule.n,
                repr(float(rule.support)),
                repr(float(rule.confidence)),
            ]
        )
    return buf.getvalue()


def rules_from_csv(text: str, ids_by_name: Mapping[str, str] | None = None) -> list[AssociationRule]:
    """Parse :func:`rules_to_csv` output back into exact-count rules.

    The antecedent count is recovered as round(support_count / confidence);
    counts are bounded by the transaction total, far below the 2^52 range
    where that rounding could go wrong.
    """
    ids_by_name = ids_by_name or {}
    reader = csv.DictReader(io.StringIO(text))
    rules = []
    for row in reader:
        antecedent = frozenset(ids_by_name.get(s, s) for s in row["antecedent"].split("|"))
        consequent = frozenset(ids_by_name.get(s, s) for s in row["consequent"].split("|"))
        support_count = int(row["support_count"])
        rules.append(
            AssociationRule(
                antecedent,
                consequent,
                support_count,
                round(support_count / float(row["confidence"])),
                int(row["n"]),
            )
        )
    return rules


def rules_to_json(rules: Sequence[AssociationRule], names: Mapping[str, str] | None = None) -> str:
    names = names or {}
    doc = {
        "n": rules[0].n if rules else 0,
        "rules": [
            {
                "antecedent": sorted(names.get(i, i) for i in r.antecedent),
                "consequent": sorted(names.get(i, i) for i in r.consequent),
                "support_count": r.support_count,
                "antecedent_count": r.antecedent_count,
            }
            for r in rules
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def rules_from_json(text: str, ids_by_name: Mapping[str, str] | None = None) -> list[AssociationRule]:
    ids_by_name = ids_by_name or {}
    doc = json.loads(text)
    return [
        AssociationRule(
            frozenset(ids_by_name.get(s, s) for s in r["antecedent"]),
            frozenset(ids_by_name.get(s, s) for s in r["consequent"]),
            r["support_count"],
            r["antecedent_count"],
            doc["n"],
        )
        for r in doc["rules"]
    ]


def load_transactions(path) -> TransactionDB:
    """Read a transactions file: one transaction per line, items '|'-separated."""
    sets = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        items = [s.strip() for s in line.split("|") if s.strip()]
        if not items:
            raise MiningError(f"line {lineno}: empty transaction")
        sets.append(items)
    return TransactionDB.from_sets(sets)


def write_transactions(path, db: TransactionDB) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for txn in db.transactions:
            fh.write("|".join(sorted(txn)) + "\n")
