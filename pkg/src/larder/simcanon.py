"""String similarity scores and canonicalization of near-duplicate ingredients.

Three metrics are provided: Jaccard and cosine over word tokens, and
Jaro-Winkler over characters. Token metrics capture phrase overlap
("chicken breast" vs "chicken thighs"); the character metric catches typos
("chickn breast"). Pairs scoring at or above a threshold are merged, with
transitive closure, into clusters that each receive one canonical id.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping

from .errors import ConfigError, IntegrityError

CleanIngredient = str

DEFAULT_METRIC = "cosine_tokens"
DEFAULT_THRESHOLD = 0.85


def jaccard(a: str, b: str) -> float:
    """Token-set overlap |A∩B| / |A∪B|; 1.0 when both token sets are empty."""
    ta, tb = set(a.split()), set(b.split())
    union = ta | tb
    if not union:
        return 1.0
    return len(ta & tb) / len(union)


def cosine(a: str, b: str) -> float:
    """Cosine of token-count vectors; 0.0 when either vector is all-zero.

    The denominator is computed as sqrt(|va|^2 * |vb|^2) in one square root
    so that integer-exact cases (e.g. two 2-token sets sharing one token
    -> 0.5) come out exact in floating point.
    """
    ca, cb = Counter(a.split()), Counter(b.split())
    if not ca or not cb:
        return 0.0
    dot = sum(count * cb[token] for token, count in ca.items())
    na2 = sum(v * v for v in ca.values())
    nb2 = sum(v * v for v in cb.values())
    return dot / math.sqrt(na2 * nb2)


def jaro_winkler(a: str, b: str) -> float:
    """Jaro similarity with the Winkler prefix bonus (scale 0.1, prefix cap 4).

    Characters match within a window of floor(max(|a|,|b|)/2) - 1; half the
    out-of-order matches count as transpositions. Empty-vs-non-empty pairs
    score 0 by convention.
    """
    if a == b:
        return 1.0
    if not a or not b:
        return 0.0
    window = max(len(a), len(b)) // 2 - 1
    matched_a = [False] * len(a)
    matched_b = [False] * len(b)
    matches = 0
    for i, ch in enumerate(a):
        start = max(0, i - window)
        end = min(i + window + 1, len(b))
        for j in range(start, end):
            if matched_b[j] or b[j] != ch:
                continue
            matched_a[i] = True
            matched_b[j] = True
            matches += 1
            break
    if matches == 0:
        return 0.0

    transposed = 0
    j = 0
    for i, ch in enumerate(a):
        if not matched_a[i]:
            continue
        while not matched_b[j]:
            j += 1
        if ch != b[j]:
            transposed += 1
        j += 1
    half_transpositions = transposed / 2

    jaro = (
        matches / len(a)
        + matches / len(b)
        + (matches - half_transpositions) / matches
    ) / 3

    prefix = 0
    for ca, cb in zip(a[:4], b[:4]):
        if ca != cb:
            break
        prefix += 1
    return jaro + prefix * 0.1 * (1 - jaro)


METRICS: dict[str, Callable[[str, str], float]] = {
    "jaccard_tokens": jaccard,
    "cosine_tokens": cosine,
    "jaro_winkler": jaro_winkler,
}


def get_metric(kind: str) -> Callable[[str, str], float]:
    try:
        return METRICS[kind]
    except KeyError:
        raise ConfigError(f"unknown similarity metric {kind!r}; expected one of {sorted(METRICS)}")


@dataclass(frozen=True)
class IngredientLexicon:
    """Bidirectional map between clean ingredient text and canonical ids.

    ``canon`` maps canonical id -> canonical display name; ``alias`` maps
    every known clean text (including each canonical name itself) to its
    cluster's id. The metric and threshold used to build the lexicon ride
    along so fuzzy resolution behaves the same after a save/load cycle.
    """

    canon: dict[str, str] = field(default_factory=dict)
    alias: dict[str, str] = field(default_factory=dict)
    metric: str = DEFAULT_METRIC
    threshold: float = DEFAULT_THRESHOLD

    def validate(self) -> None:
        for text, canon_id in self.alias.items():
            if canon_id not in self.canon:
                raise IntegrityError(f"alias {text!r} points at unknown id {canon_id!r}")
        for canon_id, name in self.canon.items():
            if self.alias.get(name) != canon_id:
                raise IntegrityError(f"canonical name {name!r} is not an alias of its own id")

    def to_dict(self) -> dict:
        return {
            "canon": dict(self.canon),
            "alias": dict(self.alias),
            "metric": self.metric,
            "threshold": self.threshold,
        }

    @classmethod
    def from_dict(cls, obj: Mapping) -> "IngredientLexicon":
        lex = cls(
            canon=dict(obj["canon"]),
            alias=dict(obj["alias"]),
            metric=obj.get("metric", DEFAULT_METRIC),
            threshold=obj.get("threshold", DEFAULT_THRESHOLD),
        )
        lex.validate()
        return lex

    def save(self, path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )

    @classmethod
    def load(cls, path) -> "IngredientLexicon":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def _cluster_name(members: list[str], counts: Mapping[str, int]) -> tuple[str, str]:
    """Return (preferred common-token name or '', most-frequent member)."""
    top = min(members, key=lambda m: (-counts.get(m, 1), m))
    common = set(top.split())
    for member in members:
        common &= set(member.split())
    ordered = [t for t in dict.fromkeys(top.split()) if t in common]
    return " ".join(ordered), top


def canonicalize(
    ingredients: Iterable[CleanIngredient],
    metric: str = DEFAULT_METRIC,
    threshold: float = DEFAULT_THRESHOLD,
    counts: Mapping[str, int] | None = None,
) -> IngredientLexicon:
    """Merge near-duplicate clean ingredients into a canonical lexicon.

    All pairs scoring >= threshold under the metric are unioned, so clusters
    are transitively closed even when some member pairs score below the
    threshold. Each cluster is named by the token sequence common to all
    members (ordered as in the most frequent member) when non-empty and not
    claimed elsewhere, else by its most frequent member; ``counts`` supplies
    corpus frequencies (default: all ties, broken lexicographically).
    """
    if not 0 < threshold <= 1:
        raise ConfigError(f"threshold must be in (0, 1], got {threshold}")
    score = get_metric(metric)
    items = list(dict.fromkeys(ingredients))
    counts = counts or {}

    uf = _UnionFind(len(items))
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if score(items[i], items[j]) >= threshold:
                uf.union(i, j)

    clusters: dict[int, list[str]] = {}
    for i, item in enumerate(items):
        clusters.setdefault(uf.find(i), []).append(item)

    member_home = {m: root for root, members in clusters.items() for m in members}
    ordered_roots = sorted(clusters, key=lambda r: min(clusters[r]))

    canon: dict[str, str] = {}
    alias: dict[str, str] = {}
    for root in ordered_roots:
        members = clusters[root]
        common_name, top_member = _cluster_name(members, counts)
        name = common_name
        if not name or name in canon or member_home.get(name, root) != root:
            name = top_member
        canon[name] = name
        for member in members:
            alias[member] = name
        alias[name] = name

    lexicon = IngredientLexicon(canon=canon, alias=alias, metric=metric, threshold=threshold)
    lexicon.validate()
    return lexicon


def resolve(lexicon: IngredientLexicon, text: CleanIngredient) -> str | None:
    """Map clean text to a canonical id: exact alias first, then best fuzzy match.

    Fuzzy matching scores ``text`` against every canonical name under the
    lexicon's own metric and accepts the best score only when it clears the
    lexicon's threshold. Ties break toward the lexicographically smallest name.
    """
    hit = lexicon.alias.get(text)
    if hit is not None:
        return hit
    if not lexicon.canon:
        return None
    score = get_metric(lexicon.metric)
    best_id, best_score = None, -1.0
    for canon_id, name in sorted(lexicon.canon.items(), key=lambda kv: kv[1]):
        s = score(text, name)
        if s > best_score:
            best_id, best_score = canon_id, s
    return best_id if best_score >= lexicon.threshold else None
