"""Rule-driven recipe recommendation.

User ingredients form a base set. Rules whose antecedents sit inside the
base contribute their consequents; the base plus every subset of those
consequents forms the candidate combinations. Since every combination
contains the base, matching reduces to base containment, and the
combinations instead drive ranking: recipes covering more consequents
(a larger matched combination) rank higher.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .corpus import Corpus, Recipe
from .errors import UnknownIngredientError
from .rulemine import AssociationRule

DEFAULT_MAX_RESULTS = 20
DEFAULT_CONSEQUENT_CAP = 8


@dataclass(frozen=True)
class RecommendQuery:
    include: frozenset[str]
    exclude: frozenset[str] = frozenset()
    max_results: int = DEFAULT_MAX_RESULTS

    def __post_init__(self):
        if not self.include:
            raise ValueError("query must include at least one ingredient")
        if self.include & self.exclude:
            overlap = sorted(self.include & self.exclude)
            raise ValueError(f"ingredients cannot be both included and excluded: {overlap}")
        if self.max_results < 1:
            raise ValueError("max_results must be positive")


@dataclass(frozen=True)
class Recommendation:
    recipe: Recipe
    matched_combination_size: int
    matched_consequents: frozenset[str]


def consequents_for(rules: Sequence[AssociationRule], base: frozenset[str]) -> frozenset[str]:
    """Union of consequents over rules whose antecedent fits inside the base,
    minus the base itself."""
    out: set[str] = set()
    for rule in rules:
        if rule.antecedent <= base:
            out |= rule.consequent
    return frozenset(out - base)


def ranked_consequents(rules: Sequence[AssociationRule], base: frozenset[str]) -> list[str]:
    """Consequent items ordered by the best confidence of a rule producing them."""
    best: dict[str, Fraction] = {}
    for rule in rules:
        if rule.antecedent <= base:
            for item in rule.consequent - base:
                if item not in best or rule.confidence > best[item]:
                    best[item] = rule.confidence
    return sorted(best, key=lambda item: (-best[item], item))


def expand_combinations(
    base: frozenset[str],
    consequents: Iterable[str],
    cap: int = DEFAULT_CONSEQUENT_CAP,
) -> list[frozenset[str]]:
    """All 2^k unions of the base with subsets of the consequents.

    When more than ``cap`` consequents are offered, only the first ``cap``
    survive; pass a sequence in priority order (see
    :func:`ranked_consequents`) to control which. A bare set is ordered
    lexicographically first. Output is sorted by subset size, then by the
    subset items.
    """
    if isinstance(consequents, (set, frozenset)):
        pool = sorted(consequents)
    else:
        pool = list(dict.fromkeys(consequents))
    if base & set(pool):
        raise ValueError("consequents must be disjoint from the base")
    pool = pool[:cap]
    out = []
    for size in range(len(pool) + 1):
        for subset in sorted(combinations(sorted(pool), size)):
            out.append(base | frozenset(subset))
    return out


def recommend(
    corpus: Corpus,
    rules: Sequence[AssociationRule],
    query: RecommendQuery,
) -> list[Recommendation]:
    """Rank recipes that contain every base ingredient and no excluded one.

    Ranking: matched combination size (base + covered consequents) first,
    then fewer total ingredients (simpler recipes), then title, then id.
    """
    unknown = (query.include | query.exclude) - corpus.lexicon.canon.keys()
    if unknown:
        raise UnknownIngredientError(unknown)

    consequents = consequents_for(rules, query.include)
    scored = []
    for recipe in corpus.recipes:
        if not query.include <= recipe.ingredient_ids:
            continue
        if query.exclude & recipe.ingredient_ids:
            continue
        matched = consequents & recipe.ingredient_ids
        scored.append(
            Recommendation(recipe, len(query.include) + len(matched), frozenset(matched))
        )
    scored.sort(
        key=lambda rec: (
            -rec.matched_combination_size,
            len(rec.recipe.ingredient_ids),
            rec.recipe.title,
            rec.recipe.id,
        )
    )
    return scored[: query.max_results]


def recommendation_to_dict(rec: Recommendation, names: Mapping[str, str] | None = None) -> dict:
    """JSON-ready view of one recommendation, ids mapped to display names."""
    names = names or {}
    return {
        "recipe_id": rec.recipe.id,
        "title": rec.recipe.title,
        "ingredients": sorted(names.get(i, i) for i in rec.recipe.ingredient_ids),
        "labels": {tax: list(vals) for tax, vals in rec.recipe.labels.items()},
        "matched_consequents": sorted(names.get(i, i) for i in rec.matched_consequents),
        "matched_combination_size": rec.matched_combination_size,
        "ingredient_count": len(rec.recipe.ingredient_ids),
    }
