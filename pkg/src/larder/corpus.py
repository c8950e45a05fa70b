"""Recipe data model and on-disk corpus formats.

A corpus file holds raw recipes (title, raw ingredient lines, labels in up
to three taxonomies). JSONL is the canonical format, CSV a convenience
import. Downstream stages clean the ingredient lines and replace them with
canonical ingredient ids, producing the immutable :class:`Corpus` that the
miner, classifiers, and recommender all read.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .errors import CorpusFormatError, UnknownIngredientError
from .simcanon import IngredientLexicon

DEFAULT_TAXONOMIES = ("cuisines", "dietary", "course")


def sample_corpus_path() -> Path:
    """Location of the bundled sample corpus (synthetic; see README)."""
    return Path(str(resources.files("larder").joinpath("data/sample_recipes.jsonl")))


def _ordered_dedup(values: Iterable[str]) -> tuple[str, ...]:
    return tuple(dict.fromkeys(values))


@dataclass(frozen=True)
class RawRecipe:
    """One record of a corpus file, before any text cleanup.

    ``labels`` maps a taxonomy name to the class names listed for the
    recipe, in file order. The first listed class per taxonomy is treated
    as the primary label by the evaluation code.
    """

    title: str
    ingredients: tuple[str, ...]
    labels: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.title.strip():
            raise CorpusFormatError("recipe title is empty")
        if not self.ingredients:
            raise CorpusFormatError(f"recipe {self.title!r} has no ingredients")


@dataclass(frozen=True)
class Taxonomy:
    """A labeling dimension (e.g. cuisines) and its ordered class roster."""

    name: str
    classes: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.classes)) != len(self.classes):
            raise CorpusFormatError(f"taxonomy {self.name!r} repeats a class name")
        if any(not c for c in self.classes):
            raise CorpusFormatError(f"taxonomy {self.name!r} has an empty class name")


@dataclass(frozen=True)
class Recipe:
    """A recipe after cleanup: a titled, labeled set of canonical ingredient ids.

    ``labels`` values are ordered, deduplicated tuples rather than sets so
    the first-listed (primary) label survives; membership semantics are
    otherwise set-like.
    """

    id: str
    title: str
    ingredient_ids: frozenset[str]
    labels: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.ingredient_ids:
            raise CorpusFormatError(f"recipe {self.title!r} has no ingredients")


@dataclass(frozen=True)
class Corpus:
    """Immutable bundle of recipes, the ingredient lexicon, and taxonomies."""

    recipes: tuple[Recipe, ...]
    lexicon: IngredientLexicon
    taxonomies: tuple[Taxonomy, ...]

    def __post_init__(self):
        seen: set[tuple[str, frozenset[str]]] = set()
        known_classes = {t.name: set(t.classes) for t in self.taxonomies}
        for recipe in self.recipes:
            key = (recipe.title, recipe.ingredient_ids)
            if key in seen:
                raise CorpusFormatError(f"duplicate recipe {recipe.title!r} after dedup")
            seen.add(key)
            missing = recipe.ingredient_ids - self.lexicon.canon.keys()
            if missing:
                raise UnknownIngredientError(missing)
            for tax, classes in recipe.labels.items():
                if tax not in known_classes:
                    raise CorpusFormatError(f"recipe {recipe.title!r}: unknown taxonomy {tax!r}")
                unknown = set(classes) - known_classes[tax]
                if unknown:
                    raise CorpusFormatError(
                        f"recipe {recipe.title!r}: classes {sorted(unknown)} not in taxonomy {tax!r}"
                    )

    def taxonomy(self, name: str) -> Taxonomy:
        for tax in self.taxonomies:
            if tax.name == name:
                return tax
        raise KeyError(name)


class StatsRow(NamedTuple):
    taxonomy: str
    class_name: str
    recipe_count: int
    mean_ingredients: float


def load_corpus(
    path,
    format: str = "jsonl",
    taxonomies: Sequence[str] = DEFAULT_TAXONOMIES,
) -> list[RawRecipe]:
    """Read raw recipes from ``path`` in the declared format.

    Unknown record fields are ignored; record order is preserved. Malformed
    records raise :class:`CorpusFormatError` naming the record.
    """
    path = Path(path)
    if format == "jsonl":
        return _load_jsonl(path, taxonomies)
    if format == "csv":
        return _load_csv(path, taxonomies)
    raise CorpusFormatError(f"unknown corpus format {format!r}")


def _parse_labels(raw_labels, taxonomies: Sequence[str], where: str) -> dict[str, tuple[str, ...]]:
    if not isinstance(raw_labels, dict):
        raise CorpusFormatError(f"{where}: labels must be an object")
    labels: dict[str, tuple[str, ...]] = {}
    for key, values in raw_labels.items():
        if key not in taxonomies:
            raise CorpusFormatError(f"{where}: unknown taxonomy label key {key!r}")
        if not isinstance(values, (list, tuple)) or not all(isinstance(v, str) for v in values):
            raise CorpusFormatError(f"{where}: labels[{key!r}] must be a list of strings")
        cleaned = _ordered_dedup(v.strip() for v in values if v.strip())
        if cleaned:
            labels[key] = cleaned
    return labels


def _load_jsonl(path: Path, taxonomies: Sequence[str]) -> list[RawRecipe]:
    records = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            where = f"{path.name} line {lineno}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"{where}: invalid JSON ({exc.msg})") from exc
            if not isinstance(obj, dict):
                raise CorpusFormatError(f"{where}: record is not an object")
            title = obj.get("title")
            ingredients = obj.get("ingredients")
            if not isinstance(title, str) or not title.strip():
                raise CorpusFormatError(f"{where}: missing or empty title")
            if not isinstance(ingredients, list) or not ingredients or not all(
                isinstance(i, str) for i in ingredients
            ):
                raise CorpusFormatError(f"{where}: ingredients must be a non-empty list of strings")
            labels = _parse_labels(obj.get("labels", {}), taxonomies, where)
            records.append(RawRecipe(title.strip(), tuple(ingredients), labels))
    return records


def _load_csv(path: Path, taxonomies: Sequence[str]) -> list[RawRecipe]:
    records = []
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return []
        for column in reader.fieldnames:
            if column not in ("title", "ingredients") and column not in taxonomies:
                raise CorpusFormatError(f"{path.name}: unknown taxonomy label key {column!r}")
        if "title" not in reader.fieldnames or "ingredients" not in reader.fieldnames:
            raise CorpusFormatError(f"{path.name}: header must include title and ingredients")
        for idx, row in enumerate(reader, start=1):
            where = f"{path.name} record {idx}"
            title = (row.get("title") or "").strip()
            if not title:
                raise CorpusFormatError(f"{where}: missing or empty title")
            ingredients = tuple(s for s in (row.get("ingredients") or "").split("|") if s.strip())
            if not ingredients:
                raise CorpusFormatError(f"{where}: ingredients column is empty")
            labels = {}
            for tax in taxonomies:
                if tax in row and row[tax]:
                    values = [s.strip() for s in row[tax].split("|")]
                    cleaned = _ordered_dedup(v for v in values if v)
                    if cleaned:
                        labels[tax] = cleaned
            records.append(RawRecipe(title, ingredients, labels))
    return records


def write_corpus(path, records: Sequence[RawRecipe], format: str = "jsonl",
                 taxonomies: Sequence[str] = DEFAULT_TAXONOMIES) -> None:
    """Serialize raw recipes; inverse of :func:`load_corpus`."""
    path = Path(path)
    if format == "jsonl":
        with path.open("w", encoding="utf-8") as fh:
            for rec in records:
                obj = {
                    "title": rec.title,
                    "ingredients": list(rec.ingredients),
                    "labels": {tax: list(vals) for tax, vals in rec.labels.items()},
                }
                fh.write(json.dumps(obj, ensure_ascii=False) + "\n")
    elif format == "csv":
        with path.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["title", "ingredients", *taxonomies])
            for rec in records:
                row = [rec.title, "|".join(rec.ingredients)]
                row.extend("|".join(rec.labels.get(tax, ())) for tax in taxonomies)
                writer.writerow(row)
    else:
        raise CorpusFormatError(f"unknown corpus format {format!r}")


def dedup_recipes(recipes: Sequence[Recipe]) -> list[Recipe]:
    """Collapse recipes sharing (title, ingredient set), merging their labels.

    The first occurrence keeps its position and id; later duplicates only
    contribute label classes (a recipe repeated across classes survives as
    one recipe carrying all of them). Idempotent.
    """
    merged: dict[tuple[str, frozenset[str]], Recipe] = {}
    for recipe in recipes:
        key = (recipe.title, recipe.ingredient_ids)
        if key not in merged:
            merged[key] = recipe
            continue
        kept = merged[key]
        labels = {tax: vals for tax, vals in kept.labels.items()}
        for tax, vals in recipe.labels.items():
            labels[tax] = _ordered_dedup((*labels.get(tax, ()), *vals))
        merged[key] = replace(kept, labels=labels)
    return list(merged.values())


def corpus_stats(corpus: Corpus) -> list[StatsRow]:
    """Per (taxonomy, class) recipe counts and mean ingredient-set size.

    Classes with no member recipes are omitted. Because recipes may carry
    several classes, counts within a taxonomy can sum to more than the
    number of recipes.
    """
    if not corpus.recipes:
        raise ValueError("corpus has no recipes")
    rows = []
    for tax in corpus.taxonomies:
        for cls in tax.classes:
            members = [r for r in corpus.recipes if cls in r.labels.get(tax.name, ())]
            if not members:
                continue
            mean = sum(len(r.ingredient_ids) for r in members) / len(members)
            rows.append(StatsRow(tax.name, cls, len(members), mean))
    return rows


def build_corpus(
    prepped: Sequence,
    lexicon: IngredientLexicon,
    taxonomy_order: Sequence[str] = DEFAULT_TAXONOMIES,
) -> Corpus:
    """Assemble a Corpus from prepped (title, clean ingredients, labels) records.

    Every cleaned ingredient must already be an alias in ``lexicon``.
    Duplicate (title, ingredient set) records are merged, then recipes get
    sequential ids. Taxonomy class rosters are collected in first-appearance
    order, which keeps the construction deterministic for a fixed corpus.
    """
    provisional = []
    class_order: dict[str, dict[str, None]] = {}
    for i, rec in enumerate(prepped):
        ids = set()
        for ingredient in rec.ingredients:
            canon_id = lexicon.alias.get(ingredient)
            if canon_id is None:
                raise UnknownIngredientError([ingredient])
            ids.add(canon_id)
        for tax, classes in rec.labels.items():
            bucket = class_order.setdefault(tax, {})
            for cls in classes:
                bucket.setdefault(cls)
        provisional.append(Recipe(f"tmp{i}", rec.title, frozenset(ids), dict(rec.labels)))

    deduped = dedup_recipes(provisional)
    recipes = tuple(
        replace(recipe, id=f"r{i:04d}") for i, recipe in enumerate(deduped, start=1)
    )
    names = [t for t in taxonomy_order if t in class_order]
    names.extend(t for t in class_order if t not in names)
    taxonomies = tuple(Taxonomy(name, tuple(class_order[name])) for name in names)
    return Corpus(recipes, lexicon, taxonomies)
