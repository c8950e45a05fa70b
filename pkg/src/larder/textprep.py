"""Raw ingredient-line cleanup.

The cleaning pipeline, in order: lowercase, strip parenthetical content,
keep the comma head (preparation notes trail the comma in standard recipe
style), replace non-alphabetic characters with spaces, then drop stopword
tokens, measurement-unit tokens, and tokens shorter than the minimum
length. "2 cups all-purpose flour, sifted" becomes "purpose flour".
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import NamedTuple, Sequence

from .corpus import RawRecipe
from .simcanon import CleanIngredient


def _parse_tokens(text: str) -> frozenset[str]:
    tokens = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip().lower()
        if line:
            tokens.add(line)
    return frozenset(tokens)


def read_token_file(path) -> frozenset[str]:
    """One lowercase token per line; '#' comments and blank lines ignored."""
    return _parse_tokens(Path(path).read_text(encoding="utf-8"))


def _bundled_tokens(name: str) -> frozenset[str]:
    text = resources.files("larder").joinpath(f"data/{name}").read_text(encoding="utf-8")
    return _parse_tokens(text)


@dataclass(frozen=True)
class PrepConfig:
    """Token filters applied by :func:`clean`."""

    stopwords: frozenset[str]
    units: frozenset[str]
    min_token_len: int = 2

    @classmethod
    def default(cls) -> "PrepConfig":
        """The bundled English stopword list and measurement-unit lexicon."""
        return cls(_bundled_tokens("stopwords.txt"), _bundled_tokens("units.txt"))

    @classmethod
    def from_files(cls, stopwords_path=None, units_path=None, min_token_len: int = 2) -> "PrepConfig":
        stop = read_token_file(stopwords_path) if stopwords_path else _bundled_tokens("stopwords.txt")
        units = read_token_file(units_path) if units_path else _bundled_tokens("units.txt")
        return cls(stop, units, min_token_len)


def strip_parentheticals(text: str) -> str:
    """Remove every maximal (...) span, nested pairs included.

    An unbalanced "(" removes through the end of the string; a stray ")"
    is left in place and falls to the later non-alphabetic cleanup.
    """
    out = []
    depth = 0
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")" and depth > 0:
            depth -= 1
        elif depth == 0:
            out.append(ch)
    return "".join(out)


def segment_ingredient_line(line: str) -> list[str]:
    """Split on commas and keep only the head segment, which names the ingredient.

    Trailing segments hold preparation notes ("tomatoes, diced"). Returns
    an empty list when the head segment is blank.
    """
    head = line.split(",", 1)[0].strip()
    return [head] if head else []


def clean(line: str, cfg: PrepConfig) -> CleanIngredient | None:
    """Run the full cleanup pipeline on one raw ingredient line.

    Returns None when no tokens survive. The output contains only
    alphabetic characters and single spaces, and cleaning it again is a
    no-op.
    """
    text = strip_parentheticals(line.lower())
    segments = segment_ingredient_line(text)
    if not segments:
        return None
    letters = "".join(ch if ch.isalpha() else " " for ch in segments[0])
    tokens = [
        t
        for t in letters.split()
        if t not in cfg.stopwords and t not in cfg.units and len(t) >= cfg.min_token_len
    ]
    return " ".join(tokens) or None


class PreppedRecipe(NamedTuple):
    title: str
    ingredients: tuple[CleanIngredient, ...]
    labels: dict[str, tuple[str, ...]]


class PrepResult(NamedTuple):
    records: list[PreppedRecipe]
    dropped: int


def prep_corpus(raw: Sequence[RawRecipe], cfg: PrepConfig) -> PrepResult:
    """Clean every ingredient line of every recipe.

    Per-recipe ingredient lists are deduplicated preserving first occurrence;
    recipes whose lists clean away entirely are dropped and counted.
    """
    records = []
    dropped = 0
    for recipe in raw:
        cleaned = [clean(line, cfg) for line in recipe.ingredients]
        ingredients = tuple(dict.fromkeys(c for c in cleaned if c))
        if not ingredients:
            dropped += 1
            continue
        records.append(PreppedRecipe(recipe.title, ingredients, dict(recipe.labels)))
    return PrepResult(records, dropped)
