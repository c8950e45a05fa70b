import pytest

from larder.corpus import Corpus, Recipe, Taxonomy, sample_corpus_path
from larder.pipeline import PipelineConfig, load_artifacts, run_pipeline
from larder.simcanon import IngredientLexicon
from larder.textprep import PrepConfig


@pytest.fixture(scope="session")
def prep_cfg():
    return PrepConfig.default()


@pytest.fixture(scope="session")
def sample_artifacts(tmp_path_factory):
    """One pipeline run over the bundled corpus, shared by the suite."""
    out = tmp_path_factory.mktemp("artifacts")
    cfg = PipelineConfig(corpus_path=str(sample_corpus_path()), output_dir=str(out))
    run_pipeline(cfg)
    return out


@pytest.fixture(scope="session")
def bundle(sample_artifacts):
    return load_artifacts(sample_artifacts)


def identity_lexicon(names):
    names = sorted(set(names))
    return IngredientLexicon(canon={n: n for n in names}, alias={n: n for n in names})


def make_corpus(rows, taxonomies=None, lexicon=None):
    """Build a Corpus from (id, title, ingredient ids, labels) tuples."""
    recipes = tuple(
        Recipe(rid, title, frozenset(ids), {t: tuple(v) for t, v in (labels or {}).items()})
        for rid, title, ids, labels in rows
    )
    if taxonomies is None:
        seen: dict[str, dict[str, None]] = {}
        for r in recipes:
            for tax, classes in r.labels.items():
                for cls in classes:
                    seen.setdefault(tax, {}).setdefault(cls)
        taxonomies = tuple(Taxonomy(t, tuple(c)) for t, c in seen.items())
    if lexicon is None:
        lexicon = identity_lexicon({i for r in recipes for i in r.ingredient_ids})
    return Corpus(recipes, lexicon, taxonomies)
