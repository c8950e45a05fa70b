import pytest
from hypothesis import given, strategies as st

from larder.corpus import RawRecipe
from larder.textprep import (
    PrepConfig,
    clean,
    prep_corpus,
    read_token_file,
    segment_ingredient_line,
    strip_parentheticals,
)


@pytest.fixture(scope="module")
def cfg():
    return PrepConfig.default()


class TestSegment:
    def test_keeps_head_segment(self):
        assert segment_ingredient_line("tomatoes, diced") == ["tomatoes"]

    def test_no_comma(self):
        assert segment_ingredient_line("garlic") == ["garlic"]

    def test_all_segments_empty(self):
        assert segment_ingredient_line(",,") == []

    def test_blank_head_drops_line(self):
        assert segment_ingredient_line(" , diced") == []


class TestParentheticals:
    def test_simple(self):
        assert strip_parentheticals("butter (softened)") == "butter "

    def test_no_parens(self):
        assert strip_parentheticals("salt") == "salt"

    def test_nested(self):
        assert strip_parentheticals("a(b(c)d)e") == "ae"

    def test_unbalanced_open_removes_to_end(self):
        assert strip_parentheticals("salt (fine grained") == "salt "

    def test_stray_close_is_kept_for_later_cleanup(self):
        assert strip_parentheticals("salt) fine") == "salt) fine"


class TestClean:
    def test_pipeline_example(self, cfg):
        assert clean("2 cups all-purpose flour, sifted", cfg) == "purpose flour"

    def test_case_and_whitespace(self, cfg):
        assert clean("  Garlic  ", cfg) == "garlic"

    def test_everything_removed(self):
        cfg = PrepConfig(stopwords=frozenset(), units=frozenset({"oz", "can"}))
        assert clean("1 (14 oz) can", cfg) is None

    def test_unit_and_stopword_tokens_dropped(self, cfg):
        assert clean("3 tablespoons of olive oil", cfg) == "olive oil"

    def test_min_token_len(self):
        cfg = PrepConfig(stopwords=frozenset(), units=frozenset(), min_token_len=2)
        assert clean("a b cd", cfg) == "cd"


# random unicode inputs: never crash, always clean output or None
@given(st.text(max_size=60))
def test_clean_output_invariant(text):
    cfg = PrepConfig(stopwords=frozenset({"the"}), units=frozenset({"cup"}))
    result = clean(text, cfg)
    if result is not None:
        assert result == result.strip()
        assert "  " not in result
        assert all(ch.isalpha() or ch == " " for ch in result)
        for token in result.split():
            assert len(token) >= cfg.min_token_len


@given(st.text(max_size=60))
def test_clean_idempotent(text):
    cfg = PrepConfig(stopwords=frozenset({"the", "fresh"}), units=frozenset({"cup", "cups"}))
    once = clean(text, cfg)
    if once is not None:
        assert clean(once, cfg) == once


class TestPrepCorpus:
    def test_clean_then_dedup(self, cfg):
        raw = [RawRecipe("Cake", ("1 cup sugar", "sugar"), {})]
        result = prep_corpus(raw, cfg)
        assert result.records[0].ingredients == ("sugar",)
        assert result.dropped == 0

    def test_recipe_dropped_when_everything_cleans_away(self, cfg):
        raw = [
            RawRecipe("Nothing", ("2 cups", "1 tsp"), {}),
            RawRecipe("Something", ("garlic",), {}),
        ]
        result = prep_corpus(raw, cfg)
        assert [r.title for r in result.records] == ["Something"]
        assert result.dropped == 1

    def test_empty_input(self, cfg):
        assert prep_corpus([], cfg) == ([], 0)

    def test_never_grows_and_never_empty(self, cfg):
        raw = [
            RawRecipe(f"R{i}", ("garlic", "2 cups", f"item {i}"), {})
            for i in range(10)
        ]
        result = prep_corpus(raw, cfg)
        assert len(result.records) <= len(raw)
        assert all(r.ingredients for r in result.records)


def test_token_file_parsing(tmp_path):
    path = tmp_path / "tokens.txt"
    path.write_text("# comment\ncup\nCUPS  \n\noz # trailing\n", encoding="utf-8")
    assert read_token_file(path) == frozenset({"cup", "cups", "oz"})


def test_default_config_loads_bundled_lexicons(cfg):
    assert "all" in cfg.stopwords
    assert "cups" in cfg.units
    assert cfg.min_token_len == 2
