"""End-to-end batch pipeline: ingest -> prep -> canonicalize -> mine -> train.

Every stage writes a plain text/JSON/CSV artifact before the next stage
starts, and a manifest of content hashes plus the exact config snapshot is
written last. A directory without a valid manifest is not servable, which
is how partially written runs are kept from being loaded. Reruns with the
same config produce byte-identical artifacts.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from . import classify, corpus as corpus_mod, rulemine, simcanon, textprep
from .classify import Hyper, LinearModel
from .corpus import Corpus, Recipe, Taxonomy
from .errors import ConfigError, IntegrityError, PipelineError
from .rulemine import AssociationRule, TransactionDB
from .simcanon import IngredientLexicon
from .textprep import PrepConfig

MANIFEST_VERSION = 1
MANIFEST_NAME = "manifest.json"


@dataclass(frozen=True)
class PipelineConfig:
    corpus_path: str
    output_dir: str
    corpus_format: str = "jsonl"
    taxonomies: tuple[str, ...] = corpus_mod.DEFAULT_TAXONOMIES
    stopwords_path: str | None = None
    units_path: str | None = None
    min_token_len: int = 2
    metric: str = simcanon.DEFAULT_METRIC
    threshold: float = simcanon.DEFAULT_THRESHOLD
    min_support: float = rulemine.DEFAULT_MIN_SUPPORT
    min_confidence: float = rulemine.DEFAULT_MIN_CONFIDENCE
    algorithm: str = "apriori"
    max_len: int = rulemine.DEFAULT_MAX_LEN
    hyper: Hyper = Hyper()
    hyper_overrides: dict = field(default_factory=dict)

    def taxonomy_hyper(self, taxonomy: str) -> Hyper:
        override = self.hyper_overrides.get(taxonomy)
        if not override:
            return self.hyper
        merged = {
            "learning_rate": self.hyper.learning_rate,
            "l2": self.hyper.l2,
            "epochs": self.hyper.epochs,
            "seed": self.hyper.seed,
        }
        merged.update(override)
        return Hyper(**merged)

    def snapshot(self) -> dict:
        return {
            "corpus_path": self.corpus_path,
            "corpus_format": self.corpus_format,
            "taxonomies": list(self.taxonomies),
            "prep": {"min_token_len": self.min_token_len},
            "sim": {"metric": self.metric, "threshold": self.threshold},
            "mining": {
                "min_support": self.min_support,
                "min_confidence": self.min_confidence,
                "algorithm": self.algorithm,
                "max_len": self.max_len,
            },
            "classify": {
                "default": {
                    "learning_rate": self.hyper.learning_rate,
                    "l2": self.hyper.l2,
                    "epochs": self.hyper.epochs,
                    "seed": self.hyper.seed,
                },
                "per_taxonomy": dict(self.hyper_overrides),
            },
        }


def load_pipeline_config(path) -> PipelineConfig:
    """Read a JSON config file mirroring PipelineConfig (see configs/pipeline.json)."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc.msg})") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: config must be a JSON object")

    def resolve(p: str | None) -> str | None:
        if p is None:
            return None
        if p == "@sample":
            return str(corpus_mod.sample_corpus_path())
        candidate = Path(p)
        return str(candidate if candidate.is_absolute() else path.parent / candidate)

    try:
        prep = doc.get("prep", {})
        sim = doc.get("sim", {})
        mining = doc.get("mining", {})
        cls = doc.get("classify", {})
        default_hyper = Hyper(**cls.get("default", {}))
        return PipelineConfig(
            corpus_path=resolve(doc["corpus_path"]),
            output_dir=resolve(doc["output_dir"]),
            corpus_format=doc.get("corpus_format", "jsonl"),
            taxonomies=tuple(doc.get("taxonomies", corpus_mod.DEFAULT_TAXONOMIES)),
            stopwords_path=resolve(prep.get("stopwords_path")),
            units_path=resolve(prep.get("units_path")),
            min_token_len=prep.get("min_token_len", 2),
            metric=sim.get("metric", simcanon.DEFAULT_METRIC),
            threshold=sim.get("threshold", simcanon.DEFAULT_THRESHOLD),
            min_support=mining.get("min_support", rulemine.DEFAULT_MIN_SUPPORT),
            min_confidence=mining.get("min_confidence", rulemine.DEFAULT_MIN_CONFIDENCE),
            algorithm=mining.get("algorithm", "apriori"),
            max_len=mining.get("max_len", rulemine.DEFAULT_MAX_LEN),
            hyper=default_hyper,
            hyper_overrides=dict(cls.get("per_taxonomy", {})),
        )
    except KeyError as exc:
        raise ConfigError(f"{path}: missing required config key {exc.args[0]!r}") from exc
    except TypeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


@dataclass(frozen=True)
class PipelineArtifacts:
    directory: Path
    manifest: dict


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with path.open("rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _write_json(path: Path, doc) -> None:
    path.write_text(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")


def _stage(name: str):
    def deco(fn):
        def wrapped(*args, **kwargs):
            try:
                return fn(*args, **kwargs)
            except PipelineError:
                raise
            except Exception as exc:
                raise PipelineError(f"stage {name!r} failed: {exc}") from exc

        return wrapped

    return deco


def run_pipeline(cfg: PipelineConfig) -> PipelineArtifacts:
    """Execute all stages in order and write the manifest last.

    Deterministic given the config (the classifier seed is part of it), so
    rerunning with the same config reproduces every artifact bit-for-bit.
    """
    out = Path(cfg.output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise PipelineError(f"stage 'setup' failed: cannot create {out}: {exc}") from exc
    if not Path(cfg.corpus_path).exists():
        raise PipelineError(f"stage 'ingest' failed: corpus file not found: {cfg.corpus_path}")

    # A stale manifest would make a half-finished rerun look servable.
    manifest_path = out / MANIFEST_NAME
    manifest_path.unlink(missing_ok=True)

    raws = _stage("ingest")(corpus_mod.load_corpus)(
        cfg.corpus_path, cfg.corpus_format, cfg.taxonomies
    )
    if not raws:
        raise PipelineError("stage 'ingest' failed: corpus file has no records")

    prep_cfg = _stage("prep")(PrepConfig.from_files)(
        cfg.stopwords_path, cfg.units_path, cfg.min_token_len
    )
    prepped, dropped = _stage("prep")(textprep.prep_corpus)(raws, prep_cfg)

    @_stage("canonicalize")
    def _canonicalize():
        occurrences = Counter()
        for rec in prepped:
            occurrences.update(rec.ingredients)
        lexicon = simcanon.canonicalize(
            sorted(occurrences), cfg.metric, cfg.threshold, counts=occurrences
        )
        lexicon.save(out / "lexicon.json")
        (out / "stopwords.txt").write_text(
            "\n".join(sorted(prep_cfg.stopwords)) + "\n", encoding="utf-8"
        )
        (out / "units.txt").write_text(
            "\n".join(sorted(prep_cfg.units)) + "\n", encoding="utf-8"
        )
        return lexicon

    lexicon = _canonicalize()

    @_stage("corpus")
    def _build():
        built = corpus_mod.build_corpus(prepped, lexicon, cfg.taxonomies)
        with (out / "recipes.jsonl").open("w", encoding="utf-8") as fh:
            for r in built.recipes:
                fh.write(
                    json.dumps(
                        {
                            "id": r.id,
                            "title": r.title,
                            "ingredient_ids": sorted(r.ingredient_ids),
                            "labels": {tax: list(v) for tax, v in r.labels.items()},
                        },
                        ensure_ascii=False,
                        sort_keys=True,
                    )
                    + "\n"
                )
        _write_json(
            out / "taxonomies.json",
            [{"name": t.name, "classes": list(t.classes)} for t in built.taxonomies],
        )
        return built

    built_corpus = _build()

    @_stage("mine")
    def _mine():
        db = TransactionDB.from_sets(r.ingredient_ids for r in built_corpus.recipes)
        rulemine.write_transactions(out / "transactions.txt", db)
        miner = (
            rulemine.mine_frequent_apriori
            if cfg.algorithm == "apriori"
            else rulemine.mine_frequent_fpgrowth
        )
        frequents = miner(db, cfg.min_support, cfg.max_len)
        rules = rulemine.generate_rules(frequents, cfg.min_confidence)
        (out / "rules.csv").write_text(rulemine.rules_to_csv(rules), encoding="utf-8")
        return rules

    rules = _mine()

    @_stage("train")
    def _train():
        models = {}
        for tax in built_corpus.taxonomies:
            model = classify.train_sgd(built_corpus, tax.name, cfg.taxonomy_hyper(tax.name))
            classify.save_model(model, out / f"model_{tax.name}.json")
            models[tax.name] = model
        return models

    models = _train()

    files = sorted(
        p.name for p in out.iterdir() if p.is_file() and p.name != MANIFEST_NAME
    )
    manifest = {
        "format_version": MANIFEST_VERSION,
        "config": cfg.snapshot(),
        "counts": {
            "raw_records": len(raws),
            "dropped_recipes": dropped,
            "recipes": len(built_corpus.recipes),
            "ingredients": len(built_corpus.lexicon.canon),
            "rules": len(rules),
            "models": len(models),
            "classes": {t.name: len(t.classes) for t in built_corpus.taxonomies},
        },
        "files": {name: _sha256(out / name) for name in files},
    }
    _write_json(manifest_path, manifest)
    return PipelineArtifacts(out, manifest)


@dataclass(frozen=True)
class ServingBundle:
    """Immutable in-memory view of a pipeline run, ready for queries."""

    corpus: Corpus
    rules: tuple[AssociationRule, ...]
    models: dict[str, LinearModel]
    prep: PrepConfig
    manifest: dict
    manifest_hash: str

    @property
    def lexicon(self) -> IngredientLexicon:
        return self.corpus.lexicon

    def resolve_many(self, raw: Iterable[str]) -> tuple[list[str], list[str]]:
        """Clean raw ingredient strings and resolve them to canonical ids.

        Returns (resolved ids, unresolved raw strings); resolved ids are
        deduplicated preserving first occurrence.
        """
        resolved: dict[str, None] = {}
        unresolved = []
        for raw_text in raw:
            cleaned = textprep.clean(raw_text, self.prep)
            canon_id = simcanon.resolve(self.lexicon, cleaned) if cleaned else None
            if canon_id is None:
                unresolved.append(raw_text)
            else:
                resolved.setdefault(canon_id)
        return list(resolved), unresolved


def load_artifacts(directory) -> ServingBundle:
    """Load and verify a pipeline output directory.

    Artifact paths are relative to the manifest, so a moved directory still
    loads; any hash mismatch raises IntegrityError naming the file.
    """
    directory = Path(directory)
    manifest_path = directory / MANIFEST_NAME
    if not manifest_path.exists():
        raise IntegrityError(f"no {MANIFEST_NAME} in {directory}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    version = manifest.get("format_version")
    if version != MANIFEST_VERSION:
        raise IntegrityError(
            f"manifest format_version {version!r} unsupported (expected {MANIFEST_VERSION})"
        )
    for name, expected in manifest["files"].items():
        target = directory / name
        if not target.exists():
            raise IntegrityError(f"artifact missing: {name}")
        actual = _sha256(target)
        if actual != expected:
            raise IntegrityError(f"artifact hash mismatch: {name}")

    lexicon = IngredientLexicon.load(directory / "lexicon.json")
    taxonomies = tuple(
        Taxonomy(t["name"], tuple(t["classes"]))
        for t in json.loads((directory / "taxonomies.json").read_text(encoding="utf-8"))
    )
    recipes = []
    for line in (directory / "recipes.jsonl").read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        recipes.append(
            Recipe(
                obj["id"],
                obj["title"],
                frozenset(obj["ingredient_ids"]),
                {tax: tuple(v) for tax, v in obj["labels"].items()},
            )
        )
    loaded_corpus = Corpus(tuple(recipes), lexicon, taxonomies)

    rules = tuple(rulemine.rules_from_csv((directory / "rules.csv").read_text(encoding="utf-8")))

    models = {}
    for tax in taxonomies:
        model = classify.load_model(directory / f"model_{tax.name}.json")
        if not isinstance(model, LinearModel):
            raise IntegrityError(f"model_{tax.name}.json is not a linear model")
        models[tax.name] = model

    prep_cfg = PrepConfig(
        textprep.read_token_file(directory / "stopwords.txt"),
        textprep.read_token_file(directory / "units.txt"),
        manifest["config"]["prep"]["min_token_len"],
    )
    return ServingBundle(
        corpus=loaded_corpus,
        rules=rules,
        models=models,
        prep=prep_cfg,
        manifest=manifest,
        manifest_hash=_sha256(manifest_path),
    )
