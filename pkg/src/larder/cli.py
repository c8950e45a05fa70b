"""Command-line front door.

Subcommands: ``pipeline run``, ``mine``, ``recommend``, ``classify``,
``evaluate``, ``stats``, ``serve``. Tabular results go to stdout as CSV so
shell pipelines work; ``--json`` switches the query commands to the same
JSON schemas the HTTP service uses. Errors print to stderr; exit codes are
0 (success), 1 (runtime error), 2 (usage error).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import classify, corpus as corpus_mod, ingnet, recommend as recommend_mod, rulemine, textprep
from .errors import ConfigError, LarderError
from .pipeline import load_artifacts, load_pipeline_config, run_pipeline
from .recommend import RecommendQuery, recommendation_to_dict
from .simcanon import IngredientLexicon


class UsageError(LarderError):
    """Bad invocation (exit code 2) rather than a runtime failure."""

ARTIFACTS_ENV = "LARDER_ARTIFACTS"
PORT_ENV = "LARDER_PORT"


def _ratio(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError(f"must be in (0, 1]: {text}")
    return value


def _comma_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _artifacts_dir(args) -> str:
    directory = args.artifacts or os.environ.get(ARTIFACTS_ENV)
    if not directory:
        raise LarderError(f"no artifacts directory given (flag --artifacts or ${ARTIFACTS_ENV})")
    return directory


def _print_csv(rows, header) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="larder", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_pipe = sub.add_parser("pipeline", help="batch pipeline operations")
    pipe_sub = p_pipe.add_subparsers(dest="pipeline_command", required=True)
    p_run = pipe_sub.add_parser("run", help="run ingest->prep->canonicalize->mine->train")
    p_run.add_argument("--config", required=True, help="pipeline config JSON file")

    p_mine = sub.add_parser("mine", help="mine association rules from a transactions file")
    p_mine.add_argument("--transactions", required=True)
    p_mine.add_argument("--min-support", type=_ratio, default=rulemine.DEFAULT_MIN_SUPPORT)
    p_mine.add_argument("--min-confidence", type=_ratio, default=rulemine.DEFAULT_MIN_CONFIDENCE)
    p_mine.add_argument(
        "--algorithm", choices=["apriori", "fp-growth"], default="apriori"
    )
    p_mine.add_argument("--max-len", type=int, default=None, help="cap on itemset size")

    p_rec = sub.add_parser("recommend", help="recommend recipes for given ingredients")
    p_rec.add_argument("--artifacts", default=None)
    p_rec.add_argument("--ingredients", required=True, type=_comma_list)
    p_rec.add_argument("--exclude", type=_comma_list, default=[])
    p_rec.add_argument("--max-results", type=int, default=recommend_mod.DEFAULT_MAX_RESULTS)
    p_rec.add_argument("--json", action="store_true")

    p_cls = sub.add_parser("classify", help="classify an ingredient set per taxonomy")
    p_cls.add_argument("--artifacts", default=None)
    p_cls.add_argument("--ingredients", required=True, type=_comma_list)
    p_cls.add_argument("--json", action="store_true")

    p_eval = sub.add_parser("evaluate", help="accuracy + confusion matrix on a test file")
    p_eval.add_argument("--artifacts", default=None)
    p_eval.add_argument("--taxonomy", required=True)
    p_eval.add_argument("--test", required=True, help="test corpus file (jsonl or csv)")
    p_eval.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")

    p_stats = sub.add_parser("stats", help="per-class recipe counts and mean ingredients")
    p_stats.add_argument("--corpus", required=True)
    p_stats.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")

    p_serve = sub.add_parser("serve", help="serve the HTTP API")
    p_serve.add_argument("--artifacts", default=None)
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--cors-origin", action="append", default=[])

    return parser


def _cmd_pipeline_run(args) -> int:
    cfg = load_pipeline_config(args.config)
    artifacts = run_pipeline(cfg)
    counts = artifacts.manifest["counts"]
    classes = ",".join(f"{tax}={n}" for tax, n in counts["classes"].items())
    print(
        f"pipeline ok: recipes={counts['recipes']} ingredients={counts['ingredients']} "
        f"rules={counts['rules']} models={counts['models']} classes=[{classes}] "
        f"dropped={counts['dropped_recipes']} output={artifacts.directory}"
    )
    return 0


def _cmd_mine(args) -> int:
    db = rulemine.load_transactions(args.transactions)
    miner = (
        rulemine.mine_frequent_apriori
        if args.algorithm == "apriori"
        else rulemine.mine_frequent_fpgrowth
    )
    frequents = miner(db, args.min_support, args.max_len)
    rules = rulemine.generate_rules(frequents, args.min_confidence)
    sys.stdout.write(rulemine.rules_to_csv(rules))
    return 0


def _cmd_recommend(args) -> int:
    bundle = load_artifacts(_artifacts_dir(args))
    include, unresolved = bundle.resolve_many(args.ingredients)
    exclude, unresolved_exc = bundle.resolve_many(args.exclude)
    if not include:
        raise LarderError(f"no ingredient could be resolved: {', '.join(unresolved)}")
    try:
        query = RecommendQuery(frozenset(include), frozenset(exclude), args.max_results)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    recs = recommend_mod.recommend(bundle.corpus, bundle.rules, query)
    if args.json:
        graph = ingnet.build_graph(recs, base=query.include, names=bundle.lexicon.canon)
        doc = {
            "recommendations": [recommendation_to_dict(r, bundle.lexicon.canon) for r in recs],
            "network": ingnet.export_graph(graph),
            "unresolved": unresolved + unresolved_exc,
        }
        print(json.dumps(doc, indent=2, ensure_ascii=False))
        return 0
    names = bundle.lexicon.canon
    rows = [
        [
            rec.recipe.title,
            rec.matched_combination_size,
            len(rec.recipe.ingredient_ids),
            "|".join(sorted(names.get(i, i) for i in rec.matched_consequents)),
            "|".join(sorted(names.get(i, i) for i in rec.recipe.ingredient_ids)),
        ]
        for rec in recs
    ]
    _print_csv(
        rows,
        ["title", "matched_combination_size", "ingredient_count", "matched_consequents", "ingredients"],
    )
    for raw in unresolved + unresolved_exc:
        print(f"warning: unresolved ingredient {raw!r}", file=sys.stderr)
    return 0


def _cmd_classify(args) -> int:
    bundle = load_artifacts(_artifacts_dir(args))
    ids, unresolved = bundle.resolve_many(args.ingredients)
    if not ids:
        raise LarderError(f"no ingredient could be resolved: {', '.join(unresolved)}")
    per_taxonomy = {}
    for tax in sorted(bundle.models):
        result = classify.predict_multilabel(bundle.models[tax], frozenset(ids))
        per_taxonomy[tax] = {
            "probabilities": result.per_class_probability,
            "assigned": list(result.assigned),
        }
    if args.json:
        print(json.dumps({"per_taxonomy": per_taxonomy, "unresolved": unresolved},
                         indent=2, ensure_ascii=False))
        return 0
    rows = []
    for tax, info in per_taxonomy.items():
        for cls, prob in info["probabilities"].items():
            rows.append([tax, cls, repr(prob), 1 if cls in info["assigned"] else 0])
    _print_csv(rows, ["taxonomy", "class", "probability", "assigned"])
    return 0


def _cmd_evaluate(args) -> int:
    bundle = load_artifacts(_artifacts_dir(args))
    model = bundle.models.get(args.taxonomy)
    if model is None:
        raise LarderError(f"no model for taxonomy {args.taxonomy!r} in artifacts")
    raws = corpus_mod.load_corpus(args.test, args.format,
                                  [t.name for t in bundle.corpus.taxonomies])
    prepped, _ = textprep.prep_corpus(raws, bundle.prep)
    recipes = []
    for i, rec in enumerate(prepped):
        ids, _ = bundle.resolve_many(rec.ingredients)
        if ids and rec.labels.get(args.taxonomy):
            recipes.append(
                corpus_mod.Recipe(f"t{i:04d}", rec.title, frozenset(ids), dict(rec.labels))
            )
    if not recipes:
        raise UsageError(f"test file has no usable recipes labeled in {args.taxonomy!r}")
    result = classify.evaluate(model, recipes)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["accuracy", repr(result.accuracy)])
    writer.writerow(["class", *result.classes])
    for cls, row in zip(result.classes, result.confusion):
        writer.writerow([cls, *row])
    return 0


def _cmd_stats(args) -> int:
    raws = corpus_mod.load_corpus(args.corpus, args.format)
    prep_cfg = textprep.PrepConfig.default()
    prepped, _ = textprep.prep_corpus(raws, prep_cfg)
    if not prepped:
        raise LarderError("corpus has no usable recipes after cleaning")
    # Identity lexicon: stats count distinct cleaned ingredient names.
    distinct = sorted({ing for rec in prepped for ing in rec.ingredients})
    lexicon = IngredientLexicon(
        canon={i: i for i in distinct}, alias={i: i for i in distinct}
    )
    built = corpus_mod.build_corpus(prepped, lexicon)
    rows = [
        [row.taxonomy, row.class_name, row.recipe_count, repr(row.mean_ingredients)]
        for row in corpus_mod.corpus_stats(built)
    ]
    _print_csv(rows, ["taxonomy", "class", "recipe_count", "mean_ingredients"])
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    port = args.port if args.port is not None else int(os.environ.get(PORT_ENV, "8000"))
    bundle = load_artifacts(_artifacts_dir(args))
    app = create_app(bundle=bundle, cors_origins=tuple(args.cors_origin))
    try:
        uvicorn.run(app, host=args.host, port=port, log_level="warning")
    except OSError as exc:
        raise LarderError(f"cannot bind {args.host}:{port}: {exc}") from exc
    except SystemExit as exc:
        # uvicorn exits directly when the port is taken
        if exc.code:
            raise LarderError(f"cannot bind {args.host}:{port} (port in use?)") from exc
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "pipeline":
            return _cmd_pipeline_run(args)
        if args.command == "mine":
            return _cmd_mine(args)
        if args.command == "recommend":
            return _cmd_recommend(args)
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "evaluate":
            return _cmd_evaluate(args)
        if args.command == "stats":
            return _cmd_stats(args)
        if args.command == "serve":
            return _cmd_serve(args)
        parser.error(f"unknown command {args.command!r}")
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (LarderError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
