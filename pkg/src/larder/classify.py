"""Per-taxonomy multi-label classifiers over ingredient sets.

Two models: a one-vs-rest logistic regression trained by plain SGD (the
primary), and multinomial naive Bayes with Laplace smoothing (a closed-form
baseline the SGD model is sanity-checked against). Features are a binary
bag over the canonical ingredient vocabulary. Per-class sigmoid
probabilities are thresholded at 0.3 for multi-label assignment, falling
back to the argmax class when nothing clears the threshold.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .corpus import Corpus, Recipe, Taxonomy
from .errors import IntegrityError, TrainingError

DEFAULT_THRESHOLD = 0.3
MODEL_FORMAT_VERSION = 1


def build_vocab(corpus: Corpus) -> tuple[str, ...]:
    """Sorted canonical ingredient ids; the feature index space."""
    return tuple(sorted(corpus.lexicon.canon))


@dataclass(frozen=True)
class FeatureVector:
    vocab_size: int
    active: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= i < self.vocab_size for i in self.active):
            raise ValueError("feature index out of range")


def featurize(ingredient_ids: frozenset[str] | set[str], vocab: Sequence[str]) -> FeatureVector:
    """Binary bag-of-ingredients; out-of-vocabulary ids are ignored."""
    index = {item: i for i, item in enumerate(vocab)}
    active = sorted(index[i] for i in ingredient_ids if i in index)
    return FeatureVector(len(vocab), tuple(active))


@dataclass(frozen=True)
class Hyper:
    learning_rate: float = 0.1
    l2: float = 1e-4
    epochs: int = 30
    seed: int = 42


@dataclass(frozen=True)
class LinearModel:
    taxonomy: str
    classes: tuple[str, ...]
    vocab: tuple[str, ...]
    weights: np.ndarray  # (classes, vocab)
    biases: np.ndarray  # (classes,)
    hyper: Hyper


@dataclass(frozen=True)
class NBModel:
    taxonomy: str
    classes: tuple[str, ...]
    vocab: tuple[str, ...]
    log_prior: np.ndarray  # (classes,)
    log_likelihood: np.ndarray  # (classes, vocab)
    alpha: float = 1.0


@dataclass(frozen=True)
class MultiLabelResult:
    per_class_probability: dict[str, float]
    assigned: tuple[str, ...]


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def _taxonomy_examples(
    corpus: Corpus, taxonomy: str
) -> tuple[Taxonomy, list[Recipe]]:
    try:
        tax = corpus.taxonomy(taxonomy)
    except KeyError:
        raise TrainingError(f"no taxonomy named {taxonomy!r}")
    recipes = [r for r in corpus.recipes if r.labels.get(taxonomy)]
    return tax, recipes


def _check_classes(tax: Taxonomy, recipes: Sequence[Recipe]) -> None:
    if len(tax.classes) < 2:
        raise TrainingError(f"taxonomy {tax.name!r} needs at least two classes")
    for cls in tax.classes:
        if not any(cls in r.labels.get(tax.name, ()) for r in recipes):
            raise TrainingError(f"taxonomy {tax.name!r}: class {cls!r} has no examples")


def _encode(recipes: Sequence[Recipe], tax: Taxonomy, vocab: Sequence[str]):
    index = {item: i for i, item in enumerate(vocab)}
    xs = [
        np.array(sorted(index[i] for i in r.ingredient_ids if i in index), dtype=np.intp)
        for r in recipes
    ]
    ys = np.zeros((len(recipes), len(tax.classes)), dtype=np.float64)
    for row, recipe in enumerate(recipes):
        carried = set(recipe.labels.get(tax.name, ()))
        for col, cls in enumerate(tax.classes):
            if cls in carried:
                ys[row, col] = 1.0
    return xs, ys


def _fit_sgd(xs, ys: np.ndarray, vocab_size: int, hyper: Hyper):
    n_classes = ys.shape[1]
    weights = np.zeros((n_classes, vocab_size), dtype=np.float64)
    biases = np.zeros(n_classes, dtype=np.float64)
    rng = np.random.default_rng(hyper.seed)
    lr, l2 = hyper.learning_rate, hyper.l2
    for _ in range(hyper.epochs):
        for i in rng.permutation(len(xs)):
            idx = xs[i]
            scores = weights[:, idx].sum(axis=1) + biases if len(idx) else biases.copy()
            grad = _sigmoid(scores) - ys[i]
            weights *= 1.0 - lr * l2
            if len(idx):
                weights[:, idx] -= lr * grad[:, None]
            biases -= lr * grad
    return weights, biases


def train_sgd(corpus: Corpus, taxonomy: str, hyper: Hyper = Hyper()) -> LinearModel:
    """One-vs-rest logistic regression per class, trained by seeded SGD.

    Per example the update is w <- w - lr*(sigmoid(w.x + b) - y)*x - lr*l2*w
    with the example order reshuffled each epoch; a recipe is a positive
    example for every class it carries. Deterministic given the seed.
    """
    tax, recipes = _taxonomy_examples(corpus, taxonomy)
    _check_classes(tax, recipes)
    vocab = build_vocab(corpus)
    xs, ys = _encode(recipes, tax, vocab)
    weights, biases = _fit_sgd(xs, ys, len(vocab), hyper)
    return LinearModel(taxonomy, tax.classes, vocab, weights, biases, hyper)


def train_nb(corpus: Corpus, taxonomy: str, alpha: float = 1.0) -> NBModel:
    """Multinomial naive Bayes over binary ingredient counts, Laplace-smoothed."""
    if alpha <= 0:
        raise TrainingError("alpha must be positive")
    tax, recipes = _taxonomy_examples(corpus, taxonomy)
    _check_classes(tax, recipes)
    vocab = build_vocab(corpus)
    xs, ys = _encode(recipes, tax, vocab)

    counts = np.zeros((len(tax.classes), len(vocab)), dtype=np.float64)
    class_sizes = ys.sum(axis=0)
    for idx, y in zip(xs, ys):
        for col in np.nonzero(y)[0]:
            counts[col, idx] += 1.0
    log_prior = np.log(class_sizes / class_sizes.sum())
    totals = counts.sum(axis=1, keepdims=True)
    log_likelihood = np.log((counts + alpha) / (totals + alpha * len(vocab)))
    return NBModel(taxonomy, tax.classes, vocab, log_prior, log_likelihood, alpha)


def predict_proba(model: LinearModel | NBModel, ingredient_ids) -> dict[str, float]:
    """Per-class probability: independent sigmoids for the linear model,
    softmax-normalized joint log-probability for naive Bayes."""
    fv = featurize(ingredient_ids, model.vocab)
    idx = np.array(fv.active, dtype=np.intp)
    if isinstance(model, LinearModel):
        scores = model.weights[:, idx].sum(axis=1) + model.biases if len(idx) else model.biases
        probs = _sigmoid(scores)
    else:
        scores = model.log_prior + (
            model.log_likelihood[:, idx].sum(axis=1) if len(idx) else 0.0
        )
        shifted = np.exp(scores - scores.max())
        probs = shifted / shifted.sum()
    return {cls: float(p) for cls, p in zip(model.classes, probs)}


def assign_labels(probabilities: Mapping[str, float], threshold: float = DEFAULT_THRESHOLD) -> tuple[str, ...]:
    """Classes at or above the threshold; the argmax class when none clears it."""
    chosen = tuple(cls for cls, p in probabilities.items() if p >= threshold)
    if chosen:
        return chosen
    best = max(probabilities, key=lambda cls: probabilities[cls])
    return (best,)


def predict_multilabel(
    model: LinearModel | NBModel,
    ingredient_ids,
    threshold: float = DEFAULT_THRESHOLD,
) -> MultiLabelResult:
    probs = predict_proba(model, ingredient_ids)
    return MultiLabelResult(probs, assign_labels(probs, threshold))


# --- single-example loss/gradient, used by the finite-difference checks ------


def example_loss(w: np.ndarray, b: float, active: Sequence[int], y: float, l2: float) -> float:
    """Regularized log-loss of one binary example with binary features."""
    z = float(w[list(active)].sum() + b)
    p = 0.5 * (1.0 + math.tanh(0.5 * z))
    eps = 1e-300
    return -(y * math.log(p + eps) + (1.0 - y) * math.log(1.0 - p + eps)) + 0.5 * l2 * float(
        w @ w
    )


def example_gradient(
    w: np.ndarray, b: float, active: Sequence[int], y: float, l2: float
) -> tuple[np.ndarray, float]:
    """Analytic gradient of :func:`example_loss` w.r.t. (w, b)."""
    z = float(w[list(active)].sum() + b)
    p = 0.5 * (1.0 + math.tanh(0.5 * z))
    grad_w = l2 * w.copy()
    grad_w[list(active)] += p - y
    return grad_w, p - y


# --- evaluation ---------------------------------------------------------------


@dataclass(frozen=True)
class EvalResult:
    accuracy: float
    confusion: tuple[tuple[int, ...], ...]  # [true][predicted]
    classes: tuple[str, ...]


def primary_label(recipe: Recipe, taxonomy: str) -> str | None:
    labels = recipe.labels.get(taxonomy, ())
    return labels[0] if labels else None


def evaluate(model: LinearModel | NBModel, held_out: Sequence[Recipe]) -> EvalResult:
    """Argmax accuracy and confusion matrix against first-listed labels.

    Recipes without a label in the model's taxonomy are skipped.
    """
    classes = model.classes
    col = {cls: i for i, cls in enumerate(classes)}
    confusion = [[0] * len(classes) for _ in classes]
    total = 0
    for recipe in held_out:
        truth = primary_label(recipe, model.taxonomy)
        if truth is None or truth not in col:
            continue
        probs = predict_proba(model, recipe.ingredient_ids)
        predicted = max(classes, key=lambda cls: (probs[cls], -col[cls]))
        confusion[col[truth]][col[predicted]] += 1
        total += 1
    if total == 0:
        raise ValueError(f"held-out set has no recipes labeled in {model.taxonomy!r}")
    correct = sum(confusion[i][i] for i in range(len(classes)))
    return EvalResult(correct / total, tuple(tuple(row) for row in confusion), classes)


# --- grid search ---------------------------------------------------------------


@dataclass(frozen=True)
class GridPoint:
    hyper: Hyper
    fold_accuracies: tuple[float, ...]
    mean_accuracy: float


@dataclass(frozen=True)
class GridSearchResult:
    best: Hyper
    table: tuple[GridPoint, ...]
    folds: int


def _stratified_folds(recipes: Sequence[Recipe], taxonomy: str, classes, folds: int):
    buckets: dict[str, list[Recipe]] = {cls: [] for cls in classes}
    for recipe in sorted(recipes, key=lambda r: r.id):
        label = primary_label(recipe, taxonomy)
        if label in buckets:
            buckets[label].append(recipe)
    assignments: list[list[Recipe]] = [[] for _ in range(folds)]
    for cls in classes:
        for j, recipe in enumerate(buckets[cls]):
            assignments[j % folds].append(recipe)
    return assignments


def grid_search(
    corpus: Corpus,
    taxonomy: str,
    grid: Mapping[str, Sequence],
    folds: int = 5,
    seed: int = 42,
) -> GridSearchResult:
    """Stratified k-fold cross-validation over an SGD hyperparameter grid.

    ``grid`` holds ``learning_rates``, ``l2s``, and ``epochs`` lists. Ties on
    mean accuracy break toward smaller l2, then smaller learning rate, then
    fewer epochs. Folds shrink (minimum 2, with a warning) when the smallest
    class cannot populate every fold.
    """
    if folds < 2:
        raise TrainingError("folds must be >= 2")
    for key in ("learning_rates", "l2s", "epochs"):
        if not grid.get(key):
            raise TrainingError(f"grid is missing non-empty {key!r}")
    tax, recipes = _taxonomy_examples(corpus, taxonomy)
    _check_classes(tax, recipes)
    vocab = build_vocab(corpus)

    smallest = min(
        sum(1 for r in recipes if primary_label(r, taxonomy) == cls) for cls in tax.classes
    )
    if smallest < folds:
        effective = max(2, smallest)
        warnings.warn(
            f"reducing folds from {folds} to {effective}: "
            f"smallest class in {taxonomy!r} has {smallest} members"
        )
        folds = effective
    fold_sets = _stratified_folds(recipes, taxonomy, tax.classes, folds)

    points = []
    for lr, l2, epochs in product(grid["learning_rates"], grid["l2s"], grid["epochs"]):
        hyper = Hyper(lr, l2, epochs, seed)
        accuracies = []
        for held in range(folds):
            train_recipes = [r for f, fold in enumerate(fold_sets) if f != held for r in fold]
            xs, ys = _encode(train_recipes, tax, vocab)
            weights, biases = _fit_sgd(xs, ys, len(vocab), hyper)
            model = LinearModel(taxonomy, tax.classes, vocab, weights, biases, hyper)
            accuracies.append(evaluate(model, fold_sets[held]).accuracy)
        points.append(GridPoint(hyper, tuple(accuracies), sum(accuracies) / folds))

    best = min(
        points,
        key=lambda pt: (-pt.mean_accuracy, pt.hyper.l2, pt.hyper.learning_rate, pt.hyper.epochs),
    )
    return GridSearchResult(best.hyper, tuple(points), folds)


# --- persistence ---------------------------------------------------------------


def save_model(model: LinearModel | NBModel, path) -> None:
    if isinstance(model, LinearModel):
        doc = {
            "format_version": MODEL_FORMAT_VERSION,
            "kind": "sgd_linear",
            "taxonomy": model.taxonomy,
            "classes": list(model.classes),
            "vocab": list(model.vocab),
            "weights": model.weights.tolist(),
            "biases": model.biases.tolist(),
            "hyper": {
                "learning_rate": model.hyper.learning_rate,
                "l2": model.hyper.l2,
                "epochs": model.hyper.epochs,
                "seed": model.hyper.seed,
            },
        }
    else:
        doc = {
            "format_version": MODEL_FORMAT_VERSION,
            "kind": "multinomial_nb",
            "taxonomy": model.taxonomy,
            "classes": list(model.classes),
            "vocab": list(model.vocab),
            "log_prior": model.log_prior.tolist(),
            "log_likelihood": model.log_likelihood.tolist(),
            "alpha": model.alpha,
        }
    Path(path).write_text(json.dumps(doc, sort_keys=True) + "\n", encoding="utf-8")


def load_model(path) -> LinearModel | NBModel:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    version = doc.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise IntegrityError(
            f"{Path(path).name}: model format_version {version!r} unsupported "
            f"(expected {MODEL_FORMAT_VERSION})"
        )
    kind = doc.get("kind")
    if kind == "sgd_linear":
        return LinearModel(
            doc["taxonomy"],
            tuple(doc["classes"]),
            tuple(doc["vocab"]),
            np.array(doc["weights"], dtype=np.float64),
            np.array(doc["biases"], dtype=np.float64),
            Hyper(**doc["hyper"]),
        )
    if kind == "multinomial_nb":
        return NBModel(
            doc["taxonomy"],
            tuple(doc["classes"]),
            tuple(doc["vocab"]),
            np.array(doc["log_prior"], dtype=np.float64),
            np.array(doc["log_likelihood"], dtype=np.float64),
            doc["alpha"],
        )
    raise IntegrityError(f"{Path(path).name}: unknown model kind {kind!r}")
