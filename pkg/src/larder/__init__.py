"""Ingredient-driven recipe recommendation toolkit.

Mines association rules over recipe ingredient sets, expands user
ingredients into rule-derived combinations, labels recipes with per-taxonomy
multi-label classifiers, and exposes the results through a CLI and an HTTP
service with an ingredient-network export.
"""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    CorpusFormatError,
    IntegrityError,
    LarderError,
    MiningError,
    PipelineError,
    TrainingError,
    UnknownIngredientError,
)

__all__ = [
    "ConfigError",
    "CorpusFormatError",
    "IntegrityError",
    "LarderError",
    "MiningError",
    "PipelineError",
    "TrainingError",
    "UnknownIngredientError",
    "__version__",
]
