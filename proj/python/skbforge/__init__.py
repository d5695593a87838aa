"""Sememe knowledge bases built from dictionary definitions."""

from ._core import (
    Skb,
    SkbError,
    __version__,
    annotate,
    build_sememe_set,
    distill,
    distill_sense,
    evaluate_consistency,
    extract_sememes,
    importance_scores,
    normalize,
    read_conllu,
    substitute_stats,
    substitutes,
)

__all__ = [
    "Skb",
    "SkbError",
    "__version__",
    "annotate",
    "build_sememe_set",
    "distill",
    "distill_sense",
    "evaluate_consistency",
    "extract_sememes",
    "importance_scores",
    "normalize",
    "read_conllu",
    "substitute_stats",
    "substitutes",
]
