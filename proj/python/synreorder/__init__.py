"""Syntactic source reordering for English -> Hindi SMT preprocessing."""

from ._core import (
    SynreorderError,
    Tree,
    builtin_rules,
    compare_reports,
    evaluate,
    extract_phrase_pairs,
    fixtures,
    levenshtein,
    parse_ptb,
    phrase_report,
    render_ptb,
    reorder,
    reorder_corpus,
    trace,
    validate_rules,
)

__all__ = [
    "SynreorderError",
    "Tree",
    "builtin_rules",
    "compare_reports",
    "evaluate",
    "extract_phrase_pairs",
    "fixtures",
    "levenshtein",
    "parse_ptb",
    "phrase_report",
    "render_ptb",
    "reorder",
    "reorder_corpus",
    "trace",
    "validate_rules",
]
