"""Balanced pairs in finite posets.

Thin wrapper over the C++ core. Element ids are the integers 0..n-1;
probabilities come back as fractions.Fraction.
"""

from ._core import (
    AlgorithmStuck,
    CycleError,
    Error,
    IsChainError,
    NotForestError,
    ParseError,
    Poset,
    SizeError,
    campaign_names,
    classify_all_pairs,
    count_extensions,
    find_balanced_pair_exhaustive,
    find_balanced_pair_semiorder,
    find_very_good_pair_forest,
    is_balanced,
    is_chain,
    is_cover_forest,
    is_good_pair,
    is_semiorder,
    is_very_good_pair,
    prob_before,
    run_campaign,
)


def parse(text):
    """Parse the `a < b` line format into a Poset."""
    return Poset.parse(text)


__all__ = [
    "AlgorithmStuck",
    "CycleError",
    "Error",
    "IsChainError",
    "NotForestError",
    "ParseError",
    "Poset",
    "SizeError",
    "campaign_names",
    "classify_all_pairs",
    "count_extensions",
    "find_balanced_pair_exhaustive",
    "find_balanced_pair_semiorder",
    "find_very_good_pair_forest",
    "is_balanced",
    "is_chain",
    "is_cover_forest",
    "is_good_pair",
    "is_semiorder",
    "is_very_good_pair",
    "parse",
    "prob_before",
    "run_campaign",
]
