"""Sparse recovery and column subset selection toolkit.

Thin Python surface over the C++ core: instance generators, the greedy /
progressive-stochastic-greedy selectors, closed-form theory bounds, and the
CSS application. All indices are 0-based.
"""

from ._core import (
    CssInstance,
    CssTrace,
    SelectionTrace,
    SparseInstance,
    __version__,
    best_rank_k_error,
    brute_force_support,
    gen_css_instance,
    gen_instance,
    lemma_ineq_margin,
    oracle_complexity,
    p_product_lower_bound,
    psg_expectation_bound,
    q_tilde_bounds,
    recon_error,
    restricted_lower_bound,
    restricted_upper_bound,
    run_css,
    run_selector,
    sample_size_n,
    schedule_size,
    submodularity_ratio,
)

__all__ = [
    "CssInstance",
    "CssTrace",
    "SelectionTrace",
    "SparseInstance",
    "__version__",
    "best_rank_k_error",
    "brute_force_support",
    "gen_css_instance",
    "gen_instance",
    "lemma_ineq_margin",
    "oracle_complexity",
    "p_product_lower_bound",
    "psg_expectation_bound",
    "q_tilde_bounds",
    "recon_error",
    "restricted_lower_bound",
    "restricted_upper_bound",
    "run_css",
    "run_selector",
    "sample_size_n",
    "schedule_size",
    "submodularity_ratio",
]
