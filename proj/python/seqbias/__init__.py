"""Rank recovery from sequentially biased scores."""

from ._core import (
    DataError,
    IoError,
    adversarial_permutation,
    brute_force_ls,
    d_entrywise,
    d_inv,
    d_kt,
    d_sf,
    detect_conflicts,
    exact_bayes_loss,
    exists_conflict_ranking,
    from_relative_ranks,
    generate_scores,
    ls_estimate,
    parametric_score,
    ranking_from_scores,
    relative_ranks,
    rho,
    run_trial,
    sf_error_bound,
    simulate,
)

__all__ = [
    "DataError",
    "IoError",
    "adversarial_permutation",
    "brute_force_ls",
    "d_entrywise",
    "d_inv",
    "d_kt",
    "d_sf",
    "detect_conflicts",
    "exact_bayes_loss",
    "exists_conflict_ranking",
    "from_relative_ranks",
    "generate_scores",
    "ls_estimate",
    "parametric_score",
    "ranking_from_scores",
    "relative_ranks",
    "rho",
    "run_trial",
    "sf_error_bound",
    "simulate",
]
