"""Spectral cosine-series estimation of spot volatility and noise variance."""

from ._specvol import (
    __version__,
    aliased_sum,
    build_k,
    cosine_coeffs,
    diagonalization_residual,
    dst,
    eigensum_band,
    estimate_sigma,
    estimate_tau,
    eval_series,
    normality_check,
    oracle_threshold,
    rate_fit,
    run_figure,
    simulate,
    sobolev_weighted_sum,
    variogram_sbm,
)

__all__ = [
    "__version__",
    "aliased_sum",
    "build_k",
    "cosine_coeffs",
    "diagonalization_residual",
    "dst",
    "eigensum_band",
    "estimate_sigma",
    "estimate_tau",
    "eval_series",
    "normality_check",
    "oracle_threshold",
    "rate_fit",
    "run_figure",
    "simulate",
    "sobolev_weighted_sum",
    "variogram_sbm",
]
