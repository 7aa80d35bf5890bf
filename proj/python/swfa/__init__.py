"""Spectral learning of rational stochastic languages from Hankel matrices."""

from ._swfa import (
    DivergenceError,
    Model,
    ParseError,
    SymbolError,
    basis_words,
    bound_baseline,
    bound_factor,
    bound_prefix,
    bound_standard,
    dumps_model,
    empirical_hankel,
    exact_hankel,
    k_eta,
    l1_distance_upto,
    learn,
    learn_exact,
    load_model,
    loads_model,
    random_pfa,
    sample,
    save_model,
    solve_t,
    spectral_norm_error,
)

__all__ = [
    "DivergenceError",
    "Model",
    "ParseError",
    "SymbolError",
    "basis_words",
    "bound_baseline",
    "bound_factor",
    "bound_prefix",
    "bound_standard",
    "dumps_model",
    "empirical_hankel",
    "exact_hankel",
    "k_eta",
    "l1_distance_upto",
    "learn",
    "learn_exact",
    "load_model",
    "loads_model",
    "random_pfa",
    "sample",
    "save_model",
    "solve_t",
    "spectral_norm_error",
]
