"""Continued-fraction Diophantine approximation and small-d RSA attacks."""

from ._core import (
    ApproxSolution,
    AttackOutcome,
    CFExpansion,
    RsaKeySet,
    SweepStats,
    brute_force_solutions,
    cf_expand,
    classify_solution,
    convergent,
    enumerate_solutions,
    gen_key,
    isqrt,
    modpow_test,
    phi_test,
    semiconvergent,
    variant_attack,
    variant_sweep,
    vvt_attack,
    vvt_sweep,
    wiener_attack,
    wiener_f_attack,
)

__all__ = [
    "ApproxSolution",
    "AttackOutcome",
    "CFExpansion",
    "RsaKeySet",
    "SweepStats",
    "brute_force_solutions",
    "cf_expand",
    "classify_solution",
    "convergent",
    "enumerate_solutions",
    "gen_key",
    "isqrt",
    "modpow_test",
    "phi_test",
    "semiconvergent",
    "variant_attack",
    "variant_sweep",
    "vvt_attack",
    "vvt_sweep",
    "wiener_attack",
    "wiener_f_attack",
]
