"""Necessary-condition checks for quaternionic endomorphism data of modular abelian varieties.

Exact arithmetic over Q and real quadratic fields, Hilbert symbols and
quaternion discriminants, the exclusion criteria, and a batch sieve.
"""

from .criteria import (
    ExceptionalSet,
    ModularTriplet,
    RunOptions,
    Verdict,
    Witness,
    check_theorem_Sh,
    compute_exceptional_set,
    compute_kappa_B,
    run_all,
)
from .quad_field import QQ, AlgInt, FieldDesc, PrimeIdealF
from .quaternion_alg import QuatDisc, hilbert_symbol, quat_discriminant

__all__ = [
    "QQ",
    "AlgInt",
    "ExceptionalSet",
    "FieldDesc",
    "ModularTriplet",
    "PrimeIdealF",
    "QuatDisc",
    "RunOptions",
    "Verdict",
    "Witness",
    "check_theorem_Sh",
    "compute_exceptional_set",
    "compute_kappa_B",
    "hilbert_symbol",
    "quat_discriminant",
    "run_all",
]
