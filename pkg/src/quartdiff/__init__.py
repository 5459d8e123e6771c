"""quartdiff: decide n = x^4 - y^4 over the nonzero rationals.

Either finds an exact primitive witness (x, y, z) with x^4 - y^4 = n z^4 or
assembles a machine-verifiable certificate of non-representability from
descent to a^2 u^8 + b^2 v^8 = c w^4, prime-power local obstructions,
rank-0 elliptic curve arguments, the Mordell-Weil sieve, Pythagorean-triple
descent, and Gaussian-integer factorization with p-adic scheme checks.
"""

from .arith import (
    PowerFreeDecomp,
    ResidueTable,
    coprime_split,
    fourth_power_free,
    is_kth_power,
    two_monomial_split,
)
from .certificates import VerificationError, canonical_json, verify_certificate
from .curves import (
    Curve,
    CurveMap,
    ProjPoint,
    build_curves,
    group_law,
    map_solution,
    rank0_eliminate,
    rank_upper_bound,
    torsion_subgroup,
)
from .descent import OctalEquation, ReductionStep, mordell_filter, reduce_to_triples
from .gaussian import (
    AlphaCase,
    GaussInt,
    classical_form_filter,
    decide_gaussian,
    enumerate_alpha,
    expand_case,
    gauss_factor,
)
from .localsolve import (
    DiagonalForm,
    LocalObstruction,
    QuarticSystem,
    Verdict,
    obstruct_mod_prime_power,
    scheme_local_solubility,
)
from .pipeline import Config, Outcome, load_generator_file, run_range, solve
from .pythag import DerivedOctal, PythagSystem, pythag_descend, pythag_eliminate, pythag_systems
from .sieve import SieveData, find_sieve_certificate, local_images, run_sieve, subgroup_mod_p
from .witness import Witness, find_witness, verify_witness

__version__ = "0.1.0"

__all__ = [
    "AlphaCase",
    "Config",
    "Curve",
    "CurveMap",
    "DerivedOctal",
    "DiagonalForm",
    "GaussInt",
    "LocalObstruction",
    "OctalEquation",
    "Outcome",
    "PowerFreeDecomp",
    "ProjPoint",
    "PythagSystem",
    "QuarticSystem",
    "ReductionStep",
    "ResidueTable",
    "SieveData",
    "Verdict",
    "VerificationError",
    "Witness",
    "build_curves",
    "canonical_json",
    "classical_form_filter",
    "coprime_split",
    "decide_gaussian",
    "enumerate_alpha",
    "expand_case",
    "find_sieve_certificate",
    "find_witness",
    "fourth_power_free",
    "gauss_factor",
    "group_law",
    "is_kth_power",
    "load_generator_file",
    "local_images",
    "map_solution",
    "mordell_filter",
    "obstruct_mod_prime_power",
    "pythag_descend",
    "pythag_eliminate",
    "pythag_systems",
    "rank0_eliminate",
    "rank_upper_bound",
    "reduce_to_triples",
    "run_range",
    "run_sieve",
    "scheme_local_solubility",
    "solve",
    "subgroup_mod_p",
    "torsion_subgroup",
    "two_monomial_split",
    "verify_certificate",
    "verify_witness",
]
