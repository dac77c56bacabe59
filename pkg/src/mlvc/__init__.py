"""Verifiable outsourcing of polynomial evaluation and matrix-vector products
over leveled composite-order multilinear groups.

The bundled group backend is transparent (it stores discrete logs): every
protocol identity can be checked exactly, but it offers no secrecy.
"""

from mlvc.errors import DomainError, LevelError, MlvcError, Reject
from mlvc.mgroup import GroupElement, MlmParams, gen_params, multi_pair, pair
from mlvc.vcmm import mm_compute, mm_keygen, mm_probgen, mm_verify
from mlvc.vcpe import FUNCTION_PRIVATE, PLAIN, pe_compute, pe_keygen, pe_probgen, pe_verify

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "FUNCTION_PRIVATE",
    "GroupElement",
    "LevelError",
    "MlmParams",
    "MlvcError",
    "PLAIN",
    "Reject",
    "gen_params",
    "mm_compute",
    "mm_keygen",
    "mm_probgen",
    "mm_verify",
    "multi_pair",
    "pair",
    "pe_compute",
    "pe_keygen",
    "pe_probgen",
    "pe_verify",
]
