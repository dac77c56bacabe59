"""Operation counts for one full protocol run, split by phase."""

from __future__ import annotations

import random

from mlvc.opcount import OpCounter, counting
from mlvc.vcmm import mm_compute, mm_keygen, mm_probgen, mm_verify
from mlvc.vcpe import PLAIN, pe_compute, pe_keygen, pe_probgen, pe_verify

CLIENT_PHASES = ("probgen", "verify")
SERVER_PHASES = ("compute",)


def measure_pe(n: int, seed: int = 0, lambda_bits: int = 16, mode: str = PLAIN) -> OpCounter:
    rng = random.Random(seed)
    coeffs = [rng.randrange(1 << lambda_bits) for _ in range(n + 1)]
    alpha = rng.randrange(256)
    with counting() as counter:
        pk, sk = pe_keygen(coeffs, rng, lambda_bits=lambda_bits, mode=mode)
        query = pe_probgen(sk, pk, alpha, rng)
        response = pe_compute(pk, query.sigma)
        pe_verify(sk, pk, alpha, response)
    return counter


def measure_mm(n: int, seed: int = 0, lambda_bits: int = 16, mode: str = PLAIN) -> OpCounter:
    rng = random.Random(seed)
    M = [[rng.randrange(1 << lambda_bits) for _ in range(n)] for _ in range(n)]
    x = [rng.randrange(256) for _ in range(n)]
    with counting() as counter:
        pk, sk = mm_keygen(M, rng, lambda_bits=lambda_bits, mode=mode)
        query = mm_probgen(sk, pk, x, rng)
        response = mm_compute(pk, query.sigma)
        mm_verify(sk, pk, query.tau, response)
    return counter


def client_ops(counter: OpCounter) -> int:
    return counter.total(*CLIENT_PHASES)


def server_ops(counter: OpCounter) -> int:
    return counter.total(*SERVER_PHASES)
