"""Private information retrieval from an outsourced bit database.

Two layouts:

* polynomial: interpolate ``f`` with ``f(i) = w_i`` for ``i = 1..n`` and query
  ``f(i)``; a query costs ``ceil(log2 n)`` group elements.
* matrix: pack ``w`` row-major into a ``sqrt(n) x sqrt(n)`` matrix (zero-padded
  to the next square) and query with a unit vector; a query costs
  ``sqrt(n)`` group elements.

Database indices are 1-based.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from mlvc import bgn
from mlvc.bgn import MessageDomain
from mlvc.polyarith import interpolate
from mlvc.tamper import tamper_mm, tamper_pe
from mlvc.vcmm import MmPublicKey, MmSecretKey, mm_compute, mm_keygen, mm_probgen, mm_verify
from mlvc.vcpe import (
    PLAIN,
    PePublicKey,
    PeSecretKey,
    pe_compute,
    pe_keygen,
    pe_probgen,
    pe_verify,
    top_level,
)

BIT_DOMAIN = MessageDomain(2)


def parse_database(bits: str) -> str:
    bits = bits.strip()
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError("database must be a non-empty string of 0s and 1s")
    return bits


@dataclass
class PePirState:
    db: str
    pk: PePublicKey
    sk: PeSecretKey
    rng: random.Random = field(repr=False)
    last_query_elements: int = 0


@dataclass
class MmPirState:
    db: str
    side: int
    pk: MmPublicKey
    sk: MmSecretKey
    rng: random.Random = field(repr=False)
    last_query_elements: int = 0


def pir_pe_setup(
    db: str, rng: random.Random, lambda_bits: int = 16, mode: str = PLAIN
) -> PePirState:
    db = parse_database(db)
    n = len(db)
    if n < 2:
        raise ValueError("polynomial PIR needs at least 2 bits")
    # q > n keeps the points 1..n distinct mod q
    need = math.ceil(math.log2(n)) + 2
    if lambda_bits < need:
        raise ValueError(f"lambda_bits must be >= {need} for a {n}-bit database")
    keys = bgn.keygen(lambda_bits, top_level(n - 1, mode), rng)
    q = keys[0].params.q
    f = interpolate([(i, int(w)) for i, w in enumerate(db, start=1)], q)
    pk, sk = pe_keygen(
        f, rng, mode=mode, domain=BIT_DOMAIN, inputs=range(1, n + 1), bgn_keys=keys
    )
    return PePirState(db, pk, sk, rng)


def pir_pe_retrieve(state: PePirState, i: int, tamper: str | None = None) -> int:
    """Fetch ``w_i``; raises :class:`~mlvc.errors.Reject` if the server cheats."""
    query = pe_probgen(state.sk, state.pk, i, state.rng)
    state.last_query_elements = len(query.sigma)
    if tamper is None:
        response = pe_compute(state.pk, query.sigma)
    else:
        other = None
        if tamper == "replay":
            j = i % len(state.db) + 1
            other = pe_probgen(state.sk, state.pk, j, state.rng).sigma
        response = tamper_pe(state.pk, query.sigma, tamper, state.rng, other)
    return pe_verify(state.sk, state.pk, i, response)


def pir_mm_setup(
    db: str, rng: random.Random, lambda_bits: int = 16, mode: str = PLAIN
) -> MmPirState:
    db = parse_database(db)
    side = math.isqrt(len(db) - 1) + 1
    padded = db.ljust(side * side, "0")
    M = [[int(padded[r * side + c]) for c in range(side)] for r in range(side)]
    pk, sk = mm_keygen(M, rng, lambda_bits=lambda_bits, mode=mode,
                       domain=BIT_DOMAIN, inputs=range(2))
    return MmPirState(db, side, pk, sk, rng)


def pir_mm_retrieve(
    state: MmPirState, i: int, j: int, tamper: str | None = None
) -> int:
    """Fetch ``M_ij`` (row-major, 1-based) via the unit-vector query ``e_j``."""
    side = state.side
    if not (1 <= i <= side and 1 <= j <= side):
        raise IndexError(f"cell ({i}, {j}) outside a {side}x{side} matrix")
    x = [0] * side
    x[j - 1] = 1
    query = mm_probgen(state.sk, state.pk, x, state.rng)
    state.last_query_elements = len(query.sigma)
    if tamper is None:
        response = mm_compute(state.pk, query.sigma)
    else:
        other = None
        if tamper == "replay":
            x2 = [0] * side
            x2[j % side] = 1
            other = mm_probgen(state.sk, state.pk, x2, state.rng).sigma
        response = tamper_mm(state.pk, query.sigma, tamper, state.rng, other)
    return mm_verify(state.sk, state.pk, query.tau, response)[i - 1]


def pir_mm_retrieve_index(
    state: MmPirState, index: int, tamper: str | None = None
) -> int:
    """Fetch ``w_index`` by its 1-based position in the flat database."""
    if not 1 <= index <= len(state.db):
        raise IndexError(f"index {index} outside [1, {len(state.db)}]")
    r, c = divmod(index - 1, state.side)
    return pir_mm_retrieve(state, r + 1, c + 1, tamper)
