"""Scripted malicious-server strategies.

Each strategy produces a response from public material only, exactly as a
cheating server could.  They exercise the client's rejection path; the
transparent backend gives no cryptographic soundness against an adversary
that reads exponents.
"""

from __future__ import annotations

import dataclasses
import random
from typing import Sequence

from mlvc.bgn import Ciphertext
from mlvc.mgroup import g_mul
from mlvc.vcmm import MmPublicKey, MmResponse, mm_compute
from mlvc.vcpe import PLAIN, PePublicKey, PeResponse, pe_compute

STRATEGIES = ("flip-rho", "random-pi", "permute-rows", "replay")


def _roll(xs: Sequence, by: int = 1) -> tuple:
    by %= len(xs)
    return tuple(xs[by:]) + tuple(xs[:by])


def tamper_pe(
    pk: PePublicKey,
    sigma: Sequence[Ciphertext],
    strategy: str,
    rng: random.Random,
    replay_sigma: Sequence[Ciphertext] | None = None,
) -> PeResponse:
    """A dishonest answer to ``sigma``.

    ``permute-rows`` evaluates with the coefficient vector rotated by one,
    i.e. the server serves a different polynomial.  ``replay`` returns the
    honest answer to ``replay_sigma`` instead.
    """
    if strategy == "flip-rho":
        honest = pe_compute(pk, sigma)
        shift = pk.params.generator(honest.rho.level)
        return PeResponse(g_mul(honest.rho, shift), honest.pi)
    if strategy == "random-pi":
        honest = pe_compute(pk, sigma)
        return PeResponse(honest.rho, pk.params.sample_uniform(honest.pi.level, rng))
    if strategy == "permute-rows":
        if pk.mode == PLAIN:
            forged = dataclasses.replace(
                pk, f=type(pk.f)(pk.f.modulus, _roll(pk.f.coeffs))
            )
        else:
            forged = dataclasses.replace(pk, gamma=_roll(pk.gamma))
        return pe_compute(forged, sigma)
    if strategy == "replay":
        if replay_sigma is None:
            raise ValueError("replay needs the ciphertexts of another query")
        return pe_compute(pk, replay_sigma)
    raise ValueError(f"unknown tamper strategy {strategy!r}")


def tamper_mm(
    pk: MmPublicKey,
    sigma: Sequence[Ciphertext],
    strategy: str,
    rng: random.Random,
    replay_sigma: Sequence[Ciphertext] | None = None,
) -> MmResponse:
    """A dishonest answer to ``sigma``.

    ``flip-rho`` and ``random-pi`` corrupt a randomly chosen row;
    ``permute-rows`` rotates the (rho, pi) pairs so each row carries another
    row's consistent-looking answer.
    """
    if strategy == "replay":
        if replay_sigma is None:
            raise ValueError("replay needs the ciphertexts of another query")
        return mm_compute(pk, replay_sigma)
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown tamper strategy {strategy!r}")
    honest = mm_compute(pk, sigma)
    rho, pi = list(honest.rho), list(honest.pi)
    row = rng.randrange(pk.n)
    if strategy == "flip-rho":
        rho[row] = g_mul(rho[row], pk.params.generator(rho[row].level))
    elif strategy == "random-pi":
        pi[row] = pk.params.sample_uniform(2, rng)
    else:
        rho, pi = list(_roll(rho)), list(_roll(pi))
    return MmResponse(tuple(rho), tuple(pi))
