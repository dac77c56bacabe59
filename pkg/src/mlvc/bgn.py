"""Boneh-Goh-Nissim encryption generalised to a k-multilinear group.

A ciphertext of ``m`` at level ``l`` is ``g_l^m * h_l^r`` where ``h`` has
order q.  Ciphertexts add under the group law and multiply under the
pairing, up to the top level of the instance.  Decryption raises to the
power ``p`` (killing the ``h`` part) and solves a small discrete log.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from mlvc.errors import DomainError, LevelError
from mlvc.mgroup import (
    GroupElement,
    MlmParams,
    g_mul,
    g_pow,
    gen_params,
    multi_pair,
    order_q_element,
)

DEFAULT_DOMAIN_BOUND = 1 << 16


@dataclass(frozen=True)
class MessageDomain:
    """Plaintexts decodable by decryption: the interval ``[0, bound)``."""

    bound: int = DEFAULT_DOMAIN_BOUND

    def __post_init__(self) -> None:
        if self.bound < 1:
            raise ValueError("domain bound must be positive")

    def __contains__(self, m: int) -> bool:
        return 0 <= m < self.bound


@dataclass(frozen=True)
class BgnPublicKey:
    params: MlmParams
    h: GroupElement

    @property
    def g(self) -> GroupElement:
        return self.params.generator(1)

    def h_at(self, level: int) -> GroupElement:
        """``h`` lifted to ``level``: ``e_level(h, g_1, ..., g_1)``."""
        return self.params.element(level, self.h.exp)


@dataclass(frozen=True)
class BgnSecretKey:
    p: int


# A ciphertext is just a group element; the alias keeps signatures readable.
Ciphertext = GroupElement


def keygen(
    lambda_bits: int, k: int, rng: random.Random
) -> tuple[BgnPublicKey, BgnSecretKey]:
    params = gen_params(lambda_bits, k, rng)
    return BgnPublicKey(params, order_q_element(params, rng)), BgnSecretKey(params.p)


def encrypt(
    pk: BgnPublicKey,
    m: int,
    rng: random.Random,
    level: int = 1,
    domain: MessageDomain | None = MessageDomain(),
    r: int | None = None,
) -> Ciphertext:
    """Encrypt ``m`` at ``level``.

    Pass ``domain=None`` to encrypt an arbitrary residue (key material such
    as polynomial coefficients, which are never decrypted by search).
    """
    if domain is not None and m not in domain:
        raise DomainError(f"message {m} outside [0, {domain.bound})")
    params = pk.params
    if r is None:
        r = params.random_scalar(rng)
    return g_mul(g_pow(params.generator(level), m), g_pow(pk.h_at(level), r))


def dlog_bsgs(target: GroupElement, base: GroupElement, bound: int) -> int | None:
    """Smallest ``m`` in ``[0, bound)`` with ``base**m == target``, else None."""
    if bound <= 0:
        return None
    step = math.isqrt(bound - 1) + 1
    table: dict[int, int] = {}
    cur = base.params.identity(base.level)
    for j in range(step):
        table.setdefault(cur.exp, j)
        cur = g_mul(cur, base)
    giant = g_pow(base, -step)
    gamma = target
    for i in range(step):
        j = table.get(gamma.exp)
        if j is not None:
            m = i * step + j
            return m if m < bound else None
        gamma = g_mul(gamma, giant)
    return None


def decrypt(
    sk: BgnSecretKey,
    pk: BgnPublicKey,
    c: Ciphertext,
    domain: MessageDomain = MessageDomain(),
) -> int:
    """Return the ``m`` in the domain with ``c^p == (g_level^p)^m``.

    Plaintexts are residues mod q, so the search stops at ``min(bound, q)``.
    Raises :class:`DomainError` when no such ``m`` exists.
    """
    q = pk.params.N // sk.p
    target = g_pow(c, sk.p)
    base = g_pow(pk.params.generator(c.level), sk.p)
    m = dlog_bsgs(target, base, min(domain.bound, q))
    if m is None:
        raise DomainError(f"plaintext not in [0, {domain.bound})")
    return m


def hom_add(c1: Ciphertext, c2: Ciphertext) -> Ciphertext:
    return g_mul(c1, c2)


def hom_scale(c: Ciphertext, f: int) -> Ciphertext:
    return g_pow(c, f)


def hom_mul(cs: Sequence[Ciphertext]) -> Ciphertext:
    """Multiply the plaintexts of level-1 ciphertexts; the result sits at level ``len(cs)``."""
    if len(cs) < 2:
        raise LevelError("hom_mul needs at least two ciphertexts")
    if len(cs) > cs[0].params.k:
        raise LevelError(
            f"product of {len(cs)} ciphertexts exceeds multiplicative depth {cs[0].params.k}"
        )
    return multi_pair(cs)
