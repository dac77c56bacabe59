"""Leveled composite-order multilinear groups.

A group instance fixes two primes ``p`` and ``q``, the order ``N = p*q`` and
a top level ``k``.  Level ``i`` holds a cyclic group ``G_i`` of order ``N``
with canonical generator ``g_i``; pairing maps ``G_i x G_j`` into ``G_{i+j}``
while ``i + j <= k``.

The only backend shipped here is ``"transparent"``: an element is stored as
its discrete log to the base ``g_level``.  Every protocol identity can be
checked exactly, but nothing is hidden, so it is a reference implementation
and must never protect real data.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import gmpy2
import numpy as np

from mlvc import opcount
from mlvc.errors import LevelError

MR_ROUNDS = 64
MIN_LAMBDA_BITS = 8
MAX_ENUMERABLE_N = 1 << 12


class Backend(ABC):
    """Group law for one representation of multilinear-group elements.

    Payloads are opaque to callers; :class:`GroupElement` stores one together
    with its level and forwards every operation here.
    """

    name: str

    @abstractmethod
    def identity(self, params: "MlmParams", level: int): ...

    @abstractmethod
    def generator(self, params: "MlmParams", level: int): ...

    @abstractmethod
    def from_exponent(self, params: "MlmParams", level: int, e: int): ...

    @abstractmethod
    def mul(self, params: "MlmParams", x, y): ...

    @abstractmethod
    def pow(self, params: "MlmParams", x, e: int): ...

    @abstractmethod
    def pair(self, params: "MlmParams", x, y): ...


class TransparentBackend(Backend):
    """Elements are exponents mod N.  Exact and intentionally non-hiding."""

    name = "transparent"

    def identity(self, params, level):
        return 0

    def generator(self, params, level):
        return 1

    def from_exponent(self, params, level, e):
        return e % params.N

    def mul(self, params, x, y):
        return (x + y) % params.N

    def pow(self, params, x, e):
        return (x * e) % params.N

    def pair(self, params, x, y):
        return (x * y) % params.N


BACKENDS: dict[str, Backend] = {"transparent": TransparentBackend()}


@dataclass(frozen=True)
class MlmParams:
    """One k-multilinear group instance of composite order N = p*q."""

    lambda_bits: int
    k: int
    p: int
    q: int
    backend_id: str = "transparent"

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"multilinearity level must be >= 2, got {self.k}")
        if self.p == self.q:
            raise ValueError("p and q must be distinct")
        if not (gmpy2.is_prime(self.p, MR_ROUNDS) and gmpy2.is_prime(self.q, MR_ROUNDS)):
            raise ValueError("p and q must both be prime")
        if self.backend_id not in BACKENDS:
            raise ValueError(f"unknown backend {self.backend_id!r}")

    @property
    def N(self) -> int:
        return self.p * self.q

    @property
    def backend(self) -> Backend:
        return BACKENDS[self.backend_id]

    def _check_level(self, level: int) -> None:
        if not 1 <= level <= self.k:
            raise LevelError(f"level {level} outside [1, {self.k}]")

    def generator(self, level: int = 1) -> "GroupElement":
        self._check_level(level)
        return GroupElement(self, level, self.backend.generator(self, level))

    def identity(self, level: int = 1) -> "GroupElement":
        self._check_level(level)
        return GroupElement(self, level, self.backend.identity(self, level))

    def element(self, level: int, e: int) -> "GroupElement":
        """``g_level ** e``, built directly without being counted as work."""
        self._check_level(level)
        return GroupElement(self, level, self.backend.from_exponent(self, level, e))

    def random_scalar(self, rng: random.Random) -> int:
        return rng.randrange(self.N)

    def sample_uniform(self, level: int, rng: random.Random) -> "GroupElement":
        return self.element(level, self.random_scalar(rng))


@dataclass(frozen=True)
class GroupElement:
    """An element of ``G_level``.

    ``exp`` is the backend payload; for the transparent backend that is the
    discrete log to base ``g_level``, reduced mod N.
    """

    params: MlmParams = field(repr=False)
    level: int
    exp: int

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return g_mul(self, other)

    def __truediv__(self, other: "GroupElement") -> "GroupElement":
        return g_mul(self, g_inv(other))

    def __pow__(self, e: int) -> "GroupElement":
        return g_pow(self, e)

    def is_identity(self) -> bool:
        return self.exp == self.params.backend.identity(self.params, self.level)


def _same_level(a: GroupElement, b: GroupElement) -> None:
    if a.params != b.params:
        raise LevelError("elements belong to different group instances")
    if a.level != b.level:
        raise LevelError(f"level mismatch: {a.level} vs {b.level}")


def g_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    _same_level(a, b)
    opcount.tally("muls")
    return GroupElement(a.params, a.level, a.params.backend.mul(a.params, a.exp, b.exp))


def g_pow(a: GroupElement, e: int) -> GroupElement:
    """``a ** e``; negative and oversized exponents are reduced mod N."""
    opcount.tally("pows")
    e %= a.params.N
    return GroupElement(a.params, a.level, a.params.backend.pow(a.params, a.exp, e))


def g_inv(a: GroupElement) -> GroupElement:
    return g_pow(a, -1)


def g_eq(a: GroupElement, b: GroupElement) -> bool:
    _same_level(a, b)
    return a.exp == b.exp


def g_prod(elems: Iterable[GroupElement]) -> GroupElement:
    """Product of a non-empty iterable of same-level elements."""
    return reduce(g_mul, elems)


def generator(params: MlmParams, level: int = 1) -> GroupElement:
    return params.generator(level)


def sample_uniform(params: MlmParams, level: int, rng: random.Random) -> GroupElement:
    return params.sample_uniform(level, rng)


def pair(a: GroupElement, b: GroupElement) -> GroupElement:
    """``e(g_i^x, g_j^y) = g_{i+j}^{xy}``."""
    if a.params != b.params:
        raise LevelError("elements belong to different group instances")
    level = a.level + b.level
    if level > a.params.k:
        raise LevelError(
            f"pairing levels {a.level} + {b.level} exceed top level {a.params.k}"
        )
    opcount.tally("pairings")
    return GroupElement(a.params, level, a.params.backend.pair(a.params, a.exp, b.exp))


def multi_pair(elems: Sequence[GroupElement]) -> GroupElement:
    """``e_i(g_1^{a_1}, ..., g_1^{a_i}) = g_i^{a_1...a_i}`` for level-1 inputs."""
    if len(elems) < 2:
        raise LevelError("multi_pair needs at least two inputs")
    if any(x.level != 1 for x in elems):
        raise LevelError("multi_pair inputs must all be at level 1")
    if len(elems) > elems[0].params.k:
        raise LevelError(f"{len(elems)} inputs exceed top level {elems[0].params.k}")
    return reduce(pair, elems)


def order_q_element(params: MlmParams, rng: random.Random) -> GroupElement:
    """``h = u^q`` for uniform ``u`` in G_1, so ``h^p`` is the identity."""
    delta = params.random_scalar(rng)
    return params.element(1, params.q * delta)


def random_prime(bits: int, rng: random.Random) -> int:
    """Rejection-sample an odd probable prime of exactly ``bits`` bits."""
    while True:
        candidate = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if gmpy2.is_prime(candidate, MR_ROUNDS):
            return candidate


def gen_params(
    lambda_bits: int, k: int, seed: int | random.Random | None = None
) -> MlmParams:
    """Sample a fresh k-multilinear instance with two distinct lambda-bit primes."""
    if lambda_bits < MIN_LAMBDA_BITS:
        raise ValueError(f"lambda_bits must be >= {MIN_LAMBDA_BITS}, got {lambda_bits}")
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    p = random_prime(lambda_bits, rng)
    q = random_prime(lambda_bits, rng)
    while q == p:
        q = random_prime(lambda_bits, rng)
    return MlmParams(lambda_bits=lambda_bits, k=k, p=p, q=q)


def statistical_distance_pxy(p: int, q: int) -> Fraction:
    """Exact ``sum_w |Pr[p*X*Y mod q = w] - 1/q|`` for X, Y uniform on Z_{pq}.

    Computed by enumerating all N^2 pairs, so N must stay small.
    """
    if p == q:
        raise ValueError("p and q must be distinct")
    n = p * q
    if n > MAX_ENUMERABLE_N:
        raise ValueError(f"N = {n} too large to enumerate (limit {MAX_ENUMERABLE_N})")
    ys = np.arange(n, dtype=np.int64)
    counts = np.zeros(q, dtype=np.int64)
    for x in range(n):
        counts += np.bincount((p * x * ys) % q, minlength=q)
    total = n * n
    return sum(
        (abs(Fraction(int(c), total) - Fraction(1, q)) for c in counts), Fraction(0)
    )


def statistical_distance_closed_form(q: int) -> Fraction:
    return Fraction(2 * (q - 1), q * q)
