"""DLIN-style algebraic PRF ``F_K(i, j) = A_j^{alpha_i} * B_j^{beta_i}``.

Its closed form efficiency: for a vector ``x`` the row products
``prod_j F_K(i, j)^{x_j}`` equal ``A^{alpha_i} * B^{beta_i}`` with
``A = prod_j A_j^{x_j}`` and ``B = prod_j B_j^{x_j}``, so all ``n`` rows cost
O(n) exponentiations instead of O(n^2).

Indices are 0-based.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from mlvc.mgroup import GroupElement, MlmParams, g_mul, g_pow, g_prod


@dataclass(frozen=True)
class PrfKey:
    alphas: tuple[int, ...]
    betas: tuple[int, ...]
    As: tuple[GroupElement, ...]
    Bs: tuple[GroupElement, ...]

    def __post_init__(self) -> None:
        if not len(self.alphas) == len(self.betas) == len(self.As) == len(self.Bs):
            raise ValueError("PRF key lists must share one length")

    @property
    def n(self) -> int:
        return len(self.alphas)


@dataclass(frozen=True)
class CfePrecomp:
    A: GroupElement
    B: GroupElement


def prf_kg(params: MlmParams, n: int, rng: random.Random) -> PrfKey:
    if n < 1:
        raise ValueError("PRF dimension must be >= 1")
    alphas = tuple(params.random_scalar(rng) for _ in range(n))
    betas = tuple(params.random_scalar(rng) for _ in range(n))
    As = tuple(params.sample_uniform(1, rng) for _ in range(n))
    Bs = tuple(params.sample_uniform(1, rng) for _ in range(n))
    return PrfKey(alphas, betas, As, Bs)


def prf_eval(key: PrfKey, i: int, j: int) -> GroupElement:
    if not (0 <= i < key.n and 0 <= j < key.n):
        raise IndexError(f"PRF index ({i}, {j}) outside [0, {key.n})^2")
    return g_mul(g_pow(key.As[j], key.alphas[i]), g_pow(key.Bs[j], key.betas[i]))


def cfe_precompute(key: PrfKey, x: Sequence[int]) -> CfePrecomp:
    if len(x) != key.n:
        raise ValueError(f"input has length {len(x)}, key dimension is {key.n}")
    A = g_prod(g_pow(a, xj) for a, xj in zip(key.As, x))
    B = g_prod(g_pow(b, xj) for b, xj in zip(key.Bs, x))
    return CfePrecomp(A, B)


def cfe(key: PrfKey, x: Sequence[int]) -> list[GroupElement]:
    """``[prod_j F_K(i, j)^{x_j} for i in range(n)]`` in 4n exponentiations."""
    pre = cfe_precompute(key, x)
    return [
        g_mul(g_pow(pre.A, a), g_pow(pre.B, b)) for a, b in zip(key.alphas, key.betas)
    ]


def naive_row_products(key: PrfKey, x: Sequence[int]) -> list[GroupElement]:
    """The same products evaluated entry by entry; O(n^2) work."""
    if len(x) != key.n:
        raise ValueError(f"input has length {len(x)}, key dimension is {key.n}")
    return [
        g_prod(g_pow(prf_eval(key, i, j), x[j]) for j in range(key.n))
        for i in range(key.n)
    ]
