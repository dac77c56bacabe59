"""Verifiable, input-private outsourcing of matrix-vector products.

Over a trilinear instance the client publishes ``M`` (or encryptions of its
entries) and a blinded copy ``T_ij = g_1^{p^2 a M_ij} * F_K(i, j)``.  For a
query ``x`` it sends ``Enc(x_j)`` and keeps
``tau_i = e(prod_j F_K(i, j)^{x_j}, g_2^p)``, computed in O(n) with the PRF's
closed form.  The server returns ``rho_i = Enc((Mx)_i)`` and
``pi_i = prod_j e(T_ij, sigma_j)``; the client decrypts ``y_i`` and accepts iff

    e(pi_i, g_1^p) == eta^{p y_i} * tau_i      with eta = g_3^{p^2 a}

for every row.  Indices are 0-based.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Collection, Sequence

from mlvc import bgn, opcount
from mlvc.bgn import BgnPublicKey, BgnSecretKey, Ciphertext, MessageDomain
from mlvc.errors import DomainError, Reject
from mlvc.mgroup import GroupElement, g_eq, g_mul, g_pow, g_prod, pair
from mlvc.prfcfe import PrfKey, cfe, prf_eval, prf_kg
from mlvc.vcpe import FUNCTION_PRIVATE, MODES, PLAIN

Matrix = tuple[tuple[int, ...], ...]

DEFAULT_INPUTS = range(256)


@dataclass(frozen=True)
class MmSecretKey:
    p: int
    q: int
    prf_key: PrfKey
    a: int
    eta: GroupElement
    mode: str = PLAIN
    domain: MessageDomain = MessageDomain()
    inputs: Collection[int] = DEFAULT_INPUTS


@dataclass(frozen=True)
class MmPublicKey:
    bgn: BgnPublicKey
    T: tuple[tuple[GroupElement, ...], ...]
    mode: str = PLAIN
    M: Matrix | None = None
    gamma: tuple[tuple[Ciphertext, ...], ...] | None = None

    @property
    def n(self) -> int:
        return len(self.T)

    @property
    def params(self):
        return self.bgn.params

    @property
    def rho_level(self) -> int:
        return 2 if self.mode == FUNCTION_PRIVATE else 1


@dataclass(frozen=True)
class MmQuery:
    sigma: tuple[Ciphertext, ...]
    tau: tuple[GroupElement, ...]


@dataclass(frozen=True)
class MmResponse:
    rho: tuple[Ciphertext, ...]
    pi: tuple[GroupElement, ...]


def mm_keygen(
    M: Sequence[Sequence[int]],
    rng: random.Random,
    lambda_bits: int = 16,
    mode: str = PLAIN,
    domain: MessageDomain = MessageDomain(),
    inputs: Collection[int] = DEFAULT_INPUTS,
    bgn_keys: tuple[BgnPublicKey, BgnSecretKey] | None = None,
) -> tuple[MmPublicKey, MmSecretKey]:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    n = len(M)
    if n == 0:
        raise ValueError("matrix must be non-empty")
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    with opcount.phase("keygen"):
        if bgn_keys is None:
            bgn_keys = bgn.keygen(lambda_bits, 3, rng)
        bpk, bsk = bgn_keys
        params = bpk.params
        if params.k != 3:
            raise ValueError("matrix scheme needs a trilinear instance")
        p, q, N = params.p, params.q, params.N
        Mq: Matrix = tuple(tuple(v % q for v in row) for row in M)
        key = prf_kg(params, n, rng)
        a = params.random_scalar(rng)
        g1 = params.generator(1)
        blind = p * p * a % N
        T = tuple(
            tuple(
                g_mul(g_pow(g1, blind * Mq[i][j]), prf_eval(key, i, j)) for j in range(n)
            )
            for i in range(n)
        )
        eta = g_pow(params.generator(3), blind)
        gamma = None
        if mode == FUNCTION_PRIVATE:
            gamma = tuple(
                tuple(bgn.encrypt(bpk, v, rng, domain=None) for v in row) for row in Mq
            )
    pk = MmPublicKey(
        bgn=bpk, T=T, mode=mode, M=Mq if mode == PLAIN else None, gamma=gamma
    )
    sk = MmSecretKey(
        p=p, q=q, prf_key=key, a=a, eta=eta, mode=mode, domain=domain, inputs=inputs
    )
    return pk, sk


def mm_probgen(
    sk: MmSecretKey, pk: MmPublicKey, x: Sequence[int], rng: random.Random
) -> MmQuery:
    if len(x) != pk.n:
        raise ValueError(f"input has length {len(x)}, matrix order is {pk.n}")
    bad = [v for v in x if v not in sk.inputs]
    if bad:
        raise DomainError(f"inputs {bad} outside the declared input domain")
    params = pk.params
    with opcount.phase("probgen"):
        sigma = tuple(bgn.encrypt(pk.bgn, v, rng, domain=None) for v in x)
        g2p = g_pow(params.generator(2), sk.p)
        tau = tuple(pair(row, g2p) for row in cfe(sk.prf_key, x))
    return MmQuery(sigma, tau)


def mm_compute(pk: MmPublicKey, sigma: Sequence[Ciphertext]) -> MmResponse:
    n = pk.n
    if len(sigma) != n:
        raise ValueError(f"query has {len(sigma)} ciphertexts, expected {n}")
    with opcount.phase("compute"):
        if pk.mode == PLAIN:
            rho = tuple(
                g_prod(g_pow(s, m) for s, m in zip(sigma, row)) for row in pk.M
            )
        else:
            rho = tuple(
                g_prod(pair(c, s) for c, s in zip(row, sigma)) for row in pk.gamma
            )
        pi = tuple(g_prod(pair(t, s) for t, s in zip(row, sigma)) for row in pk.T)
    return MmResponse(rho, pi)


def mm_verify(
    sk: MmSecretKey,
    pk: MmPublicKey,
    tau: Sequence[GroupElement],
    response: MmResponse,
) -> list[int]:
    """Return ``y = Mx mod q`` or raise :class:`Reject`."""
    params = pk.params
    n = pk.n
    if len(response.rho) != n or len(response.pi) != n or len(tau) != n:
        raise Reject("malformed", f"expected {n} rows")
    for r, pi in zip(response.rho, response.pi):
        if r.params != params or pi.params != params:
            raise Reject("malformed", "response is over a different group instance")
        if r.level != pk.rho_level or pi.level != 2:
            raise Reject("malformed", f"unexpected levels ({r.level}, {pi.level})")
    bsk = BgnSecretKey(sk.p)
    with opcount.phase("verify"):
        g1p = g_pow(params.generator(1), sk.p)
        ys = []
        for i, (r, pi) in enumerate(zip(response.rho, response.pi)):
            try:
                y = bgn.decrypt(bsk, pk.bgn, r, sk.domain)
            except DomainError as exc:
                raise Reject("decode", f"row {i}: {exc}") from None
            if not g_eq(pair(pi, g1p), g_mul(g_pow(sk.eta, sk.p * y), tau[i])):
                raise Reject("equation", f"row {i} fails the proof check")
            ys.append(y)
    return ys
