"""Verifiable, input-private outsourcing of univariate polynomial evaluation.

The client publishes ``f`` (or, in function-private mode, encryptions of its
coefficients) together with ``g_1^{s^(2^l)}`` for a secret ``s``.  To learn
``f(alpha)`` it sends encryptions of ``alpha, alpha^2, alpha^4, ...``; the
server returns ``rho = Enc(f(alpha))`` and ``pi = Enc(c(s))`` where ``c`` is
the quotient ``(f(x) - f(alpha)) / (x - alpha)``.  The client decrypts ``rho``
to ``y`` and accepts iff

    e(t / g_1^y, g_top^p) == e(g_1^s / g_1^alpha, pi^p)      with t = g_1^{f(s)}

Multilinearity is ``2k + 1`` (``2k + 2`` function-private) with
``k = ceil(log2(n + 1))``.  Working at these levels needs only the ``k``
squared powers, via the binary expansion of every exponent.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Collection, Sequence

from mlvc import bgn, opcount
from mlvc.bgn import BgnPublicKey, BgnSecretKey, Ciphertext, MessageDomain
from mlvc.errors import DomainError, Reject
from mlvc.mgroup import GroupElement, g_eq, g_mul, g_pow, g_prod, multi_pair, pair
from mlvc.polyarith import Polynomial, binary_rep

PLAIN = "plain"
FUNCTION_PRIVATE = "fp"
MODES = (PLAIN, FUNCTION_PRIVATE)

DEFAULT_INPUTS = range(256)


def log_levels(n: int) -> int:
    """``ceil(log2(n + 1))``: bits needed for exponents ``0..n``."""
    return max(n, 0).bit_length()


def top_level(n: int, mode: str) -> int:
    k = log_levels(n)
    return 2 * k + (2 if mode == FUNCTION_PRIVATE else 1)


@dataclass(frozen=True)
class PeSecretKey:
    p: int
    q: int
    s: int
    t: GroupElement
    mode: str = PLAIN
    domain: MessageDomain = MessageDomain()
    inputs: Collection[int] = DEFAULT_INPUTS


@dataclass(frozen=True)
class PePublicKey:
    bgn: BgnPublicKey
    tower: tuple[GroupElement, ...]
    n: int
    mode: str = PLAIN
    f: Polynomial | None = None
    gamma: tuple[Ciphertext, ...] | None = None

    @property
    def k(self) -> int:
        return len(self.tower)

    @property
    def params(self):
        return self.bgn.params

    @property
    def rho_level(self) -> int:
        return self.k + (1 if self.mode == FUNCTION_PRIVATE else 0)

    @property
    def pi_level(self) -> int:
        return 2 * self.k + (1 if self.mode == FUNCTION_PRIVATE else 0)


@dataclass(frozen=True)
class PeQuery:
    sigma: tuple[Ciphertext, ...]
    alpha: int = field(repr=False)


@dataclass(frozen=True)
class PeResponse:
    rho: GroupElement
    pi: GroupElement


def _bgn_sk(sk: PeSecretKey) -> BgnSecretKey:
    return BgnSecretKey(sk.p)


def pe_keygen(
    f: Polynomial | Sequence[int],
    rng: random.Random,
    lambda_bits: int = 16,
    mode: str = PLAIN,
    domain: MessageDomain = MessageDomain(),
    inputs: Collection[int] = DEFAULT_INPUTS,
    bgn_keys: tuple[BgnPublicKey, BgnSecretKey] | None = None,
) -> tuple[PePublicKey, PeSecretKey]:
    """Outsource ``f``.

    Integer coefficients are reduced mod the freshly sampled q.  A caller that
    must know q before fixing ``f`` (interpolation, for instance) can sample
    the BGN keys itself and pass them as ``bgn_keys``; their top level must
    match ``top_level(n, mode)``.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    coeffs = f.coeffs if isinstance(f, Polynomial) else tuple(f)
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("polynomial must have degree >= 1")
    k = log_levels(n)
    with opcount.phase("keygen"):
        if bgn_keys is None:
            bgn_keys = bgn.keygen(lambda_bits, top_level(n, mode), rng)
        bpk, bsk = bgn_keys
        params = bpk.params
        if params.k != top_level(n, mode):
            raise ValueError(
                f"BGN instance has {params.k} levels, scheme needs {top_level(n, mode)}"
            )
        poly = Polynomial(params.q, coeffs)
        g1 = params.generator(1)
        s = params.random_scalar(rng)
        f_at_s = 0
        for c in reversed(poly.coeffs):
            f_at_s = (f_at_s * s + c) % params.N
        t = g_pow(g1, f_at_s)
        tower = tuple(g_pow(g1, pow(s, 1 << ell, params.N)) for ell in range(k))
        gamma = None
        if mode == FUNCTION_PRIVATE:
            gamma = tuple(bgn.encrypt(bpk, c, rng, domain=None) for c in poly.coeffs)
    pk = PePublicKey(
        bgn=bpk,
        tower=tower,
        n=n,
        mode=mode,
        f=poly if mode == PLAIN else None,
        gamma=gamma,
    )
    sk = PeSecretKey(
        p=bsk.p, q=params.q, s=s, t=t, mode=mode, domain=domain, inputs=inputs
    )
    return pk, sk


def pe_probgen(
    sk: PeSecretKey, pk: PePublicKey, alpha: int, rng: random.Random
) -> PeQuery:
    """Encrypt ``alpha^(2^l)`` for ``l < k``; ``alpha`` stays with the client."""
    if alpha not in sk.inputs:
        raise DomainError(f"input {alpha} outside the declared input domain")
    N = pk.params.N
    with opcount.phase("probgen"):
        sigma = tuple(
            bgn.encrypt(pk.bgn, pow(alpha, 1 << ell, N), rng, domain=None)
            for ell in range(pk.k)
        )
    return PeQuery(sigma, alpha)


def _ek(elems: list[GroupElement]) -> GroupElement:
    return elems[0] if len(elems) == 1 else multi_pair(elems)


def pe_compute(pk: PePublicKey, sigma: Sequence[Ciphertext]) -> PeResponse:
    """Server side: evaluate on encrypted powers of the input, using only ``pk``."""
    k, n = pk.k, pk.n
    if len(sigma) != k:
        raise ValueError(f"query has {len(sigma)} ciphertexts, expected {k}")
    g1 = pk.params.generator(1)

    def select(i: int, chosen: Sequence[GroupElement]) -> GroupElement:
        return _ek([c if b else g1 for b, c in zip(binary_rep(i, k), chosen)])

    with opcount.phase("compute"):
        # rho_terms[i] encrypts alpha^i; s_terms[d] = g_k^{s^d}
        rho_terms = [select(i, sigma) for i in range(n + 1)]
        s_terms = [select(d, pk.tower) for d in range(n)]
        if pk.mode == PLAIN:
            coeffs = pk.f.coeffs
            rho = g_prod(g_pow(r, c) for r, c in zip(rho_terms, coeffs))
            pi = g_prod(
                g_pow(pair(rho_terms[j], s_terms[i - j]), coeffs[i + 1])
                for i in range(n)
                for j in range(i + 1)
            )
        else:
            gamma = pk.gamma
            rho = g_prod(pair(c, r) for c, r in zip(gamma, rho_terms))
            pi = g_prod(
                pair(gamma[i + 1], pair(rho_terms[j], s_terms[i - j]))
                for i in range(n)
                for j in range(i + 1)
            )
    return PeResponse(rho, pi)


def pe_verify(
    sk: PeSecretKey, pk: PePublicKey, alpha: int, response: PeResponse
) -> int:
    """Return ``y = f(alpha) mod q`` or raise :class:`Reject`."""
    params = pk.params
    rho, pi = response.rho, response.pi
    if rho.params != params or pi.params != params:
        raise Reject("malformed", "response is over a different group instance")
    if rho.level != pk.rho_level or pi.level != pk.pi_level:
        raise Reject(
            "malformed",
            f"levels ({rho.level}, {pi.level}), expected ({pk.rho_level}, {pk.pi_level})",
        )
    with opcount.phase("verify"):
        try:
            y = bgn.decrypt(_bgn_sk(sk), pk.bgn, rho, sk.domain)
        except DomainError as exc:
            raise Reject("decode", str(exc)) from None
        g1 = params.generator(1)
        lhs = pair(
            g_mul(sk.t, g_pow(g1, -y)), g_pow(params.generator(pk.pi_level), sk.p)
        )
        rhs = pair(
            g_mul(g_pow(g1, sk.s), g_pow(g1, -alpha)), g_pow(pi, sk.p)
        )
        if not g_eq(lhs, rhs):
            raise Reject("equation", "proof does not match the decrypted value")
    return y


# Repetition over independent instances: accept only unanimous, verified answers.

def pe_repeated_keygen(
    f: Sequence[int], reps: int, rng: random.Random, **kwargs
) -> list[tuple[PePublicKey, PeSecretKey]]:
    if reps < 1:
        raise ValueError("need at least one instance")
    return [pe_keygen(f, rng, **kwargs) for _ in range(reps)]


def pe_repeated_probgen(
    keys: Sequence[tuple[PePublicKey, PeSecretKey]], alpha: int, rng: random.Random
) -> list[PeQuery]:
    return [pe_probgen(sk, pk, alpha, rng) for pk, sk in keys]


def pe_repeated_compute(
    pks: Sequence[PePublicKey], sigmas: Sequence[Sequence[Ciphertext]]
) -> list[PeResponse]:
    return [pe_compute(pk, sigma) for pk, sigma in zip(pks, sigmas, strict=True)]


def pe_repeated_verify(
    keys: Sequence[tuple[PePublicKey, PeSecretKey]],
    alpha: int,
    responses: Sequence[PeResponse],
) -> int:
    if len(responses) != len(keys):
        raise Reject("malformed", f"{len(responses)} responses for {len(keys)} instances")
    values = {pe_verify(sk, pk, alpha, resp) for (pk, sk), resp in zip(keys, responses)}
    if len(values) != 1:
        raise Reject("disagree", f"instances returned {sorted(values)}")
    return values.pop()
