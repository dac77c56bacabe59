"""Exit criteria for the package, one test per criterion.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import random
import time
from fractions import Fraction
from functools import reduce

import pytest

from mlvc import bgn, wire
from mlvc.bgn import BgnSecretKey, MessageDomain
from mlvc.errors import LevelError, Reject
from mlvc.mgroup import pair, statistical_distance_closed_form, statistical_distance_pxy
from mlvc.opcount import counting
from mlvc.pir import pir_mm_retrieve_index, pir_mm_setup, pir_pe_retrieve, pir_pe_setup
from mlvc.polyarith import Polynomial, evaluate, poly_mul, quotient_coeffs, quotient_double_sum
from mlvc.prfcfe import cfe, naive_row_products, prf_kg
from mlvc.mgroup import gen_params
from mlvc.stats import client_ops, measure_mm, measure_pe, server_ops
from mlvc.tamper import STRATEGIES, tamper_mm, tamper_pe
from mlvc.vcmm import mm_compute, mm_keygen, mm_probgen, mm_verify
from mlvc.vcpe import (
    FUNCTION_PRIVATE,
    PLAIN,
    log_levels,
    pe_compute,
    pe_keygen,
    pe_probgen,
    pe_repeated_compute,
    pe_repeated_keygen,
    pe_repeated_probgen,
    pe_repeated_verify,
    pe_verify,
)

LAMBDA = 16


def _pe_suite(mode, seed):
    rng = random.Random(seed)
    ok = 0
    for trial in range(100):
        n = (3, 7, 15, 63)[trial % 4]
        coeffs = [rng.randrange(1 << LAMBDA) for _ in range(n + 1)]
        alpha = rng.randrange(256)
        pk, sk = pe_keygen(coeffs, rng, lambda_bits=LAMBDA, mode=mode)
        query = pe_probgen(sk, pk, alpha, rng)
        y = pe_verify(sk, pk, alpha, pe_compute(pk, query.sigma))
        ok += y == evaluate(Polynomial(sk.q, coeffs), alpha)
    return ok


def _mm_suite(mode, seed):
    rng = random.Random(seed)
    ok = 0
    for trial in range(100):
        n = (2, 4, 8, 16)[trial % 4]
        M = [[rng.randrange(1 << LAMBDA) for _ in range(n)] for _ in range(n)]
        x = [rng.randrange(256) for _ in range(n)]
        pk, sk = mm_keygen(M, rng, lambda_bits=LAMBDA, mode=mode)
        query = mm_probgen(sk, pk, x, rng)
        y = mm_verify(sk, pk, query.tau, mm_compute(pk, query.sigma))
        ok += y == [sum(m * v for m, v in zip(row, x)) % sk.q for row in M]
    return ok


def test_ac01_pe_completeness():
    """Polynomial evaluation: 100/100 honest runs return f(alpha) mod q in < 60 s"""
    start = time.perf_counter()
    ok = _pe_suite(PLAIN, 1)
    elapsed = time.perf_counter() - start
    print(f"pe completeness {ok}/100 in {elapsed:.2f}s")
    assert ok == 100
    assert elapsed < 60


def test_ac02_mm_completeness():
    """Matrix-vector: 100/100 honest runs return Mx mod q"""
    assert _mm_suite(PLAIN, 2) == 100


def test_ac03_function_private():
    """Function-private modes: both completeness suites pass and gamma decrypts to f / M"""
    assert _pe_suite(FUNCTION_PRIVATE, 3) == 100
    assert _mm_suite(FUNCTION_PRIVATE, 4) == 100
    rng = random.Random(5)
    coeffs = [rng.randrange(1 << LAMBDA) for _ in range(16)]
    pk, sk = pe_keygen(coeffs, rng, mode=FUNCTION_PRIVATE)
    full = MessageDomain(sk.q)
    assert [bgn.decrypt(BgnSecretKey(sk.p), pk.bgn, c, full) for c in pk.gamma] == [
        c % sk.q for c in coeffs
    ]
    M = [[rng.randrange(1 << LAMBDA) for _ in range(4)] for _ in range(4)]
    pk, sk = mm_keygen(M, rng, mode=FUNCTION_PRIVATE)
    full = MessageDomain(sk.q)
    got = [[bgn.decrypt(BgnSecretKey(sk.p), pk.bgn, c, full) for c in row] for row in pk.gamma]
    assert got == [[v % sk.q for v in row] for row in M]


def test_ac04_tamper_rejection():
    """Scripted tampers: 0 acceptances of a wrong value over >= 100 trials per scheme"""
    rng = random.Random(6)
    per_strategy = 30
    wrong = {"pe": 0, "mm": 0}
    trials = {"pe": 0, "mm": 0}
    rejected = {"pe": 0, "mm": 0}
    for strategy in STRATEGIES:
        for t in range(per_strategy):
            mode = (PLAIN, FUNCTION_PRIVATE)[t % 2]
            # polynomial evaluation
            n = rng.choice([3, 7, 15])
            coeffs = [rng.randrange(1 << LAMBDA) for _ in range(n + 1)]
            pk, sk = pe_keygen(coeffs, rng, mode=mode)
            alpha, other = rng.sample(range(256), 2)
            query = pe_probgen(sk, pk, alpha, rng)
            replay = pe_probgen(sk, pk, other, rng).sigma
            truth = evaluate(Polynomial(sk.q, coeffs), alpha)
            trials["pe"] += 1
            try:
                y = pe_verify(sk, pk, alpha, tamper_pe(pk, query.sigma, strategy, rng, replay))
                wrong["pe"] += y != truth
            except Reject:
                rejected["pe"] += 1
            # matrix-vector
            n = rng.choice([2, 4, 8])
            M = [[rng.randrange(1 << LAMBDA) for _ in range(n)] for _ in range(n)]
            x = [rng.randrange(256) for _ in range(n)]
            x2 = [rng.randrange(256) for _ in range(n)]
            pk, sk = mm_keygen(M, rng, mode=mode)
            query = mm_probgen(sk, pk, x, rng)
            replay = mm_probgen(sk, pk, x2, rng).sigma
            truth = [sum(m * v for m, v in zip(row, x)) % sk.q for row in M]
            trials["mm"] += 1
            try:
                y = mm_verify(sk, pk, query.tau, tamper_mm(pk, query.sigma, strategy, rng, replay))
                wrong["mm"] += y != truth
            except Reject:
                rejected["mm"] += 1
    print(f"tamper trials {trials}, rejected {rejected}, wrong accepts {wrong}")
    assert min(trials.values()) >= 100
    assert wrong == {"pe": 0, "mm": 0}


def test_ac05_statistical_distance():
    """Exact statistical distance: (2,3) -> 4/9 and (3,5) -> 8/25, enumeration == closed form"""
    for p, q, expected in [(2, 3, Fraction(4, 9)), (3, 5, Fraction(8, 25))]:
        assert statistical_distance_pxy(p, q) == expected
        assert statistical_distance_closed_form(q) == expected


def test_ac06_outsourcing_costs():
    """Client cost O(log n) for pe (ratio <= 2.5), O(n) for mm (ratio in [3, 5]); pe server ratio >= 64"""
    pe15, pe255 = measure_pe(15, seed=7), measure_pe(255, seed=7)
    mm8, mm32 = measure_mm(8, seed=7), measure_mm(32, seed=7)
    pe_client = client_ops(pe255) / client_ops(pe15)
    pe_server = server_ops(pe255) / server_ops(pe15)
    mm_client = client_ops(mm32) / client_ops(mm8)
    print(f"pe client ratio {pe_client:.2f}, pe server ratio {pe_server:.1f}, "
          f"mm client ratio {mm_client:.2f}")
    assert pe_client <= 2.5
    assert pe_server >= 64
    assert 3 <= mm_client <= 5


@pytest.mark.parametrize("n", [8, 32])
def test_ac07_cfe(n):
    """Closed form equals the naive row products; <= 4n vs >= n^2 exponentiations"""
    rng = random.Random(n)
    params = gen_params(LAMBDA, 3, rng)
    key = prf_kg(params, n, rng)
    for _ in range(20):
        x = [rng.randrange(params.N) for _ in range(n)]
        with counting() as fast:
            got = cfe(key, x)
        with counting() as slow:
            want = naive_row_products(key, x)
        assert got == want
        assert fast.total(kind="pows") <= 4 * n
        assert slow.total(kind="pows") >= n * n


def test_ac08_quotient_identity():
    """1000 random (f, alpha), n <= 64: (x - alpha) c(x) + f(alpha) == f and the double sum agrees"""
    rng = random.Random(8)
    for _ in range(1000):
        q = gen_params(LAMBDA, 2, rng).q
        n = rng.randint(1, 64)
        f = Polynomial(q, [rng.randrange(q) for _ in range(n + 1)])
        alpha, s = rng.randrange(q), rng.randrange(q)
        c = quotient_coeffs(f, alpha)
        expanded = poly_mul([-alpha % q, 1], list(c.coeffs), q)
        expanded[0] = (expanded[0] + evaluate(f, alpha)) % q
        assert tuple(expanded) == f.coeffs
        assert quotient_double_sum(f, alpha, s) == evaluate(c, s)


def test_ac09_bgn_homomorphism():
    """k = 5: sums of up to 100 products of up to 4 ciphertexts decrypt; depth k+1 raises"""
    rng = random.Random(9)
    pk, sk = bgn.keygen(LAMBDA, 5, rng)
    for _ in range(40):
        depth = rng.randint(1, 4)
        terms = rng.randint(1, 100)
        total = 0
        acc = None
        for _ in range(terms):
            ms = [rng.randrange(4) for _ in range(depth)]
            cs = [bgn.encrypt(pk, m, rng) for m in ms]
            c = cs[0] if depth == 1 else bgn.hom_mul(cs)
            acc = c if acc is None else bgn.hom_add(acc, c)
            total += reduce(lambda a, b: a * b, ms)
        assert acc.level == depth
        assert bgn.decrypt(sk, pk, acc) == total
    five = bgn.hom_mul([bgn.encrypt(pk, 2, rng) for _ in range(5)])
    assert bgn.decrypt(sk, pk, five) == 32
    with pytest.raises(LevelError):
        pair(five, bgn.encrypt(pk, 1, rng))
    with pytest.raises(LevelError):
        bgn.hom_mul([bgn.encrypt(pk, 1, rng) for _ in range(6)])


@pytest.mark.parametrize("size", [16, 36, 64])
def test_ac10_pir(size):
    """PIR: every bit of random 16/36/64-bit databases via both schemes; query sizes k and sqrt(n)"""
    rng = random.Random(size)
    db = "".join(rng.choice("01") for _ in range(size))
    pe_state = pir_pe_setup(db, rng)
    mm_state = pir_mm_setup(db, rng)
    for i in range(1, size + 1):
        assert pir_pe_retrieve(pe_state, i) == int(db[i - 1])
        assert pir_mm_retrieve_index(mm_state, i) == int(db[i - 1])
    # sizes measured on the serialized wire messages
    query = pe_probgen(pe_state.sk, pe_state.pk, 1, rng)
    msg = wire.WireMessage("query", "pe", "q", {"instances": [{"sigma": wire.encode_elements(query.sigma)}]})
    assert len(msg.to_json()["body"]["instances"][0]["sigma"]) == log_levels(size - 1)
    x = [1] + [0] * (mm_state.side - 1)
    mquery = mm_probgen(mm_state.sk, mm_state.pk, x, rng)
    msg = wire.WireMessage("query", "mm", "q", {"sigma": wire.encode_elements(mquery.sigma)})
    assert len(msg.to_json()["body"]["sigma"]) ** 2 == size


def test_ac11_repetition():
    """Three independent instances: all honest returns f(alpha); one tampered instance forces REJECT"""
    rng = random.Random(11)
    coeffs = [2, 7, 1, 8]
    alpha = 13
    expected = 2 + 7 * 13 + 169 + 8 * 13 ** 3
    for mode in (PLAIN, FUNCTION_PRIVATE):
        keys = pe_repeated_keygen(coeffs, 3, rng, mode=mode)
        pks = [pk for pk, _ in keys]
        for bad in (None, 0, 1, 2):
            queries = pe_repeated_probgen(keys, alpha, rng)
            responses = pe_repeated_compute(pks, [q.sigma for q in queries])
            if bad is None:
                assert pe_repeated_verify(keys, alpha, responses) == expected
                continue
            strategy = STRATEGIES[bad]
            responses[bad] = tamper_pe(pks[bad], queries[bad].sigma, strategy, rng)
            with pytest.raises(Reject):
                pe_repeated_verify(keys, alpha, responses)
