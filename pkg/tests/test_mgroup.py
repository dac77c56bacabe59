import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mlvc.errors import LevelError
from mlvc.mgroup import (
    MlmParams,
    g_eq,
    g_inv,
    g_mul,
    g_pow,
    gen_params,
    generator,
    multi_pair,
    order_q_element,
    pair,
    sample_uniform,
    statistical_distance_closed_form,
    statistical_distance_pxy,
)
from mlvc import opcount


def _trial_division_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class TestGenParams:
    def test_shape(self):
        params = gen_params(8, 3, seed=7)
        assert params.k == 3
        assert params.p.bit_length() == params.q.bit_length() == 8
        assert params.N == params.p * params.q
        assert params.backend_id == "transparent"

    def test_deterministic(self):
        assert gen_params(8, 3, seed=7) == gen_params(8, 3, seed=7)

    @pytest.mark.parametrize("seed", range(10))
    def test_primes_by_trial_division(self, seed):
        params = gen_params(16, 5, seed=seed)
        assert params.p != params.q
        assert _trial_division_prime(params.p)
        assert _trial_division_prime(params.q)
        assert params.p.bit_length() == params.q.bit_length() == 16

    def test_rejects_small_lambda(self):
        with pytest.raises(ValueError):
            gen_params(7, 3, seed=0)

    def test_rejects_small_k(self):
        with pytest.raises(ValueError):
            gen_params(8, 1, seed=0)

    def test_params_validate(self):
        with pytest.raises(ValueError):
            MlmParams(lambda_bits=3, k=3, p=5, q=5)
        with pytest.raises(ValueError):
            MlmParams(lambda_bits=3, k=3, p=5, q=9)


class TestPairing:
    def test_small_exponents(self, tiny):
        out = pair(tiny.element(1, 2), tiny.element(1, 3))
        assert (out.level, out.exp) == (2, 6)

    def test_identity_annihilates(self, tiny):
        out = pair(tiny.element(1, 4), tiny.identity(1))
        assert out == tiny.identity(2)

    def test_reduction_mod_n(self, tiny):
        # 6 * 7 = 42 = 7 mod 35
        out = pair(tiny.element(1, 6), tiny.element(2, 7))
        assert (out.level, out.exp) == (3, 7)

    def test_level_overflow(self, tiny):
        with pytest.raises(LevelError):
            pair(tiny.element(2, 1), tiny.element(2, 1))

    def test_multi_pair(self, tiny):
        params = gen_params(16, 3, seed=1)
        out = multi_pair([params.element(1, 2), params.element(1, 3), params.element(1, 5)])
        assert (out.level, out.exp) == (3, 30)

    def test_multi_pair_generator_neutral(self, rng):
        params = gen_params(16, 3, seed=1)
        x = sample_uniform(params, 1, rng)
        out = multi_pair([x, generator(params, 1)])
        assert (out.level, out.exp) == (2, x.exp)

    def test_multi_pair_is_fold(self, rng):
        params = gen_params(16, 4, seed=2)
        a, b, c = (sample_uniform(params, 1, rng) for _ in range(3))
        assert multi_pair([a, b, c]) == pair(pair(a, b), c) == pair(a, pair(b, c))

    def test_multi_pair_errors(self, tiny):
        g = tiny.generator(1)
        with pytest.raises(LevelError):
            multi_pair([g] * 4)
        with pytest.raises(LevelError):
            multi_pair([g, tiny.generator(2)])

    def test_counts_pairings(self, tiny):
        g = tiny.generator(1)
        with opcount.counting() as counter:
            multi_pair([g, g, g])
        assert counter.total(kind="pairings") == 2


class TestGroupLaw:
    def test_mul(self, tiny):
        assert g_mul(tiny.element(1, 3), tiny.element(1, 4)) == tiny.element(1, 7)

    def test_pow_zero(self, tiny):
        assert g_pow(tiny.element(1, 3), 0) == tiny.identity(1)

    def test_inverse(self, tiny):
        a = tiny.element(1, 11)
        assert g_mul(g_inv(a), a) == tiny.identity(1)

    def test_negative_pow(self, tiny):
        assert g_pow(tiny.element(1, 3), -1) == tiny.element(1, 32)

    def test_level_mismatch(self, tiny):
        with pytest.raises(LevelError):
            g_mul(tiny.generator(1), tiny.generator(2))
        with pytest.raises(LevelError):
            g_eq(tiny.generator(1), tiny.generator(2))

    def test_operators(self, tiny):
        a, b = tiny.element(2, 9), tiny.element(2, 30)
        assert a * b == tiny.element(2, 4)
        assert a / a == tiny.identity(2)
        assert a ** 4 == tiny.element(2, 1)


PARAMS = gen_params(16, 4, seed=99)
residues = st.integers(min_value=-(PARAMS.N ** 2), max_value=PARAMS.N ** 2)


@given(x=residues, y=residues, u=residues, v=residues)
def test_bilinearity(x, y, u, v):
    a, b = PARAMS.element(1, x), PARAMS.element(2, y)
    assert pair(g_pow(a, u), g_pow(b, v)) == g_pow(pair(a, b), u * v)


@given(x=residues, y=residues, z=residues)
def test_mul_associative_commutative(x, y, z):
    a, b, c = (PARAMS.element(3, e) for e in (x, y, z))
    assert g_mul(a, b) == g_mul(b, a)
    assert g_mul(g_mul(a, b), c) == g_mul(a, g_mul(b, c))
    assert g_mul(a, PARAMS.identity(3)) == a


class TestOrderQ:
    def test_killed_by_p(self, rng):
        params = gen_params(16, 3, seed=3)
        h = order_q_element(params, rng)
        assert g_pow(h, params.p).is_identity()

    def test_hand_value(self, tiny):
        rng = random.Random()
        rng.randrange = lambda n: 2
        assert order_q_element(tiny, rng).exp == 14

    def test_divisible_by_q(self, rng):
        params = gen_params(16, 3, seed=4)
        assert all(order_q_element(params, rng).exp % params.q == 0 for _ in range(100))


class TestStatisticalDistance:
    @pytest.mark.parametrize(
        "p,q,expected", [(2, 3, Fraction(4, 9)), (3, 5, Fraction(8, 25))]
    )
    def test_paper_values(self, p, q, expected):
        assert statistical_distance_pxy(p, q) == expected
        assert statistical_distance_closed_form(q) == expected

    def test_enumeration_oracle(self):
        # independent pure-Python enumeration of all 36 pairs
        counts = [0, 0, 0]
        for x in range(6):
            for y in range(6):
                counts[2 * x * y % 3] += 1
        oracle = sum(abs(Fraction(c, 36) - Fraction(1, 3)) for c in counts)
        assert oracle == Fraction(4, 9) == statistical_distance_pxy(2, 3)

    @pytest.mark.parametrize("p,q", [(5, 7), (7, 5), (11, 13), (3, 2), (13, 17)])
    def test_matches_closed_form(self, p, q):
        assert statistical_distance_pxy(p, q) == statistical_distance_closed_form(q)

    def test_too_large(self):
        with pytest.raises(ValueError):
            statistical_distance_pxy(251, 241)
