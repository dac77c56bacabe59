"""Univariate polynomials over Z_q."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence


@dataclass(frozen=True)
class Polynomial:
    """``coeffs[i]`` is the coefficient of ``x**i``.

    The degree is nominal: ``len(coeffs) - 1`` even when the leading
    coefficient is zero, because the protocol sizes depend on the declared
    degree.
    """

    modulus: int
    coeffs: tuple[int, ...]

    def __init__(self, modulus: int, coeffs: Sequence[int]) -> None:
        if not coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", tuple(c % modulus for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        return evaluate(self, x)


def evaluate(f: Polynomial, x: int) -> int:
    acc = 0
    for c in reversed(f.coeffs):
        acc = (acc * x + c) % f.modulus
    return acc


def quotient_coeffs(f: Polynomial, alpha: int) -> Polynomial:
    """``c(x) = (f(x) - f(alpha)) / (x - alpha)`` by synthetic division."""
    if f.degree < 1:
        raise ValueError("quotient needs a polynomial of degree >= 1")
    q = f.modulus
    n = f.degree
    out = [0] * n
    acc = 0
    for i in range(n, 0, -1):
        acc = (acc * alpha + f.coeffs[i]) % q
        out[i - 1] = acc
    return Polynomial(q, out)


def quotient_terms(f: Polynomial, alpha: int) -> Iterator[tuple[int, int, int]]:
    """Yield ``(i, j, f_{i+1} * alpha**j mod q)`` for ``0 <= j <= i < n``.

    Summing ``term * s**(i-j)`` over all triples gives ``c(s)``; the proof in
    polynomial evaluation is assembled term by term in this order.
    """
    q = f.modulus
    for i in range(f.degree):
        apow = 1
        for j in range(i + 1):
            yield i, j, f.coeffs[i + 1] * apow % q
            apow = apow * alpha % q


def quotient_double_sum(f: Polynomial, alpha: int, s: int) -> int:
    q = f.modulus
    return sum(t * pow(s, i - j, q) for i, j, t in quotient_terms(f, alpha)) % q


def poly_mul(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return out


def interpolate(points: Sequence[tuple[int, int]], q: int) -> Polynomial:
    """Lagrange interpolation: the unique polynomial of degree < len(points)."""
    if not points:
        raise ValueError("need at least one point")
    xs = [x % q for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation points must have distinct x")
    result = [0] * len(points)
    for i, (xi, (_, yi)) in enumerate(zip(xs, points)):
        basis = [1]
        denom = 1
        for j, xj in enumerate(xs):
            if j != i:
                basis = poly_mul(basis, [-xj % q, 1], q)
                denom = denom * (xi - xj) % q
        scale = yi * pow(denom, -1, q) % q
        for d, c in enumerate(basis):
            result[d] = (result[d] + scale * c) % q
    return Polynomial(q, result)


def binary_rep(i: int, width: int) -> tuple[int, ...]:
    """Little-endian bits ``(i_1, ..., i_width)`` with ``i = sum i_l 2^(l-1)``."""
    if not 0 <= i < (1 << width):
        raise ValueError(f"{i} does not fit in {width} bits")
    return tuple((i >> b) & 1 for b in range(width))
