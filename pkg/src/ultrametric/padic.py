"""p-adic valuations, norms, and Haar measures of balls and spheres in Q_p^n."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .scalar import (
    DEFAULT_DIGITS,
    DivergenceError,
    PowExpr,
    Scalar,
    geometric_tail_sum,
    prime_power,
)

INF = math.inf


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


@dataclass(frozen=True)
class PAdicParams:
    """Ambient space Q_p^n."""

    p: int
    n: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"p must be a prime, got {self.p!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"dimension n must be an integer >= 1, got {self.n!r}")


@dataclass(frozen=True)
class WeightSpec:
    """Power weight |x|_p^gamma."""

    gamma: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "gamma", Fraction(self.gamma))

    def homogeneity(self, params: PAdicParams) -> Fraction:
        """n + gamma, the scaling exponent of the weighted measure."""
        return params.n + self.gamma

    def require_locally_finite(self, params: PAdicParams) -> None:
        if self.homogeneity(params) <= 0:
            raise DivergenceError(
                f"inner tail: weighted measure near 0 needs n + gamma > 0 (n={params.n}, gamma={self.gamma})")


UNWEIGHTED = WeightSpec()


def _int_valuation(m: int, p: int) -> int:
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


def padic_valuation(x, p: int) -> int | float:
    """Exponent k with x = (s/t) p^k, s and t prime to p; ``math.inf`` for 0."""
    x = Fraction(x)
    if x == 0:
        return INF
    return _int_valuation(abs(x.numerator), p) - _int_valuation(x.denominator, p)


def padic_norm(x, p: int) -> Scalar:
    v = padic_valuation(x, p)
    if v == INF:
        return Scalar(Fraction(0))
    return Scalar(Fraction(p) ** -v)


def vector_norm(x: Sequence, params: PAdicParams) -> Scalar:
    if len(x) != params.n:
        raise ValueError(f"expected a vector of length {params.n}, got {len(x)}")
    return max((padic_norm(c, params.p) for c in x), default=Scalar(Fraction(0)))


def ball_measure(k: int, params: PAdicParams) -> Scalar:
    """Haar measure of B_k, p^(nk)."""
    return Scalar(Fraction(params.p) ** (params.n * k))


def sphere_measure(k: int, params: PAdicParams) -> Fraction:
    p, n = params.p, params.n
    return Fraction(p) ** (n * k) * (1 - Fraction(1, p ** n))


def sphere_weighted_power(k: int, weight: WeightSpec, params: PAdicParams) -> PowExpr:
    """Integral of |x|^gamma over S_k as an exact PowExpr."""
    p, n = params.p, params.n
    return PowExpr(p, k * (n + weight.gamma), 1 - Fraction(1, p ** n))


def sphere_weighted_measure(k: int, weight: WeightSpec, params: PAdicParams,
                            digits: int = DEFAULT_DIGITS) -> Scalar:
    """p^(k(n+gamma)) (1 - p^-n); approximate only if k(n+gamma) is fractional."""
    return sphere_weighted_power(k, weight, params).to_scalar(digits)


def weighted_ratio(weight: WeightSpec, params: PAdicParams, digits: int = DEFAULT_DIGITS) -> Scalar:
    """p^-(n+gamma), the ratio between consecutive sphere masses going inward."""
    return prime_power(params.p, -weight.homogeneity(params), digits)


def ball_weighted_measure(k: int, weight: WeightSpec, params: PAdicParams,
                          digits: int = DEFAULT_DIGITS) -> Scalar:
    """Integral of |x|^gamma over B_k, summed inward from S_k as a geometric series."""
    weight.require_locally_finite(params)
    return geometric_tail_sum(weighted_ratio(weight, params, digits),
                              sphere_weighted_measure(k, weight, params, digits))
