"""The p-adic fractional Hardy operator on radial step functions.

For radial f the image is radial as well: on the sphere |x|_p = p^k,

    H_alpha f = p^(-k(n-alpha)) * M(k),   M(k) = integral of f over B_k.

Below j0, M(k) = inner_value * p^(nk) so the image is ``inner_value *
p^(k alpha)``; above jmax the mass is frozen and the image decays like
``M_total * p^(-k(n-alpha))``.  The image is kept in that analytic form
rather than resampled.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .padic import PAdicParams
from .radial import MassProfile, RadialProfile, RadialStepFunction, cumulative_mass, dilate, l1_norm
from .scalar import DEFAULT_DIGITS, PowExpr, Scalar, prime_power, slack_tolerance

BOUND_SLACK = 20


@dataclass(frozen=True)
class HardyParams:
    params: PAdicParams
    alpha: Fraction = Fraction(0)

    def __post_init__(self):
        a = Fraction(self.alpha)
        object.__setattr__(self, "alpha", a)
        if not 0 <= a < self.params.n:
            raise ValueError(f"alpha must satisfy 0 <= alpha < n={self.params.n}, got {a}")

    @property
    def decay(self) -> Fraction:
        """n - alpha, the exponent of the |x|^-(n-alpha) prefactor."""
        return self.params.n - self.alpha


@dataclass(frozen=True)
class RadialHardyImage:
    hardy: HardyParams
    source: RadialStepFunction
    mass: MassProfile

    @property
    def params(self) -> PAdicParams:
        return self.hardy.params

    @property
    def j0(self) -> int:
        return self.source.j0

    @property
    def jmax(self) -> int:
        return self.source.jmax

    def value_expr(self, k: int) -> PowExpr:
        """Exact value on S_k as ``M(k) * p^(-k(n-alpha))``."""
        return PowExpr(self.params.p, -k * self.hardy.decay, self.mass(k))

    def value(self, k: int, digits: int = DEFAULT_DIGITS) -> Scalar:
        return self.value_expr(k).to_scalar(digits)

    def profile(self) -> RadialProfile:
        p = self.params.p
        window = tuple(self.value_expr(k) for k in range(self.j0 + 1, self.jmax + 1))
        return RadialProfile(self.params, self.j0 + 1, window,
                             self.source.inner_value, self.hardy.alpha,
                             self.mass.total, -self.hardy.decay)


def hardy_apply(f: RadialStepFunction, hardy: HardyParams) -> RadialHardyImage:
    if f.params != hardy.params:
        raise ValueError(f"function lives on {f.params}, operator on {hardy.params}")
    return RadialHardyImage(hardy, f, cumulative_mass(f))


def pointwise_upper_bound_check(f: RadialStepFunction, hardy: HardyParams, window: Iterable[int],
                                morrey: tuple[Fraction, Fraction] | None = None,
                                digits: int = DEFAULT_DIGITS) -> bool:
    """Check |H f| <= |x|^-(n-alpha) ||f||_1 on every sphere in ``window``.

    With ``morrey=(q, lam)`` (only meaningful for alpha = 0) also check the
    Hoelder bound |H f| <= |x|^(n lam) ||f||_{B^{q,lam}}, allowing a relative
    10^-(digits-20) when that side is rounded.
    """
    from .norms import NormSpec, central_morrey_norm

    image = hardy_apply(f, hardy)
    l1 = l1_norm(f)
    p, n = hardy.params.p, hardy.params.n
    bound_morrey = None
    if morrey is not None:
        if hardy.alpha != 0:
            raise ValueError("the Morrey pointwise bound applies to alpha = 0")
        q, lam = morrey
        bound_morrey = central_morrey_norm(f, NormSpec.central_morrey(q, lam), digits)
    for k in window:
        v = abs(image.value_expr(k))
        l1_bound = PowExpr(p, -k * hardy.decay, l1.as_fraction())
        if v.compare(l1_bound) > 0:
            return False
        if bound_morrey is not None:
            bound = prime_power(p, k * n * Fraction(lam), digits) * bound_morrey
            # The bound is attained, so rounded values need a relative allowance.
            if not bound.exact:
                bound = bound * (1 + Scalar(slack_tolerance(BOUND_SLACK, digits), digits))
            if v.to_scalar(digits) > bound:
                return False
    return True


def dilation_covariance_check(f: RadialStepFunction, hardy: HardyParams, m: int,
                              window: Iterable[int]) -> bool:
    """Check H(dilate(f, m))(p^k) == p^(-m alpha) H f(p^(k+m)) exactly."""
    lhs = hardy_apply(dilate(f, m), hardy)
    rhs = hardy_apply(f, hardy)
    shift = PowExpr.power(hardy.params.p, -m * hardy.alpha)
    return all(lhs.value_expr(k) == shift * rhs.value_expr(k + m) for k in window)
