"""Radial step functions on Q_p^n and their common tail representation.

A radial function here is described by its value on each sphere S_k.  A
:class:`RadialStepFunction` is constant on an inner ball B_{j0}, takes
arbitrary rational values on finitely many spheres above it and vanishes
outside.  Everything downstream (the Hardy operator, the norms) consumes the
same shape through :class:`RadialProfile`: an explicit finite window of
sphere values flanked by two geometric rays ``c * p^(slope*k)``.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .padic import PAdicParams, sphere_measure
from .scalar import DEFAULT_DIGITS, PowExpr, Scalar, format_rational, parse_rational


@dataclass(frozen=True)
class RadialProfile:
    """Sphere values of a radial function: window [lo, hi] plus two rays.

    For k < lo the value is ``inner_coef * p^(inner_slope*k)``, for k > hi it
    is ``outer_coef * p^(outer_slope*k)``.  The window may be empty
    (hi = lo - 1).
    """

    params: PAdicParams
    lo: int
    window: tuple[PowExpr, ...]
    inner_coef: Fraction
    inner_slope: Fraction
    outer_coef: Fraction
    outer_slope: Fraction

    @property
    def hi(self) -> int:
        return self.lo + len(self.window) - 1

    def value(self, k: int) -> PowExpr:
        p = self.params.p
        if k < self.lo:
            return PowExpr(p, self.inner_slope * k, self.inner_coef)
        if k > self.hi:
            return PowExpr(p, self.outer_slope * k, self.outer_coef)
        return self.window[k - self.lo]

    def inner_ray(self, k: int) -> PowExpr:
        return PowExpr(self.params.p, self.inner_slope * k, self.inner_coef)

    def outer_ray(self, k: int) -> PowExpr:
        return PowExpr(self.params.p, self.outer_slope * k, self.outer_coef)

    def is_zero(self) -> bool:
        return (self.inner_coef == 0 and self.outer_coef == 0
                and all(v.is_zero() for v in self.window))


@dataclass(frozen=True)
class RadialStepFunction:
    """Radial function: ``inner_value`` on B_{j0}, ``rings[k]`` on S_k, 0 beyond."""

    params: PAdicParams
    j0: int
    inner_value: Fraction
    rings: tuple[tuple[int, Fraction], ...] = ()

    def __init__(self, params: PAdicParams, j0: int, inner_value=0,
                 rings: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        items = rings.items() if isinstance(rings, Mapping) else rings
        normalized = sorted((int(k), Fraction(v)) for k, v in items)
        keys = [k for k, _ in normalized]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate ring index")
        if keys and keys[0] <= j0:
            raise ValueError(f"ring indices must exceed j0={j0}, got {keys[0]}")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "j0", int(j0))
        object.__setattr__(self, "inner_value", Fraction(inner_value))
        object.__setattr__(self, "rings", tuple(normalized))

    @classmethod
    def indicator_unit_ball(cls, params: PAdicParams) -> "RadialStepFunction":
        """The characteristic function of B_0."""
        return cls(params, 0, 1)

    @classmethod
    def zero(cls, params: PAdicParams) -> "RadialStepFunction":
        return cls(params, 0, 0)

    @property
    def jmax(self) -> int:
        return self.rings[-1][0] if self.rings else self.j0

    def ring_map(self) -> dict[int, Fraction]:
        return dict(self.rings)

    def scale(self, c) -> "RadialStepFunction":
        c = Fraction(c)
        return RadialStepFunction(self.params, self.j0, c * self.inner_value,
                                  [(k, c * v) for k, v in self.rings])

    def abs(self) -> "RadialStepFunction":
        return RadialStepFunction(self.params, self.j0, abs(self.inner_value),
                                  [(k, abs(v)) for k, v in self.rings])

    def is_zero(self) -> bool:
        return self.inner_value == 0 and all(v == 0 for _, v in self.rings)

    def profile(self) -> RadialProfile:
        p = self.params.p
        ring = self.ring_map()
        window = tuple(PowExpr.rational(p, ring.get(k, 0)) for k in range(self.j0 + 1, self.jmax + 1))
        return RadialProfile(self.params, self.j0 + 1, window,
                             self.inner_value, Fraction(0), Fraction(0), Fraction(0))

    # -- serialization --------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "prime": self.params.p,
            "dim": self.params.n,
            "inner_exp": self.j0,
            "inner_value": format_rational(self.inner_value),
            "rings": [{"k": k, "value": format_rational(v)} for k, v in self.rings],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: Mapping) -> "RadialStepFunction":
        try:
            params = PAdicParams(int(data["prime"]), int(data["dim"]))
            rings = [(int(r["k"]), parse_rational(str(r["value"]))) for r in data.get("rings", [])]
            return cls(params, int(data["inner_exp"]), parse_rational(str(data["inner_value"])), rings)
        except KeyError as exc:
            raise ValueError(f"function spec is missing field {exc.args[0]!r}") from None

    @classmethod
    def from_json(cls, text: str) -> "RadialStepFunction":
        return cls.from_dict(json.loads(text))


def evaluate(f: RadialStepFunction, k: int) -> Scalar:
    """Value of f on the sphere S_k."""
    if k <= f.j0:
        return Scalar(f.inner_value)
    return Scalar(f.ring_map().get(k, Fraction(0)))


@dataclass(frozen=True)
class MassProfile:
    """k -> integral of f over B_k, with exact closed forms on both tails."""

    params: PAdicParams
    j0: int
    jmax: int
    inner_value: Fraction
    _window: dict = field(repr=False, compare=False)

    def __call__(self, k: int) -> Fraction:
        if k <= self.j0:
            return self.inner_value * Fraction(self.params.p) ** (self.params.n * k)
        return self._window[min(k, self.jmax)]

    @property
    def total(self) -> Fraction:
        return self(self.jmax)


def cumulative_mass(f: RadialStepFunction) -> MassProfile:
    ring = f.ring_map()
    acc = f.inner_value * Fraction(f.params.p) ** (f.params.n * f.j0)
    window = {f.j0: acc}
    for k in range(f.j0 + 1, f.jmax + 1):
        acc += ring.get(k, 0) * sphere_measure(k, f.params)
        window[k] = acc
    return MassProfile(f.params, f.j0, f.jmax, f.inner_value, window)


def l1_norm(f: RadialStepFunction) -> Scalar:
    return Scalar(cumulative_mass(f.abs()).total)


def dilate(f: RadialStepFunction, m: int) -> RadialStepFunction:
    """g with g(p^k) = f(p^(k+m)) on every sphere."""
    return RadialStepFunction(f.params, f.j0 - m, f.inner_value, [(k - m, v) for k, v in f.rings])


@dataclass(frozen=True)
class RandomConfig:
    """Distribution for :func:`random_function`.

    ``value_range`` bounds the magnitudes; values are ``a/b`` with
    ``b <= max_denominator``.  ``sign_mode`` is ``"nonnegative"`` or
    ``"signed"``.  Each sphere in (j0, jmax] carries a ring with probability
    ``ring_density``.
    """

    j0_range: tuple[int, int] = (-3, 3)
    jmax_range: tuple[int, int] = (-3, 8)
    value_range: tuple[Fraction, Fraction] = (Fraction(0), Fraction(10))
    sign_mode: str = "nonnegative"
    max_denominator: int = 4
    ring_density: float = 0.7

    def __post_init__(self):
        if self.j0_range[0] > self.j0_range[1] or self.jmax_range[0] > self.jmax_range[1]:
            raise ValueError("empty index range")
        lo, hi = (Fraction(v) for v in self.value_range)
        if lo < 0 or lo > hi:
            raise ValueError("value_range must satisfy 0 <= lo <= hi")
        object.__setattr__(self, "value_range", (lo, hi))
        if self.sign_mode not in ("nonnegative", "signed"):
            raise ValueError(f"unknown sign_mode {self.sign_mode!r}")


def _draw_value(rng: random.Random, cfg: RandomConfig) -> Fraction:
    lo, hi = cfg.value_range
    den = rng.randint(1, cfg.max_denominator)
    a, b = math.ceil(lo * den), math.floor(hi * den)
    v = Fraction(rng.randint(a, b), den) if a <= b else lo
    if cfg.sign_mode == "signed" and rng.random() < 0.5:
        v = -v
    return v


def random_function(seed, params: PAdicParams, config: RandomConfig = RandomConfig()) -> RadialStepFunction:
    """Deterministic pseudo-random step function for the given seed."""
    rng = random.Random(f"radial:{seed}")
    j0 = rng.randint(*config.j0_range)
    jmax = rng.randint(max(j0, config.jmax_range[0]), max(j0, config.jmax_range[1]))
    inner = _draw_value(rng, config)
    rings = []
    for k in range(j0 + 1, jmax + 1):
        if rng.random() < config.ring_density:
            rings.append((k, _draw_value(rng, config)))
    return RadialStepFunction(params, j0, inner, rings)
