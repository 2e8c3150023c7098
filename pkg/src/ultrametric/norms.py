"""Weighted L^q, weak L^q, central Morrey and weak central Morrey norms of
radial functions.

All four functionals act on a :class:`~ultrametric.radial.RadialProfile`
(step functions and Hardy images both convert to one).  Suprema are computed
on q-th powers, exactly where the arithmetic allows, and rooted at the end.

Weak norms.  The distribution function t -> |{|g| > t}| is a decreasing step
function, so sup_t t^q W(t) is a max over the distinct sphere values v of
v^q * |{|g| >= v}|.  There are infinitely many such levels on the two rays;
they are visited in decreasing order and the scan stops once a closed-form
envelope proves no later level can win:

* once the superlevel set reaches the outer ray, its top sphere K obeys
  p^K <= (a_out / v)^(1/e_out), giving ``objective <= C * v^E``;
* E > 0: stop as soon as ``C * v^E`` is below the running max;
* E = 0: the envelope constant is also the limit of the objective along the
  outer levels, so the sup is ``max(running max, C)``;
* E < 0: the norm is infinite.

Strong Morrey norm.  The ball objective is monotone on the inner branch and
a sum of at most two exponentials (or exponential times linear) on the outer
branch, which has at most one critical point; balls are enumerated past that
point and the limit at infinity is added as a candidate.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterator, Union

from .hardy import RadialHardyImage
from .padic import UNWEIGHTED, PAdicParams, WeightSpec
from .radial import RadialProfile, RadialStepFunction, evaluate
from .scalar import (
    DEFAULT_DIGITS,
    DivergenceError,
    PowExpr,
    Scalar,
    decimal_context,
    geometric_tail_sum,
    pow_powexpr,
    pow_rational,
    prime_power,
)

RadialLike = Union[RadialStepFunction, RadialHardyImage, RadialProfile]


class NormKind(str, Enum):
    LQ = "lq"
    WEAK_LQ = "weak-lq"
    MORREY = "morrey"
    WEAK_MORREY = "weak-morrey"


@dataclass(frozen=True)
class NormSpec:
    kind: NormKind
    q: Fraction
    weight: WeightSpec = UNWEIGHTED
    lam: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", NormKind(self.kind))
        object.__setattr__(self, "q", Fraction(self.q))
        if self.q < 1:
            raise ValueError(f"q must be >= 1, got {self.q}")
        if self.kind in (NormKind.MORREY, NormKind.WEAK_MORREY):
            if self.lam is None:
                raise ValueError("Morrey norms need lambda")
            lam = Fraction(self.lam)
            object.__setattr__(self, "lam", lam)
            if not -1 / self.q <= lam < 0:
                raise ValueError(f"lambda must satisfy -1/q <= lambda < 0, got {lam} with q={self.q}")
            if self.weight.gamma != 0:
                raise ValueError("Morrey norms are unweighted")
        elif self.lam is not None:
            raise ValueError("lambda only applies to Morrey norms")

    @classmethod
    def lq(cls, q, gamma=0) -> "NormSpec":
        return cls(NormKind.LQ, q, WeightSpec(gamma))

    @classmethod
    def weak_lq(cls, q, gamma=0) -> "NormSpec":
        return cls(NormKind.WEAK_LQ, q, WeightSpec(gamma))

    @classmethod
    def central_morrey(cls, q, lam) -> "NormSpec":
        return cls(NormKind.MORREY, q, UNWEIGHTED, Fraction(lam))

    @classmethod
    def weak_central_morrey(cls, q, lam) -> "NormSpec":
        return cls(NormKind.WEAK_MORREY, q, UNWEIGHTED, Fraction(lam))

    @property
    def mu(self) -> Fraction:
        """1 + lambda q: the ball normaliser is |B_gamma|^-(mu/q)."""
        return 1 + self.lam * self.q


@dataclass(frozen=True)
class NormResult:
    value: Scalar
    q_power: Scalar
    witness: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SuperlevelGeometry:
    """Spheres where |g| exceeds (or reaches) a threshold.

    ``inner_ray`` is ``(start, lo - 1)`` with ``start=None`` meaning the ray
    runs down to -infinity; ``outer_ray`` is ``(hi + 1, end)``.
    """

    threshold: PowExpr
    spheres: tuple[int, ...]
    inner_ray: tuple[int | None, int] | None
    outer_ray: tuple[int, int] | None
    measure: Scalar

    def indices(self, lo: int, hi: int) -> list[int]:
        """All sphere indices of the set lying in [lo, hi] (for finite checks)."""
        out = []
        if self.inner_ray is not None:
            start = lo if self.inner_ray[0] is None else max(lo, self.inner_ray[0])
            out.extend(range(start, min(hi, self.inner_ray[1]) + 1))
        out.extend(k for k in self.spheres if lo <= k <= hi)
        if self.outer_ray is not None:
            out.extend(range(max(lo, self.outer_ray[0]), min(hi, self.outer_ray[1]) + 1))
        return out


def as_profile(g: RadialLike) -> RadialProfile:
    if isinstance(g, RadialProfile):
        return g
    return g.profile()


# -- geometry ---------------------------------------------------------------


class _Geometry:
    """Cached per-profile data for level-set queries under a weight."""

    def __init__(self, prof: RadialProfile, weight: WeightSpec, digits: int):
        self.prof = prof
        self.params = prof.params
        self.p, self.n = prof.params.p, prof.params.n
        self.weight = weight
        self.digits = digits
        self.s = weight.homogeneity(prof.params)
        weight.require_locally_finite(prof.params)
        self.lo, self.hi = prof.lo, prof.hi
        self.abs_window = [abs(v) for v in prof.window]
        self.inner_coef = abs(prof.inner_coef)
        self.outer_coef = abs(prof.outer_coef)
        if self.outer_coef and prof.outer_slope >= 0:
            raise DivergenceError("outer tail does not decay; every superlevel set is unbounded")
        shell = 1 - Fraction(1, self.p ** self.n)
        self.shell = shell
        self.sphere = [PowExpr(self.p, k * self.s, shell).to_scalar(digits) for k in range(self.lo, self.hi + 1)]
        # Weighted ball measure B(k) = beta * p^(k s).
        self.beta = geometric_tail_sum(prime_power(self.p, -self.s, digits), Scalar(shell, digits))

    def ball(self, k: int) -> Scalar:
        return self.beta * prime_power(self.p, k * self.s, self.digits)

    def inner_start(self, v: PowExpr, strict: bool) -> int | None | bool:
        """First inner-ray index in the level set; None = whole ray, False = empty."""
        c = self.inner_coef
        if c == 0:
            return False
        cmp = (lambda x: x > 0) if strict else (lambda x: x >= 0)

        def ok(k):
            return cmp(abs(self.prof.inner_ray(k)).compare(v))

        top = self.lo - 1
        if not ok(top):
            return False
        if self.prof.inner_slope == 0:
            return None
        est = (v.log_base() - PowExpr.rational(self.p, c).log_base()) / float(self.prof.inner_slope)
        k = min(top, math.ceil(est))
        while not ok(k):
            k += 1
        while ok(k - 1):
            k -= 1
        return k

    def outer_end(self, v: PowExpr, strict: bool) -> int | None:
        """Last outer-ray index in the level set, or None if it misses the ray."""
        c = self.outer_coef
        if c == 0:
            return None
        cmp = (lambda x: x > 0) if strict else (lambda x: x >= 0)

        def ok(k):
            return cmp(abs(self.prof.outer_ray(k)).compare(v))

        first = self.hi + 1
        if not ok(first):
            return None
        slope = self.prof.outer_slope
        est = (v.log_base() - PowExpr.rational(self.p, c).log_base()) / float(slope)
        k = max(first, math.floor(est))
        while not ok(k):
            k -= 1
        while ok(k + 1):
            k += 1
        return k

    def level_set(self, v: PowExpr, strict: bool = False) -> SuperlevelGeometry:
        if strict:
            spheres = tuple(self.lo + i for i, w in enumerate(self.abs_window) if w.compare(v) > 0)
        else:
            spheres = tuple(self.lo + i for i, w in enumerate(self.abs_window) if w.compare(v) >= 0)
        start = self.inner_start(v, strict)
        end = self.outer_end(v, strict)
        measure = Scalar(Fraction(0), self.digits)
        for k in spheres:
            measure = measure + self.sphere[k - self.lo]
        inner_ray = None
        if start is not False:
            inner_ray = (start, self.lo - 1)
            measure = measure + self.ball(self.lo - 1)
            if start is not None:
                measure = measure - self.ball(start - 1)
        outer_ray = None
        if end is not None:
            outer_ray = (self.hi + 1, end)
            measure = measure + self.ball(end) - self.ball(self.hi)
        return SuperlevelGeometry(v, spheres, inner_ray, outer_ray, measure)

    def top_index(self) -> int | None:
        """Highest sphere with a nonzero value, if the outer ray vanishes."""
        for i in range(len(self.abs_window) - 1, -1, -1):
            if not self.abs_window[i].is_zero():
                return self.lo + i
        return self.lo - 1 if self.inner_coef else None

    def levels(self) -> Iterator[PowExpr]:
        """Distinct positive values of |g|, in decreasing order."""
        window = sorted({w for w in self.abs_window if not w.is_zero()},
                        key=cmp_to_key(lambda a, b: a.compare(b)), reverse=True)

        def inner():
            if self.inner_coef == 0:
                return
            if self.prof.inner_slope == 0:
                yield PowExpr.rational(self.p, self.inner_coef)
                return
            k = self.lo - 1
            while True:
                yield abs(self.prof.inner_ray(k))
                k -= 1

        def outer():
            if self.outer_coef == 0:
                return
            k = self.hi + 1
            while True:
                yield abs(self.prof.outer_ray(k))
                k += 1

        sources = [iter(window), inner(), outer()]
        heads = [next(src, None) for src in sources]
        last = None
        while True:
            best = None
            for i, h in enumerate(heads):
                if h is not None and (best is None or h.compare(heads[best]) > 0):
                    best = i
            if best is None:
                return
            v = heads[best]
            heads[best] = next(sources[best], None)
            if last is None or v != last:
                last = v
                yield v


def superlevel_geometry(g: RadialLike, t, weight: WeightSpec = UNWEIGHTED, strict: bool = True,
                        digits: int = DEFAULT_DIGITS) -> SuperlevelGeometry:
    """The set {|g| > t} (or {|g| >= t}) with its weighted measure."""
    prof = as_profile(g)
    if not isinstance(t, PowExpr):
        t = PowExpr.rational(prof.params.p, Fraction(t))
    if t.sign() <= 0:
        raise ValueError("threshold must be positive")
    return _Geometry(prof, weight, digits).level_set(t, strict)


# -- strong norms -----------------------------------------------------------


def _ray_sum(p: int, coef_q: Scalar, first_exp, step_exp, shell: Fraction, digits: int, which: str) -> Scalar:
    """Sum over a ray of coef_q * p^(first_exp + j*step_exp) * shell, j >= 0."""
    if step_exp >= 0:
        raise DivergenceError(f"{which} tail: q-th power integral diverges")
    ratio = prime_power(p, step_exp, digits)
    first = coef_q * PowExpr(p, first_exp, shell).to_scalar(digits)
    return geometric_tail_sum(ratio, first)


def lq_norm(g: RadialLike, spec: NormSpec, digits: int = DEFAULT_DIGITS) -> Scalar:
    return lq_norm_result(g, spec, digits).value


def lq_norm_result(g: RadialLike, spec: NormSpec, digits: int = DEFAULT_DIGITS) -> NormResult:
    if spec.kind is not NormKind.LQ:
        raise ValueError(f"lq_norm needs an Lq spec, got {spec.kind.value}")
    prof = as_profile(g)
    geo = _Geometry(prof, spec.weight, digits)
    p, q, s = geo.p, spec.q, geo.s
    total = Scalar(Fraction(0), digits)
    for k, v in zip(range(geo.lo, geo.hi + 1), geo.abs_window):
        if not v.is_zero():
            total = total + pow_powexpr(v, q, digits) * geo.sphere[k - geo.lo]
    if geo.inner_coef:
        d = q * prof.inner_slope + s
        cq = pow_rational(Scalar(geo.inner_coef, digits), q)
        total = total + _ray_sum(p, cq, (geo.lo - 1) * d, -d, geo.shell, digits, "inner")
    if geo.outer_coef:
        d = q * prof.outer_slope + s
        cq = pow_rational(Scalar(geo.outer_coef, digits), q)
        total = total + _ray_sum(p, cq, (geo.hi + 1) * d, d, geo.shell, digits, "outer")
    return NormResult(pow_rational(total, 1 / q), total)


def _two_term_critical(X: float, a1: float, Y: float, a2: float, lnp: float) -> float | None:
    """Critical point of X p^(a1 x) + Y p^(a2 x), if any."""
    if X == 0 or Y == 0 or a1 == 0 or a2 == 0 or a1 == a2:
        return None
    ratio = -(Y * a2) / (X * a1)
    if ratio <= 0:
        return None
    return math.log(ratio) / ((a1 - a2) * lnp)


def central_morrey_norm(g: RadialLike, spec: NormSpec, digits: int = DEFAULT_DIGITS) -> Scalar:
    return central_morrey_result(g, spec, digits).value


def central_morrey_result(g: RadialLike, spec: NormSpec, digits: int = DEFAULT_DIGITS) -> NormResult:
    if spec.kind is not NormKind.MORREY:
        raise ValueError(f"central_morrey_norm needs a Morrey spec, got {spec.kind.value}")
    prof = as_profile(g)
    geo = _Geometry(prof, UNWEIGHTED, digits)
    p, n, q, mu = geo.p, geo.n, spec.q, spec.mu

    def normalised(gamma: int, integral: Scalar) -> Scalar:
        return prime_power(p, -n * gamma * mu, digits) * integral

    # Inner branch: objective increases with gamma, so gamma = lo - 1 dominates it.
    integral = Scalar(Fraction(0), digits)
    if geo.inner_coef:
        d = q * prof.inner_slope + n
        cq = pow_rational(Scalar(geo.inner_coef, digits), q)
        integral = _ray_sum(p, cq, (geo.lo - 1) * d, -d, geo.shell, digits, "inner")
    best, best_ball = normalised(geo.lo - 1, integral), geo.lo - 1
    for k, v in zip(range(geo.lo, geo.hi + 1), geo.abs_window):
        if not v.is_zero():
            integral = integral + pow_powexpr(v, q, digits) * geo.sphere[k - geo.lo]
        cand = normalised(k, integral)
        if cand > best:
            best, best_ball = cand, k
    witness: dict = {"ball": best_ball}
    if geo.outer_coef:
        best, witness = _morrey_outer_branch(prof, geo, spec, integral, best, witness, digits)
    return NormResult(pow_rational(best, 1 / q), best, witness)


def _morrey_outer_branch(prof, geo, spec, integral_hi, best, witness, digits):
    p, n, q, mu = geo.p, geo.n, spec.q, spec.mu
    hi = geo.hi
    c = pow_rational(Scalar(geo.outer_coef, digits), q) * geo.shell
    d = n + q * prof.outer_slope
    a1 = -n * mu
    lnp = math.log(p)
    limit: Scalar | None
    crit = None
    if d != 0:
        pd = prime_power(p, d, digits)
        Y = c * pd / (pd - 1)
        X = integral_hi - c * prime_power(p, (hi + 1) * d, digits) / (pd - 1)
        a2 = a1 + d
        if a2 > 0 and Y.sign() > 0:
            raise DivergenceError("outer tail: Morrey objective grows without bound")
        limit = Scalar(Fraction(0), digits)
        if a1 == 0:
            limit = limit + X
        if a2 == 0:
            limit = limit + Y
        crit = _two_term_critical(float(X), float(a1), float(Y), float(a2), lnp)
    else:
        if a1 == 0:
            raise DivergenceError("outer tail: local q-integral grows linearly with no decay")
        A, B = integral_hi - c * hi, c
        limit = Scalar(Fraction(0), digits)
        a = float(a1) * lnp
        crit = -(a * float(A) + float(B)) / (a * float(B))
    end = hi + 1 if crit is None else max(hi + 1, math.ceil(crit) + 1)
    if end - hi > 100_000:
        raise DivergenceError("outer tail: Morrey objective peaks too far out to enumerate")
    integral = integral_hi
    for gamma in range(hi + 1, end + 1):
        integral = integral + c * prime_power(p, gamma * d, digits)
        cand = prime_power(p, -n * gamma * mu, digits) * integral
        if cand > best:
            best, witness = cand, {"ball": gamma}
    if limit > best:
        best, witness = limit, {"ball": "limit", "tail": "outer"}
    return best, witness


# -- weak norms -------------------------------------------------------------


def _envelope(geo: _Geometry, q: Fraction, growth: Fraction, outer_const) -> tuple[Fraction, Scalar, PowExpr | None]:
    """Return (E, C, deep_threshold) for the tail envelope ``C * v^E``.

    ``growth`` is the exponent turning p^K into measure scale: the envelope is
    ``outer_const(p^(K*growth))``.
    """
    p = geo.p
    if geo.outer_coef:
        e_out = -geo.prof.outer_slope
        expo = growth / e_out
        E = q - expo
        if E < 0:
            raise DivergenceError("outer tail: weak-type norm is infinite for this exponent")
        C = outer_const(pow_rational(Scalar(geo.outer_coef, geo.digits), expo))
        return E, C, abs(geo.prof.outer_ray(geo.hi + 1))
    K = geo.top_index()
    return q, outer_const(prime_power(p, K * growth, geo.digits)), None


def _scan_levels(geo: _Geometry, q: Fraction, E: Fraction, C: Scalar, deep: PowExpr | None, objective):
    digits = geo.digits
    best = Scalar(Fraction(0), digits)
    witness: dict = {}
    for v in geo.levels():
        if deep is None or v.compare(deep) <= 0:
            if E == 0:
                if C > best:
                    best, witness = C, {"level": "limit", "tail": "outer"}
                break
            if pow_powexpr(v, E, digits) * C <= best:
                break
        val, extra = objective(v)
        if val > best:
            best = val
            witness = {"level": v.to_scalar(digits).to_decimal_string(), **extra}
    return best, witness


def weak_lq_norm(g: RadialLike, spec: NormSpec, digits: int = DEFAULT_DIGITS) -> Scalar:
    return weak_lq_result(g, spec, digits).value


def weak_lq_result(g: RadialLike, spec: NormSpec, digits: int = DEFAULT_DIGITS) -> NormResult:
    if spec.kind is not NormKind.WEAK_LQ:
        raise ValueError(f"weak_lq_norm needs a weak-Lq spec, got {spec.kind.value}")
    prof = as_profile(g)
    geo = _Geometry(prof, spec.weight, digits)
    q = spec.q
    if prof.is_zero():
        zero = Scalar(Fraction(0), digits)
        return NormResult(zero, zero)
    E, C, deep = _envelope(geo, q, geo.s, lambda x: geo.beta * x)

    def objective(v):
        ls = geo.level_set(v)
        return pow_powexpr(v, q, digits) * ls.measure, {}

    best, witness = _scan_levels(geo, q, E, C, deep, objective)
    return NormResult(pow_rational(best, 1 / q), best, witness)


def weak_central_morrey_norm(g: RadialLike, spec: NormSpec, digits: int = DEFAULT_DIGITS) -> Scalar:
    return weak_central_morrey_result(g, spec, digits).value


def weak_central_morrey_result(g: RadialLike, spec: NormSpec, digits: int = DEFAULT_DIGITS) -> NormResult:
    if spec.kind is not NormKind.WEAK_MORREY:
        raise ValueError(f"weak_central_morrey_norm needs a weak-Morrey spec, got {spec.kind.value}")
    prof = as_profile(g)
    geo = _Geometry(prof, UNWEIGHTED, digits)
    p, n, q, mu = geo.p, geo.n, spec.q, spec.mu
    if prof.is_zero():
        zero = Scalar(Fraction(0), digits)
        return NormResult(zero, zero)
    E, C, deep = _envelope(geo, q, n * (1 - mu), lambda x: x)
    unit = Fraction(p) ** n
    shell = geo.shell

    def objective(v):
        # Within one level set the best ball is at the set's inner-ray top,
        # at a window sphere of the set, or at the top of its outer-ray run.
        start = geo.inner_start(v, strict=False)
        mass = Fraction(0)
        cands: list[tuple[int, Fraction]] = []
        if start is not False:
            mass = unit ** (geo.lo - 1)
            if start is not None:
                mass -= unit ** (start - 1)
            cands.append((geo.lo - 1, mass))
        for i, w in enumerate(geo.abs_window):
            if w.compare(v) >= 0:
                k = geo.lo + i
                mass += unit ** k * shell
                cands.append((k, mass))
        end = geo.outer_end(v, strict=False)
        if end is not None:
            mass += unit ** end - unit ** geo.hi
            cands.append((end, mass))
        ball, mass = max(cands, key=cmp_to_key(
            lambda a, b: PowExpr(p, -n * a[0] * mu, a[1]).compare(PowExpr(p, -n * b[0] * mu, b[1]))))
        val = pow_powexpr(v, q, digits) * PowExpr(p, -n * ball * mu, mass).to_scalar(digits)
        return val, {"ball": ball}

    best, witness = _scan_levels(geo, q, E, C, deep, objective)
    return NormResult(pow_rational(best, 1 / q), best, witness)


def norm_result(g: RadialLike, spec: NormSpec, digits: int = DEFAULT_DIGITS) -> NormResult:
    return {
        NormKind.LQ: lq_norm_result,
        NormKind.WEAK_LQ: weak_lq_result,
        NormKind.MORREY: central_morrey_result,
        NormKind.WEAK_MORREY: weak_central_morrey_result,
    }[spec.kind](g, spec, digits)


def norm(g: RadialLike, spec: NormSpec, digits: int = DEFAULT_DIGITS) -> Scalar:
    return norm_result(g, spec, digits).value


# -- brute-force oracle -----------------------------------------------------


def _direct_values(g, window: tuple[int, int], digits: int) -> list[tuple[int, Decimal]]:
    lo, hi = window
    if isinstance(g, RadialStepFunction):
        return [(k, abs(evaluate(g, k)).as_decimal(digits)) for k in range(lo, hi + 1)]
    if isinstance(g, RadialHardyImage):
        # Direct evaluation |x|^-(n-alpha) * (integral over the ball), no tail formulas.
        p, decay = g.params.p, g.hardy.decay
        out = []
        for k in range(lo, hi + 1):
            radius = prime_power(p, -k * decay, digits)
            out.append((k, abs(radius * Scalar(g.mass(k), digits)).as_decimal(digits)))
        return out
    raise TypeError("the grid oracle evaluates step functions or Hardy images directly")


def weak_norm_grid_oracle(g, spec: NormSpec, grid: tuple, window: tuple[int, int],
                          digits: int = DEFAULT_DIGITS) -> Scalar:
    """Brute-force lower bound for a weak norm.

    Maximises t * |{|g| > t}|^(1/q) over a geometric grid of thresholds,
    summing sphere measures only over ``window``.
    """
    t_min, t_max, steps = grid
    if steps < 2:
        raise ValueError("grid needs at least two steps")
    if spec.kind not in (NormKind.WEAK_LQ, NormKind.WEAK_MORREY):
        raise ValueError("the grid oracle applies to weak norms")
    ctx = decimal_context(digits)
    params: PAdicParams = g.params
    p, n = params.p, params.n
    gamma = spec.weight.gamma
    vals = _direct_values(g, window, digits)
    shell = 1 - Fraction(1, p ** n)
    meas = {k: PowExpr(p, k * (n + gamma), shell).to_scalar(digits).as_decimal(digits) for k, _ in vals}
    inv_q = ctx.divide(Decimal(spec.q.denominator), Decimal(spec.q.numerator))
    t0 = Scalar(Fraction(t_min), digits).as_decimal(digits) if not isinstance(t_min, Decimal) else t_min
    t1 = Scalar(Fraction(t_max), digits).as_decimal(digits) if not isinstance(t_max, Decimal) else t_max
    step = ctx.power(ctx.divide(t1, t0), ctx.divide(Decimal(1), Decimal(steps - 1)))
    if spec.kind is NormKind.WEAK_MORREY:
        mu = spec.mu
        norm_fac = {k: PowExpr(p, -n * k * mu, 1).to_scalar(digits).as_decimal(digits) for k, _ in vals}
    roots: dict[Decimal, Decimal] = {Decimal(0): Decimal(0)}

    def root(w: Decimal) -> Decimal:
        if w not in roots:
            roots[w] = ctx.power(w, inv_q)
        return roots[w]

    best = Decimal(0)
    if spec.kind is NormKind.WEAK_LQ:
        ordered = sorted(vals, key=lambda kv: kv[1])
        keys = [v for _, v in ordered]
        suffix = [Decimal(0)] * (len(ordered) + 1)
        for i in range(len(ordered) - 1, -1, -1):
            suffix[i] = ctx.add(suffix[i + 1], meas[ordered[i][0]])
    t = t0
    for i in range(steps):
        if i == steps - 1:
            t = t1
        if spec.kind is NormKind.WEAK_LQ:
            w = suffix[bisect.bisect_right(keys, t)]
            obj = ctx.multiply(t, root(w))
        else:
            mass = Decimal(0)
            top = Decimal(0)
            for k, v in vals:
                if v > t:
                    mass = ctx.add(mass, meas[k])
                if mass > 0:
                    top = max(top, ctx.multiply(norm_fac[k], mass))
            obj = ctx.multiply(t, root(top))
        best = max(best, obj)
        t = ctx.multiply(t, step)
    return Scalar.approx(best, digits)
