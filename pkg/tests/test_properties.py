"""Seeded property suites; every test runs at least 500 examples."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from ultrametric.hardy import HardyParams, dilation_covariance_check, hardy_apply
from ultrametric.norms import NormSpec, central_morrey_norm, lq_norm, weak_central_morrey_norm, weak_lq_norm
from ultrametric.padic import PAdicParams, padic_norm
from ultrametric.radial import RadialStepFunction, dilate, l1_norm
from ultrametric.scalar import PowExpr, Scalar
from ultrametric.verification import (
    EndpointConfig,
    MorreyConfig,
    endpoint_ratio,
    endpoint_sharp_constant,
    morrey_ratio,
)

CASES = settings(max_examples=500, deadline=None, derandomize=True)

primes = st.sampled_from([2, 3, 5, 7])
nonzero_rationals = st.fractions(max_denominator=10 ** 6).filter(lambda x: x != 0)
small_values = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def params(draw, dims=(1, 2, 3)):
    return PAdicParams(draw(st.sampled_from([2, 3, 5])), draw(st.sampled_from(dims)))


@st.composite
def step_functions(draw, space=None, values=small_values):
    if not isinstance(space, PAdicParams):
        space = draw(space if space is not None else params())
    j0 = draw(st.integers(-4, 4))
    keys = draw(st.lists(st.integers(j0 + 1, j0 + 8), unique=True, max_size=6))
    rings = {k: draw(values) for k in keys}
    return RadialStepFunction(space, j0, draw(values), rings)


def nonzero(fs):
    return fs.filter(lambda f: not f.is_zero())


def rel_close(a: Scalar, b: Scalar, digits_slack=45) -> bool:
    return abs(a - b) <= Scalar(Fraction(1, 10 ** digits_slack)) * (abs(a) + abs(b) + 1)


@CASES
@given(primes, nonzero_rationals, nonzero_rationals)
def test_ultrametric_inequality(p, x, y):
    nx, ny, nxy = padic_norm(x, p), padic_norm(y, p), padic_norm(x + y, p)
    assert nxy <= max(nx, ny)
    if nx != ny:
        assert nxy == max(nx, ny)


@CASES
@given(primes, st.fractions(max_denominator=10 ** 6), st.fractions(max_denominator=10 ** 6))
def test_norm_multiplicative(p, x, y):
    assert padic_norm(x * y, p) == padic_norm(x, p) * padic_norm(y, p)


@CASES
@given(step_functions(), st.sampled_from([(1, 0), (2, 1), (3, Fraction(-1, 2)), (Fraction(3, 2), 2)]))
def test_chebyshev(f, qg):
    q, gamma = qg
    if f.params.n + gamma <= 0:
        gamma = 0
    assert weak_lq_norm(f, NormSpec.weak_lq(q, gamma)) <= lq_norm(f, NormSpec.lq(q, gamma)) * (
        1 + Scalar(Fraction(1, 10 ** 50)))


@CASES
@given(step_functions(), st.sampled_from([1, 2, 3, Fraction(5, 2)]), st.sampled_from([1, Fraction(1, 2), Fraction(1, 4)]))
def test_morrey_embedding(f, q, scale):
    lam = -Fraction(scale) / q
    weak = weak_central_morrey_norm(f, NormSpec.weak_central_morrey(q, lam))
    strong = central_morrey_norm(f, NormSpec.central_morrey(q, lam))
    assert weak <= strong * (1 + Scalar(Fraction(1, 10 ** 50)))


@st.composite
def pairs_on_one_space(draw):
    space = draw(params())
    return space, draw(step_functions(space)), draw(step_functions(space))


@CASES
@given(pairs_on_one_space(), small_values, small_values, st.sampled_from([0, Fraction(1, 2), Fraction(2, 3)]))
def test_operator_linearity(fg, a, b, alpha):
    space, f, g = fg
    hardy = HardyParams(space, alpha)
    fm, gm = f.ring_map(), g.ring_map()
    # Bring both to a common inner radius so a f + b g is again a step function.
    j0 = min(f.j0, g.j0)

    def value(h, hm, k):
        return h.inner_value if k <= h.j0 else hm.get(k, 0)

    top = max(f.jmax, g.jmax)
    combo = RadialStepFunction(space, j0, a * f.inner_value + b * g.inner_value,
                               {k: a * value(f, fm, k) + b * value(g, gm, k) for k in range(j0 + 1, top + 1)})
    hc, hf, hg = hardy_apply(combo, hardy), hardy_apply(f, hardy), hardy_apply(g, hardy)
    for k in range(j0 - 3, top + 4):
        # both images share the factor p^(-k(n-alpha)); combine the masses
        want = PowExpr(space.p, -k * hardy.decay, a * hf.mass(k) + b * hg.mass(k))
        assert hc.value_expr(k) == want
        assert hf.value_expr(k) == PowExpr(space.p, -k * hardy.decay, hf.mass(k))


@CASES
@given(step_functions(), st.integers(-6, 6), st.sampled_from([0, Fraction(1, 2), Fraction(1, 3)]))
def test_dilation_covariance(f, m, alpha):
    hardy = HardyParams(f.params, alpha)
    assert dilation_covariance_check(f, hardy, m, range(f.j0 - 4, f.jmax + 5))


@CASES
@given(step_functions())
def test_hardy_domination(f):
    hardy = HardyParams(f.params, Fraction(1, 2))
    signed, absolute = hardy_apply(f, hardy), hardy_apply(f.abs(), hardy)
    for k in range(f.j0 - 2, f.jmax + 3):
        assert abs(signed.value_expr(k)) <= absolute.value_expr(k)


@st.composite
def endpoint_cases(draw):
    space = draw(params(dims=(1, 2)))
    alpha = draw(st.sampled_from([a for a in (Fraction(1, 2), Fraction(1), Fraction(3, 2)) if a < space.n]))
    gamma = draw(st.sampled_from([0, 1, Fraction(-1, 2)]))
    f = draw(nonzero(step_functions(space)))
    return EndpointConfig(space, alpha, gamma), f


@CASES
@given(endpoint_cases(), st.fractions(min_value=-50, max_value=50, max_denominator=7).filter(lambda c: c != 0),
       st.integers(-4, 4))
def test_endpoint_ratio_invariance(case, c, m):
    cfg, f = case
    r = endpoint_ratio(f, cfg)
    assert rel_close(endpoint_ratio(f.scale(c), cfg), r)
    assert rel_close(endpoint_ratio(dilate(f, m), cfg), r)
    assert r <= endpoint_sharp_constant(cfg) * (1 + Scalar(Fraction(1, 10 ** 30)))


@CASES
@given(nonzero(step_functions(params(dims=(1, 2)))), st.sampled_from([1, 2, 3]),
       st.sampled_from([1, Fraction(1, 2), Fraction(1, 4)]),
       st.fractions(min_value=-9, max_value=9, max_denominator=5).filter(lambda c: c != 0))
def test_morrey_ratio_scale_invariance_and_bound(f, q, scale, c):
    cfg = MorreyConfig(f.params, q, -Fraction(scale) / q)
    r = morrey_ratio(f, cfg)
    assert r <= 1 + Scalar(Fraction(1, 10 ** 30))
    assert rel_close(morrey_ratio(f.scale(c), cfg), r)


@CASES
@given(step_functions(), small_values)
def test_l1_homogeneous(f, c):
    assert l1_norm(f.scale(c)) == Scalar(abs(c)) * l1_norm(f)
    assert (l1_norm(f) == Scalar(0)) == f.is_zero()
