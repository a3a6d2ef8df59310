"""High-precision numerics: Gamma, classical series, convergence rates."""

from fractions import Fraction

import pytest

from qseries.limits import (
    BigFloatCtx,
    DegenerateTerm,
    PoleError,
    balanced_product_limit,
    eval_closed_form,
    eval_series,
    gamma_hp,
    measure_rate,
    q_product_numeric,
    term_exact,
)
from qseries.registry import ClassicalSeries, FactorialFactor, load_catalog

F = Fraction


@pytest.fixture(scope="module")
def ctx():
    return BigFloatCtx(digits=60)


@pytest.fixture(scope="module")
def cat():
    return load_catalog()


def test_gamma_basics(ctx):
    assert abs(gamma_hp(1, ctx) - 1) < ctx.tolerance()
    assert abs(gamma_hp(F(1, 2), ctx) - ctx.ctx.sqrt(ctx.ctx.pi)) < ctx.tolerance()


def test_gamma_reflection(ctx):
    lhs = gamma_hp(F(1, 3), ctx) * gamma_hp(F(2, 3), ctx)
    rhs = 2 * ctx.ctx.pi / ctx.ctx.sqrt(3)
    assert abs(lhs - rhs) < ctx.tolerance()


def test_gamma_pole(ctx):
    with pytest.raises(PoleError):
        gamma_hp(0, ctx)
    with pytest.raises(PoleError):
        gamma_hp(-3, ctx)


def test_precision_stability():
    # doubling precision never changes the first digits
    lo = BigFloatCtx(digits=40)
    hi = BigFloatCtx(digits=80)
    import mpmath

    a = mpmath.nstr(gamma_hp(F(1, 3), lo), 30)
    b = mpmath.nstr(gamma_hp(F(1, 3), hi), 30)
    assert a == b


def zero_series():
    return ClassicalSeries(
        value_factors=(("rat", F(0), 1),), base=F(1, 2), rate=F(1, 2),
        fnum=(), fden=(), poly=(F(0),), polyden=(), braces=(),
        factor_num=(), factor_den=(), start=0, prefix=F(0),
    )


def test_zero_polynomial_gives_zero(ctx):
    val, _ = eval_series(zero_series(), 10, ctx)
    assert val == 0


def test_guillera_value(ctx, cat):
    s = cat.get("g1x5pp").classical
    val, tail = eval_series(s, 40, ctx)
    target = eval_closed_form(s, ctx)
    assert abs(val - target) < ctx.tolerance(40)
    assert abs(val - target) <= tail * 2


def test_v3x1_value(ctx, cat):
    s = cat.get("v3x1").classical
    val, _ = eval_series(s, 40, ctx)
    target = eval_closed_form(s, ctx)
    assert abs(val - target) < ctx.tolerance(40)


def test_every_catalogued_value(ctx, cat):
    for rec in cat.records:
        s = rec.classical
        val, tail = eval_series(s, 40, ctx)
        target = eval_closed_form(s, ctx)
        assert abs(val - target) < ctx.tolerance(40), rec.id


def test_partial_sums_obey_tail_bound(ctx, cat):
    import mpmath

    for rid in ("g1x5pp", "v3x1", "w1+2d"):
        s = cat.get(rid).classical
        rate = abs(ctx.mpf(s.rate if s.rate != 1 else F(1, 2)))
        prev, _ = eval_series(s, 25, ctx)
        for m in (26, 28, 30):
            cur, _ = eval_series(s, m, ctx)
            step = abs(cur - prev)
            assert step <= abs(ctx.mpf(term_exact(s, s.start + 24))) * 2
            prev = cur


def test_degenerate_term_raises(ctx):
    s = ClassicalSeries(
        value_factors=(("rat", F(1), 1),), base=F(1, 2), rate=F(1, 2),
        fnum=(), fden=(FactorialFactor(F(-3), 1, 0, 1),),  # (-3)_n hits zero at n=4
        poly=(), polyden=(), braces=(), factor_num=(), factor_den=(),
        start=0, prefix=F(0),
    )
    with pytest.raises(DegenerateTerm):
        eval_series(s, 10, ctx)


def test_measure_rate_geometric(ctx):
    s = ClassicalSeries(
        value_factors=(("rat", F(2), 1),), base=F(1, 2), rate=F(1, 2),
        fnum=(), fden=(), poly=(F(1),), polyden=(), braces=(),
        factor_num=(), factor_den=(), start=0, prefix=F(0),
    )
    ratios, fitted = measure_rate(s, 20)
    assert fitted == F(1, 2)
    assert all(r == F(1, 2) for r in ratios.values())


def test_rate_groups(cat):
    for rec in cat.records:
        s = rec.classical
        _, fitted = measure_rate(s, 30)
        if s.rate in (F(1, 16), F(-1, 27)):
            assert abs((fitted - s.rate) / s.rate) <= F(1, 100), rec.id


def test_balanced_limit_g1x5pp_display_lists(ctx):
    # the displayed product {1/2,1/2,1/2,5/2 ; 1,1,1,1}:
    # Gamma(1)^4/(Gamma(1/2)^3 Gamma(5/2)) = 4/(3 pi^2)
    num = (F(1, 2), F(1, 2), F(1, 2), F(5, 2))
    den = (F(1), F(1), F(1), F(1))
    val = balanced_product_limit(num, den, ctx)
    expect = 4 / (3 * ctx.ctx.pi**2)
    assert abs(val - expect) < ctx.tolerance()


def test_balanced_limit_rejects_unbalanced(ctx):
    with pytest.raises(ValueError):
        balanced_product_limit((F(1, 2),), (F(1, 3),), ctx)


def test_symbolic_product_matches_numeric(ctx, cat):
    # evaluate a truncated-series left side at t = 1/2 and compare against
    # the direct numeric infinite products at q = (1/2)^12
    from qseries.registry import record_sides

    rec = cat.get("u2-09")
    order = 600
    lhs, _, _ = record_sides(rec, order)
    c = ctx.ctx
    half = c.mpf(1) / 2
    val = c.mpf(0)
    for e, coeff in lhs.terms():
        val += ctx.mpf(Fraction(coeff)) * half**e
    num, den = rec.lhs_exponents()
    direct = q_product_numeric(num, den, Fraction(1, 2) ** 12, ctx)
    # truncation tail: coefficients are bounded well below 2^(e/2) here
    assert abs(val - direct) < c.mpf(2) ** (-order // 3)


def test_q_product_bridge(ctx, cat):
    # the balanced Gamma limit agrees with the q-product near q = 1
    q = 1 - F(1, 10000)
    for rid in ("u2-09", "v3x1a", "w1+2e"):
        num, den = cat.get(rid).lhs_exponents()
        lim = balanced_product_limit(num, den, ctx)
        direct = q_product_numeric(num, den, q, BigFloatCtx(digits=30))
        assert abs(lim - direct) < 0.01 * max(1, abs(lim))
