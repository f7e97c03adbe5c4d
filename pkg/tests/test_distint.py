"""Tests for quadrature, width-limit extrapolation, and distributional actions."""

import math

import pytest
from hypothesis import given, strategies as st

from deltalab import (
    ActionKind,
    DeltaKernel,
    DEFAULT_SCHEDULE,
    EpsilonSchedule,
    QuadratureBudgetError,
    accelerated_limit,
    action_samples,
    adaptive_quadrature,
    distribution_action,
    epsilon_limit,
    gauss_kronrod_panel,
    integrate_against,
)


# ---------------------------------------------------------------------------
# quadrature core
# ---------------------------------------------------------------------------


def test_panel_rule_is_exact_on_low_degree_polynomials():
    a, b = -0.7, 1.3
    for d in range(14):
        val, _, _ = gauss_kronrod_panel(lambda x, d=d: x**d, a, b)
        exact = (b ** (d + 1) - a ** (d + 1)) / (d + 1)
        assert val == pytest.approx(exact, abs=1e-13)


def test_adaptive_quadrature_smooth():
    val = adaptive_quadrature(math.exp, [0.0, 1.0], tol=1e-13)
    assert val == pytest.approx(math.e - 1.0, abs=1e-13)


def test_adaptive_quadrature_uses_interior_points():
    # |x| is only piecewise smooth; the interior breakpoint makes it easy
    val = adaptive_quadrature(abs, [-1.0, 0.0, 2.0], tol=1e-13)
    assert val == pytest.approx(2.5, abs=1e-12)


def test_adaptive_quadrature_rejects_bad_points():
    with pytest.raises(ValueError):
        adaptive_quadrature(math.exp, [0.0])
    with pytest.raises(ValueError):
        adaptive_quadrature(math.exp, [1.0, 0.0])


def test_adaptive_quadrature_rejects_non_finite_samples():
    with pytest.raises(ValueError):
        adaptive_quadrature(
            lambda x: math.inf if abs(x) < 0.5 else 1.0, [-1.0, 1.0], tol=1e-6
        )
    with pytest.raises(ValueError):
        adaptive_quadrature(lambda x: math.nan, [0.0, 1.0], tol=1e-6)


def test_budget_error_carries_partial_result():
    f = lambda z: math.sin(1e7 * z)
    with pytest.raises(QuadratureBudgetError) as info:
        adaptive_quadrature(f, [0.0, 1.0], tol=1e-15, max_panels=8)
    err = info.value
    assert math.isfinite(err.estimate)
    assert err.error_bound > 0.0
    assert err.panels >= 8


# ---------------------------------------------------------------------------
# width-limit extrapolation contract
# ---------------------------------------------------------------------------


def test_epsilon_limit_first_order_example():
    est = epsilon_limit([(0.4, 1.4), (0.2, 1.2), (0.1, 1.1)])
    assert est.value == pytest.approx(1.0, abs=1e-12)
    assert est.order == pytest.approx(1.0, abs=1e-12)
    assert not est.diverged


def test_epsilon_limit_second_order_example():
    est = epsilon_limit([(0.4, 1.16), (0.2, 1.04), (0.1, 1.01)])
    assert est.value == pytest.approx(1.0, abs=1e-12)
    assert est.order == pytest.approx(2.0, abs=1e-12)


def test_epsilon_limit_flags_divergence():
    samples = [(0.4, 2.5), (0.2, 5.0), (0.1, 10.0)]
    est = epsilon_limit(samples)
    assert est.diverged
    assert math.isnan(est.value)
    assert est.order == pytest.approx(-1.0, abs=1e-12)
    assert est.residual == math.inf


def test_epsilon_limit_flat_sequence():
    est = epsilon_limit([(0.4, 3.0), (0.2, 3.0), (0.1, 3.0)])
    assert est.value == 3.0
    assert est.order == math.inf
    assert not est.diverged


def test_epsilon_limit_tiny_jitter_is_not_divergence():
    # growing magnitudes at the roundoff floor must not be flagged
    est = epsilon_limit([(0.4, 1e-15), (0.2, 3e-15), (0.1, 8e-15)])
    assert not est.diverged


def test_epsilon_limit_needs_three_samples():
    with pytest.raises(ValueError):
        epsilon_limit([(0.4, 1.0), (0.2, 1.0)])


def test_epsilon_limit_requires_decreasing_widths():
    with pytest.raises(ValueError):
        epsilon_limit([(0.1, 1.0), (0.2, 1.0), (0.4, 1.0)])


@given(
    limit=st.floats(-2.0, 2.0),
    coeff=st.one_of(st.floats(0.1, 1.0), st.floats(-1.0, -0.1)),
    power=st.sampled_from([1.0, 1.5, 2.0, 3.0]),
)
def test_epsilon_limit_recovers_power_laws(limit, coeff, power):
    widths = EpsilonSchedule(start=0.4, ratio=0.5, steps=8).widths()
    samples = [(e, limit + coeff * e**power) for e in widths]
    est = epsilon_limit(samples)
    assert not est.diverged
    assert est.value == pytest.approx(limit, abs=1e-7)
    assert est.order == pytest.approx(power, abs=1e-5)


@given(
    limit=st.floats(-2.0, 2.0),
    coeff=st.one_of(st.floats(0.1, 1.0), st.floats(-1.0, -0.1)),
    power=st.sampled_from([1.0, 1.5, 2.0]),
)
def test_accelerated_limit_beats_raw_extrapolation(limit, coeff, power):
    widths = EpsilonSchedule(start=0.4, ratio=0.5, steps=8).widths()
    samples = [(e, limit + coeff * e**power) for e in widths]
    est = accelerated_limit(samples)
    assert est.value == pytest.approx(limit, abs=1e-9)
    # the reported order still describes the raw sequence
    assert est.order == pytest.approx(power, abs=1e-4)


def test_accelerated_limit_fallback_below_five_samples():
    # fewer than three samples is an error (no last-three fit exists) ...
    with pytest.raises(ValueError):
        accelerated_limit([(0.4, 1.0), (0.2, 1.5)])
    # ... and three or four samples fall back to the plain last-three fit
    samples = [(0.4, 1.4), (0.2, 1.2), (0.1, 1.1), (0.05, 1.05)]
    assert accelerated_limit(samples) == epsilon_limit(samples)


def test_schedule_validation():
    with pytest.raises(ValueError):
        EpsilonSchedule(start=-0.1, ratio=0.5, steps=5)
    with pytest.raises(ValueError):
        EpsilonSchedule(start=0.4, ratio=1.5, steps=5)
    with pytest.raises(ValueError):
        EpsilonSchedule(start=0.4, ratio=0.5, steps=2)


def test_schedule_widths_are_geometric():
    widths = EpsilonSchedule(start=0.4, ratio=0.5, steps=4).widths()
    assert widths == (0.4, 0.2, 0.1, 0.05)


# ---------------------------------------------------------------------------
# integrate_against
# ---------------------------------------------------------------------------


def test_integrate_against_reproduces_mass():
    k = DeltaKernel("gaussian", 0.3)
    val = integrate_against(lambda z: 1.0, k, window=(-2.0, 2.0))
    assert val == pytest.approx(k.mass(-2.0, 2.0), abs=1e-12)


def test_integrate_against_box_polynomial():
    # integral of z^2 over the box kernel is eps^2 / 3, exactly representable
    eps = 0.5
    k = DeltaKernel("box", eps)
    val = integrate_against(lambda z: z * z, k)
    assert val == pytest.approx(eps * eps / 3.0, rel=1e-13)


def test_integrate_against_punctured_origin():
    # 1/|z|^(1/2) is integrable; the puncture keeps the evaluator away from 0
    k = DeltaKernel("box", 1.0)
    val = integrate_against(
        lambda z: 1.0 / math.sqrt(abs(z)), k, singular_origin=True, tol=1e-9
    )
    # exact: (1/2) * int_{-1}^{1} |z|^{-1/2} dz = 2 * sqrt(1) / 2 * ... = 2
    assert val == pytest.approx(2.0, abs=1e-4)


# ---------------------------------------------------------------------------
# distributional actions
# ---------------------------------------------------------------------------


def test_delta_action_on_cosine():
    est = distribution_action(math.cos, ActionKind.delta(), kernel="gaussian")
    assert est.value == pytest.approx(1.0, abs=1e-8)
    assert not est.diverged


def test_delta_action_order_is_quadratic_for_even_kernels():
    for kind in ("gaussian", "box"):
        samples = action_samples(math.cos, ActionKind.delta(), kernel=kind)
        est = epsilon_limit(samples)
        assert 1.7 <= est.order <= 2.3


def test_kernel_families_agree_on_smooth_functions():
    f = lambda z: math.exp(-z) * math.cos(2.0 * z)
    values = {}
    for kind in ("gaussian", "box", "lorentzian"):
        est = distribution_action(f, ActionKind.delta(), kernel=kind)
        values[kind] = est.value
    vals = sorted(values.values())
    assert vals[-1] - vals[0] < 1e-6


def test_first_derivative_action_on_sine():
    est = distribution_action(math.sin, ActionKind.derivative(1), kernel="gaussian")
    assert est.value == pytest.approx(-1.0, abs=1e-6)


def test_second_derivative_action_on_square():
    est = distribution_action(lambda z: z * z, ActionKind.derivative(2))
    assert est.value == pytest.approx(2.0, abs=1e-6)


def test_derivative_action_is_exact_on_polynomials_per_width():
    # integration by parts: the n-th derivative action on z^n is (-1)^n n!
    for n in (1, 2, 3, 4):
        samples = action_samples(
            lambda z, n=n: z**n, ActionKind.derivative(n), kernel="gaussian"
        )
        expected = (-1.0) ** n * math.factorial(n)
        for _, v in samples:
            assert v == pytest.approx(expected, rel=1e-9)


def test_fourth_derivative_action_on_cosine():
    # cancellation noise scales like machine epsilon / eps^4, so the limit
    # carries a few-1e-6 floor no schedule can remove
    est = distribution_action(math.cos, ActionKind.derivative(4), kernel="gaussian")
    assert est.value == pytest.approx(1.0, abs=1e-5)


def test_moment_action_vanishes_for_even_kernel():
    # first moment of a symmetric kernel against an even function is zero
    samples = action_samples(math.cos, ActionKind.moment(), kernel="box")
    for _, v in samples:
        assert abs(v) <= 1e-12


def test_action_linearity():
    f = math.cos
    g = lambda z: z * z
    both = lambda z: 2.0 * f(z) - 3.0 * g(z)
    kind = ActionKind.delta()
    est_f = distribution_action(f, kind)
    est_g = distribution_action(g, kind)
    est_b = distribution_action(both, kind)
    assert est_b.value == pytest.approx(2.0 * est_f.value - 3.0 * est_g.value, abs=1e-9)


def test_fourier_action_on_exponential():
    est = distribution_action(
        lambda z: math.exp(-abs(z)), ActionKind.fourier(), kernel="sinc"
    )
    assert est.value == pytest.approx(1.0, abs=1e-3)


def test_sinc_kernel_rejects_derivative_actions():
    with pytest.raises(ValueError):
        action_samples(math.cos, ActionKind.derivative(1), kernel="sinc")


def test_lorentzian_delta_action():
    est = distribution_action(lambda z: math.exp(-z * z), ActionKind.delta(),
                              kernel="lorentzian")
    assert est.value == pytest.approx(1.0, abs=1e-6)


def test_action_kind_validation():
    with pytest.raises(ValueError):
        ActionKind.derivative(5)
    with pytest.raises(ValueError):
        ActionKind.derivative(0)
    with pytest.raises(ValueError):
        ActionKind("nope")
