import warnings

import numpy as np
import pytest

from advlab import (
    Branch,
    CompactBump,
    Constant,
    SinePi,
    State,
    Step,
    amplification,
    catalog,
    eno2_coefficient,
    eno2_coefficients,
    exact_solution,
    incremental_coefficient,
    make_grid,
    numerical_flux,
    sample_initial,
    step_eno2,
    step_flux_form,
    step_incremental,
    total_variation,
)

LINEAR_SCHEMES = (
    "two-point-upwind",
    "three-point-upwind-2nd",
    "beam-warming",
    "lax-friedrichs",
    "ftcs",
    "lax-wendroff",
)


def _state(values, a=1.0, cfl=0.5):
    values = np.asarray(values, dtype=float)
    g = make_grid(0.0, float(len(values)), len(values), cfl, a)
    return State(grid=g, values=values)


def _spec(name, a, cfl):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return catalog(name, a, cfl / abs(a))


# ---------------------------------------------------------------- catalog

def test_lax_wendroff_coefficients():
    spec = catalog("lax-wendroff", 1.0, 0.8)
    assert spec.alpha == pytest.approx(0.1, rel=1e-14)
    assert spec.beta == pytest.approx(0.9, rel=1e-14)


def test_lax_friedrichs_coefficients():
    spec = catalog("lax-friedrichs", 1.0, 0.5)
    assert spec.alpha == pytest.approx(-0.5, rel=1e-14)
    assert spec.beta == pytest.approx(1.5, rel=1e-14)
    assert spec.alpha + spec.beta == pytest.approx(1.0, rel=1e-14)


def test_two_point_upwind_coefficients():
    spec = catalog("two-point-upwind", 1.0, 0.8)
    assert (spec.alpha, spec.beta) == (1.0, 0.0)


def test_three_point_upwind_coefficients():
    # the textbook table carries the trailing coefficient with a minus
    # sign; normalized here so that alpha + beta = a
    spec = catalog("three-point-upwind-2nd", 1.0, 0.4)
    assert (spec.alpha, spec.beta) == (1.5, -0.5)


def test_beam_warming_coefficients():
    spec = catalog("beam-warming", 1.0, 0.5)
    assert spec.alpha == pytest.approx(1.25, rel=1e-14)
    assert spec.beta == pytest.approx(-0.25, rel=1e-14)
    # above CFL one the trailing coefficient changes sign
    spec2 = catalog("beam-warming", 1.0, 1.5)
    assert spec2.beta == pytest.approx(0.25, rel=1e-14)


@pytest.mark.parametrize("name", LINEAR_SCHEMES)
@pytest.mark.parametrize("a,lam", [(1.0, 0.8), (-1.5, 0.4), (2.0, 0.25)])
def test_catalog_consistency(name, a, lam):
    spec = _spec(name, a, abs(a) * lam)
    assert spec.alpha + spec.beta == pytest.approx(a, abs=1e-12 * max(1, abs(a)))


def test_catalog_unknown_name():
    with pytest.raises(ValueError):
        catalog("upwind-42", 1.0, 0.5)
    with pytest.raises(ValueError):
        catalog("lax-wendroff", 0.0, 0.5)


def test_catalog_warns_outside_cfl_range():
    with pytest.warns(UserWarning):
        catalog("three-point-upwind-2nd", 1.0, 0.8)
    with pytest.warns(UserWarning):
        catalog("lax-wendroff", 1.0, 1.2)


# ------------------------------------------------------------------ flux

@pytest.mark.parametrize("name", LINEAR_SCHEMES)
@pytest.mark.parametrize("a", [1.0, -2.0])
def test_flux_consistency_on_constant(name, a):
    st = _state([3.0] * 8, a=a)
    spec = catalog(name, a, 0.4 / abs(a))
    for i in range(8):
        assert numerical_flux(spec, st, i) == pytest.approx(a * 3.0, rel=1e-13)


def test_flux_lax_wendroff_example():
    st = _state([0.0, 1.0, 3.0], cfl=0.8)
    spec = catalog("lax-wendroff", 1.0, 0.8)
    assert numerical_flux(spec, st, 1) == pytest.approx(0.1 * 3.0 + 0.9 * 1.0, rel=1e-13)


def test_flux_three_point_upwind_example():
    st = _state([0.0, 1.0, 3.0])
    spec = catalog("three-point-upwind-2nd", 1.0, 0.5)
    assert numerical_flux(spec, st, 1) == pytest.approx(1.5 * 1.0 - 0.5 * 0.0, rel=1e-13)


# ------------------------------------------------------------- flux steps

def test_exact_shift_at_unit_cfl():
    g = make_grid(-1.0, 1.0, 100, 1.0, 1.0)
    st = sample_initial(g, Step(x_jump=0.0))
    spec = catalog("two-point-upwind", 1.0, g.lam)
    out = step_flux_form(spec, st)
    np.testing.assert_array_equal(out.values, np.roll(st.values, 1))
    assert out.time == g.k and out.step_index == 1


def test_exact_shift_negative_speed():
    g = make_grid(-1.0, 1.0, 64, 1.0, -1.0)
    st = sample_initial(g, Step(x_jump=0.0))
    spec = catalog("two-point-upwind", -1.0, g.lam)
    out = step_flux_form(spec, st)
    np.testing.assert_array_equal(out.values, np.roll(st.values, -1))


@pytest.mark.parametrize("name", LINEAR_SCHEMES)
def test_constant_state_fixed_point(name):
    st = _state([2.5] * 10, cfl=0.4)
    spec = catalog(name, 1.0, 0.4)
    np.testing.assert_array_equal(step_flux_form(spec, st).values, st.values)


def test_exact_shift_long_run():
    """200 unit-CFL steps reproduce the characteristic solution to 1e-14."""
    g = make_grid(-1.0, 1.0, 100, 1.0, 1.0)
    data = CompactBump()
    st = sample_initial(g, data)
    spec = catalog("two-point-upwind", 1.0, g.lam)
    for _ in range(200):
        st = step_flux_form(spec, st)
    exact = exact_solution(g, data, st.time)
    assert np.abs(st.values - exact.values).max() <= 1e-14


@pytest.mark.parametrize("name", LINEAR_SCHEMES)
@pytest.mark.parametrize("a", [1.0, -1.5])
def test_mass_conservation(name, a):
    rng = np.random.default_rng(5)
    st = _state(rng.uniform(-1, 1, 128), a=a, cfl=0.8)
    spec = _spec(name, a, 0.8)
    out = step_flux_form(spec, st)
    assert abs(out.values.sum() - st.values.sum()) <= 1e-10 * np.abs(st.values).sum()


def test_single_mode_amplitude_matches_fourier_factor():
    """Stepping a pure discrete mode scales it by |g| of that mode."""
    n, mode = 64, 3
    g = make_grid(0.0, 1.0, n, 0.8, 1.0)
    vals = np.sin(2 * np.pi * mode * np.arange(n) / n)
    st = State(grid=g, values=vals)
    spec = catalog("lax-wendroff", 1.0, g.lam)
    out = step_flux_form(spec, st)
    coeffs = np.fft.rfft(out.values)
    amp = 2 * np.abs(coeffs[mode]) / n
    # 33 samples on [0, pi] place sample 3 exactly at 2*pi*mode/n
    profile = amplification(spec, 33)
    assert profile.xi_samples[3] == pytest.approx(2 * np.pi * mode / n, rel=1e-15)
    assert amp == pytest.approx(profile.magnitudes[3], abs=1e-12)
    # no other mode appears
    others = np.delete(np.abs(coeffs), mode)
    assert others.max() <= 1e-12 * n


# ------------------------------------------------------- incremental form

def test_incremental_coefficient_interval_endpoints():
    # ratio 3 at the trailing point gives D = 0; ratio -1 gives D = 1
    spec = catalog("three-point-upwind-2nd", 1.0, 0.5)
    st = _state([0.0, 3.0, 4.0, 4.5, 4.75, 5.0])
    c = incremental_coefficient(spec, st, 2)
    assert c.theta_used.value == pytest.approx(3.0, rel=1e-14)
    assert c.value == pytest.approx(0.0, abs=1e-14)
    st2 = _state([0.0, 1.0, 0.0, 0.25, 0.5, 0.75])
    c2 = incremental_coefficient(spec, st2, 2)
    assert c2.theta_used.value == pytest.approx(-1.0, rel=1e-14)
    assert c2.value == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("name", LINEAR_SCHEMES)
@pytest.mark.parametrize("a", [1.0, -2.0])
def test_incremental_coefficient_linear_data(name, a):
    # equal differences everywhere: D collapses to the CFL number
    cfl = 0.45
    spec = catalog(name, a, cfl / abs(a))
    vals = 0.3 * np.arange(12) - 1.0
    st = _state(vals, a=a)
    # the wrap seam spoils differences at index 0; stay in the interior
    for i in range(2, 10):
        c = incremental_coefficient(spec, st, i)
        assert c.value == pytest.approx(cfl, rel=1e-12)


def test_incremental_coefficient_degenerate_branch():
    spec = catalog("lax-wendroff", 1.0, 0.8)
    st = _state([1.0, 1.0, 2.0, 3.0])
    c = incremental_coefficient(spec, st, 1)  # backward difference is zero
    assert c.branch is Branch.DEGENERATE
    assert c.value == pytest.approx(0.8)


def test_step_incremental_matches_flux_form_on_sine():
    g = make_grid(-1.0, 1.0, 100, 0.8, 1.0)
    st = sample_initial(g, SinePi())
    spec = catalog("lax-wendroff", 1.0, g.lam)
    a = step_flux_form(spec, st).values
    b = step_incremental(spec, st).values
    assert np.abs(a - b).max() <= 1e-12


@pytest.mark.parametrize("name", LINEAR_SCHEMES)
@pytest.mark.parametrize("a", [1.0, -1.5])
def test_step_incremental_matches_flux_form_random(name, a):
    rng = np.random.default_rng(17)
    st = _state(rng.uniform(-1, 1, 64), a=a, cfl=0.8)
    spec = _spec(name, a, 0.8)
    fa = step_flux_form(spec, st).values
    fb = step_incremental(spec, st).values
    assert np.abs(fa - fb).max() <= 1e-12 * np.abs(st.values).max()


def test_step_upwind_on_step_data_stays_bounded():
    # two-point upwind at CFL 1/2 is the convex average (u_i + u_{i-1})/2-ish
    g = make_grid(-1.0, 1.0, 100, 0.5, 1.0)
    st = sample_initial(g, Step(x_jump=0.0))
    spec = catalog("two-point-upwind", 1.0, g.lam)
    expected = st.values - 0.5 * (st.values - np.roll(st.values, 1))
    out = step_flux_form(spec, st)
    np.testing.assert_allclose(out.values, expected, atol=1e-15)
    for _ in range(20):
        out = step_flux_form(spec, out)
    assert out.values.min() >= 0.0 and out.values.max() <= 1.0


# ------------------------------------------------------------------ eno2

def test_eno2_case1_example():
    # differences 0.1 | 0.2 | 0.5 around i=2 select the one-sided pair at
    # both interfaces: D = nu*(3 - ratio)/2 with ratio 0.5
    st = _state([0.0, 0.1, 0.3, 0.8])
    c = eno2_coefficient(st, 2, 1.0, 0.4)
    assert c.value == pytest.approx(0.5, rel=1e-14)
    assert c.branch is Branch.ENO2_CASE1


def test_eno2_case2_is_exactly_nu():
    # |backward| < |forward| at i and the trailing difference dominates
    st = _state([0.0, 1.0, 1.2, 2.0])
    c = eno2_coefficient(st, 2, 1.0, 0.4)
    assert c.branch is Branch.ENO2_CASE2
    assert c.value == 0.4


def test_eno2_ties_on_linear_data():
    st = _state(np.arange(8.0))
    for i in range(2, 7):
        c = eno2_coefficient(st, i, 1.0, 0.35)
        assert c.value == pytest.approx(0.35, rel=1e-15)


def test_eno2_constant_unchanged():
    st = _state([1.5] * 9)
    out = step_eno2(st, 1.0, 0.4)
    np.testing.assert_array_equal(out.values, st.values)


def test_eno2_counterexample_above_half():
    # steep downhill-then-uphill data drives D above 1 once nu > 1/2
    st = _state([0.9, 0.0, 1.0, 2.5])
    c = eno2_coefficient(st, 2, 1.0, 0.8)
    assert c.branch is Branch.ENO2_CASE1
    assert c.value == pytest.approx(0.8 * (1.5 + 0.45), rel=1e-13)  # 1.56
    assert not 0.0 <= c.value <= 1.0


def test_eno2_step_data_tv_never_grows():
    g = make_grid(-1.0, 1.0, 100, 0.4, 1.0)
    st = sample_initial(g, Step(x_jump=0.0))
    tv = total_variation(st)
    for _ in range(50):
        st = step_eno2(st, 1.0, g.lam)
        tv_new = total_variation(st)
        assert tv_new <= tv * (1 + 1e-12)
        tv = tv_new


def test_eno2_negative_speed_mirrors_positive():
    rng = np.random.default_rng(23)
    vals = rng.uniform(-1, 1, 32)
    d_pos = eno2_coefficients(vals, 1.0, 0.3)
    d_neg = eno2_coefficients(vals[::-1], -1.0, 0.3)
    np.testing.assert_array_equal(d_pos, d_neg[::-1])


def test_eno2_negative_speed_step():
    g = make_grid(-1.0, 1.0, 64, 0.4, -1.0)
    st = sample_initial(g, CompactBump())
    out = step_eno2(st, -1.0, g.lam)
    # mirror of the positive-speed step on reflected data
    g2 = make_grid(-1.0, 1.0, 64, 0.4, 1.0)
    st2 = State(grid=g2, values=st.values[::-1].copy())
    out2 = step_eno2(st2, 1.0, g2.lam)
    np.testing.assert_array_equal(out.values, out2.values[::-1])


@pytest.mark.parametrize("nu", [0.1, 0.3, 0.5])
def test_eno2_coefficient_bounds_random(nu):
    rng = np.random.default_rng(int(nu * 100))
    batch = rng.uniform(-1, 1, size=(500, 32))
    d = eno2_coefficients(batch, 1.0, nu)
    assert d.min() >= 0.0 and d.max() <= 1.0
