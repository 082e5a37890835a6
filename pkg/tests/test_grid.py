import math

import numpy as np
import pytest

from advlab import (
    CompactBump,
    Constant,
    CustomTable,
    Grid1D,
    Linear,
    SinePi,
    Step,
    exact_solution,
    make_grid,
    parse_initial,
    sample_initial,
)


def test_make_grid_reference_run():
    # CFL 0.8 on [-1,1] with 100 cells and unit speed
    g = make_grid(-1.0, 1.0, 100, 0.8, 1.0)
    assert g.h == 0.02
    assert g.k == 0.016
    assert g.lam == 0.8
    assert abs(g.cfl - 0.8) <= 2 * np.finfo(float).eps


def test_make_grid_unit_cfl():
    g = make_grid(-1.0, 1.0, 4, 1.0, 1.0)
    assert (g.h, g.k, g.lam) == (0.5, 0.5, 1.0)


def test_make_grid_negative_speed():
    g = make_grid(0.0, 2.0, 10, 0.5, -2.0)
    assert g.h == 0.2
    assert g.k == pytest.approx(0.05, rel=1e-15)
    assert g.lam == pytest.approx(0.25, rel=1e-15)
    assert g.cfl == pytest.approx(0.5, rel=1e-15)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(x_lo=-1, x_hi=1, n_cells=2, cfl=0.5, a=1.0),
        dict(x_lo=-1, x_hi=1, n_cells=10, cfl=0.0, a=1.0),
        dict(x_lo=-1, x_hi=1, n_cells=10, cfl=-0.1, a=1.0),
        dict(x_lo=-1, x_hi=1, n_cells=10, cfl=0.5, a=0.0),
        dict(x_lo=1, x_hi=-1, n_cells=10, cfl=0.5, a=1.0),
    ],
)
def test_make_grid_rejects(kwargs):
    with pytest.raises(ValueError):
        make_grid(**kwargs)


def test_sample_sine_four_points():
    g = make_grid(-1.0, 1.0, 4, 1.0, 1.0)
    st = sample_initial(g, SinePi())
    # grid points -1, -0.5, 0, 0.5; sin(-pi) is zero up to rounding
    np.testing.assert_allclose(st.values, [0.0, -1.0, 0.0, 1.0], atol=5e-16)
    assert st.time == 0.0


def test_bump_values():
    b = CompactBump()
    assert b(np.array([0.0]))[0] == pytest.approx(math.exp(-1.0), rel=1e-15)
    np.testing.assert_array_equal(b(np.array([-1.0, 1.0, 1.5, -3.0])), 0.0)


def test_constant_data():
    g = make_grid(0.0, 1.0, 8, 0.5, 1.0)
    st = sample_initial(g, Constant(2.5))
    np.testing.assert_array_equal(st.values, 2.5)


def test_exact_solution_full_period():
    g = make_grid(-1.0, 1.0, 100, 0.8, 1.0)
    init = sample_initial(g, SinePi())
    # one traversal of the length-2 domain at a = 1
    wrapped = exact_solution(g, SinePi(), 2.0)
    np.testing.assert_allclose(wrapped.values, init.values, atol=1e-12)


def test_exact_solution_t0_identity():
    g = make_grid(-1.0, 1.0, 50, 0.5, -1.5)
    init = sample_initial(g, CompactBump())
    np.testing.assert_array_equal(exact_solution(g, CompactBump(), 0.0).values, init.values)


def test_exact_solution_integer_shift():
    # h = 0.25 exactly, so a*t = 2h shifts by exactly two indices
    g = make_grid(0.0, 2.0, 8, 0.5, 1.0)
    data = Step(x_jump=1.0)
    init = sample_initial(g, data).values
    shifted = exact_solution(g, data, 0.5).values
    np.testing.assert_array_equal(shifted, np.roll(init, 2))


def test_exact_solution_rejects_negative_time():
    g = make_grid(0.0, 1.0, 8, 0.5, 1.0)
    with pytest.raises(ValueError):
        exact_solution(g, SinePi(), -0.1)


@pytest.mark.parametrize("m", [1, 2, 5])
def test_exact_solution_periodicity_property(m):
    g = make_grid(-1.0, 1.0, 64, 0.4, -2.0)
    period = g.length / abs(g.a)
    init = sample_initial(g, SinePi())
    back = exact_solution(g, SinePi(), m * period)
    np.testing.assert_allclose(back.values, init.values, atol=1e-12)


@pytest.mark.parametrize("n", [8, 16, 100])
def test_bump_single_strict_maximum(n):
    g = make_grid(-1.0, 1.0, n, 0.5, 1.0)
    v = sample_initial(g, CompactBump()).values
    dm = v - np.roll(v, 1)
    dp = np.roll(v, -1) - v
    strict_max = np.flatnonzero((dm > 0) & (dp < 0))
    assert strict_max.size == 1


def test_periodic_index_roundtrip():
    g = make_grid(0.0, 1.0, 7, 0.5, 1.0)
    for i in range(7):
        assert g.index(g.index(i + 1) - 1) == i
        assert g.index(g.index(i - 1) + 1) == i


def test_custom_table_roundtrip_and_mismatch():
    g = make_grid(0.0, 1.0, 5, 0.5, 1.0)
    table = CustomTable(table=(1.0, 2.0, 3.0, 4.0, 5.0))
    st = sample_initial(g, table)
    np.testing.assert_array_equal(st.values, [1, 2, 3, 4, 5])
    with pytest.raises(ValueError):
        sample_initial(g, CustomTable(table=(1.0, 2.0)))


def test_state_values_are_immutable():
    g = make_grid(0.0, 1.0, 4, 0.5, 1.0)
    st = sample_initial(g, Linear(slope=1.0))
    with pytest.raises(ValueError):
        st.values[0] = 99.0


def test_state_length_checked():
    g = make_grid(0.0, 1.0, 4, 0.5, 1.0)
    with pytest.raises(ValueError):
        from advlab import State

        State(grid=g, values=np.zeros(5))


def test_parse_initial():
    assert isinstance(parse_initial("sine"), SinePi)
    assert isinstance(parse_initial("bump"), CompactBump)
    assert parse_initial("constant:2.5") == Constant(2.5)
    assert parse_initial("linear:2,1") == Linear(2.0, 1.0)
    assert parse_initial("step:0.5,0,1") == Step(0.5, 0.0, 1.0)
    with pytest.raises(ValueError):
        parse_initial("gaussian")
