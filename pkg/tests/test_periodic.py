import math

import numpy as np
import pytest

from lvharvest import DegenerateInput, Harmonic, PeriodicFn
from lvharvest.periodic import mean_square_over_period


def test_constant_eval():
    f = PeriodicFn(constant=2.5)
    assert f(0.0) == 2.5
    assert f(0.37) == 2.5
    assert f(-4.2) == 2.5
    ts = np.linspace(0, 3, 17)
    assert np.array_equal(f(ts), np.full(17, 2.5))


def test_single_harmonic_values():
    f = PeriodicFn(constant=1.0, harmonics=(Harmonic(amp=0.5, k=1),))
    # sin(2 pi * 0.25) = 1
    assert f(0.25) == pytest.approx(1.5, abs=1e-15)
    assert f(0.75) == pytest.approx(0.5, abs=1e-15)
    g = PeriodicFn(constant=0.0, harmonics=(Harmonic(amp=2.0, k=3, kind="cos"),))
    assert g(0.0) == pytest.approx(2.0, abs=1e-15)


def test_periodicity_random_harmonics():
    rng = np.random.default_rng(7)
    for _ in range(25):
        n = rng.integers(1, 4)
        hs = tuple(
            Harmonic(
                amp=float(rng.uniform(-3, 3)),
                k=int(rng.integers(1, 9)),
                phase=float(rng.uniform(-3, 3)),
                kind=("sin", "cos")[int(rng.integers(0, 2))],
            )
            for _ in range(n)
        )
        f = PeriodicFn(constant=float(rng.uniform(-2, 2)), harmonics=hs)
        ts = rng.uniform(0, 1, 50)
        assert np.all(np.abs(f(ts) - f(ts + 1.0)) < 1e-12)
        assert np.all(np.abs(f(ts) - f(ts - 2.0)) < 1e-12)


def test_table_roundtrip_and_periodic_wrap():
    nodes = [(0.0, 1.0), (0.25, 2.0), (0.5, 0.5), (0.75, 1.5)]
    f = PeriodicFn.from_table([t for t, _ in nodes], [v for _, v in nodes])
    for t, v in nodes:
        assert f(t) == pytest.approx(v, abs=1e-15)
    # linear interpolation between nodes, periodic wrap between 0.75 and 1.0
    assert f(0.125) == pytest.approx(1.5, abs=1e-14)
    assert f(0.875) == pytest.approx(1.25, abs=1e-14)  # halfway to f(1.0)=f(0.0)
    assert f(1.25) == pytest.approx(f(0.25), abs=1e-14)
    assert f(-0.75) == pytest.approx(f(0.25), abs=1e-14)


def test_mean_harmonic_is_constant_exact():
    f = PeriodicFn(constant=6.5, harmonics=(Harmonic(amp=0.1, k=1),))
    assert f.mean_over_period() == 6.5  # fast path: harmonics integrate to zero


@pytest.mark.parametrize("k", [1, 2, 5, 8])
@pytest.mark.parametrize("kind", ["sin", "cos"])
def test_mean_quadrature_matches_closed_form(k, kind):
    f = PeriodicFn(constant=1.7, harmonics=(Harmonic(amp=0.9, k=k, phase=0.4, kind=kind),))
    assert f.mean_over_period(force_quadrature=True) == pytest.approx(1.7, abs=1e-10)


def test_mean_square_closed_form():
    # (a + b cos(2 pi t + p))^2 averages to a^2 + b^2/2
    a, b = 0.1, 0.01
    f = PeriodicFn(constant=a, harmonics=(Harmonic(amp=b, k=1, phase=0.3, kind="cos"),))
    exact = a * a + b * b / 2
    assert mean_square_over_period(f) == pytest.approx(exact, abs=1e-15)
    assert f.squared().mean_over_period() == pytest.approx(exact, abs=1e-15)


def test_mean_square_two_harmonics():
    # cross terms with distinct frequencies average to zero
    f = PeriodicFn(
        constant=0.5,
        harmonics=(Harmonic(amp=0.3, k=1), Harmonic(amp=0.2, k=4, kind="cos")),
    )
    exact = 0.25 + 0.09 / 2 + 0.04 / 2
    assert mean_square_over_period(f) == pytest.approx(exact, abs=1e-12)


def test_squared_pointwise_identity():
    rng = np.random.default_rng(11)
    for _ in range(10):
        hs = tuple(
            Harmonic(
                amp=float(rng.uniform(-2, 2)),
                k=int(rng.integers(1, 7)),
                phase=float(rng.uniform(0, 6)),
                kind=("sin", "cos")[int(rng.integers(0, 2))],
            )
            for _ in range(int(rng.integers(1, 4)))
        )
        f = PeriodicFn(constant=float(rng.uniform(-1, 1)), harmonics=hs)
        sq = f.squared()
        ts = rng.uniform(0, 1, 40)
        assert np.all(np.abs(sq(ts) - f(ts) ** 2) < 1e-10)


def test_squared_table_nodes():
    f = PeriodicFn.from_table([0.0, 0.5], [2.0, -3.0])
    sq = f.squared()
    assert sq(0.0) == 4.0
    assert sq(0.5) == 9.0


def test_table_mean_trapezoid():
    # piecewise-linear sawtooth: mean computable by hand
    f = PeriodicFn.from_table([0.0, 0.5], [0.0, 1.0])
    assert f.mean_over_period() == pytest.approx(0.5, abs=1e-9)
    assert mean_square_over_period(f) == pytest.approx(1.0 / 3.0, abs=1e-6)


def test_sup_single_harmonic():
    f = PeriodicFn(constant=6.5, harmonics=(Harmonic(amp=0.1, k=1),))
    assert f.sup_over_period() == pytest.approx(6.6, abs=1e-9)
    g = PeriodicFn(constant=1.0, harmonics=(Harmonic(amp=-0.4, k=2, kind="cos"),))
    assert g.sup_over_period() == pytest.approx(1.4, abs=1e-9)


def test_sup_two_harmonics_brute_force():
    f = PeriodicFn(
        constant=0.2,
        harmonics=(Harmonic(amp=1.0, k=1), Harmonic(amp=0.7, k=3, phase=1.1, kind="cos")),
    )
    ts = np.linspace(0.0, 1.0, 2_000_001)
    brute = float(np.max(f(ts)))
    assert f.sup_over_period() == pytest.approx(brute, abs=1e-6)
    assert f.sup_over_period() >= brute - 1e-12


def test_sup_constant_and_table():
    assert PeriodicFn(constant=-3.0).sup_over_period() == -3.0
    f = PeriodicFn.from_table([0.0, 0.3, 0.8], [1.0, 5.0, 2.0])
    assert f.sup_over_period() == 5.0


def test_scaled_and_shifted():
    f = PeriodicFn(constant=0.1, harmonics=(Harmonic(amp=0.01, k=1, kind="cos"),))
    g = f.scaled(3.0)
    h = f.shifted(2.0)
    ts = np.linspace(0, 1, 13)
    assert np.allclose(g(ts), 3.0 * f(ts), atol=1e-15)
    assert np.allclose(h(ts), f(ts) + 2.0, atol=1e-15)
    assert f.scaled(0.0).sup_over_period() == 0.0


def test_validation_errors():
    with pytest.raises(DegenerateInput):
        Harmonic(amp=1.0, k=0)
    with pytest.raises(DegenerateInput):
        Harmonic(amp=1.0, k=-2)
    with pytest.raises(DegenerateInput):
        Harmonic(amp=math.nan)
    with pytest.raises(DegenerateInput):
        Harmonic(amp=1.0, kind="tan")
    with pytest.raises(DegenerateInput):
        PeriodicFn(constant=math.inf)
    with pytest.raises(DegenerateInput):
        PeriodicFn.from_table([0.0], [1.0])  # need at least two nodes
    with pytest.raises(DegenerateInput):
        PeriodicFn.from_table([0.0, 1.0], [1.0, 2.0])  # times must lie in [0, 1)
    with pytest.raises(DegenerateInput):
        PeriodicFn.from_table([0.5, 0.2], [1.0, 2.0])  # strictly increasing
    with pytest.raises(DegenerateInput):
        # mixing harmonics with a table is ambiguous
        PeriodicFn(constant=0.0, harmonics=(Harmonic(amp=1.0),), table=((0.0, 1.0), (0.5, 2.0)))
