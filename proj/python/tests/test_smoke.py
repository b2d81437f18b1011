import math

import numpy as np
import pytest

import splinedft as sd


def g1(t, m=0):
    # Im of the m-th derivative of exp((-1 + 3i) t)
    a = complex(-1, 3)
    return ((a**m) * np.exp(a * t)).imag


def samples(n, period=2 * math.pi, f=g1):
    return [float(f(period * j / n)) for j in range(n + 1)]


def test_eulerian_row():
    assert sd.eulerian_row(4) == [1, 11, 11, 1]
    row = sd.eulerian_row(12)
    assert sum(row) == math.factorial(12)
    assert row == row[::-1]


def test_interpolates_and_matches_paper_accuracy():
    n = 31
    s = sd.interpolate(samples(n), 2 * math.pi, theta=3, method="method2")
    assert s.theta == 3 and s.n == n
    t = np.linspace(0, 2 * math.pi, n + 1)
    assert np.max(np.abs(s(t) - g1(t))) < 1e-12
    fine = np.linspace(0, 2 * math.pi, 10 * n + 1)
    err = np.max(np.abs(s(fine) - g1(fine)))
    paper = sd.paper_cell("g1", 3, n, "method2", True)
    assert paper is not None
    assert 0.5 < err / paper < 2
    assert s(1.0, 1) == pytest.approx(g1(1.0, 1), rel=1e-2)


def test_methods_and_exact_boundary():
    n, period = 31, 2 * math.pi
    v = samples(n)
    diffs = [g1(period, m) - g1(0, m) for m in range(1, 5)]
    errs = {}
    fine = np.linspace(0, period, 311)
    for method, kw in [("zero", {}), ("method1", {}), ("exact", {"differences": diffs})]:
        s = sd.interpolate(v, period, theta=5, method=method, **kw)
        errs[method] = np.max(np.abs(s(fine) - g1(fine)))
    assert errs["exact"] < errs["method1"] < errs["zero"]


def test_high_precision_solve():
    n = 31
    s = sd.interpolate(samples(n), 2 * math.pi, theta=11, method="method2", digits=50)
    fine = np.linspace(0, 2 * math.pi, 311)
    assert np.max(np.abs(s(fine) - g1(fine))) == pytest.approx(3.87e-7, rel=1.0)


def test_integral_and_fourier_transform():
    n, period = 63, 1.0
    s = sd.interpolate(samples(n, period, lambda t: math.sin(2 * math.pi * t) + 1.0), period, theta=5, method="method1")
    assert s.integrate(0.0, 1.0) == pytest.approx(1.0, abs=1e-10)
    z = s.fourier_transform([0.0, 2 * math.pi])
    assert z[0].real == pytest.approx(1.0, abs=1e-10)
    # FT of sin(2 pi t) on [0, 1] at omega = 2 pi is -i/2
    assert z[1] == pytest.approx(complex(0, -0.5), abs=1e-8)


def test_json_round_trip():
    s = sd.interpolate(samples(15), 2 * math.pi, theta=3, method="method1")
    r = sd.Spline.from_json(s.to_json())
    for t in (0.0, 0.7, 3.3, 2 * math.pi):
        assert r(t) == s(t)


def test_cubic_and_benchmark():
    n = 31
    c = sd.cubic(samples(n), 2 * math.pi, "not-a-knot")
    rows = sd.benchmark("g1", [3], [n], ["method2", "cubic-nak"])
    assert [r["status"] for r in rows] == ["ok", "ok"]
    nak = next(r for r in rows if r["method"] == "cubic-nak")
    fine = np.array([2 * math.pi * i / (10 * n) for i in range(10 * n + 1)])
    assert np.max(np.abs(c(fine) - g1(fine))) == pytest.approx(nak["e_max"], rel=1e-6)
    assert nak["e_max"] == pytest.approx(nak["paper_e_max"], rel=1.0)
    assert sd.required_digits(11, 501, "method2") == 60


def test_errors():
    with pytest.raises(sd.ParityViolation):
        sd.interpolate(samples(8), 1.0, theta=4, method="method1")
    with pytest.raises(sd.EvenNNotSupported):
        sd.interpolate(samples(8), 1.0, theta=3, method="method2")
    with pytest.raises(sd.Error):
        sd.interpolate(samples(8), 1.0, theta=3, method="bogus")
    s = sd.interpolate(samples(9), 1.0, theta=3, method="method1")
    with pytest.raises(sd.OutOfDomain):
        s(2.0)
    with pytest.raises(sd.BadOrder):
        s(0.5, 7)
