import math

import pytest

from qsubthermo import adaptive_simpson


def test_polynomial_is_nearly_exact():
    # Simpson integrates cubics exactly; the adaptive wrapper must not break that
    assert adaptive_simpson(lambda x: x**3 - 2 * x, 0.0, 2.0) == pytest.approx(0.0, abs=1e-12)


def test_oscillatory_integrand():
    value = adaptive_simpson(math.sin, 0.0, 10.0, rel_tol=1e-10)
    assert value == pytest.approx(1.0 - math.cos(10.0), rel=1e-9)


def test_zero_width_interval():
    assert adaptive_simpson(math.exp, 1.0, 1.0) == 0.0


def test_reversed_interval_rejected():
    with pytest.raises(ValueError):
        adaptive_simpson(math.exp, 1.0, 0.0)


def test_sharp_feature_resolved():
    value = adaptive_simpson(lambda x: math.exp(-50.0 * (x - 0.7) ** 2), 0.0, 2.0, rel_tol=1e-9)
    assert value == pytest.approx(math.sqrt(math.pi / 50.0), rel=1e-7)
