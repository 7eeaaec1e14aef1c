import math

import numpy as np
import pytest

from caustica import (
    BadParameter,
    DimensionTooLarge,
    bessel_ref,
    cubature_nd,
    quad_contour,
    registry_get,
)
from caustica.airy import airy_ai

# frozen references, cross-checked against extended-precision evaluation
J1_1 = 0.4400505857449335
J30_24 = 0.005625680842695062
J30_30 = 0.14393585001030706
AI_1 = 0.13529241631288141


def test_cubic_contour_is_airy_closed_form():
    # int over the Airy contour = 2 pi i N^{-1/3} Ai(alpha N^{2/3})
    intg = registry_get("cubic")
    for alpha, N in [(0.25, 8.0), (1.0, 1.0), (0.04, 27.0)]:
        r = quad_contour(intg, alpha, N, tol=1e-11)
        exact = 2.0j * math.pi * N ** (-1.0 / 3.0) * airy_ai(alpha * N ** (2.0 / 3.0))
        assert abs(r.value - exact) <= 1e-10 * max(abs(exact), 1e-3)
        assert r.abs_error_estimate <= 1e-8
        assert r.evaluations > 0


def test_golden_airy_one():
    intg = registry_get("cubic")
    r = quad_contour(intg, 1.0, 1.0, tol=1e-11)
    assert r.value == pytest.approx(2.0j * math.pi * AI_1, abs=1e-10)


def test_two_bessel_representations_agree():
    # the sinh contour and the angular representation compute the same J_N(x)
    intg = registry_get("bessel-sinh")
    for alpha, N in [(0.8, 30), (1.0, 30), (0.95, 20)]:
        contour = quad_contour(intg, alpha, N, tol=1e-11)
        angular = bessel_ref(N, alpha * N)
        assert abs(contour.value.imag) <= 1e-9
        assert abs(contour.value.real - angular) <= 1e-9 * max(abs(angular), 1e-3)


def test_bessel_golden_values():
    assert bessel_ref(1, 1.0) == pytest.approx(J1_1, abs=1e-12)
    assert bessel_ref(30, 24.0) == pytest.approx(J30_24, abs=1e-12)
    assert bessel_ref(30, 30.0) == pytest.approx(J30_30, abs=1e-12)
    assert bessel_ref(0, 0.0) == pytest.approx(1.0, abs=1e-14)


def test_bessel_guards():
    with pytest.raises(BadParameter):
        bessel_ref(501, 1.0)
    with pytest.raises(BadParameter):
        bessel_ref(10, 21.0)


def test_quad_stable_under_tolerance_halving():
    intg = registry_get("bessel-sinh")
    a = quad_contour(intg, 0.9, 30, tol=1e-9).value
    b = quad_contour(intg, 0.9, 30, tol=5e-10).value
    assert abs(a - b) <= 1e-9 * max(abs(a), 1e-3)


def test_cubature_separable_is_product():
    # nd-separable factorizes: (1-D contour integral) x (transverse Gaussian)
    intg = registry_get("nd-separable", {"dim": "2", "eps": "0.05"})
    intg1 = registry_get("perturbed-cubic", {"eps": "0.05"})
    alpha, N = 0.2, 30.0
    r = cubature_nd(intg, alpha, N, tol=1e-9)
    r1 = quad_contour(intg1, alpha, N, tol=1e-11)
    exact = r1.value * math.sqrt(2.0 * math.pi / N)
    assert abs(r.value - exact) <= 1e-8 * max(abs(exact), 1e-6)


def test_cubature_three_dim():
    intg = registry_get("nd-separable", {"dim": "3", "eps": "0.05", "lambda3": "-2.0"})
    intg1 = registry_get("perturbed-cubic", {"eps": "0.05"})
    alpha, N = 0.2, 30.0
    r = cubature_nd(intg, alpha, N, tol=1e-8)
    r1 = quad_contour(intg1, alpha, N, tol=1e-11)
    exact = r1.value * math.sqrt(2.0 * math.pi / N) * math.sqrt(2.0 * math.pi / (2.0 * N))
    assert abs(r.value - exact) <= 1e-6 * max(abs(exact), 1e-6)


def test_cubature_dimension_guard():
    intg = registry_get(
        "nd-separable",
        {"dim": "5", "lambda3": "-1", "lambda4": "-1", "lambda5": "-1"},
    )
    with pytest.raises(DimensionTooLarge):
        cubature_nd(intg, 0.2, 30.0)


def test_real_line_gaussian():
    # mean-field toy at weak coupling: compare against direct numpy quadrature
    intg = registry_get("mean-field-toy", {"m": 0.1})
    gamma, N = 0.95, 40.0
    r = quad_contour(intg, gamma, N, tol=1e-10)
    xs = np.linspace(-6.0, 6.0, 200001)
    ys = np.exp([N * intg.f(x, gamma).real for x in xs])
    ref = np.trapezoid(ys, xs)
    assert abs(r.value.imag) <= 1e-9 * abs(r.value)
    assert r.value.real == pytest.approx(ref, rel=1e-7)
