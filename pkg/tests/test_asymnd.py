import cmath
import math

import numpy as np
import pytest

from caustica import (
    CausticDivergence,
    DegenerateCubic,
    IntegrandND,
    WrongRegime,
    approx_corrected_nd,
    approx_saddle_form,
    approx_tilde,
    approx_wkb_nd,
    find_caustic,
    find_saddle,
    find_saddle_nd,
    mean_field_compare,
    registry_get,
)


def _nd(dim=2, eps=0.05, c=0.0, **extra):
    name = "nd-separable" if c == 0.0 else "nd-perturbed-cubic"
    params = {"dim": str(dim), "eps": str(eps)}
    if c != 0.0:
        params["c"] = str(c)
    params.update({k: str(v) for k, v in extra.items()})
    return registry_get(name, params)


# ---------------------------------------------------------------------------
# exact limits


def test_wkb_nd_pure_gaussian_limit():
    # transverse-only check: with the soft mode far from the caustic the
    # Gaussian determinant dominates; compare against the explicit product
    intg = _nd(dim=3, eps=0.01, lambda2=-1.0, lambda3=-2.0)
    alpha = 0.25
    s = find_saddle_nd(intg, alpha, intg.saddle_guess(alpha))
    N = 40.0
    v = approx_wkb_nd(intg, alpha, N, s)
    lam = s.eigenvalues
    expected = (
        1.0j
        * cmath.exp(N * intg.F(s.x0, alpha))
        * (2.0 * math.pi / N) ** 1.5
        / math.sqrt(abs(lam[0]) * 1.0 * 2.0)
    )
    assert abs(v.value - expected) <= 1e-12 * abs(expected)
    assert v.det_neg_hessian == pytest.approx(float(np.prod(-lam)))


def test_separable_factorization_at_caustic():
    # at alpha_hat the n-D corrected value must factor into the 1-D tilde
    # value times the exact transverse Gaussians
    intg = _nd(dim=2, eps=0.05, lambda2=-1.0)
    c1 = find_caustic(registry_get("perturbed-cubic", {"eps": "0.05"}))
    a = c1.alpha_hat
    s = find_saddle_nd(intg, a, intg.saddle_guess(a))
    N = 50.0
    nd = approx_corrected_nd(intg, a, N, s)
    t1 = approx_tilde(registry_get("perturbed-cubic", {"eps": "0.05"}), a, N, c1)
    gauss = math.sqrt(2.0 * math.pi / N)  # lambda2 = -1
    # the n-D saddle at the caustic is a double root resolved only to
    # ~sqrt(residual), which feeds a ~1e-6 relative offset into F_tilde
    assert abs(nd.value - t1.value * gauss) <= 2e-6 * abs(nd.value)


@pytest.mark.parametrize("alpha", [0.05, 0.1, 0.2])
def test_separable_factorization_off_caustic(alpha):
    # away from alpha_hat the matching 1-D anchor is the saddle form,
    # with both sides anchored at the recessive saddle of the pair
    intg1 = registry_get("perturbed-cubic", {"eps": "0.05"})
    intg = _nd(dim=2, eps=0.05, lambda2=-1.0)
    c1 = find_caustic(intg1)
    guess = np.array([math.sqrt(alpha) + 1e-3, 0.0])
    s_nd = find_saddle_nd(intg, alpha, guess)
    s1 = find_saddle(intg1, alpha, complex(s_nd.x0[0]))
    N = 50.0
    nd = approx_corrected_nd(intg, alpha, N, s_nd)
    sf = approx_saddle_form(intg1, alpha, N, s1, c1)
    gauss = math.sqrt(2.0 * math.pi / N)
    assert abs(nd.value - sf.value * gauss) <= 1e-8 * abs(nd.value)


def test_wkb_nd_limit_of_corrected():
    # deep in the WKB-safe regime the corrected value approaches WKB; the
    # comparison is meaningful at the recessive anchor, where the Gaussian
    # term itself approximates the contour integral
    intg = _nd(dim=2, eps=0.05, lambda2=-1.0)
    alpha = 0.09
    s = find_saddle_nd(intg, alpha, np.array([math.sqrt(alpha) + 1e-3, 0.0]))
    for N, bound in ((2000.0, 3e-3), (8000.0, 8e-4)):
        w = approx_wkb_nd(intg, alpha, N, s)
        c = approx_corrected_nd(intg, alpha, N, s)
        assert c.zeta_prime >= 10.0
        assert abs(c.value / w.value - 1.0) <= bound


# ---------------------------------------------------------------------------
# invariances


def _rotated(intg, theta):
    """Same integrand expressed in rotated coordinates (FD-only clone)."""
    R = np.array(
        [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
    )

    def F(x, a):
        return intg.F(R @ np.asarray(x), a)

    return IntegrandND(F=F, dim=2, soft_contour=intg.soft_contour), R


def test_rotation_invariance():
    intg = _nd(dim=2, eps=0.05, lambda2=-1.3)
    alpha = 0.2
    base = find_saddle_nd(intg, alpha, intg.saddle_guess(alpha))
    rot, R = _rotated(intg, 0.7)
    s = find_saddle_nd(rot, alpha, R.T @ base.x0)
    v0 = approx_corrected_nd(intg, alpha, 50.0, base)
    v1 = approx_corrected_nd(rot, alpha, 50.0, s)
    assert abs(v1.value - v0.value) <= 1e-7 * abs(v0.value)


def test_determinant_invariant():
    intg = _nd(dim=2, eps=0.05, lambda2=-1.3)
    alpha = 0.2
    s = find_saddle_nd(intg, alpha, intg.saddle_guess(alpha))
    det = float(np.linalg.det(-s.hessian))
    assert s.eigenvalues.prod() * (-1) ** intg.dim == pytest.approx(det, rel=1e-10)


def test_dropped_term_metric_small():
    intg = _nd(dim=2, eps=0.05, c=0.1)
    alpha = 0.2
    s = find_saddle_nd(intg, alpha, intg.saddle_guess(alpha))
    lam = s.eigenvalues
    metric = abs(s.a_i11[1] * lam[0] ** 2 / (lam[1] * s.a111 ** 2))
    assert metric < 0.05
    v = approx_corrected_nd(intg, alpha, 50.0, s)
    assert not v.warnings


# ---------------------------------------------------------------------------
# caustic behavior


def test_wkb_nd_divergent_at_caustic():
    intg = _nd(dim=2, eps=0.05)
    # alpha_hat for eps*x^4 perturbation sits slightly below 0 on the
    # dominant branch; locate it from the 1-D reduction
    c1 = find_caustic(registry_get("perturbed-cubic", {"eps": "0.05"}))
    a = c1.alpha_hat
    s = find_saddle_nd(intg, a, intg.saddle_guess(a))
    with pytest.raises(CausticDivergence):
        approx_wkb_nd(intg, a, 50.0, s)
    # the corrected value stays finite at the very same point
    v = approx_corrected_nd(intg, a, 50.0, s)
    assert np.isfinite(abs(v.value)) and abs(v.value) > 0.0


def test_positive_soft_without_contour_rejected():
    intg = IntegrandND(
        F=lambda x, a: 0.5 * 0.3 * x[0] ** 2 - 0.5 * x[1] ** 2 + 0.05 * x[0] ** 3,
        dim=2,
    )
    s = find_saddle_nd(intg, 0.0, np.array([0.01, 0.0]))
    with pytest.raises(WrongRegime):
        approx_wkb_nd(intg, 0.0, 30.0, s)


# ---------------------------------------------------------------------------
# mean-field comparison


def test_mean_field_compare_1d():
    intg = registry_get("mean-field-toy", {"m": 0.1})
    gamma_hat = 1.2978824755046015  # critical coupling for m = 0.1
    rows = mean_field_compare(intg, [1.1, gamma_hat, 1.6], [50, 100])
    assert len(rows) == 6
    for r in rows:
        assert r["exponent_gap"] <= 10.0 / r["N"]
        assert 0.0 < r["prefactor_ratio"] <= 1.0
    # at the critical coupling the fold-saddle Gaussian must diverge
    crit = [r for r in rows if abs(r["alpha"] - gamma_hat) < 1e-9]
    assert all(r["fold_wkb"] == "divergent" for r in crit)


def test_mean_field_m0_degenerate():
    intg = registry_get("mean-field-toy", {"m": 0.0})
    with pytest.raises(DegenerateCubic):
        mean_field_compare(intg, [1.3], [50])


def test_mean_field_compare_type_guard():
    with pytest.raises(WrongRegime):
        mean_field_compare("not an integrand", [1.0], [10])
