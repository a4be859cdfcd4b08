"""Curvature field estimation and the curvature integrals."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from scbands import (
    FunctionalSample,
    Grid1D,
    Grid2D,
    LambdaField,
    lambda_hat,
    lkc_1d,
    lkc_2d,
    lkc_two_sample,
    normed_residuals,
    substream,
    tau_sq_1d,
    two_sample_residuals,
)

TWO_PI = 2.0 * np.pi


def cosine_sample(n, seed, *path, n_points=100):
    """Paths A cos(2 pi s) + B sin(2 pi s) with iid standard normal A, B."""
    grid = Grid1D(np.linspace(0.0, 1.0, n_points))
    ab = substream(seed, *path).standard_normal((n, 2))
    cs = np.cos(TWO_PI * grid.points)
    sn = np.sin(TWO_PI * grid.points)
    return FunctionalSample(ab[:, :1] * cs + ab[:, 1:] * sn, grid)


def centered(sample):
    return FunctionalSample(
        sample.values - sample.values.mean(axis=0), sample.grid
    )


def test_lambda_of_linear_spread_rows():
    # rows +s and -s have slope spread 2 exactly (ddof=1 variance of {1,-1})
    g = Grid1D(np.linspace(0.0, 1.0, 101))
    lam = lambda_hat(FunctionalSample(np.vstack([g.points, -g.points]), g))
    assert_allclose(lam.values, 2.0, atol=1e-10)


def test_lambda_of_zero_rows():
    g = Grid1D(np.linspace(0.0, 1.0, 31))
    lam = lambda_hat(FunctionalSample(np.zeros((4, 31)), g))
    assert_allclose(lam.values, 0.0, atol=0.0)
    assert lkc_1d(lam, g) == 0.0


def test_curvature_integral_of_constant_fields():
    g = Grid1D(np.linspace(0.0, 1.0, 101))
    assert_allclose(lkc_1d(LambdaField(np.ones(101), g), g), 1.0, rtol=1e-12)
    g2 = Grid1D(np.linspace(0.0, 2.0, 101))
    # integral of sqrt(4) over [0, 2]
    assert_allclose(lkc_1d(LambdaField(4.0 * np.ones(101), g2), g2), 4.0, rtol=1e-12)


def test_surface_curvatures_of_constant_metric():
    g = Grid2D(np.linspace(0.0, 1.0, 41), np.linspace(0.0, 1.0, 41))
    eye = np.broadcast_to(np.eye(2), (g.n_points, 2, 2)).copy()
    l1, l2 = lkc_2d(LambdaField(eye, g), g)
    # unit square under the identity metric: half perimeter and area
    assert_allclose((l1, l2), (2.0, 1.0), rtol=1e-12)
    l1, l2 = lkc_2d(LambdaField(4.0 * eye, g), g)
    assert_allclose((l1, l2), (4.0, 4.0), rtol=1e-12)


def test_surface_curvatures_scale_with_domain():
    g = Grid2D(np.linspace(0.0, 2.0, 41), np.linspace(0.0, 3.0, 41))
    eye = np.broadcast_to(np.eye(2), (g.n_points, 2, 2)).copy()
    l1, l2 = lkc_2d(LambdaField(eye, g), g)
    assert_allclose((l1, l2), (5.0, 6.0), rtol=1e-12)


def test_lambda_2d_shape_and_symmetry():
    g = Grid2D(np.linspace(0.0, 1.0, 15), np.linspace(0.0, 1.0, 15))
    rng = np.random.default_rng(8)
    lam = lambda_hat(FunctionalSample(rng.standard_normal((12, g.n_points)), g))
    assert lam.values.shape == (g.n_points, 2, 2)
    assert_allclose(lam.values[:, 0, 1], lam.values[:, 1, 0], rtol=1e-12)
    # diagonal entries are variances
    assert (lam.values[:, 0, 0] >= 0).all()
    assert (lam.values[:, 1, 1] >= 0).all()


def test_cosine_curvature_field_near_constant():
    s = cosine_sample(4000, 21, 1)
    lam = lambda_hat(centered(s))
    assert_allclose(lam.values, TWO_PI**2, rtol=0.10)


def test_cosine_arc_length_from_normed_residuals():
    # the normalized residual path of a two-component field is a unit
    # circle traversed once, so the estimate is 2 pi up to grid error
    for n in (10, 40, 200):
        l1 = lkc_1d(lambda_hat(normed_residuals(cosine_sample(n, 21, 2, n))), Grid1D(np.linspace(0, 1, 100)))
        assert_allclose(l1, TWO_PI, atol=0.02)


def test_cosine_arc_length_from_centered_residuals():
    s = cosine_sample(4000, 21, 1)
    l1 = lkc_1d(lambda_hat(centered(s)), s.grid)
    assert abs(l1 - TWO_PI) < 0.2


def test_cosine_fluctuation_variance():
    # sqrt(N) (L1_hat - 2 pi) has limit variance pi^2 for known unit scale
    vals = np.empty(150)
    for r in range(150):
        s = cosine_sample(80, 21, 0, r)
        vals[r] = np.sqrt(80.0) * (lkc_1d(lambda_hat(centered(s)), s.grid) - TWO_PI)
    ratio = vals.var(ddof=1) / np.pi**2
    assert 0.6 < ratio < 1.5


def test_cosine_plug_in_variance():
    s = cosine_sample(2000, 12, 3)
    assert_allclose(tau_sq_1d(centered(s)), np.pi**2, rtol=0.08)


def test_tau_sq_requires_curve_grid():
    g = Grid2D(np.linspace(0, 1, 5), np.linspace(0, 1, 5))
    with pytest.raises(ValueError, match="1-D"):
        tau_sq_1d(FunctionalSample(np.zeros((3, 25)), g))


def test_two_sample_curvature_swap_invariance():
    rng = np.random.default_rng(17)
    g = Grid1D(np.linspace(0.0, 1.0, 60))
    base = np.sin(2 * np.pi * g.points)
    y = FunctionalSample(rng.standard_normal((30, 60)) + base, g)
    x = FunctionalSample(1.5 * rng.standard_normal((20, 60)), g)
    ry, rx, _ = two_sample_residuals(y, x)
    rx2, ry2, _ = two_sample_residuals(x, y)
    a = lkc_two_sample(ry, rx, 30 / 20)
    b = lkc_two_sample(rx2, ry2, 20 / 30)
    assert_allclose(a.curvatures, b.curvatures, rtol=1e-12)
    assert a.l0 == b.l0 == 1


def test_two_sample_curvature_of_shared_law():
    # two independent groups of the cosine process: the pooled limit field
    # is again a unit-variance cosine field, arc length 2 pi
    y = cosine_sample(400, 9, 0)
    x = cosine_sample(400, 9, 1)
    ry, rx, _ = two_sample_residuals(y, x)
    lkc = lkc_two_sample(ry, rx, 1.0)
    assert_allclose(lkc.curvatures[0], TWO_PI, rtol=0.05)


def test_two_sample_curvature_validates_ratio():
    y = cosine_sample(10, 1, 0)
    x = cosine_sample(10, 1, 1)
    ry, rx, _ = two_sample_residuals(y, x)
    with pytest.raises(ValueError, match="positive"):
        lkc_two_sample(ry, rx, -1.0)
