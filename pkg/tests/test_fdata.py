"""Grids, sample containers, residual transforms, and stream plumbing."""

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from scbands import (
    DegenerateVarianceError,
    FunctionalSample,
    Grid1D,
    Grid2D,
    as_generator,
    ceiling_rank_quantile,
    child_sequence,
    gradient,
    grids_equal,
    normed_residuals,
    pointwise_mean,
    pointwise_sd,
    rectangle_boundary,
    substream,
)


def test_grid1d_basic():
    g = Grid1D(np.linspace(0.0, 1.0, 11))
    assert g.n_points == 11
    assert_allclose(g.points[0], 0.0)
    assert_allclose(g.points[-1], 1.0)


def test_grid1d_rejects_unsorted_points():
    with pytest.raises(ValueError, match="strictly increasing"):
        Grid1D(np.array([0.0, 0.5, 0.4, 1.0]))


def test_grid1d_rejects_duplicates():
    with pytest.raises(ValueError):
        Grid1D(np.array([0.0, 0.3, 0.3, 1.0]))


def test_grid2d_lattice_row_major():
    g = Grid2D(np.array([0.0, 1.0, 2.0]), np.array([0.0, 0.5, 1.0]))
    assert g.n_points == 9
    x, y = g.lattice_coords()
    # y varies fastest within an x-row of the flattened lattice
    assert_array_equal(x[:6], [0.0, 0.0, 0.0, 1.0, 1.0, 1.0])
    assert_array_equal(y[:6], [0.0, 0.5, 1.0, 0.0, 0.5, 1.0])


def test_grid2d_needs_three_points_per_axis():
    with pytest.raises(ValueError, match="at least 3"):
        Grid2D(np.array([0.0, 1.0, 2.0]), np.array([0.0, 0.5]))


def test_rectangle_boundary_is_closed_loop():
    idx = rectangle_boundary(4, 3)
    # every consecutive pair differs by one step in exactly one coordinate
    steps = np.abs(np.diff(np.vstack([idx, idx[:1]]), axis=0)).sum(axis=1)
    assert_array_equal(steps, np.ones(len(idx), dtype=int))
    assert len(np.unique(idx, axis=0)) == len(idx)
    # interior points never appear
    assert not any((0 < i < 3) and (0 < j < 2) for i, j in idx)


def test_sample_shape_validation():
    g = Grid1D(np.linspace(0.0, 1.0, 40))
    with pytest.raises(ValueError, match="columns"):
        FunctionalSample(np.zeros((3, 7)), g)
    with pytest.raises(ValueError):
        FunctionalSample(np.zeros(40), g)


def test_pointwise_mean_and_sd():
    g = Grid1D(np.array([0.0, 1.0, 2.0]))
    s = FunctionalSample(np.array([[0.0, 1.0, 4.0], [2.0, 3.0, 0.0]]), g)
    assert_allclose(pointwise_mean(s), [1.0, 2.0, 2.0])
    # ddof=1: sd of {0,2} is sqrt(2), of {4,0} is 2 sqrt(2)
    assert_allclose(pointwise_sd(s), [np.sqrt(2.0), np.sqrt(2.0), 2.0 * np.sqrt(2.0)])


def test_gradient_exact_on_linear_rows():
    # second-order differences reproduce affine functions exactly
    g = Grid1D(np.linspace(0.0, 2.0, 31))
    rows = np.vstack([3.0 * g.points - 1.0, -0.5 * g.points + 4.0])
    grad = gradient(FunctionalSample(rows, g))
    assert grad.shape == (2, 31)
    assert_allclose(grad[0], 3.0, atol=1e-12)
    assert_allclose(grad[1], -0.5, atol=1e-12)


def test_gradient_2d_exact_on_planes():
    g = Grid2D(np.linspace(0.0, 1.0, 9), np.linspace(0.0, 2.0, 7))
    x, y = g.lattice_coords()
    grad = gradient(FunctionalSample((2.0 * x - 5.0 * y)[None, :], g))
    assert grad.shape == (1, 63, 2)
    assert_allclose(grad[0, :, 0], 2.0, atol=1e-12)
    assert_allclose(grad[0, :, 1], -5.0, atol=1e-12)


def test_normed_residuals_identities():
    rng = np.random.default_rng(42)
    g = Grid1D(np.linspace(0.0, 1.0, 25))
    s = FunctionalSample(rng.standard_normal((8, 25)), g)
    r = normed_residuals(s).values
    assert_allclose(r.sum(axis=0), 0.0, atol=1e-12)
    # squared column norm is exactly N - 1 after sd normalization
    assert_allclose((r**2).sum(axis=0), 7.0, rtol=1e-12)


def test_normed_residuals_scale_invariant():
    rng = np.random.default_rng(3)
    g = Grid1D(np.linspace(0.0, 1.0, 15))
    vals = rng.standard_normal((6, 15))
    a = normed_residuals(FunctionalSample(vals, g)).values
    b = normed_residuals(FunctionalSample(2.5 * vals - 7.0, g)).values
    assert_allclose(a, b, atol=1e-12)


def test_normed_residuals_degenerate_column():
    g = Grid1D(np.linspace(0.0, 1.0, 4))
    vals = np.array([[1.0, 0.0, 0.0, 0.0], [1.0, 1.0, 2.0, 3.0]])
    with pytest.raises(DegenerateVarianceError, match="grid point 0"):
        normed_residuals(FunctionalSample(vals, g))


def test_grids_equal():
    a = Grid1D(np.linspace(0.0, 1.0, 10))
    b = Grid1D(np.linspace(0.0, 1.0, 10))
    c = Grid1D(np.linspace(0.0, 1.0, 11))
    assert grids_equal(a, b)
    assert not grids_equal(a, c)
    assert not grids_equal(a, Grid2D(a.points, a.points))


def test_ceiling_rank_quantile_small_cases():
    draws = np.arange(1.0, 11.0)
    assert ceiling_rank_quantile(draws, 0.05) == 10.0
    assert ceiling_rank_quantile(draws, 0.5) == 5.0
    assert ceiling_rank_quantile(draws, 0.25) == 8.0
    # order of the input draws must not matter
    rng = np.random.default_rng(0)
    shuffled = rng.permutation(draws)
    assert ceiling_rank_quantile(shuffled, 0.25) == 8.0


def test_substream_reproducible_and_distinct():
    a = substream(11, 4, 0, 3).standard_normal(5)
    b = substream(11, 4, 0, 3).standard_normal(5)
    c = substream(11, 4, 0, 4).standard_normal(5)
    d = substream(12, 4, 0, 3).standard_normal(5)
    assert_array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)


def test_child_sequence_feeds_substream():
    seq = child_sequence(7, 1, 2)
    x = as_generator(seq).standard_normal(4)
    y = substream(7, 1, 2).standard_normal(4)
    assert_array_equal(x, y)


def test_as_generator_passthrough():
    gen = np.random.default_rng(5)
    assert as_generator(gen) is gen
    # integers and SeedSequences become fresh generators
    assert_array_equal(
        as_generator(9).standard_normal(3), as_generator(9).standard_normal(3)
    )
