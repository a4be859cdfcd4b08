"""Functional samples on fixed grids and their pointwise statistics.

A FunctionalSample is an N x P matrix of N functions observed on a shared
1-D grid or 2-D rectangular lattice. Surfaces are stored row-major over
(x, y): the flat column index of lattice node (ix, iy) is ix * n_y + iy.

The column statistics (pointwise_mean, pointwise_sd, normed_residuals) are
pure matrix operations and also accept a bare N x P array; the geometric
operations (gradient, quadrature weights) need an actual grid.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateVarianceError

__all__ = [
    "Grid1D",
    "Grid2D",
    "FunctionalSample",
    "grids_equal",
    "rectangle_boundary",
    "pointwise_mean",
    "pointwise_sd",
    "normed_residuals",
    "gradient",
]


def _ascending_points(points, name):
    pts = np.array(points, dtype=float)
    if pts.ndim != 1:
        raise ValueError(f"{name} must be a one-dimensional sequence")
    if pts.size < 3:
        raise ValueError(f"{name} needs at least 3 points, got {pts.size}")
    if not np.all(np.isfinite(pts)):
        raise ValueError(f"{name} contains non-finite entries")
    if not np.all(np.diff(pts) > 0):
        raise ValueError(f"{name} must be strictly increasing")
    pts.setflags(write=False)
    return pts


def _trapezoid_weights(points):
    w = np.empty_like(points)
    w[0] = 0.5 * (points[1] - points[0])
    w[-1] = 0.5 * (points[-1] - points[-2])
    w[1:-1] = 0.5 * (points[2:] - points[:-2])
    return w


@dataclass(frozen=True, eq=False)
class Grid1D:
    """Strictly increasing evaluation points on a compact interval."""

    points: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "points", _ascending_points(self.points, "points"))

    @property
    def n_points(self):
        return self.points.size

    def trapezoid_weights(self):
        """Quadrature weights matching the actual (possibly uneven) spacing."""
        return _trapezoid_weights(self.points)


def rectangle_boundary(n_x, n_y):
    """Counterclockwise perimeter of an n_x x n_y lattice as index pairs."""
    verts = []
    for ix in range(n_x - 1):
        verts.append((ix, 0))
    for iy in range(n_y - 1):
        verts.append((n_x - 1, iy))
    for ix in range(n_x - 1, 0, -1):
        verts.append((ix, n_y - 1))
    for iy in range(n_y - 1, 0, -1):
        verts.append((0, iy))
    return np.array(verts, dtype=np.intp)


@dataclass(frozen=True, eq=False)
class Grid2D:
    """Rectangular lattice with a closed boundary polyline.

    boundary is a cyclic (K, 2) array of lattice index pairs tracing the
    domain edge; consecutive vertices (including last to first) must be
    lattice neighbours. Defaults to the full rectangle perimeter.
    """

    x_points: np.ndarray
    y_points: np.ndarray
    boundary: np.ndarray = None

    def __post_init__(self):
        object.__setattr__(self, "x_points", _ascending_points(self.x_points, "x_points"))
        object.__setattr__(self, "y_points", _ascending_points(self.y_points, "y_points"))
        if self.boundary is None:
            bnd = rectangle_boundary(self.n_x, self.n_y)
        else:
            bnd = np.array(self.boundary, dtype=np.intp)
        self._check_boundary(bnd)
        bnd.setflags(write=False)
        object.__setattr__(self, "boundary", bnd)

    def _check_boundary(self, bnd):
        if bnd.ndim != 2 or bnd.shape[1] != 2 or bnd.shape[0] < 4:
            raise ValueError("boundary must be a (K, 2) index array with K >= 4")
        if np.any(bnd[:, 0] < 0) or np.any(bnd[:, 0] >= self.n_x):
            raise ValueError("boundary x index out of range")
        if np.any(bnd[:, 1] < 0) or np.any(bnd[:, 1] >= self.n_y):
            raise ValueError("boundary y index out of range")
        steps = np.roll(bnd, -1, axis=0) - bnd
        if np.any(np.abs(steps).sum(axis=1) != 1):
            raise ValueError("boundary must be a closed chain of lattice neighbours")
        if len({(int(ix), int(iy)) for ix, iy in bnd}) != bnd.shape[0]:
            raise ValueError("boundary must not revisit a vertex")

    @property
    def n_x(self):
        return self.x_points.size

    @property
    def n_y(self):
        return self.y_points.size

    @property
    def n_points(self):
        return self.n_x * self.n_y

    def flat_index(self, ix, iy):
        """Column index of lattice node (ix, iy) in the row-major layout."""
        return np.asarray(ix) * self.n_y + np.asarray(iy)

    def lattice_coords(self):
        """(x, y) coordinates of every node in flat (row-major) order."""
        xx, yy = np.meshgrid(self.x_points, self.y_points, indexing="ij")
        return xx.ravel(), yy.ravel()

    def trapezoid_weights(self):
        """Product trapezoid weights in flat order; they sum to the area."""
        return np.outer(
            _trapezoid_weights(self.x_points), _trapezoid_weights(self.y_points)
        ).ravel()


def grids_equal(a, b):
    """Exact equality of grid coordinates (and type)."""
    if type(a) is not type(b):
        return False
    if isinstance(a, Grid1D):
        return a.n_points == b.n_points and bool(np.array_equal(a.points, b.points))
    return (
        a.n_x == b.n_x
        and a.n_y == b.n_y
        and bool(np.array_equal(a.x_points, b.x_points))
        and bool(np.array_equal(a.y_points, b.y_points))
    )


@dataclass(frozen=True, eq=False)
class FunctionalSample:
    """N functions observed on a shared grid, one row per function."""

    values: np.ndarray
    grid: "Grid1D | Grid2D"

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 2:
            raise ValueError("values must be an N x P matrix")
        if vals.shape[1] != self.grid.n_points:
            raise ValueError(
                f"values have {vals.shape[1]} columns but the grid has "
                f"{self.grid.n_points} points"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("values contain non-finite entries")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def n_samples(self):
        return self.values.shape[0]

    @property
    def n_points(self):
        return self.values.shape[1]


def _values_of(sample):
    if isinstance(sample, FunctionalSample):
        return sample.values
    arr = np.asarray(sample, dtype=float)
    if arr.ndim != 2:
        raise ValueError("expected a FunctionalSample or an N x P matrix")
    return arr


def _point_label(sample, p):
    if isinstance(sample, FunctionalSample):
        if isinstance(sample.grid, Grid1D):
            return f"{p} (s={sample.grid.points[p]:.6g})"
        xs, ys = sample.grid.lattice_coords()
        return f"{p} (x={xs[p]:.6g}, y={ys[p]:.6g})"
    return str(p)


def pointwise_mean(sample):
    """Column means: the estimated mean function on the grid."""
    vals = _values_of(sample)
    if vals.shape[0] < 1:
        raise ValueError("cannot average an empty sample")
    return vals.mean(axis=0)


def pointwise_sd(sample):
    """Column standard deviations with divisor N-1."""
    vals = _values_of(sample)
    if vals.shape[0] < 2:
        raise ValueError("pointwise sd needs at least 2 rows")
    return vals.std(axis=0, ddof=1)


def normed_residuals(sample):
    """Rows (Y_n - mean) / sd, so every column has mean 0 and sd 1.

    Raises DegenerateVarianceError naming the first grid point where the
    pointwise sd vanishes. The output is the same kind of object as the
    input (sample in, sample out; matrix in, matrix out). No other scaling
    is applied here; the multiplier bootstrap applies its own sqrt(N/(N-1))
    factor to unnormalized residuals.
    """
    vals = _values_of(sample)
    sd = pointwise_sd(vals)
    zeros = np.flatnonzero(sd == 0)
    if zeros.size:
        raise DegenerateVarianceError(
            f"pointwise sd is zero at grid point {_point_label(sample, int(zeros[0]))}"
        )
    res = (vals - vals.mean(axis=0)) / sd
    if isinstance(sample, FunctionalSample):
        return FunctionalSample(res, sample.grid)
    return res


def gradient(sample):
    """Finite-difference derivative of every row.

    Central second-order differences at interior points and one-sided
    second-order stencils at the grid edges, per axis. Returns an (N, P)
    array for 1-D grids and an (N, P, 2) array holding the (x, y) partials
    for 2-D lattices.
    """
    if not isinstance(sample, FunctionalSample):
        raise ValueError("gradient needs a FunctionalSample with a grid")
    grid = sample.grid
    if isinstance(grid, Grid1D):
        return np.gradient(sample.values, grid.points, axis=1, edge_order=2)
    n = sample.n_samples
    cube = sample.values.reshape(n, grid.n_x, grid.n_y)
    dx, dy = np.gradient(cube, grid.x_points, grid.y_points, axis=(1, 2), edge_order=2)
    return np.stack([dx.reshape(n, -1), dy.reshape(n, -1)], axis=-1)
