"""Lipschitz-Killing curvature estimation from normalized residuals.

The field metric is the pointwise covariance of the residual derivative,
Lambda(s) = cov[dR(s)]. Its empirical version turns a residual sample into
the curvatures L1 (metric length, halved boundary length in 2-D) and L2
(metric area) that weight the EC densities.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateVarianceError
from .fdata import FunctionalSample, Grid1D, Grid2D, gradient, grids_equal
from .kinematic import LKCVector

__all__ = [
    "LambdaField",
    "BoundaryParam",
    "lambda_hat",
    "lkc_1d",
    "lkc_2d",
    "lkc_two_sample",
    "tau_sq_1d",
]


@dataclass(frozen=True, eq=False)
class LambdaField:
    """Pointwise derivative-covariance field on a grid.

    values has shape (P,) on 1-D grids (the scalar variance of dR/ds) and
    (P, 2, 2) on 2-D lattices (the covariance matrix of the two partials).
    """

    values: np.ndarray
    grid: "Grid1D | Grid2D"

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        p = self.grid.n_points
        if isinstance(self.grid, Grid1D):
            if vals.shape != (p,):
                raise ValueError(f"1-D field must have shape ({p},)")
            if np.any(vals < 0):
                raise ValueError("derivative variances must be non-negative")
        else:
            if vals.shape != (p, 2, 2):
                raise ValueError(f"2-D field must have shape ({p}, 2, 2)")
            if not np.allclose(vals, np.transpose(vals, (0, 2, 1)), atol=1e-12):
                raise ValueError("field matrices must be symmetric")
            if np.any(vals[:, 0, 0] < 0) or np.any(vals[:, 1, 1] < 0):
                raise ValueError("diagonal entries must be non-negative")
        if not np.all(np.isfinite(vals)):
            raise ValueError("field contains non-finite entries")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True, eq=False)
class BoundaryParam:
    """Closed lattice polyline with per-segment tangent vectors.

    vertices is a cyclic (K, 2) array of lattice index pairs; tangents[k]
    is the coordinate delta of the segment from vertex k to vertex k+1
    (wrapping at the end), i.e. dgamma/dt for the segment parametrized on
    [0, 1].
    """

    vertices: np.ndarray
    tangents: np.ndarray

    def __post_init__(self):
        verts = np.array(self.vertices, dtype=np.intp)
        tang = np.array(self.tangents, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 2 or verts.shape[0] < 3:
            raise ValueError("vertices must be a (K, 2) index array, K >= 3")
        steps = np.roll(verts, -1, axis=0) - verts
        if np.any(np.abs(steps).sum(axis=1) != 1):
            raise ValueError("boundary is not a closed chain of lattice neighbours")
        if tang.shape != (verts.shape[0], 2):
            raise ValueError("need one tangent vector per segment")
        verts.setflags(write=False)
        tang.setflags(write=False)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "tangents", tang)

    @classmethod
    def from_grid(cls, grid):
        """Boundary polyline of the grid with coordinate-delta tangents."""
        verts = grid.boundary
        coords = np.column_stack(
            [grid.x_points[verts[:, 0]], grid.y_points[verts[:, 1]]]
        )
        tang = np.roll(coords, -1, axis=0) - coords
        return cls(verts, tang)


def lambda_hat(residuals):
    """Empirical covariance (divisor N-1) of the residual gradient field."""
    if not isinstance(residuals, FunctionalSample):
        raise ValueError("lambda_hat needs a FunctionalSample of residuals")
    n = residuals.n_samples
    if n < 2:
        raise ValueError("gradient covariance needs at least 2 residual rows")
    grads = gradient(residuals)
    if isinstance(residuals.grid, Grid1D):
        lam = grads.var(axis=0, ddof=1)
    else:
        centered = grads - grads.mean(axis=0)
        lam = np.einsum("npi,npj->pij", centered, centered) / (n - 1)
        lam = 0.5 * (lam + np.transpose(lam, (0, 2, 1)))
    return LambdaField(lam, residuals.grid)


def lkc_1d(lam, grid):
    """Metric length of the interval: trapezoid integral of sqrt(Lambda)."""
    if not isinstance(grid, Grid1D):
        raise ValueError("lkc_1d needs a 1-D grid")
    if lam.values.ndim != 1 or not grids_equal(lam.grid, grid):
        raise ValueError("field does not live on the given grid")
    return float(np.sum(grid.trapezoid_weights() * np.sqrt(lam.values)))


def lkc_2d(lam, grid, boundary=None):
    """(L1, L2) of a 2-D domain under the field metric.

    L1 is half the metric length of the boundary polyline, integrating
    sqrt(t' Lambda t) per segment with the endpoint-averaged matrix; L2 is
    the lattice trapezoid integral of sqrt(det Lambda). The determinant is
    clamped at zero: sampling noise can push the 2x2 determinant slightly
    negative.
    """
    if not isinstance(grid, Grid2D):
        raise ValueError("lkc_2d needs a 2-D grid")
    if lam.values.ndim != 3 or not grids_equal(lam.grid, grid):
        raise ValueError("field does not live on the given grid")
    if boundary is None:
        boundary = BoundaryParam.from_grid(grid)

    vals = lam.values
    det = vals[:, 0, 0] * vals[:, 1, 1] - vals[:, 0, 1] ** 2
    l2 = float(np.sum(grid.trapezoid_weights() * np.sqrt(np.clip(det, 0.0, None))))

    flat = grid.flat_index(boundary.vertices[:, 0], boundary.vertices[:, 1])
    seg = vals[flat]
    seg_mid = 0.5 * (seg + np.roll(seg, -1, axis=0))
    t = boundary.tangents
    quad = np.einsum("ki,kij,kj->k", t, seg_mid, t)
    l1 = 0.5 * float(np.sum(np.sqrt(np.clip(quad, 0.0, None))))
    return l1, l2


def lkc_two_sample(res_y, res_x, c):
    """LKC vector of the pooled two-sample limit field.

    Inputs are the pooled-normalized residual samples of the two groups
    (see two_sample_residuals in the band module); their gradient
    covariances add because the groups are independent, so the summed
    field feeds the ordinary 1-D/2-D curvature integrals. c = N/M is the
    sample size ratio. Swapping the groups (with c -> 1/c) leaves the
    result unchanged.
    """
    if not np.isfinite(c) or c <= 0:
        raise ValueError("the sample size ratio c = N/M must be positive")
    if not grids_equal(res_y.grid, res_x.grid):
        raise ValueError("grid mismatch between the two residual samples")
    lam = LambdaField(
        lambda_hat(res_y).values + lambda_hat(res_x).values, res_y.grid
    )
    if isinstance(res_y.grid, Grid1D):
        return LKCVector(1, (lkc_1d(lam, res_y.grid),))
    return LKCVector(1, lkc_2d(lam, res_y.grid))


def tau_sq_1d(residuals, grid=None):
    """Plug-in asymptotic variance of the 1-D curvature estimate.

    Evaluates

        tau^2 = 1/2 * integral integral cdot(s,s')^2
                / sqrt(cdot(s,s) cdot(s',s')) ds ds'

    with cdot the empirical covariance of the residual derivative at point
    pairs, so that sqrt(N) (L1_hat - L1) is asymptotically N(0, tau^2) for
    Gaussian-like residuals. The denominator uses the diagonal values
    cdot(s,s), cdot(s',s').
    """
    if not isinstance(residuals, FunctionalSample) or not isinstance(
        residuals.grid, Grid1D
    ):
        raise ValueError("tau_sq_1d needs residuals on a 1-D grid")
    if grid is None:
        grid = residuals.grid
    elif not grids_equal(grid, residuals.grid):
        raise ValueError("grid mismatch between residuals and grid argument")
    n = residuals.n_samples
    if n < 2:
        raise ValueError("gradient covariance needs at least 2 residual rows")

    grads = gradient(residuals)
    centered = grads - grads.mean(axis=0)
    cdot = centered.T @ centered / (n - 1)
    diag = np.diag(cdot).copy()
    bad = np.flatnonzero(diag <= 0)
    if bad.size:
        p = int(bad[0])
        raise DegenerateVarianceError(
            f"gradient variance vanishes at grid point {p} "
            f"(s={grid.points[p]:.6g})"
        )
    w = grid.trapezoid_weights()
    integrand = cdot**2 / np.sqrt(np.outer(diag, diag))
    return 0.5 * float(w @ integrand @ w)
