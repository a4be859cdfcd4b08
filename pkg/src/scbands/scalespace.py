"""Kernel smoothing of noisy curves into (location, bandwidth) samples.

Smoothing a discretely observed curve with a whole range of bandwidths at
once produces a surface over the (s, h) rectangle. Treating those surfaces
as ordinary 2-D functional data lets the band machinery make simultaneous
statements over locations and bandwidths together, which removes the need
to pick one smoothing parameter.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .fdata import FunctionalSample, Grid1D, Grid2D

__all__ = ["Kernel", "gaussian_kernel", "ScaleGrid", "smooth_sample", "scale_mean"]


@dataclass(frozen=True)
class Kernel:
    """Smoothing kernel evaluated as fn(offsets, h).

    fn maps an array of location offsets and a bandwidth to weights. The
    smoothness tag declares joint regularity in (s, h); at least C3 is
    required for the scale-space limit theory to apply, which is why only
    the tags "C3" and "Cinf" are accepted. support_radius, when given, is
    in units of h: weights vanish for |offset| > support_radius * h.
    """

    fn: Callable
    smoothness: str = "C3"
    support_radius: float = None

    def __post_init__(self):
        if self.smoothness not in ("C3", "Cinf"):
            raise ValueError("kernel must be at least C3 in (s, h)")
        if self.support_radius is not None and self.support_radius <= 0:
            raise ValueError("support_radius must be positive")

    def weights(self, offsets, h):
        w = np.asarray(self.fn(np.asarray(offsets, dtype=float), float(h)), dtype=float)
        if self.support_radius is not None:
            w = np.where(np.abs(offsets) <= self.support_radius * h, w, 0.0)
        return w


def gaussian_kernel():
    """K(s, h) = exp(-s^2 / (2 h^2)); smooth everywhere, unbounded support."""

    def fn(offsets, h):
        z = offsets / h
        return np.exp(-0.5 * z * z)

    return Kernel(fn, smoothness="Cinf", support_radius=None)


@dataclass(frozen=True, eq=False)
class ScaleGrid:
    """Evaluation locations plus a strictly increasing positive bandwidth list."""

    s_points: Grid1D
    h_points: np.ndarray

    def __post_init__(self):
        if not isinstance(self.s_points, Grid1D):
            raise ValueError("s_points must be a Grid1D")
        h = np.array(self.h_points, dtype=float)
        if h.ndim != 1 or h.size == 0:
            raise ValueError("empty bandwidth list")
        if not np.all(np.isfinite(h)) or np.any(h <= 0):
            raise ValueError("bandwidths must be finite and positive")
        if h.size > 1 and not np.all(np.diff(h) > 0):
            raise ValueError("bandwidths must be strictly increasing")
        h.setflags(write=False)
        object.__setattr__(self, "h_points", h)

    @property
    def n_s(self):
        return self.s_points.n_points

    @property
    def n_h(self):
        return self.h_points.size


def weight_matrix(kernel, measure_points, sg, normalize=True):
    """Linear map from values at the measurement points to the (s, h) lattice.

    Row (i_s * n_h + i_h) holds the weights producing the smoothed value at
    location s_points[i_s] and bandwidth h_points[i_h]. normalize=True
    rescales each row to sum to 1 (a convex combination, so smoothed values
    stay inside the data range); normalize=False uses the raw (1/P) K
    weights of the plain kernel average, whose target drifts near the
    domain boundary.
    """
    pts = np.asarray(measure_points, dtype=float)
    if pts.ndim != 1 or pts.size < 2:
        raise ValueError("need at least 2 measurement points")
    offs = sg.s_points.points[:, None] - pts[None, :]
    per_h = []
    for h in sg.h_points:
        k = kernel.weights(offs, h)
        if not np.all(np.isfinite(k)):
            raise ValueError(f"kernel produced non-finite weights at h={h:.6g}")
        if normalize:
            row_sums = k.sum(axis=1, keepdims=True)
            if np.any(row_sums == 0):
                raise ValueError(f"kernel weights sum to zero at h={h:.6g}")
            k = k / row_sums
        else:
            k = k / pts.size
        per_h.append(k)
    # (n_s, n_h, P) -> flat row-major (s major, h minor) to match Grid2D.
    return np.stack(per_h, axis=1).reshape(sg.n_s * sg.n_h, pts.size)


def smooth_sample(raw, kernel, sg, normalize=True):
    """Smooth every row of a 1-D sample onto the (s, h) lattice.

    Returns a FunctionalSample on a Grid2D with x = locations and y =
    bandwidths. A single-bandwidth grid degenerates to an ordinary 1-D
    sample over the locations. (Two bandwidths cannot form a valid 2-D
    lattice; use one, or three and more.)
    """
    if not isinstance(raw, FunctionalSample) or not isinstance(raw.grid, Grid1D):
        raise ValueError("smooth_sample needs a FunctionalSample on a 1-D grid")
    w = weight_matrix(kernel, raw.grid.points, sg, normalize)
    smoothed = raw.values @ w.T
    if sg.n_h == 1:
        return FunctionalSample(smoothed, sg.s_points)
    return FunctionalSample(smoothed, Grid2D(sg.s_points.points, sg.h_points))


def scale_mean(mu_values, kernel, sg, normalize=True, measure_points=None):
    """Apply the sample's smoothing map to a fixed curve.

    This is the band target in simulations: the smoothed version of the
    true mean under exactly the same linear map. measure_points locates the
    given values; None assumes the midpoint design s_p = (p - 0.5) / P on
    [0, 1] used for synthetic data. Returns the surface as a flat array in
    lattice order (or a curve when the grid has one bandwidth).
    """
    mu = np.asarray(mu_values, dtype=float)
    if mu.ndim != 1:
        raise ValueError("mu_values must be a flat curve")
    if measure_points is None:
        p = mu.size
        measure_points = (np.arange(p) + 0.5) / p
    w = weight_matrix(kernel, measure_points, sg, normalize)
    return w @ mu
