"""Uniform 3-D grids, biquaternion-valued fields, and discrete operators.

Differential operators use second-order central differences.  Nodes where
a stencil would reach outside the grid are marked invalid by storing NaN;
applying an operator twice therefore widens the invalid rim automatically,
and all norms ignore invalid nodes.  Residual checks are thus always taken
over the interior on which the discrete operators are actually defined.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .algebra import Biquaternion, qmul

__all__ = [
    "Grid3",
    "BQField",
    "Norms",
    "sample",
    "partial_deriv",
    "grad_scalar",
    "divergence",
    "curl",
    "nabla",
    "nabla_alpha",
    "laplacian",
    "laplacian_wide",
    "reflect_x3",
    "linf",
    "l2",
    "norms",
    "rel_linf",
    "field_to_csv",
]


@dataclass(frozen=True)
class Grid3:
    """Uniform tensor-product grid with n_k nodes per axis.

    Node coordinates along axis k are origin[k] + j*spacing[k] for
    j = 0..n_k-1.  At least 5 nodes per axis so that interior second-order
    stencils (including the doubled-spacing ones) have room.
    """

    shape: tuple[int, int, int]
    origin: tuple[float, float, float]
    spacing: tuple[float, float, float]

    def __post_init__(self):
        if len(self.shape) != 3:
            raise ValueError("shape must have three entries")
        if any(int(n) < 5 for n in self.shape):
            raise ValueError(f"grid too small for interior stencils: {self.shape}")
        if any(h <= 0 for h in self.spacing):
            raise ValueError("spacing must be positive")

    @classmethod
    def box(cls, lo, hi, n) -> "Grid3":
        """Grid over the box [lo1,hi1] x [lo2,hi2] x [lo3,hi3].

        lo, hi and n may be scalars (applied to all axes) or triples.
        """
        lo = np.broadcast_to(np.asarray(lo, dtype=float), (3,))
        hi = np.broadcast_to(np.asarray(hi, dtype=float), (3,))
        n = np.broadcast_to(np.asarray(n, dtype=int), (3,))
        spacing = tuple((hi[k] - lo[k]) / (n[k] - 1) for k in range(3))
        return cls(shape=tuple(int(m) for m in n), origin=tuple(lo), spacing=spacing)

    def refine(self) -> "Grid3":
        """Same box with doubled resolution (n -> 2n - 1, h -> h/2)."""
        n = tuple(2 * m - 1 for m in self.shape)
        h = tuple(s / 2 for s in self.spacing)
        return Grid3(shape=n, origin=self.origin, spacing=h)

    def axis(self, k: int) -> np.ndarray:
        return self.origin[k] + self.spacing[k] * np.arange(self.shape[k])

    @property
    def axes(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.axis(0), self.axis(1), self.axis(2)

    def mesh(self):
        return np.meshgrid(*self.axes, indexing="ij")

    @property
    def node_count(self) -> int:
        n1, n2, n3 = self.shape
        return n1 * n2 * n3

    @property
    def cell_volume(self) -> float:
        return float(self.spacing[0] * self.spacing[1] * self.spacing[2])

    @property
    def hmax(self) -> float:
        return float(max(self.spacing))

    @property
    def x3_symmetric(self) -> bool:
        """True when x3 -> -x3 maps the node set onto itself."""
        n3 = self.shape[2]
        center = self.origin[2] + 0.5 * (n3 - 1) * self.spacing[2]
        return abs(center) <= 1e-12 * max(1.0, abs(self.origin[2]))


def sample(grid: Grid3, fn) -> np.ndarray:
    """Evaluate fn(X1, X2, X3) on the grid; constants broadcast."""
    if callable(fn):
        x1, x2, x3 = grid.mesh()
        out = np.asarray(fn(x1, x2, x3), dtype=complex)
        return np.broadcast_to(out, grid.shape).astype(complex)
    return np.broadcast_to(np.asarray(fn, dtype=complex), grid.shape).astype(complex)


class BQField:
    """Biquaternion-valued function sampled on a Grid3.

    data has shape (4, n1, n2, n3), complex; index 0 is the scalar part.
    Fields behave like elements of the algebra pointwise: * is the
    quaternion product (with BQField, Biquaternion, or a scalar/array of
    complex numbers), + and - are componentwise.  All operations are pure.
    """

    __array_ufunc__ = None  # defer numpy binary ops to our __rmul__ etc.

    def __init__(self, grid: Grid3, data: np.ndarray):
        data = np.asarray(data, dtype=complex)
        if data.shape != (4, *grid.shape):
            raise ValueError(f"data shape {data.shape} does not match grid {grid.shape}")
        self.grid = grid
        self.data = data

    # -- constructors ----------------------------------------------------
    @classmethod
    def zeros(cls, grid: Grid3) -> "BQField":
        return cls(grid, np.zeros((4, *grid.shape), dtype=complex))

    @classmethod
    def from_components(cls, grid: Grid3, c0=0.0, c1=0.0, c2=0.0, c3=0.0) -> "BQField":
        return cls(grid, np.stack([sample(grid, c) for c in (c0, c1, c2, c3)]))

    @classmethod
    def from_scalar(cls, grid: Grid3, f) -> "BQField":
        return cls.from_components(grid, c0=f)

    @classmethod
    def from_vector(cls, grid: Grid3, v1, v2, v3) -> "BQField":
        return cls.from_components(grid, 0.0, v1, v2, v3)

    @classmethod
    def constant(cls, grid: Grid3, q: Biquaternion) -> "BQField":
        return cls.from_components(grid, *q.components)

    # -- parts -----------------------------------------------------------
    @property
    def scalar(self) -> np.ndarray:
        return self.data[0]

    @property
    def vector(self) -> np.ndarray:
        """The three vector component arrays, shape (3, n1, n2, n3)."""
        return self.data[1:]

    def vector_part(self) -> "BQField":
        out = self.data.copy()
        out[0] = 0.0
        return BQField(self.grid, out)

    def is_vectorial(self, tol: float = 1e-12) -> bool:
        scale = max(1.0, float(np.nanmax(np.abs(self.data), initial=0.0)))
        return float(np.nanmax(np.abs(self.data[0]), initial=0.0)) <= tol * scale

    # -- arithmetic --------------------------------------------------------
    def _binary(self, other, op):
        if isinstance(other, BQField):
            if other.grid != self.grid:
                raise ValueError("fields live on different grids")
            return BQField(self.grid, op(self.data, other.data))
        return NotImplemented

    def __add__(self, other):
        return self._binary(other, np.add)

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __neg__(self):
        return BQField(self.grid, -self.data)

    def __mul__(self, other):
        if isinstance(other, BQField):
            if other.grid != self.grid:
                raise ValueError("fields live on different grids")
            return BQField(self.grid, qmul(self.data, other.data))
        if isinstance(other, Biquaternion):
            return BQField(self.grid, qmul(self.data, other.components.reshape(4, 1, 1, 1)))
        if isinstance(other, (int, float, complex)):
            return BQField(self.grid, self.data * other)
        if isinstance(other, np.ndarray):
            return BQField(self.grid, self.data * other[np.newaxis])
        return NotImplemented

    def __rmul__(self, other):
        # scalars and scalar fields commute with everything
        if isinstance(other, (int, float, complex)):
            return BQField(self.grid, other * self.data)
        if isinstance(other, np.ndarray):
            return BQField(self.grid, other[np.newaxis] * self.data)
        if isinstance(other, Biquaternion):
            return BQField(self.grid, qmul(other.components.reshape(4, 1, 1, 1), self.data))
        return NotImplemented

    def conj(self) -> "BQField":
        out = self.data.copy()
        out[1:] = -out[1:]
        return BQField(self.grid, out)

    # -- norms -------------------------------------------------------------
    def linf(self) -> float:
        return linf(self.data)

    def l2(self) -> float:
        return l2(self.data, self.grid)

    def __repr__(self):
        return f"BQField(grid={self.grid.shape}, linf={self.linf():.6g})"


# --------------------------------------------------------------------------
# norms (NaN entries mark invalid nodes and are excluded)
# --------------------------------------------------------------------------

def linf(a) -> float:
    data = a.data if isinstance(a, BQField) else np.asarray(a)
    m = np.abs(data)
    if not np.any(np.isfinite(m)):
        raise ValueError("no valid nodes to take a norm over")
    return float(np.nanmax(m))


def l2(a, grid: Grid3 | None = None) -> float:
    if isinstance(a, BQField):
        grid = a.grid
        data = a.data
    else:
        data = np.asarray(a)
        if grid is None:
            raise ValueError("l2 of a bare array needs the grid for the volume weight")
    m = np.abs(data) ** 2
    if not np.any(np.isfinite(m)):
        raise ValueError("no valid nodes to take a norm over")
    return float(np.sqrt(np.nansum(m) * grid.cell_volume))


class Norms(NamedTuple):
    linf: float
    l2: float


def norms(a, grid: Grid3 | None = None) -> Norms:
    return Norms(linf(a), l2(a, grid))


def rel_linf(residual, *references) -> float:
    """L-inf norm of the residual divided by the largest reference norm."""
    scale = max([linf(r) for r in references], default=1.0)
    return linf(residual) / max(scale, 1e-300)


# --------------------------------------------------------------------------
# discrete operators
# --------------------------------------------------------------------------

def partial_deriv(arr: np.ndarray, grid: Grid3, axis: int) -> np.ndarray:
    """Central-difference partial derivative along a spatial axis.

    arr may be a scalar array (grid.shape) or a component stack
    (4, *grid.shape); the two boundary slabs along the axis are invalidated.
    """
    spatial_axis = axis + (arr.ndim - 3)
    out = np.gradient(arr, grid.spacing[axis], axis=spatial_axis)
    sl = [slice(None)] * arr.ndim
    sl[spatial_axis] = 0
    out[tuple(sl)] = np.nan
    sl[spatial_axis] = -1
    out[tuple(sl)] = np.nan
    return out


def grad_scalar(arr: np.ndarray, grid: Grid3):
    return tuple(partial_deriv(arr, grid, k) for k in range(3))


def divergence(v1, v2, v3, grid: Grid3) -> np.ndarray:
    return (partial_deriv(v1, grid, 0) + partial_deriv(v2, grid, 1)
            + partial_deriv(v3, grid, 2))


def curl(v1, v2, v3, grid: Grid3):
    return (
        partial_deriv(v3, grid, 1) - partial_deriv(v2, grid, 2),
        partial_deriv(v1, grid, 2) - partial_deriv(v3, grid, 0),
        partial_deriv(v2, grid, 0) - partial_deriv(v1, grid, 1),
    )


def nabla(f: BQField) -> BQField:
    """First-order operator sum_k e_k d_k f.

    Assembled as (-div f_vec) + grad f0 + curl f_vec so that the scalar and
    vector parts are, by construction, the same arithmetic as the vector
    calculus operators above.
    """
    g = f.grid
    f0, f1, f2, f3 = f.data
    d = -divergence(f1, f2, f3, g)
    g1, g2, g3 = grad_scalar(f0, g)
    c1, c2, c3 = curl(f1, f2, f3, g)
    return BQField(g, np.stack([d, g1 + c1, g2 + c2, g3 + c3]))


def _alpha_field(f: BQField, alpha) -> BQField:
    if isinstance(alpha, BQField):
        return alpha
    if isinstance(alpha, Biquaternion):
        return BQField.constant(f.grid, alpha)
    # AlphaSpec and anything else exposing vector_field(grid)
    return alpha.vector_field(f.grid)


def nabla_alpha(f: BQField, alpha) -> BQField:
    """The perturbed operator f -> nabla(f) + f * alpha (right multiplication).

    alpha may be a BQField, a constant Biquaternion, or an AlphaSpec.
    """
    return nabla(f) + f * _alpha_field(f, alpha)


def laplacian(f: BQField) -> BQField:
    """Componentwise 7-point Laplacian; one-node rim invalidated."""
    g = f.grid
    data = f.data
    out = np.full_like(data, np.nan)
    c = data[:, 1:-1, 1:-1, 1:-1]
    acc = np.zeros_like(c)
    for axis, h in enumerate(g.spacing):
        sl_p = [slice(None), slice(1, -1), slice(1, -1), slice(1, -1)]
        sl_m = [slice(None), slice(1, -1), slice(1, -1), slice(1, -1)]
        sl_p[axis + 1] = slice(2, None)
        sl_m[axis + 1] = slice(0, -2)
        acc = acc + (data[tuple(sl_p)] - 2 * c + data[tuple(sl_m)]) / h ** 2
    out[:, 1:-1, 1:-1, 1:-1] = acc
    return BQField(g, out)


def laplacian_wide(f: BQField) -> BQField:
    """Laplacian on the doubled-spacing stencil (what nabla(nabla(.)) sees
    on the diagonal); two-node rim invalidated."""
    g = f.grid
    data = f.data
    out = np.full_like(data, np.nan)
    c = data[:, 2:-2, 2:-2, 2:-2]
    acc = np.zeros_like(c)
    for axis, h in enumerate(g.spacing):
        sl_p = [slice(None), slice(2, -2), slice(2, -2), slice(2, -2)]
        sl_m = [slice(None), slice(2, -2), slice(2, -2), slice(2, -2)]
        sl_p[axis + 1] = slice(4, None)
        sl_m[axis + 1] = slice(0, -4)
        acc = acc + (data[tuple(sl_p)] - 2 * c + data[tuple(sl_m)]) / (2 * h) ** 2
    out[:, 2:-2, 2:-2, 2:-2] = acc
    return BQField(g, out)


def reflect_x3(f: BQField) -> BQField:
    """Pull back along x3 -> -x3 (an exact node permutation); involutive."""
    if not f.grid.x3_symmetric:
        raise ValueError("reflection not node-exact: grid is not symmetric about x3 = 0")
    return BQField(f.grid, f.data[..., ::-1].copy())


# --------------------------------------------------------------------------
# export
# --------------------------------------------------------------------------

def field_to_csv(f: BQField, path) -> None:
    """Write one row per node: i,j,k,x1,x2,x3 then Re/Im of q0..q3."""
    x1, x2, x3 = f.grid.axes
    n1, n2, n3 = f.grid.shape
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["i", "j", "k", "x1", "x2", "x3",
                    "re_q0", "im_q0", "re_q1", "im_q1",
                    "re_q2", "im_q2", "re_q3", "im_q3"])
        for i in range(n1):
            for j in range(n2):
                for k in range(n3):
                    q = f.data[:, i, j, k]
                    row = [i, j, k, repr(float(x1[i])), repr(float(x2[j])), repr(float(x3[k]))]
                    for comp in q:
                        row.append(repr(float(comp.real)))
                        row.append(repr(float(comp.imag)))
                    w.writerow(row)
