"""Maxwell and force-free-field reductions to the first-order equation.

Covers: the medium coefficient vectors grad(sqrt(eps))/sqrt(eps) and
grad(sqrt(mu))/sqrt(mu), residuals of the static Maxwell pair, the
diagonalization E +- iH of the sourceless slow-medium system, and the
P_1^± splitting of force-free (Beltrami) fields with nonconstant
proportionality factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import Biquaternion
from .grid import BQField, Grid3, linf, nabla, partial_deriv, sample

__all__ = [
    "MediumFields",
    "EMField",
    "medium_alpha",
    "static_maxwell_residual",
    "diagonalize_em",
    "undiagonalize_em",
    "forcefree_split",
    "beltrami_field",
]


@dataclass(frozen=True)
class MediumFields:
    """Positive permittivity and permeability, as callables of (x1,x2,x3).

    separable_eps optionally supplies the factorization
    eps = e1(x1)*e2(x2)*e3(x3) as three (factor, derivative) pairs, which
    unlocks the closed form for the eps coefficient vector.
    """

    eps: Callable | float
    mu: Callable | float
    separable_eps: tuple | None = None  # ((f1, df1), (f2, df2), (f3, df3))

    def eps_values(self, grid: Grid3) -> np.ndarray:
        vals = np.real(sample(grid, self.eps))
        if np.any(vals <= 0):
            raise ValueError("permittivity must be positive at all nodes")
        return vals

    def mu_values(self, grid: Grid3) -> np.ndarray:
        vals = np.real(sample(grid, self.mu))
        if np.any(vals <= 0):
            raise ValueError("permeability must be positive at all nodes")
        return vals

    def check_separable(self, grid: Grid3, tol: float = 1e-12) -> None:
        if self.separable_eps is None:
            raise ValueError("no separable factorization supplied")
        prod = np.ones(grid.shape)
        for k, (fk, _) in enumerate(self.separable_eps):
            x = grid.axis(k)
            shape = [1, 1, 1]
            shape[k] = grid.shape[k]
            prod = prod * np.real(np.asarray(fk(x))).reshape(shape)
        ref = self.eps_values(grid)
        if linf(prod - ref) > tol * max(1.0, linf(ref)):
            raise ValueError("separable factors do not reproduce eps")


def medium_alpha(m: MediumFields, grid: Grid3, which: str = "eps",
                 method: str = "auto") -> BQField:
    """The coefficient vector grad(sqrt(w))/sqrt(w) for w = eps or mu.

    method 'numeric' uses central differences of sqrt(w) (invalid rim);
    'closed' requires the separable factorization and evaluates
    a_k = w_k'(x_k) / (2 w_k(x_k)) exactly; 'auto' prefers the closed form
    for eps when factors are present.
    """
    if which not in ("eps", "mu"):
        raise ValueError("which must be 'eps' or 'mu'")
    if method not in ("auto", "numeric", "closed"):
        raise ValueError("method must be 'auto', 'numeric' or 'closed'")
    use_closed = (which == "eps" and m.separable_eps is not None and method != "numeric")
    if method == "closed" and not use_closed:
        raise ValueError("closed form requires separable eps factors")
    if use_closed:
        comps = []
        for k, (fk, dfk) in enumerate(m.separable_eps):
            x = grid.axis(k)
            vals = np.asarray(dfk(x), dtype=complex) / (2.0 * np.asarray(fk(x), dtype=complex))
            shape = [1, 1, 1]
            shape[k] = grid.shape[k]
            comps.append(np.broadcast_to(vals.reshape(shape), grid.shape).astype(complex))
        return BQField.from_vector(grid, *comps)
    w = m.eps_values(grid) if which == "eps" else m.mu_values(grid)
    root = np.sqrt(w)
    comps = [partial_deriv(root, grid, k) / root for k in range(3)]
    return BQField.from_vector(grid, *comps)


@dataclass(frozen=True)
class EMField:
    """A pair of purely vectorial fields (electric, magnetic)."""

    e: BQField
    h: BQField

    def __post_init__(self):
        for f in (self.e, self.h):
            if not f.is_vectorial():
                raise ValueError("EM fields must be purely vectorial (zero scalar part)")


def static_maxwell_residual(scaled: BQField, m: MediumFields, which: str = "E",
                            rho=None, current=None) -> BQField:
    """Residual of the static equations on the scaled fields.

    For which='E' (scaled = sqrt(eps)*E):  (D + M^eps_vec) E_s + rho/sqrt(eps),
    the source stored in the scalar slot.  For which='H'
    (scaled = sqrt(mu)*H):  (D + M^mu_vec) H_s - sqrt(mu)*j with the vector
    current j subtracted componentwise.  Zero for exact solutions.
    """
    grid = scaled.grid
    if which == "E":
        avec = medium_alpha(m, grid, "eps")
        res = nabla(scaled) + scaled * avec
        if rho is not None:
            src = sample(grid, rho) / np.sqrt(m.eps_values(grid))
            data = res.data.copy()
            data[0] = data[0] + src
            res = BQField(grid, data)
        return res
    if which == "H":
        avec = medium_alpha(m, grid, "mu")
        res = nabla(scaled) + scaled * avec
        if current is not None:
            root = np.sqrt(m.mu_values(grid))
            data = res.data.copy()
            for k in range(3):
                data[k + 1] = data[k + 1] - root * sample(grid, current[k])
            res = BQField(grid, data)
        return res
    raise ValueError("which must be 'E' or 'H'")


def diagonalize_em(e: BQField, h: BQField):
    """phi = E + iH, psi = E - iH; decouples the sourceless slow-medium
    pair into (D - nu) phi = 0 and (D + nu) psi = 0."""
    return e + 1j * h, e - 1j * h


def undiagonalize_em(phi: BQField, psi: BQField):
    """Exact inverse of ``diagonalize_em``."""
    e = 0.5 * (phi + psi)
    h = (phi - psi) * (-0.5j)
    return e, h


def forcefree_split(f: BQField, nu):
    """Split (D + nu) f into the P_1^± pieces.

    Returns (f_plus, f_minus, identity_residual): f_± = f * (1 ± i e1)/2 and
    the residual is the relative L-inf mismatch of the exact algebraic
    identity

        (D + nu) f = (D + M^{i nu e1}) f_+  +  (D - M^{i nu e1}) f_-,

    valid for any biquaternion field and any scalar factor nu(x).
    """
    grid = f.grid
    nu_arr = sample(grid, nu)
    p_plus = Biquaternion(0.5, 0.5j, 0, 0)
    p_minus = Biquaternion(0.5, -0.5j, 0, 0)
    f_plus = f * p_plus
    f_minus = f * p_minus
    mult = BQField.from_vector(grid, 1j * nu_arr, 0.0, 0.0)
    lhs = nabla(f) + nu_arr * f
    rhs = (nabla(f_plus) + f_plus * mult) + (nabla(f_minus) - f_minus * mult)
    scale = max(lhs.linf(), 1e-300)
    residual = (lhs - rhs).linf() / scale
    return f_plus, f_minus, residual


def beltrami_field(grid: Grid3, nu: float) -> BQField:
    """The classic constant-factor force-free fixture
    B = (0, sin(nu x1), -cos(nu x1)): div B = 0 and curl B + nu B = 0."""
    return circular_wave(grid, nu, -1)


def circular_wave(grid: Grid3, nu: float, sign: int) -> BQField:
    """Circularly polarized transverse wave B with (D - sign*nu) B = 0.

    sign=-1 is ``beltrami_field``; sign=+1 the mirrored helicity
    (0, sin(nu x1), +cos(nu x1)).  Pairing E = B with H = -sign*i*B gives
    an exact solution of the sourceless slow-medium system
    D E = i nu H, D H = -i nu E; the diagonal combinations E +- iH then
    solve (D -+ nu)(.) = 0 and each field solves (lap + nu**2)(.) = 0.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    x1, _, _ = grid.mesh()
    return BQField.from_vector(grid, np.zeros(grid.shape, dtype=complex),
                               np.sin(nu * x1), float(sign) * np.cos(nu * x1))
