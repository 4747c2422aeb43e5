"""Factorization of the Schrodinger operator through first-order factors.

The central objects: the quaternionic Riccati balance
D(alpha) + alpha**2 = -v, the scalar factorization
(-lap + v) = (D + M^alpha)(D - M^alpha) on scalar functions, its
componentwise diagonalization for separable alpha (potentials v_k, w_k),
closed-form one-component solution families, a right inverse of
D + M^alpha built from four sparse Dirichlet solves, and the
quaternionic-potential machinery for axial alpha (the C/J/Q/Pi operators
and the zero-divisor reductions to scalar equations).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as sla

from .algebra import Biquaternion, qmul
from .alpha import (AlphaSpec, AxialAlpha, SeparableAlpha, as_alpha_field,
                    gradient_alpha)
from .grid import (BQField, Grid3, laplacian, laplacian_wide, linf, nabla,
                   nabla_alpha, sample)

__all__ = [
    "riccati_residual",
    "gradient_alpha",
    "factorization_residual",
    "PotentialSet",
    "potentials",
    "build_solution",
    "ClosedFormFamily",
    "one_component_family",
    "RightInverseResult",
    "right_inverse",
    "AxialOperators",
    "axial_operators",
    "pi_map",
    "ReductionReport",
    "zero_divisor_reduction",
]

_INV_SIGNS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))


def riccati_residual(alpha: AlphaSpec, v, grid: Grid3,
                     derivatives: str = "auto") -> BQField:
    """The biquaternion field D(alpha) + alpha**2 + v.

    Zero exactly when alpha solves the quaternionic Riccati equation for v.
    The scalar slot carries the Riccati balance; the vector slot carries
    curl(alpha), whose vanishing is what forces alpha to be a gradient.
    derivatives: 'auto' uses exact callables when the spec has them,
    'analytic' requires them, 'numeric' forces central differences.
    """
    if derivatives not in ("auto", "analytic", "numeric"):
        raise ValueError("derivatives must be 'auto', 'analytic' or 'numeric'")
    dal = None
    if derivatives != "numeric":
        dal = alpha.d_alpha(grid)
        if dal is None and derivatives == "analytic":
            raise ValueError("alpha spec carries no exact derivative data")
    if dal is None:
        dal = alpha.d_alpha_numeric(grid)
    balance = alpha.alpha_sq(grid) + sample(grid, v)
    return dal + BQField.from_scalar(grid, balance)


def factorization_residual(alpha: AlphaSpec, phi, v, grid: Grid3,
                           riccati_tol: float = 1e-10):
    """Residual of (-lap + v) phi = (D + M^alpha)(D - M^alpha) phi on a
    scalar function phi.

    Checks the Riccati precondition first and raises when alpha does not
    solve it for v within riccati_tol (relative).  Returns
    (residual BQField, scale).
    """
    rres = riccati_residual(alpha, v, grid)
    scale0 = max(1.0, linf(alpha.alpha_sq(grid)), linf(sample(grid, v)))
    rel = rres.linf() / scale0
    if rel > riccati_tol:
        raise ValueError(
            f"Riccati precondition violated: relative residual {rel:.3e} > {riccati_tol:.1e}")
    phi_field = BQField.from_scalar(grid, phi)
    v_arr = sample(grid, v)
    lhs = -laplacian(phi_field) + v_arr * phi_field
    avec = alpha.vector_field(grid)
    inner = nabla(phi_field) - phi_field * avec
    rhs = nabla(inner) + inner * avec
    res = lhs - rhs
    return res, max(lhs.linf(), rhs.linf(), 1e-300)


# --------------------------------------------------------------------------
# separable alpha: the four scalar potentials
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PotentialSet:
    """The scalar potentials v_k = -D(alpha^(k)) - alpha**2 and
    w_k = +D(alpha^(k)) - alpha**2, k = 0..3.

    Their sum is -2*alpha**2 at every node: the derivative parts cancel.
    """

    v: tuple
    w: tuple
    alpha_sq: np.ndarray

    def pairing_defect(self) -> float:
        """max_k || v_k + w_k + 2*alpha**2 ||_inf (zero to rounding)."""
        worst = 0.0
        for vk, wk in zip(self.v, self.w):
            worst = max(worst, linf(vk + wk + 2.0 * self.alpha_sq))
        return worst


def _separable_derivs(alpha: SeparableAlpha, grid: Grid3):
    if alpha.has_exact_derivatives():
        return alpha.deriv_components(grid)
    from .grid import partial_deriv
    comps = alpha.components(grid)
    return tuple(partial_deriv(comps[k], grid, k) for k in range(3))


def potentials(alpha: AlphaSpec, grid: Grid3) -> PotentialSet:
    """The diagonalized potentials; requires separable alpha, since only
    then is every D(alpha^(k)) a scalar."""
    if not isinstance(alpha, SeparableAlpha):
        raise ValueError("potentials require separable alpha: D(alpha^(k)) is not scalar otherwise")
    d1, d2, d3 = _separable_derivs(alpha, grid)
    asq = alpha.alpha_sq(grid)
    v, w = [], []
    for k in range(4):
        s = _INV_SIGNS[k]
        d_inv = -(s[0] * d1 + s[1] * d2 + s[2] * d3)  # D(alpha^(k))
        v.append(-d_inv - asq)
        w.append(d_inv - asq)
    return PotentialSet(v=tuple(v), w=tuple(w), alpha_sq=asq)


def build_solution(g: BQField, alpha: AlphaSpec) -> BQField:
    """f = (D - M^alpha) g.

    When each component g_k solves (-lap + v_k) g_k = 0, f solves
    D f + f*alpha = 0 (at discretization accuracy when g is sampled);
    conversely a solution f of that form forces the g_k to solve their
    Schrodinger equations.
    """
    avec = as_alpha_field(alpha, g.grid)
    return nabla(g) - g * avec


# --------------------------------------------------------------------------
# closed-form one-component solutions
# --------------------------------------------------------------------------

# exponent signs of Lambda_j in f_k: f_k = exp(sum_j SIGNS[k][j] * Lambda_j)
_FAMILY_SIGNS = ((-1, -1, -1), (-1, 1, 1), (1, -1, 1), (1, 1, -1))


@dataclass(frozen=True)
class ClosedFormFamily:
    """One-component solutions f_k e_k of D f + f*alpha = 0 for separable
    alpha, from the antiderivatives Lambda_k of the factors.

    Each f_k has log-gradient -alpha^(k); the reciprocals phi_k = 1/f_k
    solve (-lap + v_k) phi_k = 0 and the f_k themselves solve
    (-lap + w_k) f_k = 0.  Any combination sum_k c_k f_k e_k solves the
    first-order equation.
    """

    alpha: SeparableAlpha

    def _lambdas(self, grid: Grid3):
        return self.alpha.antideriv_components(grid)

    def f_values(self, grid: Grid3, k: int) -> np.ndarray:
        l1, l2, l3 = self._lambdas(grid)
        s = _FAMILY_SIGNS[k]
        return np.exp(s[0] * l1 + s[1] * l2 + s[2] * l3)

    def phi_values(self, grid: Grid3, k: int) -> np.ndarray:
        return 1.0 / self.f_values(grid, k)

    def combination(self, grid: Grid3, coeffs) -> BQField:
        cs = np.asarray(coeffs, dtype=complex)
        return BQField(grid, np.stack([cs[k] * self.f_values(grid, k) for k in range(4)]))

    def log_gradient_defect(self, grid: Grid3, k: int) -> float:
        """|| grad(f_k)/f_k + alpha^(k) ||_inf via the exact derivative
        formula d_j f_k = s_j * a_j * f_k (pure sign algebra, so this
        measures only the wiring of the sign patterns)."""
        a = self.alpha.components(grid)
        s = _FAMILY_SIGNS[k]
        sig = _INV_SIGNS[k]
        worst = 0.0
        for j in range(3):
            worst = max(worst, linf(s[j] * a[j] + sig[j] * a[j]))
        return worst

    def equation_residual_analytic(self, grid: Grid3, coeffs):
        """D f + f*alpha evaluated with exact derivatives of the family,
        for f = sum_k c_k f_k e_k.  Returns (residual BQField, scale)."""
        cs = np.asarray(coeffs, dtype=complex)
        a = self.alpha.components(grid)
        basis = np.eye(4, dtype=complex)
        acc = np.zeros((4, *grid.shape), dtype=complex)
        fdata = np.zeros((4, *grid.shape), dtype=complex)
        for k in range(4):
            fk = cs[k] * self.f_values(grid, k)
            fdata[k] = fk
            s = _FAMILY_SIGNS[k]
            for j in range(3):
                ej_ek = qmul(basis[j + 1], basis[k])  # constant quaternion e_j e_k
                dj_fk = s[j] * a[j] * fk
                acc = acc + ej_ek.reshape(4, 1, 1, 1) * dj_fk[np.newaxis]
        f = BQField(grid, fdata)
        total = BQField(grid, acc) + f * self.alpha.vector_field(grid)
        scale = max(f.linf() * max(1.0, linf(np.stack(a))), 1e-300)
        return total, scale

    def schrodinger_residual_analytic(self, grid: Grid3, k: int, which: str = "v"):
        """(-lap + v_k) phi_k (which='v') or (-lap + w_k) f_k (which='w'),
        with the Laplacian evaluated from exact derivatives.  Returns
        (residual array, scale)."""
        if which not in ("v", "w"):
            raise ValueError("which must be 'v' or 'w'")
        a = self.alpha.components(grid)
        da = self.alpha.deriv_components(grid)
        pots = potentials(self.alpha, grid)
        s = _FAMILY_SIGNS[k]
        if which == "v":
            vals = self.phi_values(grid, k)
            # d_j phi = -s_j a_j phi  ->  d_j^2 phi = (-s_j a_j' + a_j^2) phi
            lap_factor = sum(-s[j] * da[j] + a[j] ** 2 for j in range(3))
            pot = pots.v[k]
        else:
            vals = self.f_values(grid, k)
            lap_factor = sum(s[j] * da[j] + a[j] ** 2 for j in range(3))
            pot = pots.w[k]
        res = -lap_factor * vals + pot * vals
        # scale by the magnitude of the terms entering the cancellation, not
        # by their (identically vanishing) sum
        gross = sum(np.abs(da[j]) + np.abs(a[j]) ** 2 for j in range(3)) * np.abs(vals)
        scale = max(linf(gross), linf(np.abs(pot) * np.abs(vals)), 1e-300)
        return res, scale


def one_component_family(alpha: AlphaSpec) -> ClosedFormFamily:
    if not isinstance(alpha, SeparableAlpha):
        raise ValueError("one-component closed forms require separable alpha")
    if not alpha.has_antiderivatives():
        raise ValueError("missing antiderivative for separable alpha")
    return ClosedFormFamily(alpha=alpha)


# --------------------------------------------------------------------------
# right inverse via four sparse Dirichlet solves
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RightInverseResult:
    field: BQField          # T f  (variant 'v') or the preimage g (variant 'w')
    u: BQField              # the four Schrodinger solves, zero on the boundary
    solver_residual: float  # worst relative linear-system residual


def _neg_laplacian_interior(grid: Grid3):
    """-lap on interior nodes with zero Dirichlet boundary, 7-point."""
    mats = []
    for n, h in zip(grid.shape, grid.spacing):
        nin = n - 2
        mats.append(sparse.diags([1.0, -2.0, 1.0], [-1, 0, 1],
                                 shape=(nin, nin), format="csc") / h ** 2)
    eyes = [sparse.identity(m.shape[0], format="csc") for m in mats]
    lap = (sparse.kron(sparse.kron(mats[0], eyes[1]), eyes[2])
           + sparse.kron(sparse.kron(eyes[0], mats[1]), eyes[2])
           + sparse.kron(sparse.kron(eyes[0], eyes[1]), mats[2]))
    return (-lap).tocsc()


def right_inverse(f: BQField, alpha: AlphaSpec, variant: str = "v",
                  solver_tol: float = 1e-10) -> RightInverseResult:
    """Apply a discrete right inverse of D + M^alpha (variant 'v') or
    produce a preimage under D - M^alpha (variant 'w').

    Per component k the sparse system (-lap + p_k) u_k = f_k is solved with
    zero Dirichlet boundary values (p = v for 'v', p = w for 'w'); then

        variant 'v':  T f = (D - M^alpha) u   with (D + M^alpha)(T f) = f,
        variant 'w':  g   = (D + M^alpha) u   with (D - M^alpha) g   = f,

    both up to the O(h^2) defect between the product of the two discrete
    first-order factors and the compact second-order operator.
    """
    if variant not in ("v", "w"):
        raise ValueError("variant must be 'v' or 'w'")
    grid = f.grid
    pots = potentials(alpha, grid)
    pot = pots.v if variant == "v" else pots.w
    base = _neg_laplacian_interior(grid)
    inner = tuple(slice(1, -1) for _ in range(3))
    nin = tuple(n - 2 for n in grid.shape)
    u = np.zeros((4, *grid.shape), dtype=complex)
    worst = 0.0
    # identical potentials (e.g. constant alpha) share one factorization,
    # and purely real potentials get the cheaper real-valued factorization
    factor_cache: dict = {}
    for k in range(4):
        pk = pot[k][inner].ravel()
        if not np.all(np.isfinite(pk)):
            raise ValueError("potential has invalid interior values")
        real_pot = bool(np.all(pk.imag == 0.0))
        key = (pk.tobytes(), real_pot)
        if key not in factor_cache:
            diag = pk.real if real_pot else pk.astype(complex)
            mat = (base + sparse.diags(diag)).tocsc()
            try:
                factor_cache[key] = (mat, sla.splu(mat))
            except RuntimeError as err:
                factor_cache[key] = (mat, None, err)
        entry = factor_cache[key]
        mat = entry[0]
        rhs = f.data[k][inner].ravel()
        if entry[1] is None:
            err = entry[2]
            sol, info = sla.lgmres(mat, rhs.astype(complex), rtol=solver_tol, atol=0.0)
            if info != 0:
                cond_hint = sla.onenormest(mat)
                raise ValueError(
                    "discrete operator singular or near-singular "
                    f"(1-norm estimate {cond_hint:.3e}): {err}") from err
        elif real_pot and np.any(rhs.imag != 0.0):
            # real factorization, complex data: two real back-substitutions
            sol = entry[1].solve(rhs.real) + 1j * entry[1].solve(rhs.imag)
        elif real_pot:
            sol = entry[1].solve(rhs.real)
        else:
            sol = entry[1].solve(rhs.astype(complex))
        rhs_scale = max(float(np.abs(rhs).max(initial=0.0)), 1e-300)
        resid = float(np.abs(mat @ sol - rhs).max(initial=0.0)) / rhs_scale
        worst = max(worst, resid)
        u[k][inner] = sol.reshape(nin)
    if worst > solver_tol:
        raise ValueError(f"linear solver residual {worst:.3e} exceeds {solver_tol:.1e}")
    u_field = BQField(grid, u)
    avec = alpha.vector_field(grid)
    if variant == "v":
        out = nabla(u_field) - u_field * avec
    else:
        out = nabla(u_field) + u_field * avec
    return RightInverseResult(field=out, u=u_field, solver_residual=worst)


# --------------------------------------------------------------------------
# axial alpha: quaternionic-potential operators
# --------------------------------------------------------------------------

def _c_map(u: BQField) -> BQField:
    # -e1 u e1: flips the signs of the e2 and e3 components
    data = u.data.copy()
    data[2] = -data[2]
    data[3] = -data[3]
    return BQField(u.grid, data)


def _j_map(u: BQField) -> BQField:
    # left multiplication by i e1
    u0, u1, u2, u3 = u.data
    return BQField(u.grid, np.stack([-1j * u1, 1j * u0, -1j * u3, 1j * u2]))


def pi_map(u: BQField) -> BQField:
    """The involution (1/2)(I + ie1 - C + ie1 C) with C u = -e1 u e1.

    For axial alpha whose varying component does not depend on x1, this
    maps solutions of the quaternionic Schrodinger equation (A + BC)u = 0
    one-to-one onto solutions of the diagonal '+' equation.
    """
    cu = _c_map(u)
    return 0.5 * (u + _j_map(u) - cu + _j_map(cu))


class AxialOperators:
    """Operator bundle for alpha = a1(x) e1 + a2 e2 + a3 e3.

    A u = -lap u - alpha**2 u, B u = -(D alpha) u (left multiplication),
    C u = -e1 u e1, J u = i e1 u, Q^± = (I ± JC)/2, and the second-order
    factor product D_alpha D_{-alpha} = A + BC.
    """

    def __init__(self, alpha: AxialAlpha, grid: Grid3):
        if not isinstance(alpha, AxialAlpha):
            raise ValueError("axial operators require axial alpha")
        self.alpha = alpha
        self.grid = grid
        self.alpha_sq = alpha.alpha_sq(grid)
        self.d_alpha1 = alpha.d_alpha1(grid)        # grad a1 as a vector field
        self.b_mult = -1.0 * alpha.d_alpha(grid)    # -(D alpha) = -(D a1) e1

    # pointwise maps
    def c(self, u: BQField) -> BQField:
        return _c_map(u)

    def j(self, u: BQField) -> BQField:
        return _j_map(u)

    def q(self, u: BQField, sign: int) -> BQField:
        return 0.5 * (u + float(sign) * _j_map(_c_map(u)))

    def a(self, u: BQField, wide: bool = False) -> BQField:
        lap = laplacian_wide(u) if wide else laplacian(u)
        return -lap - self.alpha_sq * u

    def b(self, u: BQField) -> BQField:
        return self.b_mult * u

    def abc(self, u: BQField, wide: bool = False) -> BQField:
        """(A + BC) u."""
        return self.a(u, wide) + self.b(_c_map(u))

    def schro(self, u: BQField, sign: int, wide: bool = False) -> BQField:
        """(A ± B J) u = -lap u - (alpha**2 ∓ i D a1) u, the diagonal pair."""
        return self.a(u, wide) + float(sign) * 1j * (self.d_alpha1 * u)

    def split(self, u: BQField):
        """u = Q^+ u + Q^- u (exact)."""
        return self.q(u, 1), self.q(u, -1)

    def split_identity_residual(self, u: BQField) -> float:
        """Relative defect of (A + BC)u = (A + BJ)Q^+u + (A - BJ)Q^-u,
        an exact pointwise operator identity."""
        lhs = self.abc(u)
        v, w = self.split(u)
        rhs = self.schro(v, 1) + self.schro(w, -1)
        return (lhs - rhs).linf() / max(lhs.linf(), 1e-300)

    def factored_product(self, u: BQField) -> BQField:
        """D_alpha D_{-alpha} u with the discrete first-order operator."""
        avec = self.alpha.vector_field(self.grid)
        inner = nabla(u) - u * avec
        return nabla(inner) + inner * avec

    def factq_residual(self, u: BQField, wide: bool = True):
        """Residual of the product identity D_alpha D_{-alpha} = A + BC.

        With wide=True the Laplacian inside A uses the doubled-spacing
        stencil that the squared first-order operator produces on its
        diagonal, which makes the identity exact for constant a1 (to
        rounding); for varying a1 the defect is the O(h^2) discrete
        product-rule error.  Returns (residual BQField, scale).
        """
        lhs = self.factored_product(u)
        rhs = self.abc(u, wide=wide)
        return lhs - rhs, max(lhs.linf(), rhs.linf(), 1e-300)


def axial_operators(alpha: AxialAlpha, grid: Grid3) -> AxialOperators:
    return AxialOperators(alpha, grid)


# --------------------------------------------------------------------------
# zero-divisor reductions of the diagonal '+' equation
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionReport:
    """Classification of the diagonal '+' equation for axial alpha.

    case 'i'   : (i D a1 - alpha**2) is a zero divisor; the ansatz
                 v = (i D a1 + alpha**2) f turns the equation into the
                 Laplace equation for the product v itself.
    case 'ii'  : D a1 is a zero divisor (null gradient); v = (D a1) f with
                 scalar equation (lap + alpha**2) f = 0 (exact closure for
                 constant D a1).
    case 'iii' : generic; with beta = i D a1 and beta0 a square root of
                 beta**2, v = (beta0 - beta) f with scalar equation
                 (lap + beta0 + alpha**2) f = 0.
    'degenerate' flags constant a1 (D a1 = 0): coupling only through
    alpha**2, already scalar.

    ``multiplier`` is the ansatz factor as a field; ``potential`` the
    scalar potential of the reduced equation written as
    (lap + potential) f = 0 (None for case 'i'); ``unknown`` records which
    function the closing scalar equation is for.
    """

    case: str
    multiplier: BQField | None
    potential: np.ndarray | None
    beta0: np.ndarray | None
    unknown: str


def zero_divisor_reduction(alpha: AxialAlpha, grid: Grid3,
                           tol: float = 1e-12) -> ReductionReport:
    if not isinstance(alpha, AxialAlpha):
        raise ValueError("zero-divisor reduction requires axial alpha")
    g1, g2, g3 = alpha.grad_a1_components(grid)
    asq = alpha.alpha_sq(grid)
    grad_sq = g1 ** 2 + g2 ** 2 + g3 ** 2          # <grad a1, grad a1>
    grad_mag = np.abs(g1) + np.abs(g2) + np.abs(g3)
    scale = float(np.nanmax(grad_mag, initial=0.0))
    if scale <= tol:
        return ReductionReport(case="degenerate", multiplier=None,
                               potential=None, beta0=None, unknown="f")

    def all_zero(arr, ref):
        vals = np.abs(arr)
        refs = tol * np.maximum(1.0, np.abs(ref))
        mask = np.isfinite(vals)
        return bool(np.all(vals[mask] <= refs[mask]))

    # case i: Q = i D a1 - alpha**2 in the zero-divisor set:
    #   Sc(Q)^2 = (alpha**2)^2 must equal Vec(Q)^2 = <grad a1, grad a1>
    if all_zero(asq ** 2 - grad_sq, asq ** 2 + grad_sq):
        mult = BQField.from_components(grid, asq, 1j * g1, 1j * g2, 1j * g3)
        return ReductionReport(case="i", multiplier=mult, potential=None,
                               beta0=None, unknown="v")
    # case ii: D a1 itself a zero divisor: <grad a1, grad a1> = 0
    if all_zero(grad_sq, grad_mag ** 2):
        mult = BQField.from_vector(grid, g1, g2, g3)
        return ReductionReport(case="ii", multiplier=mult, potential=asq,
                               beta0=None, unknown="f")
    # case iii: beta = i D a1, beta0**2 = beta**2 = <grad a1, grad a1>
    beta0 = np.sqrt(grad_sq + 0j)
    mult = BQField.from_components(grid, beta0, -1j * g1, -1j * g2, -1j * g3)
    return ReductionReport(case="iii", multiplier=mult,
                           potential=beta0 + asq, beta0=beta0, unknown="f")
