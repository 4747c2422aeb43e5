import math

import numpy as np
import pytest

from biquat.algebra import Biquaternion
from biquat.alpha import reciprocal_alpha
from biquat.factorization import one_component_family
from biquat.grid import BQField, Grid3, laplacian, linf, nabla
from biquat.physics import (EMField, MediumFields, beltrami_field,
                            circular_wave, diagonalize_em, forcefree_split,
                            medium_alpha, static_maxwell_residual,
                            undiagonalize_em)

TOL = 1e-12


def box(n=9):
    return Grid3.box(1.0, 2.0, n)


def smooth_field(grid, seed=0):
    rng = np.random.default_rng(seed)
    x1, x2, x3 = grid.mesh()
    data = np.zeros((4, *grid.shape), dtype=complex)
    for comp in range(4):
        for _ in range(3):
            kv = rng.integers(-2, 3, size=3)
            c = complex(rng.normal(), rng.normal())
            data[comp] += c * np.exp(1j * (kv[0] * x1 + kv[1] * x2 + kv[2] * x3))
    return BQField(grid, data)


def test_medium_alpha_constant_vanishes():
    g = box()
    med = MediumFields(eps=3.0, mu=2.0)
    assert medium_alpha(med, g, "eps").linf() <= TOL
    assert medium_alpha(med, g, "mu").linf() <= TOL


def test_medium_alpha_exponential_closed_form():
    g = box()
    med = MediumFields(
        eps=lambda a, b, c: np.exp(2.0 * a), mu=1.0,
        separable_eps=((lambda x: np.exp(2.0 * x), lambda x: 2.0 * np.exp(2.0 * x)),
                       (lambda x: np.ones_like(x), lambda x: np.zeros_like(x)),
                       (lambda x: np.ones_like(x), lambda x: np.zeros_like(x))))
    med.check_separable(g)
    closed = medium_alpha(med, g, "eps", method="closed")
    want = BQField.constant(g, Biquaternion.vector(1.0, 0.0, 0.0))
    assert (closed - want).linf() <= TOL
    # numeric gradient agrees at second order
    errs = {}
    for n in (17, 33):
        gg = box(n)
        errs[n] = (medium_alpha(med, gg, "eps", method="numeric")
                   - medium_alpha(med, gg, "eps", method="closed")).linf()
    assert 1.7 <= math.log(errs[17] / errs[33], 2) <= 2.3


def test_medium_alpha_separable_formula():
    g = box()
    med = MediumFields(
        eps=lambda a, b, c: (a * b * c) ** 2, mu=1.0,
        separable_eps=tuple((lambda x: x ** 2, lambda x: 2.0 * x) for _ in range(3)))
    med.check_separable(g)
    closed = medium_alpha(med, g, "eps", method="closed")
    x1, x2, x3 = g.mesh()
    # components (d_k eps_k)/(2 eps_k) = 1/x_k
    for k, xk in enumerate((x1, x2, x3)):
        assert linf(closed.data[k + 1] - 1.0 / xk) <= TOL


def test_medium_validation():
    g = box()
    with pytest.raises(ValueError, match="positive"):
        MediumFields(eps=lambda a, b, c: a - 1.5, mu=1.0).eps_values(g)
    bad = MediumFields(eps=lambda a, b, c: a * b, mu=1.0,
                       separable_eps=tuple((lambda x: x ** 2, lambda x: 2 * x)
                                           for _ in range(3)))
    with pytest.raises(ValueError, match="separable"):
        bad.check_separable(g)
    with pytest.raises(ValueError, match="closed form"):
        medium_alpha(MediumFields(eps=1.0, mu=1.0), g, "eps", method="closed")


def test_em_field_requires_vectorial():
    g = box()
    v = BQField.from_vector(g, 1.0, 0.0, 0.0)
    s = BQField.from_scalar(g, 1.0)
    EMField(e=v, h=v)
    with pytest.raises(ValueError, match="vectorial"):
        EMField(e=s, h=v)


def test_static_residual_constant_field():
    g = box()
    med = MediumFields(eps=2.0, mu=1.5)
    e_const = BQField.constant(g, Biquaternion.vector(1.0, -2.0, 0.5))
    assert static_maxwell_residual(e_const, med, which="E").linf() <= TOL
    assert static_maxwell_residual(e_const, med, which="H").linf() <= TOL


def test_static_residual_manufactured_solution():
    # separable eps = (x1 x2 x3)^2 has coefficient vector equal to the
    # reciprocal alpha, whose vector one-component solutions are sourceless
    # static fields
    med = MediumFields(
        eps=lambda a, b, c: (a * b * c) ** 2, mu=1.0,
        separable_eps=tuple((lambda x: x ** 2, lambda x: 2.0 * x) for _ in range(3)))
    from biquat.harness import _aligned_window_bounds, _windowed
    alf = reciprocal_alpha((0.0, 0.0, 0.0))
    fam = one_component_family(alf)
    bounds = _aligned_window_bounds(box(17), 0.15)
    errs = {}
    for n in (17, 33):
        g = box(n)
        e_man = BQField.from_vector(g, fam.f_values(g, 1), fam.f_values(g, 2),
                                    fam.f_values(g, 3))
        res = _windowed(static_maxwell_residual(e_man, med, which="E"), bounds)
        errs[n] = res.linf() / e_man.linf()
    assert 1.7 <= math.log(errs[17] / errs[33], 2) <= 2.3


def test_static_manufactured_source_cancels_scalar_slot():
    g = box()
    med = MediumFields(eps=2.0, mu=1.0)
    e = smooth_field(g, 1).vector_part()
    bare = static_maxwell_residual(e, med, which="E")
    rho = -np.sqrt(med.eps_values(g)) * bare.scalar
    cancelled = static_maxwell_residual(e, med, which="E", rho=rho)
    assert linf(np.nan_to_num(cancelled.scalar, nan=0.0)) <= TOL * bare.linf()


def test_static_current_term():
    g = box()
    med = MediumFields(eps=1.0, mu=4.0)
    h_const = BQField.constant(g, Biquaternion.vector(0.0, 1.0, 0.0))
    # (D + M^mu)H = 0 here, so the residual is exactly -sqrt(mu) j
    j = (lambda a, b, c: np.ones_like(a), 0.0, 0.0)
    res = static_maxwell_residual(h_const, med, which="H", current=j)
    assert linf(res.data[1] + 2.0) <= TOL


def test_diagonalization_roundtrip():
    g = box()
    e = smooth_field(g, 2).vector_part()
    h = smooth_field(g, 3).vector_part()
    phi, psi = diagonalize_em(e, h)
    e2, h2 = undiagonalize_em(phi, psi)
    assert (e2 - e).linf() <= TOL * e.linf()
    assert (h2 - h).linf() <= TOL * max(1.0, h.linf())


def test_slow_medium_wave_pair_and_helmholtz():
    nu = 1.5
    errs_pair = {}
    errs_helm = {}
    for n in (17, 33):
        g = box(n)
        b = circular_wave(g, nu, -1)
        e, h = b, 1j * b
        # D E = i nu H and D H = -i nu E at discretization accuracy
        r1 = nabla(e) - 1j * nu * h
        r2 = nabla(h) + 1j * nu * e
        errs_pair[n] = max(r1.linf(), r2.linf())
        phi, psi = diagonalize_em(e, h)
        assert phi.linf() <= TOL  # this helicity puts everything in psi
        r3 = nabla(psi) + nu * psi
        r4 = laplacian(psi) + nu ** 2 * psi
        errs_helm[n] = max(r3.linf(), r4.linf())
    assert 1.7 <= math.log(errs_pair[17] / errs_pair[33], 2) <= 2.3
    assert 1.7 <= math.log(errs_helm[17] / errs_helm[33], 2) <= 2.3


def test_forcefree_split_identity_random():
    g = box()
    f = smooth_field(g, 4)
    x1 = g.mesh()[0]
    nu = np.sin(x1) + 0.2j * x1
    fp, fm, resid = forcefree_split(f, nu)
    assert resid <= TOL
    assert (fp + fm - f).linf() <= TOL * f.linf()


def test_forcefree_accepts_nonzero_scalar_part():
    g = box()
    f = smooth_field(g, 5)
    assert linf(f.scalar) > 0.1
    _, _, resid = forcefree_split(f, 0.7)
    assert resid <= TOL


def test_beltrami_fixture():
    nu = 1.5
    errs = {}
    for n in (17, 33):
        g = box(n)
        b = beltrami_field(g, nu)
        res = nabla(b) + nu * b
        # div part is exactly zero: the components vary along x1 only
        assert linf(np.nan_to_num(res.scalar, nan=0.0)) <= TOL
        errs[n] = res.linf()
    assert 1.7 <= math.log(errs[17] / errs[33], 2) <= 2.3


def test_circular_wave_sign_validation():
    with pytest.raises(ValueError):
        circular_wave(box(), 1.0, 0)
