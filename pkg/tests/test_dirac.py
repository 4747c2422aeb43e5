import math

import numpy as np
import pytest

from biquat.algebra import Biquaternion, E0, E1
from biquat.dirac import (DiracParams, GammaSet, SpinorField, apply_dirac,
                          bq_to_spinor, equivalent_alpha, free_plane_wave,
                          intertwining_residual, manufactured_split_solution,
                          pseudoscalar_identity_residual, pseudoscalar_split,
                          spinor_to_bq)
from biquat.grid import BQField, Grid3, linf, nabla, nabla_alpha

TOL = 1e-12
GAM = GammaSet.standard()


def sym_grid(n=9):
    return Grid3.box((1.0, 1.0, -0.5), (2.0, 2.0, 0.5), n)


def smooth_spinor(grid, seed=0, modes=3):
    rng = np.random.default_rng(seed)
    x1, x2, x3 = grid.mesh()
    data = np.zeros((4, *grid.shape), dtype=complex)
    for comp in range(4):
        for _ in range(modes):
            kv = rng.integers(-2, 3, size=3)
            c = complex(rng.normal(), rng.normal())
            data[comp] += c * np.exp(1j * (kv[0] * x1 + kv[1] * x2 + kv[2] * x3))
    return SpinorField(grid, data)


def test_gamma_relations():
    gs = (GAM.g0, GAM.g1, GAM.g2, GAM.g3)
    eye = np.eye(4)
    for a in range(4):
        for b in range(4):
            anti = gs[a] @ gs[b] + gs[b] @ gs[a]
            if a == b == 0:
                want = 2 * eye
            elif a == b:
                want = -2 * eye
            else:
                want = 0 * eye
            assert np.abs(anti - want).max() <= TOL
    assert np.abs(GAM.g5 - 1j * GAM.g0 @ GAM.g1 @ GAM.g2 @ GAM.g3).max() <= TOL


def test_transform_unit_spinor():
    g = sym_grid()
    phi = SpinorField.from_components(g, 1.0, 0.0, 0.0, 0.0)
    want = BQField.from_components(g, 0.0, 0.5j, -0.5, 0.0)
    assert (spinor_to_bq(phi) - want).linf() <= TOL


def test_transform_roundtrip_and_linearity():
    g = sym_grid()
    phi = smooth_spinor(g, 1)
    psi = smooth_spinor(g, 2)
    assert (bq_to_spinor(spinor_to_bq(phi)) - phi).linf() <= TOL * phi.linf()
    f = BQField(g, smooth_spinor(g, 3).data)
    assert (spinor_to_bq(bq_to_spinor(f)) - f).linf() <= TOL * f.linf()
    lhs = spinor_to_bq(2j * phi + psi)
    rhs = 2j * spinor_to_bq(phi) + spinor_to_bq(psi)
    assert (lhs - rhs).linf() <= TOL * max(1.0, lhs.linf())


def test_transform_requires_symmetric_grid():
    g = Grid3.box(1.0, 2.0, 9)
    with pytest.raises(ValueError, match="not node-exact"):
        spinor_to_bq(SpinorField.zeros(g))


def test_dirac_zero_potential_kinds_agree():
    g = sym_grid()
    phi = smooth_spinor(g, 4)
    base = dict(omega=0.7, m=1.3, phi=None)
    out_sc = apply_dirac(phi, DiracParams(kind="scalar", **base), GAM)
    out_el = apply_dirac(phi, DiracParams(kind="electric", **base), GAM)
    assert np.nanmax(np.abs(out_sc.data - out_el.data)) <= TOL * out_sc.linf()


def test_dirac_constant_field_massless():
    g = sym_grid()
    phi = SpinorField.from_components(g, 1.0, 2.0, -1.0, 0.5)
    out = apply_dirac(phi, DiracParams(omega=0.0, m=0.0, kind="scalar", phi=None), GAM)
    assert out.linf() <= TOL


def test_plane_wave_residual_second_order():
    errs = {}
    for n in (9, 17):
        g = sym_grid(n)
        wave, params = free_plane_wave(g, (1.0, -0.5, 0.7), 1.3, GAM)
        out = apply_dirac(wave, params, GAM)
        errs[n] = out.linf() / wave.linf()
    assert 1.7 <= math.log(errs[9] / errs[17], 2) <= 2.3


def test_equivalent_alpha_scalar_printed_form():
    g = sym_grid()
    p = DiracParams(omega=1.0, m=2.0, kind="scalar", phi=None)
    af = equivalent_alpha(p, g)
    want = BQField.constant(g, Biquaternion.vector(-1j, -2.0, 0.0))
    assert (af - want).linf() <= TOL


def test_equivalent_alpha_electric_matches_scalar_at_zero_potential():
    g = sym_grid()
    p_sc = DiracParams(omega=0.7, m=1.3, kind="scalar", phi=None)
    p_el = DiracParams(omega=0.7, m=1.3, kind="electric", phi=None)
    d = equivalent_alpha(p_sc, g) - equivalent_alpha(p_el, g)
    assert d.linf() <= TOL


def test_equivalent_alpha_pseudoscalar():
    g = sym_grid()
    p = DiracParams(omega=1.0, m=2.0, kind="pseudoscalar", phi=1.0)
    nu, beta = equivalent_alpha(p, g)
    assert np.abs(nu - (-1j)).max() <= TOL
    assert (beta - Biquaternion.vector(-1j, -2.0, 0.0)).abs_max() <= TOL


def test_equivalent_alpha_potential_enters_reflected():
    g = sym_grid()
    x1, x2, x3 = g.mesh()
    p = DiracParams(omega=0.0, m=0.0, kind="scalar", phi=lambda a, b, c: c)
    af = equivalent_alpha(p, g)
    # e2 slot carries -(m + phi~) = +x3 after reflection
    assert linf(af.data[2] - x3) <= TOL


@pytest.mark.parametrize("kind", ["scalar", "electric"])
def test_intertwining_residual_rounding_level(kind):
    g = sym_grid()
    # x3-asymmetric potential so the reflection convention actually matters
    pot = lambda a, b, c: np.cos(a) + 0.5 * c + 0.3 * c * b
    params = DiracParams(omega=0.7, m=1.3, kind=kind, phi=pot)
    worst = 0.0
    for seed in range(20):
        phi = smooth_spinor(g, 100 + seed)
        res, scale = intertwining_residual(phi, params, GAM)
        worst = max(worst, res.linf() / max(scale, 1.0))
    assert worst <= TOL


def test_intertwining_zero_field():
    g = sym_grid()
    res, _ = intertwining_residual(
        SpinorField.zeros(g), DiracParams(omega=0.7, m=1.3, kind="scalar", phi=None), GAM)
    assert res.linf() == 0.0


def test_intertwining_rejects_pseudoscalar():
    g = sym_grid()
    with pytest.raises(ValueError, match="pseudoscalar"):
        intertwining_residual(SpinorField.zeros(g),
                              DiracParams(omega=0.7, m=1.3, kind="pseudoscalar", phi=None),
                              GAM)


def test_solution_equivalence_through_transform():
    # a null solution of the free operator maps to a null solution of the
    # first-order quaternionic equation, and residual norms track each other
    g = sym_grid(13)
    wave, params = free_plane_wave(g, (1.0, 0.0, 0.5), 1.3, GAM)
    f = spinor_to_bq(wave)
    alpha = equivalent_alpha(params, g)
    quat_res = nabla_alpha(f, alpha).linf() / f.linf()
    dirac_res = apply_dirac(wave, params, GAM).linf() / wave.linf()
    assert quat_res <= 10 * dirac_res + 1e-10
    assert dirac_res <= 1e-2  # discretization level on this grid


# ------------------------------------------------------------------
# pseudoscalar splitting
# ------------------------------------------------------------------

def test_pseudoscalar_split_recombines_exactly():
    g = sym_grid()
    f = BQField(g, smooth_spinor(g, 11).data)
    beta = Biquaternion.vector(-0.7j, -1.3, 0.0)
    split = pseudoscalar_split(f, 0.4 - 0.2j, beta)
    assert (split.recombined() - f).linf() <= TOL * f.linf()


def test_pseudoscalar_split_of_unit_scalar():
    g = sym_grid()
    f = BQField.constant(g, E0)
    beta = Biquaternion.vector(-0.7j, -1.3, 0.0)
    split = pseudoscalar_split(f, 0.1, beta)
    # parts are e0 times the quarter multipliers s_b * p_a
    from biquat.algebra import split_projectors
    pair = split_projectors(beta)
    p_plus = Biquaternion(0.5, 0.5j, 0, 0)
    want = pair.plus * p_plus
    assert (split.pp - BQField.constant(g, want)).linf() <= TOL


def test_pseudoscalar_operator_identity_exact():
    g = sym_grid()
    f = BQField(g, smooth_spinor(g, 12).data)
    beta = Biquaternion.vector(-0.7j, -1.3, 0.0)
    x3 = g.mesh()[2]
    nu = 0.2 * x3 + 0.1j  # a genuine scalar field
    res, scale = pseudoscalar_identity_residual(f, nu, beta)
    assert res.linf() <= TOL * scale


def test_pseudoscalar_split_rejects_zero_divisor_beta():
    g = sym_grid()
    f = BQField.zeros(g)
    with pytest.raises(ValueError, match="zero divisor"):
        pseudoscalar_split(f, 0.0, Biquaternion.vector(-1j, -1.0, 0.0))


def test_manufactured_solution_and_part_equations():
    beta = Biquaternion.vector(-0.7j, -1.3, 0.0)
    nu = 0.4 - 0.2j
    errs = {key: {} for key in ((1, 1), (-1, 1), (1, -1), (-1, -1))}
    full = {}
    for n in (9, 17):
        g = sym_grid(n)
        f = manufactured_split_solution(g, nu, beta, coeffs=(1.0, 0.5, 0.8, 1.2))
        res = nabla(f) + nu * f + f * beta
        full[n] = res.linf() / f.linf()
        split = pseudoscalar_split(f, nu, beta)
        assert (split.recombined() - f).linf() <= TOL * f.linf()
        for key in errs:
            errs[key][n] = split.part_residual(*key).linf() / f.linf()
    assert 1.7 <= math.log(full[9] / full[17], 2) <= 2.3
    for key in errs:
        assert 1.7 <= math.log(errs[key][9] / errs[key][17], 2) <= 2.3
