from __future__ import annotations

import pytest

from weylext.core import QQ, GF
from weylext.psi import (
    PsiMonomial, arrow, build_Ll, build_Lr, build_M, build_Mbar, build_V, dual, idempotent, psi_basis,
    psi_graded_dims, psi_multiply, psi_zero, regular_bimodule, shift, signed_rescaling_is_isomorphism,
    tensor_over_psi, twist, x_exponent_signs, xi_count_signs,
)


def test_psi_dimension_and_degrees():
    assert len(psi_basis(3)) == 9
    assert psi_graded_dims(3).total() == 9
    assert arrow("x", 2).j == -1 and arrow("x", 2).k == 1
    assert arrow("xi", 2).j == 1 and arrow("xi", 2).k == 0


def test_psi_relations():
    x, xi = arrow("x", 3), arrow("xi", 2)
    assert psi_multiply(arrow("xi", 3), arrow("xi", 2)) is None
    assert psi_multiply(x, xi) == psi_multiply(arrow("xi", 3), arrow("x", 2))
    # x from 3 to 2 is e_2 x e_3
    assert psi_multiply(idempotent(2), x) == x
    assert psi_multiply(x, idempotent(3)) == x
    assert psi_multiply(idempotent(3), x) is None


def test_x_power_past_the_quiver_vanishes():
    assert not PsiMonomial(2, 2, 0).is_valid(3)
    assert PsiMonomial(3, 2, 0).is_valid(3)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_builders_pass_audit(p):
    for b in (regular_bimodule(p), build_M(p), build_Mbar(p), dual(build_M(p)), psi_zero(p, sigma=True)):
        assert b.audit() == []


def test_dimensions_of_M():
    assert build_M(3).dim == 2 * 9
    assert build_Mbar(3).dim == 2 * 9 - 1
    assert build_Ll(3).dim == build_Lr(3).dim == 6


def test_dual_is_involutive():
    M = build_M(3)
    assert dual(dual(M)).graded_dims() == M.graded_dims()


def test_shift_moves_degrees():
    M = build_M(3)
    assert shift(M, 1, 2).graded_dims() == M.graded_dims().shift(1, 2)


def test_tau_isomorphism_needs_xi_count_sign():
    M = build_M(3)
    tt = twist(twist(M, "left", "tau"), "right", "tau")
    assert signed_rescaling_is_isomorphism(tt, M, xi_count_signs(M))
    assert not signed_rescaling_is_isomorphism(tt, M, x_exponent_signs(M))


def test_M_tensor_square_shift_over_both_fields():
    p = 3
    M = build_M(p)
    want = M.graded_dims().shift(-p - 1, p - 1)
    assert tensor_over_psi(M, M, QQ).graded_dims() == want
    assert tensor_over_psi(M, M, GF(p)).graded_dims() == want
    # the shift <1-p> does not fit
    assert tensor_over_psi(M, M).graded_dims() != M.graded_dims().shift(1 - p, p - 1)


def test_sigma_mismatch_is_rejected():
    with pytest.raises(ValueError):
        tensor_over_psi(psi_zero(3, sigma=True), build_M(3))


def test_V_bimodules():
    assert build_V(1).dim == 8
    assert build_V(2).dim == 12
    assert build_V(2).audit() == []
    with pytest.raises(ValueError):
        build_V(1, p=3)
