from __future__ import annotations

import pytest

from weylext.schur import (
    MU_ZERO, MuMonomial, associativity_violations, build_mu, closure_violations, embed, mu_multiply, weight,
)
from weylext.upsilon import unit_point


@pytest.mark.parametrize("p,q,dim", [(2, 1, 4), (3, 1, 9), (2, 2, 18), (3, 2, 107), (2, 3, 106)])
def test_dimensions(p, q, dim):
    assert build_mu(p, q).dim == dim


def test_p5_q2_dimension(mu52):
    assert mu52.dim == 1169
    assert len(mu52.idempotents) == 25


def test_basis_has_weight_zero(mu32):
    assert all(not any(weight(m)) for m in mu32.basis)
    assert all(m.factors[0].i == 0 for m in mu32.basis)
    assert mu32.ranges == [(0, 0), (-2, 1)]


def test_idempotents_cover_vertices(mu32):
    assert sorted(mu32.idempotents) == mu32.vertices
    assert len(mu32.vertices) == 9


def test_closure_and_associativity(mu32):
    assert closure_violations(mu32) == []
    n, bad = associativity_violations(mu32)
    assert n == 2891 and bad == []


def test_random_associativity_p5(mu52):
    n, bad = associativity_violations(mu52, samples=2000, seed=3)
    assert n == 2000 and bad == []


def test_k_max_cuts_basis():
    b = build_mu(3, 2, k_max=1)
    assert all(m.k <= 1 for m in b.basis)
    assert b.dim < 107
    assert closure_violations(b) == []


def test_products_respect_vertices(mu32):
    e = mu32.idempotents
    for m in mu32.basis:
        assert mu32.multiply(e[m.left], m) == (1, m)
        assert mu32.multiply(m, e[m.right]) == (1, m)
        other = next(v for v in mu32.vertices if v != m.right)
        assert mu32.multiply(m, e[other]) == MU_ZERO


def test_embedding_is_multiplicative():
    small, big = build_mu(3, 1), build_mu(3, 2)
    for x in small.basis:
        assert embed(x) in big
        for y in small.basis:
            s1, z1 = mu_multiply(3, x, y)
            s2, z2 = mu_multiply(3, embed(x), embed(y))
            assert s1 == s2
            if s1:
                assert embed(z1) == z2


def test_mismatched_lengths_rejected():
    with pytest.raises(ValueError):
        mu_multiply(3, MuMonomial((unit_point(1),), 0), MuMonomial((unit_point(1), unit_point(1)), 0))
    with pytest.raises(ValueError):
        build_mu(3, 0)


def test_json_round_numbers(mu32):
    body = mu32.to_json(products=True)
    assert len(body["basis"]) == 107
    assert len(body["vertices"]) == 9
    assert all(len(row) == 4 for row in body["products"])


def test_no_degree_two_hom_from_3_to_1(mu32):
    def pick(left, right):
        return [m for m in mu32.basis if (m.left, m.right, m.j, m.k) == (left, right, 1, 0)]

    (a,), (b,) = pick((1, 1), (1, 2)), pick((1, 2), (1, 3))
    assert mu32.multiply(a, b) == MU_ZERO


def test_weight_detects_broken_chain():
    from weylext.upsilon import LatticePoint7

    broken = MuMonomial((unit_point(1), LatticePoint7(1, -1, 0, 1, 0, 1, 3)), 0)
    assert weight(broken)[0] != 0
    assert weight(MuMonomial((unit_point(1), unit_point(2)), 0)) == (0, 0)
