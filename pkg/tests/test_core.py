from __future__ import annotations

import random
from fractions import Fraction

import pytest

from weylext.core import (
    GF, QQ, GradedDims, Matrix, NotAComplexError, field_from_spec, homology_dim, koszul_sign,
    rank_and_kernel, shuffle_sign, sparse_rank,
)


def test_prime_field_arithmetic():
    F = GF(7)
    assert F(10) == 3
    assert F(Fraction(1, 2)) == 4
    assert F(3 * F.inv(3)) == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises(ValueError):
        GF(1)


def test_field_from_spec():
    assert field_from_spec("rational") is QQ
    assert field_from_spec("prime", 5) == GF(5)
    assert field_from_spec(3) == GF(3)
    with pytest.raises(ValueError):
        field_from_spec("prime")


def test_koszul_and_shuffle_signs():
    assert koszul_sign(1, 1) == -1
    assert koszul_sign(2, 1) == 1
    # passing (a1, a2) past (b1, b2): a2 crosses b1 only
    assert shuffle_sign([0, 1], [1, 0]) == -1
    assert shuffle_sign([1, 0], [1, 0]) == 1
    assert shuffle_sign([1, 1], [1, 1]) == -1
    with pytest.raises(ValueError):
        shuffle_sign([1], [1, 0])


def test_graded_dims_algebra():
    a = GradedDims({(1, 1, 0, 0): 1, (1, 2, 1, 0): 2, (2, 2, 0, 0): 0})
    assert (2, 2, 0, 0) not in a
    assert a.total() == 3
    assert a.shift(1, -1)[(1, 2, 2, -1)] == 2
    assert a.transpose()[(2, 1, -1, 0)] == 2
    assert (a + a).total() == 6
    assert a.sectors() == {(1, 1): 1, (1, 2): 2}
    assert a.diff(a) == []
    assert a.diff(GradedDims()) == [((1, 1, 0, 0), 1, 0), ((1, 2, 1, 0), 2, 0)]


def test_rank_and_kernel():
    m = Matrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    r, ker = rank_and_kernel(m)
    assert r == 2
    assert len(ker) == 1
    assert all(x == 0 for x in m.apply(ker[0]))


def test_rank_depends_on_characteristic():
    m = Matrix.from_rows([[1, 1], [1, -1]])
    assert rank_and_kernel(m)[0] == 2
    assert rank_and_kernel(m.over(GF(2)))[0] == 1
    assert sparse_rank(m.sparse_rows(), GF(2)) == 1


def test_homology_of_short_complex():
    # triangle boundary: C1 -> C0 with one-dimensional H0
    d1 = Matrix.from_rows([[-1, 0, 1], [1, -1, 0], [0, 1, -1]])
    zero_in = Matrix.zeros(3, 0)
    assert homology_dim(d1, Matrix.zeros(0, 3)) == 1
    assert homology_dim(zero_in, d1) == 1


def test_not_a_complex():
    d = Matrix.from_rows([[1]])
    with pytest.raises(NotAComplexError):
        homology_dim(d, d)


def _random_invertible(n, rng, field):
    while True:
        m = Matrix.from_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)], field)
        if rank_and_kernel(m)[0] == n:
            return m


def _inverse(m: Matrix) -> Matrix:
    n = m.rows
    aug = Matrix.from_rows([list(m.entries[r]) + [1 if c == r else 0 for c in range(n)] for r in range(n)], m.field)
    rows = [list(r) for r in aug.entries]
    F = m.field
    for c in range(n):
        piv = next(r for r in range(c, n) if rows[r][c])
        rows[c], rows[piv] = rows[piv], rows[c]
        inv = F.inv(rows[c][c])
        rows[c] = [F(x * inv) for x in rows[c]]
        for r in range(n):
            if r != c and rows[r][c]:
                f = rows[r][c]
                rows[r] = [F(x - f * y) for x, y in zip(rows[r], rows[c])]
    return Matrix.from_rows([row[n:] for row in rows], F)


@pytest.mark.parametrize("field", [QQ, GF(3)], ids=["QQ", "GF3"])
def test_homology_invariant_under_change_of_basis(field):
    rng = random.Random(7)
    for _ in range(20):
        a, b, c = rng.randint(1, 4), rng.randint(1, 5), rng.randint(1, 4)
        # build d_out . d_in = 0 by factoring through a kernel
        d_out = Matrix.from_rows([[rng.randint(-1, 1) for _ in range(b)] for _ in range(c)], field)
        _, ker = rank_and_kernel(d_out)
        cols = [{r: x for r, x in enumerate(rng.choice(ker)) if x} if ker else {} for _ in range(a)]
        d_in = Matrix.from_columns(cols, b, field)
        h = homology_dim(d_in, d_out)
        g = _random_invertible(b, rng, field)
        assert homology_dim(g @ d_in, d_out @ _inverse(g)) == h
