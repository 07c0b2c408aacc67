from __future__ import annotations

from collections import Counter

import pytest

from weylext import report
from weylext.schur import build_mu


def _v(n):
    return ((n - 1) // 3 + 1, (n - 1) % 3 + 1)


def test_first_columns(mu32):
    table = report.cartan(mu32)

    def column(m):
        return Counter({(report.row_major_alias(3, 2)[u], j, k): n
                        for (u, v), e in table.items() if v == _v(m) for (j, k), n in e.items()})

    assert column(1) == Counter({(1, 0, 0): 1})
    assert column(2) == Counter({(2, 0, 0): 1, (1, 1, 0): 1, (1, -1, 1): 1})
    assert column(3) == Counter({(3, 0, 0): 1, (2, 1, 0): 1, (2, -1, 1): 1, (1, 0, 1): 1, (1, -2, 2): 1})


def test_cartan_sums_to_dimension(mu32):
    assert sum(sum(e.values()) for e in report.cartan(mu32).values()) == mu32.dim


def test_ext_dims(mu32):
    assert report.ext_dim(mu32, _v(2), _v(1), 0) == 1
    assert report.ext_dim(mu32, _v(2), _v(1), 0, j=1) == 1
    assert report.ext_dim(mu32, _v(2), _v(1), 1, j=-1) == 1
    assert [report.ext_dim(mu32, _v(1), _v(1), k) for k in range(4)] == [1, 0, 0, 0]


def test_poincare(mu32):
    assert report.format_poincare(report.poincare(mu32, _v(1), _v(2))) == "x + x^-1*y"
    for v in mu32.vertices:
        assert report.poincare(mu32, v, v).get((0, 0)) == 1
    b = build_mu(2, 1)
    assert sum(sum(report.poincare(b, u, v).values()) for u in b.vertices for v in b.vertices) == b.dim
    assert report.format_poincare({}) == "0"


def test_quiver_q1():
    g = report.quiver(build_mu(3, 1))
    assert Counter(g.arrows) == Counter({((2,), (1,), 1, 0): 1, ((2,), (1,), -1, 1): 1,
                                        ((3,), (2,), 1, 0): 1, ((3,), (2,), -1, 1): 1})


def test_quiver_has_no_degree_zero_loops(mu32):
    g = report.quiver(mu32)
    assert not [a for a in g.arrows if a[0] == a[1] and a[2:] == (0, 0)]
    assert len(g.arrows) == 24


def test_quiver_arrows_inside_cartan(mu32):
    table = report.cartan(mu32)
    for (s, t, j, k), n in report.quiver(mu32).multiset().items():
        assert table[(t, s)][(j, k)] >= n


def test_reference_match_unique(mu32):
    res = report.match_reference(mu32, report.load_reference())
    assert res.ok
    assert res.alias == report.row_major_alias(3, 2)


def test_raw_reference_differs_by_the_erratum(mu32):
    raw = report.load_reference(apply_errata=False)
    res = report.match_reference(mu32, raw)
    assert not res.ok
    assert res.cartan_diff == [(7, 2, -7, 5, 0, 1), (7, 2, -6, 5, 1, 0)]
    assert res.quiver_diff == []


def test_perturbed_reference_is_pinpointed(mu32):
    bad = report.load_reference().perturbed(3, 1, 0, 1, 1)
    res = report.match_reference(mu32, bad)
    assert not res.ok
    assert (3, 1, 0, 1, 0, 1) in res.cartan_diff


def test_corner_reference_for_q1(mu32):
    small = build_mu(3, 1)
    alias2 = report.row_major_alias(3, 2)
    derived = report.reference_from_block(mu32, alias2)
    corner = {alias2[(1, s)]: s for s in (1, 2, 3)}
    factors = Counter({(corner[c], corner[f], j, k): n for (c, f, j, k), n in derived.factors.items()
                       if c in corner and f in corner})
    arrows = Counter({(corner[s], corner[t], j, k): n for (s, t, j, k), n in derived.arrows.items()
                      if s in corner and t in corner})
    res = report.match_reference(small, report.ReferenceBlock(factors, arrows))
    assert res.ok


def test_checksum_is_verified(tmp_path):
    src = report.data_path("ref_p3_q2.csv")
    dst = tmp_path / "ref_p3_q2.csv"
    dst.write_text(src.read_text().replace("factor,1,1,0,0,1", "factor,1,1,0,0,2", 1))
    (tmp_path / "ref_p3_q2.sha256").write_text(report.data_path("ref_p3_q2.sha256").read_text())
    with pytest.raises(report.ChecksumError):
        report.load_reference(dst)
    assert report.load_reference(dst, verify_checksum=False).factors[(1, 1, 0, 0)] == 2


def test_dot_export_is_deterministic(mu32):
    alias = report.row_major_alias(3, 2)
    a = report.quiver(mu32).to_dot(alias)
    assert a == report.quiver(build_mu(3, 2)).to_dot(alias)
    assert '"2" -> "1" [label="j=-1,k=1"];' in a
    assert a.startswith("digraph quiver {")


def test_csv_export(mu32):
    rows = report.cartan_rows(mu32, report.row_major_alias(3, 2))
    text = report.to_csv(rows, ["column", "factor", "j", "k", "dim"])
    assert text.splitlines()[0] == "column,factor,j,k,dim"
    assert len(text.splitlines()) == len(rows) + 1
