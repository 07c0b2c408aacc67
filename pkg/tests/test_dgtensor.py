from __future__ import annotations

from dataclasses import replace

import pytest

from weylext.core import GF, QQ
from weylext.dgtensor import (
    E, XI, CycleRep, FieldMismatchError, build_chain, calibrate, compare_model_oracle, compare_V_oracle,
    homology_of_chain, product_check, thread, verify_cycle, w_power, x_generator,
)
from weylext.psi import PsiMonomial
from weylext.upsilon import CALIBRATED


@pytest.mark.parametrize("p,i", [(2, -2), (3, -1), (3, -3), (5, -2)])
def test_chains_square_to_zero(p, i):
    build_chain(p, i).check_square_zero()


def test_degree_zero_is_psi():
    c = build_chain(3, 0)
    assert len(c) == 9
    assert homology_of_chain(c).total() == 9


@pytest.mark.parametrize("p,i,total", [(3, -1, 19), (3, -2, 27), (3, -3, 37), (2, -1, 8), (2, -2, 12)])
def test_oracle_totals(p, i, total):
    assert homology_of_chain(build_chain(p, i)).total() == total


def test_both_fields_agree_on_oracle():
    c = build_chain(3, -2)
    assert homology_of_chain(c, "both") == homology_of_chain(c, GF(3)) == homology_of_chain(c, QQ)


def test_field_mismatch_is_reported(monkeypatch):
    import weylext.dgtensor as dg

    real = dg._sector_ranks

    def skewed(c, f):
        ranks = real(c, f)
        if f != QQ:
            key = next(k for k, r in ranks.items() if r > 0)
            ranks = {**ranks, key: ranks[key] - 1}
        return ranks

    monkeypatch.setattr(dg, "_sector_ranks", skewed)
    with pytest.raises(FieldMismatchError):
        homology_of_chain(build_chain(3, -1), "both")


def test_top_class_and_its_differential():
    p = 3
    c = build_chain(p, -1)
    top = thread(p, [E, E], p)
    assert c.d(c.vector({top: 1})) == {}
    assert verify_cycle(c, CycleRep.of({top: 1})) == {"cycle": True, "boundary": False}


def test_image_of_d_is_a_boundary():
    # e_{p-1} (x) e_2 is the basis word with those idempotents under the reflected junction
    p = 3
    c = build_chain(p, -1)
    word = thread(p, [E, E], p - 1)
    assert word[1] == PsiMonomial(2, 0, 0)
    image = c.d(c.vector({word: 1}))
    assert image
    assert verify_cycle(c, image) == {"cycle": True, "boundary": True}


def test_w_is_a_nonzero_class():
    c = build_chain(3, -2)
    for v in (1, 2, 3):
        assert verify_cycle(c, w_power(c, 1, v)) == {"cycle": True, "boundary": False}


def test_x_generator_three_factors():
    c = build_chain(3, -3)
    assert verify_cycle(c, x_generator(3, -3, 0)) == {"cycle": True, "boundary": False}


def test_errors_on_bad_input():
    c = build_chain(3, -1)
    with pytest.raises(KeyError):
        c.vector({(PsiMonomial(1, 0, 0),): 1})
    with pytest.raises(ValueError):
        CycleRep.of({thread(3, [E, E], 3): 2})
    mixed = {thread(3, [E, E], 3): 1, thread(3, [XI, E], 2): 1}
    with pytest.raises(ValueError):
        verify_cycle(c, CycleRep.of(mixed))


@pytest.mark.parametrize("p,i", [(3, -1), (5, -2), (2, -3), (3, 1)])
def test_model_equals_oracle(p, i):
    assert compare_model_oracle(p, i).ok


def test_V_model_for_p2():
    assert compare_V_oracle(3).ok


def test_calibration_is_unique():
    res = calibrate()
    assert len(res["survivors"]) == 1
    s = res["survivors"][0]
    assert s["junction"] == "sigma"
    assert s["convention"]["degree_shift"] == "a-b-1"
    assert s["convention"]["psi_reading"] == "j+k"


def test_product_check_and_controls():
    good = product_check(3, 3)
    assert good["mismatches"] == [] and good["sign_inconsistencies"] == 0
    assert good["nonzero"] == 757
    assert product_check(3, 3, replace(CALIBRATED, sign="j0"))["sign_inconsistencies"] > 0
    assert product_check(3, 3, replace(CALIBRATED, extensions=False))["mismatches"]
