"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

from __future__ import annotations

from weylext import acceptance

_results: dict[int, acceptance.CriterionResult] = {}


def _report(res: acceptance.CriterionResult, capsys) -> None:
    _results[res.number] = res
    with capsys.disabled():
        print("\n" + res.line())
    assert res.ok, res.detail


def test_criterion_1_golden_block(capsys):
    res = acceptance.criterion_1()
    _report(res, capsys)
    assert res.seconds < 60


def test_criterion_2_oracle_equivalence(capsys):
    res = acceptance.criterion_2()
    _report(res, capsys)
    assert res.seconds < 600


def test_criterion_3_cycle_certificates(capsys):
    _report(acceptance.criterion_3(), capsys)


def test_criterion_4_bimodule_identities(capsys):
    _report(acceptance.criterion_4(), capsys)


def test_criterion_5_algebraic_properties(capsys):
    _report(acceptance.criterion_5(seed=0, samples=10_000), capsys)


def test_criterion_6_field_robustness(capsys):
    _report(acceptance.criterion_6(_results), capsys)


def test_raw_reference_is_reported_not_hidden():
    from weylext import report

    res = acceptance.criterion_1(report.load_reference(apply_errata=False))
    assert not res.ok
    assert "(7, 2, -7, 5, 0, 1)" in res.detail
