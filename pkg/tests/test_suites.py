import pytest

from cobordism.suites import SUITES, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_small_run_passes(name):
    result = run_suite(name, cases=5, seed=1)
    assert result.passed, result.report()
    assert result.report() == f"{name}: 5 cases, seed 1: pass"


def test_same_seed_same_report():
    a = run_suite("cor-inv", cases=20, seed=3)
    b = run_suite("cor-inv", cases=20, seed=3)
    assert a == b


def test_unknown_suite():
    with pytest.raises(KeyError, match="available"):
        run_suite("bogus")


def test_default_case_counts():
    assert SUITES["inv1"][1] == 1000
    assert SUITES["lt-lemma"][1] == 200


def test_failure_report_includes_instance(monkeypatch):
    from cobordism import suites

    def broken(rng):
        raise suites._CaseFailure("always fails", "matrix:\n  1 2\n")

    monkeypatch.setitem(suites.SUITES, "broken", (broken, 1, "test double"))
    result = run_suite("broken", cases=2, seed=9)
    assert not result.passed
    lines = result.report().splitlines()
    assert lines[0] == "FAIL broken case 0 (seed 9): always fails"
    assert lines[1:3] == ["  matrix:", "    1 2"]
    assert lines[-1] == "broken: 2 cases, seed 9: 2 failed"
