import pytest

from cosrel.suites import SUITE_NAMES, run_suite


def test_unknown_suite_raises():
    with pytest.raises(KeyError):
        run_suite("bogus")


def test_single_suite_report_shape():
    reports = run_suite("dirac", seed=5)
    assert len(reports) == 1
    rep = reports[0]
    assert rep.suite == "dirac" and rep.seed == 5
    assert rep.passed
    d = rep.as_dict()
    ids = [c["id"] for c in d["checks"]]
    assert ids == sorted(ids)
    for c in d["checks"]:
        assert c["law"]
        assert "value" in c and "tolerance" in c and "runtime_ms" in c


def test_all_runs_every_suite():
    reports = run_suite("all", seed=0, options={"grids": (9, 17), "cosserat_grids": (9, 17),
                                                "steps": 150, "dtau": 0.02,
                                                "jacobi_samples": 50, "exp_samples": 50,
                                                "subgroup_samples": 20, "dirac_samples": 5})
    assert [r.suite for r in reports] == list(SUITE_NAMES)
    assert all(r.passed for r in reports)


def test_seeded_determinism_of_report_values():
    a = run_suite("weyssenhoff", seed=9, options={"steps": 100, "dtau": 0.02})[0]
    b = run_suite("weyssenhoff", seed=9, options={"steps": 100, "dtau": 0.02})[0]
    va = [(c.check_id, c.value) for c in a.checks]
    vb = [(c.check_id, c.value) for c in b.checks]
    assert va == vb


def test_refinement_checks_carry_report_schema():
    rep = run_suite("forms", seed=0, options={"grids": (9, 17)})[0]
    refine = [c for c in rep.checks if "order" in c.check_id]
    assert refine
    for c in refine:
        assert "order_estimate" in c.extra
        assert "grid" in c.extra or "coarse" in c.extra
