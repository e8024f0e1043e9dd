"""Smoke tests for the python bindings."""

import json

import pytest

import torusbundle as tb


def test_gluing_matrix_basics():
    theta = tb.GluingMatrix(2, 1, 1, 1)
    assert theta.det == 1
    assert (theta.m1, theta.n1, theta.m2, theta.n2) == (-1, 1, 1, -2)
    assert theta.rank_minus_identity() == 2
    assert theta.power_apply(-1, (1, 0)) == (1, -1)

    with pytest.raises(tb.TorusBundleError):
        tb.GluingMatrix(1, 2, 3, 4)


def test_group_ring_arithmetic():
    theta = tb.GluingMatrix(1, 1, 0, 1)
    a = tb.GroupRingElement.term(1, 0, 0)
    one = tb.GroupRingElement.one()
    d = tb.fox_power(3, "a")
    assert tb.augmentation(d) == 3
    assert tb.ring_mul(theta, d, a - one) == tb.GroupRingElement.term(3, 0, 0) - one


def test_resolution_and_e():
    theta = tb.GluingMatrix(1, 0, 0, 1)
    e = tb.build_e(theta)
    assert tb.satisfies_e_identity(theta, e)
    assert e == tb.solve_e_lattice(theta)
    summary = tb.build_resolution_summary(theta)
    assert summary["E"] == {(0, 0, 0): -1, (0, 0, 1): 1}


def test_smith_normal_form():
    u, d, v = tb.smith_normal_form([[2, 4], [6, 8]])
    assert d == [[2, 0], [0, 4]]


def test_cohomology_groups():
    groups = tb.cohomology_groups(tb.GluingMatrix(1, 0, 0, 1))
    assert [g["name"] for g in groups] == ["Z", "Z^3", "Z^3", "Z"]

    groups2 = tb.cohomology_groups(tb.GluingMatrix(0, 1, 1, 0), "Z")
    assert groups2[3]["invariant_factors"] == [2]

    mod2 = tb.cohomology_groups(tb.GluingMatrix(0, 1, 1, 0), "Z2")
    assert [len(g["invariant_factors"]) for g in mod2] == [1, 2, 2, 1]


def test_ring_presentation():
    pres = tb.ring_presentation(tb.GluingMatrix(1, 0, 0, 1))
    assert pres["case_index"] == 1
    assert [g["name"] for g in pres["generators"]] == ["zeta1", "zeta2", "zeta3"]
    assert all(r["verified"] for r in pres["relations"])

    pres3 = tb.ring_presentation(tb.GluingMatrix(0, 1, 1, 0), "Zp", p=3)
    assert all(r["verified"] for r in pres3["relations"])


def test_cup_tables_and_sums():
    tables = tb.cup_tables(tb.GluingMatrix(1, 0, 0, 1))
    assert tables["M3"] == [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]
    assert tables["N"][2][2] == 1
    assert tb.homotopy_augmentation_sums(tb.GluingMatrix(1, 1, 1, 2)) == (1, 1)
    assert tb.s_function(1, 0, tb.GluingMatrix(1, 0, 0, 1)) == 0


def test_report_json():
    text = tb.report_json(tb.GluingMatrix(2, 1, 1, 1), ["Z", "Z2", "Z3"])
    data = json.loads(text)
    assert data["all_checks_passed"]
    assert [r["ring"] for r in data["rings"]] == ["Z", "Z2", "Z3"]
    assert data["rings"][0]["ring_structure"]["case_index"] == 5


def test_run_verification():
    result = tb.run_verification(seed=11, samples=10)
    assert result["all_passed"]
    assert any(s["name"] == "chain_complex" for s in result["suites"])
