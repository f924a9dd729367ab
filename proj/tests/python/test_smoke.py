"""Smoke tests for the _lipset extension module.

Rationals cross the boundary as exact strings, so expectations are checked
with fractions.Fraction rather than floats.
"""

import os
from fractions import Fraction

import pytest

_lipset = pytest.importorskip("_lipset")


def frac(s):
    return Fraction(s)


def test_interval_set_canonicalization_and_measure():
    s = _lipset.IntervalSet([("0", "1", True, True), ("1", "2", True, True)])
    assert s.parts() == [("0", "2", True, True)]
    assert frac(s.measure()) == 2
    assert s.contains("3/2")
    assert not s.contains("5/2")


def test_set_algebra_roundtrip():
    a = _lipset.IntervalSet([("0", "1", True, True)])
    b = _lipset.IntervalSet([("1/2", "3", True, True)])
    u = _lipset.union_of(a, b)
    i = _lipset.intersect(a, b)
    assert frac(u.measure()) + frac(i.measure()) == frac(a.measure()) + frac(b.measure())
    again = _lipset.IntervalSet.from_json(u.to_json())
    assert again == u
    comp = _lipset.complement_in(a, 0, 2)
    assert frac(comp.measure()) == 1


def test_densities_and_scan():
    blocks = _lipset.IntervalSet([("0", "1", True, True), ("2", "3", True, True)])
    assert frac(_lipset.left_density(blocks, "3/2", "1")) == Fraction(1, 2)
    assert frac(_lipset.right_density(blocks, "3/2", "1")) == Fraction(1, 2)
    rep = _lipset.sosd_scan(blocks, "1", "1/2", "1/4096", "99/100")
    assert rep["pass"]
    assert frac(rep["min_max_density"]) == 1


def test_function_builder_exact_values():
    f = _lipset.LipFunction([
        _lipset.IntervalSet([("0", "1", True, True), ("2", "3", True, True)]),
        _lipset.IntervalSet([("0", "3", True, True)]),
    ])
    assert frac(f.eval("1")) == 1
    assert frac(f.eval_level(2, "191/128")) == Fraction(1, 128)
    assert frac(f.eval_level(2, "1")) == 0
    assert f.depth() == 2

    with pytest.raises(ValueError):
        _lipset.LipFunction([_lipset.IntervalSet([("0", "1", False, False)])])


def test_chain_json_and_data_files():
    data_dir = os.environ.get("LIPSET_DATA_DIR")
    if not data_dir:
        pytest.skip("LIPSET_DATA_DIR not set")
    with open(os.path.join(data_dir, "chains", "unit_interval.json")) as fh:
        f = _lipset.LipFunction.from_chain_json(fh.read())
    assert frac(f.eval("1/2")) == Fraction(1, 2)
    assert frac(f.eval("3")) == 1


def test_lip_scan_interior_point():
    f = _lipset.LipFunction([_lipset.IntervalSet([("0", "1", True, True)])])
    est = _lipset.lip_scan(f, "1/3", "1/8", "1/65536")
    assert frac(est["lip_lower"]) == 1
    assert frac(est["Lip_upper"]) >= 1


def test_cantor_levels_and_ledger():
    g = _lipset.levelk_open(0, 1, 2)
    assert frac(g.measure()) == Fraction(81, 121)
    comps = _lipset.f_components(g, 0, 1)
    assert len(comps) == 8
    assert sorted({tag for _, _, tag in comps}) == [1, 2]
    stage = _lipset.build_f_infinity(_lipset.default_schedule(3), 3)
    assert frac(stage["complement_measure"]) >= Fraction(1, 2)
    assert not stage["geometry_materialized"]
    assert len(stage["generations"]) == 3
    assert int(stage["generations"][0]["components"]) == 3**12 - 1


def test_exactness_no_floats():
    one_third = _lipset.IntervalSet([("0", "1/3", True, True)])
    assert frac(one_third.measure()) == Fraction(1, 3)
    assert _lipset.measure_in(one_third, "0", "1/6") == "1/6"
