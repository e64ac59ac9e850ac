from fractions import Fraction as F

import numpy as np
import pytest

from orbitlab.cascade import NoOpenOrbit
from orbitlab.cones import cmax_sample, cone_tests, find_cone_violation, dual_action_check
from orbitlab.orbits import Signs, cascade_signature, dual_covector, project_p1

from conftest import structure


def test_su11_cone_suite(su11):
    res = cone_tests(su11, 50, 1)
    assert res["ok"], res["failures"][:3]
    assert res["counts"]["pairs"] == 50


def test_sp4_projections_all_plus(sp4):
    res = cone_tests(sp4, 30, 2)
    assert res["ok"]
    assert res["counts"]["projections_all_plus"] == 30


def test_cmax_points_pair_positively(sp4):
    rng = np.random.default_rng(0)
    x = cmax_sample(sp4, rng)
    c = sp4.cascade
    assert cascade_signature(c, project_p1(c, dual_covector(sp4.g, x))) == Signs((1, 1))


def test_point_outside_cmax_gets_a_witness(sp4):
    c = sp4.cascade
    x = [a - b for a, b in zip(c.Y[0], c.Y[1])]
    res = find_cone_violation(sp4, x, 20, 0)
    assert res["status"] == "WITNESS"


def test_violation_search_never_claims_positivity(sp4):
    x = cmax_sample(sp4, np.random.default_rng(1))
    assert find_cone_violation(sp4, x, 5, 0)["status"] == "UNRESOLVED"


def test_dual_action_commutes_with_projection(sp4):
    assert dual_action_check(sp4, 100, 3)["ok"]


def test_cones_need_open_orbit():
    with pytest.raises(NoOpenOrbit):
        cone_tests(structure("so(4,1)"), 1, 0)
