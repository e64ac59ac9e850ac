"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import time
from contextlib import contextmanager
from fractions import Fraction as F

import numpy as np
import pytest

from orbitlab.cascade import canonical_representatives
from orbitlab.complex_roots import center_of_k
from orbitlab.cones import cone_tests
from orbitlab.exact import rank
from orbitlab.multiplicity import admissible_grid, h_point, multiplicity_report, positive_system
from orbitlab.orbits import (Signs, cascade_signature, covector_from_weight, is_open_orbit_point, kks_matrix,
                             kostant_hull_check, lemma41_check, verify_theorem31)
from orbitlab.real_forms import RealFormSpec, _realize_uncached

from conftest import ALL_ALGEBRAS, HERMITIAN, structure


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number, title):
        info = {}
        t0 = time.perf_counter()
        ok = False
        try:
            yield info
            ok = True
        finally:
            detail = ", ".join(f"{k}={v}" for k, v in info.items())
            with capsys.disabled():
                print(f"\nCRITERION {number:>2} {'PASS' if ok else 'FAIL'}  {title}  "
                      f"[{time.perf_counter() - t0:.1f}s] {detail}")
    return run


def test_c01_structure_exactness(criterion):
    with criterion(1, "Jacobi, theta-automorphism, Killing invariance on all nine algebras") as info:
        t0 = time.perf_counter()
        for name in ALL_ALGEBRAS:
            g = _realize_uncached(RealFormSpec.parse(name)).algebra  # cold build, no cache
            assert g.is_antisymmetric(), name
            assert not g.jacobi_violations(), name
            assert g.theta_is_involution() and not g.theta_violations(), name
            assert not g.killing_invariance_violations(), name
        elapsed = time.perf_counter() - t0
        info["seconds"] = round(elapsed, 1)
        assert elapsed < 120


def _mults(name):
    d = structure(name).datum
    out = {}
    for r in d.positive:
        out.setdefault(d.inner(r, r), set()).add(d.multiplicities[r])
    return {k: sorted(v) for k, v in out.items()}


def test_c02_restricted_root_tables(criterion):
    with criterion(2, "restricted-root multiplicities match the classical tables"):
        m = _mults("su(2,1)")  # BC1: m(e) = 2, m(2e) = 1
        short, long_ = sorted(m)
        assert long_ == 4 * short and m[short] == [2] and m[long_] == [1]
        for name in ("sp(4,R)", "sp(6,R)"):
            assert set(x for v in _mults(name).values() for x in v) == {1}
        m = _mults("so(2,4)")  # B2: long 1, short 2
        short, long_ = sorted(m)
        assert long_ == 2 * short and m[short] == [2] and m[long_] == [1]
        assert list(_mults("so(4,1)").values()) == [[3]]
        assert list(_mults("so(5,1)").values()) == [[4]]


def test_c03_open_orbit_criterion(criterion):
    with criterion(3, "open AN-orbits exactly for Hermitian algebras, 2^r of them") as info:
        for name in ALL_ALGEBRAS:
            c = structure(name).cascade
            assert c.exists_open_orbit == (name in HERMITIAN), name
        for name, count in (("sp(4,R)", 4), ("su(2,1)", 2)):
            c = structure(name).cascade
            assert 2 ** c.r == count == len({r.signs for r in canonical_representatives(c)})
            info[name] = count


def test_c04_canonical_representatives(criterion):
    with criterion(4, "canonical representatives have full KKS rank") as info:
        t0 = time.perf_counter()
        total = 0
        for name in HERMITIAN:
            c = structure(name).cascade
            for rep in canonical_representatives(c):
                assert is_open_orbit_point(c, rep.covector)
                assert rank(kks_matrix(c, rep.covector)) == len(c.s_basis)
                assert cascade_signature(c, rep.covector) == Signs(rep.signs)
                total += 1
        info["representatives"] = total
        assert time.perf_counter() - t0 < 10


def _random_lambda(rng, n):
    mode = rng.integers(3)
    if mode == 0:
        vals = rng.integers(-2, 3, size=n)
    elif mode == 1:
        vals = rng.integers(-5, 6, size=n) * (rng.random(n) < 0.5)
    else:
        vals = rng.integers(-1, 2, size=n)
    return [F(int(v), int(rng.integers(1, 4))) for v in vals]


def test_c05_openness_equivalence(criterion):
    with criterion(5, "KKS openness agrees with the cascade signature on 1000 lambda per algebra") as info:
        disagreements = 0
        for name in HERMITIAN:
            c = structure(name).cascade
            rng = np.random.default_rng([5, len(c.s_basis)])
            n_open = 0
            for _ in range(1000):
                lam = _random_lambda(rng, len(c.s_basis))
                open_ = is_open_orbit_point(c, lam)
                n_open += open_
                disagreements += open_ != isinstance(cascade_signature(c, lam), Signs)
            assert 0 < n_open < 1000, name  # both branches exercised
        info["disagreements"] = disagreements
        assert disagreements == 0


def test_c06_holomorphic_branch(criterion):
    with criterion(6, "holomorphic f gives one constant signature on 200 samples") as info:
        cases = [("sp(4,R)", (F(2), F(1)))]
        for name in ("su(1,1)", "su(2,1)"):
            s = structure(name)
            cases.append((name, tuple(2 * x for x in s.sum_y_weight)))
        for name, f in cases:
            res = verify_theorem31(structure(name), f, 200, 0, stop_at_witness=False)
            assert res["holomorphic"] and res["verdict"] == "CONSISTENT-HOLOMORPHIC", name
            assert res["samples_used"] == 200 and len(res["signatures_histogram"]) == 1, name
            sig = next(iter(res["signatures_histogram"]))
            assert "0" not in sig and len(set(sig[sig.index("(") + 1:-1].split(","))) == 1
            info[name] = sig


def test_c07_nonholomorphic_branch(criterion):
    with criterion(7, "non-holomorphic f yields a witness within 500 samples") as info:
        s = structure("sp(4,R)")
        res = verify_theorem31(s, (F(2), F(-1)), 500, 0)
        info["samples_used"] = res["samples_used"]
        assert not res["holomorphic"]
        assert res["verdict"] == "CONSISTENT-NONHOLOMORPHIC" and res["witnesses"]
        assert verify_theorem31(s, (F(2), F(-1)), 0, 0)["verdict"] == "INCONCLUSIVE"


def test_c08_lemma41(criterion):
    with criterion(8, "sign of lambda(X_1) constant on 500 samples per open orbit; X_2 varies") as info:
        for name in ("sp(4,R)", "su(1,1)"):
            s = structure(name)
            results = [lemma41_check(s, rep, 500, 8) for rep in canonical_representatives(s.cascade)]
            assert all(r["x1_constant"] for r in results), name
            if name == "sp(4,R)":
                witnesses = [r["xj_witness"] for r in results if r["xj_witness"]]
                info["x2_witnesses"] = len(witnesses)
                assert witnesses


def test_c09_kostant_hull(criterion):
    with criterion(9, "Delta_n^+ lies in conv(W_K beta)"):
        for name in ("sp(4,R)", "su(2,1)", "su(2,2)", "so(2,4)"):
            res = kostant_hull_check(structure(name))
            assert res["all_inside"], name


def test_c10_cone_suite(criterion):
    with criterion(10, "100 C_max / Omega^+ pairs positive, projections all-plus") as info:
        for name in HERMITIAN:
            res = cone_tests(structure(name), 100, 10)
            assert res["ok"], (name, res["failures"][:2])
            assert res["counts"]["pairs"] == 100 and res["counts"]["projections_all_plus"] == 100
            info[name] = res["min_pair_value"]


def test_c11_multiplicity_chain(criterion):
    with criterion(11, "dim tau_Lambda = dim tau_Lambda' = Liouville volume; MC within 2%") as info:
        for name in ("sp(4,R)", "su(2,1)"):
            s = structure(name)
            grid = admissible_grid(s, 6)
            assert len(grid) >= 20, name
            for lam in grid:
                r = multiplicity_report(s, lam, mc_samples=0)
                assert r["dim_tau_Lambda"] == r["dim_tau_Lambda_prime"] == r["liouville_volume"], (name, lam)
            info[name] = len(grid)
        s = structure("sp(4,R)")
        assert multiplicity_report(s, (F(3), F(1)), mc_samples=0)["dim_tau_Lambda"] == 2
        t0 = time.perf_counter()
        r = multiplicity_report(s, (F(3), F(1)), mc_samples=10 ** 6, seed=0)
        elapsed = time.perf_counter() - t0
        info["mc_rel_err"] = f"{r['monte_carlo']['relative_error']:.2e}"
        assert r["monte_carlo"]["relative_error"] < 0.02 and elapsed < 60


def test_c12_z0_h_chain(criterion):
    with criterion(12, "Z_0 unique and h = -K(Z_0, .) on a + n is an open-orbit point"):
        for name in HERMITIAN:
            s = structure(name)
            assert center_of_k(s.g).dim == 1, name
            lam = admissible_grid(s, 4, limit=1)[0]
            # z0_element raises unless the defining linear system has exactly one solution
            hp = h_point(s, positive_system(s, lam))
            assert s.z0 is not None and len(hp["z0"]) == s.roots.t_basis.dim, name
            assert hp["open"] and is_open_orbit_point(s.cascade, hp["h"]), name
