from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from orbitlab.complex_roots import (NotHermitian, act, is_abelian_root_set, is_wk_stable, positive_by, rho_vectors,
                                    z0_element, weyl_group_K)
from orbitlab.orbits import DegenerateFunctional, holomorphic_system

from conftest import HERMITIAN, structure

WK_ORDER = {"su(1,1)": 1, "su(2,1)": 2, "su(2,2)": 4, "sp(4,R)": 2, "sp(6,R)": 6, "so(2,4)": 4, "so*(6)": 6,
            "so(4,1)": 4}


def coords(*v):
    return tuple(F(x) for x in v)


def test_sp4_roots(sp4):
    d = sp4.roots
    assert len(d.roots) == 8
    assert {r.coords for r in d.compact} == {coords(1, -1), coords(-1, 1)}
    assert {r.coords for r in d.noncompact} == {coords(2, 0), coords(-2, 0), coords(0, 2), coords(0, -2),
                                                coords(1, 1), coords(-1, -1)}


def test_su21_and_su11_root_counts(su21, su11):
    assert len(su21.roots.roots) == 6 and len(su21.roots.compact) == 2
    assert len(su11.roots.roots) == 2 and not su11.roots.compact


@pytest.mark.parametrize("name", HERMITIAN + ["so(4,1)"])
def test_root_invariants(name):
    s = structure(name)
    d = s.roots
    assert len(d.roots) == s.g.dim - d.t_basis.dim
    cs = {r.coords for r in d.roots}
    assert all(tuple(-x for x in c) in cs for c in cs)
    assert all(sum(r.coords[m] for r in d.roots) == 0 for m in range(d.t_basis.dim))
    for a in d.compact:
        s_a = d.ip.reflection(a.coords)
        for b in d.roots:
            image = act(s_a, b.coords)
            assert image in cs
            assert d.by_coords[image].compact == b.compact


@pytest.mark.parametrize("name", HERMITIAN + ["so(4,1)"])
def test_weyl_group(name):
    s = structure(name)
    wk = weyl_group_K(s.roots)
    assert len(wk) == WK_ORDER[name]
    group = set(wk)
    ip = s.roots.ip
    for w in wk:
        for w2 in wk:
            assert tuple(tuple(sum(w[i][k] * w2[k][j] for k in range(len(w))) for j in range(len(w)))
                         for i in range(len(w))) in group
        # orthogonal for the inner product on weights
        for a in s.roots.roots[:4]:
            assert ip.weights(act(w, a.coords), act(w, a.coords)) == ip.weights(a.coords, a.coords)


def test_rho_vectors_sp4(sp4):
    rho_g, rho_k, rho_n = sp4.rho
    assert rho_g == coords(2, 1) and rho_k == (F(1, 2), F(-1, 2))
    assert tuple(a + b for a, b in zip(rho_k, rho_n)) == rho_g


def test_rho_su11(su11):
    assert su11.rho[1] == coords(0)


def test_z0(sp4, su11):
    assert su11.z0 is not None
    d = sp4.roots
    for r in sp4.delta_n_plus:
        assert d.root_value(r.coords, sp4.z0) == -1
    for r in d.compact:
        assert d.root_value(r.coords, sp4.z0) == 0


def test_z0_fails_without_center():
    s = structure("so(4,1)")
    dnp = positive_by(s.roots, (F(2), F(1)), s.roots.noncompact)
    with pytest.raises(NotHermitian):
        z0_element(s.roots, dnp)


def test_so51_has_no_compact_cartan():
    assert structure("so(5,1)").roots is None


@pytest.mark.parametrize("name", ["sp(4,R)", "su(2,1)", "su(2,2)", "so(2,4)", "so(4,1)"])
@settings(max_examples=25, deadline=None)
@given(v=st.lists(st.integers(-7, 7), min_size=3, max_size=3))
def test_bracket_closure_matches_wk_stability(name, v):
    s = structure(name)
    d = s.roots
    w = tuple(F(x) for x in v[: d.t_basis.dim])
    try:
        dnp = holomorphic_system(s, w)
    except DegenerateFunctional:
        return
    assert is_abelian_root_set(d, dnp) == is_wk_stable(d, dnp, s.weyl_k)


@pytest.mark.parametrize("name", ["sp(4,R)", "su(2,1)"])
def test_selection_invariant_under_rescaled_inner_product(name):
    s = structure(name)
    d = s.roots
    scaled = d.ip.scaled(F(7, 3))
    for v in [(3, 1), (2, -1), (5, 2), (-1, 4)]:
        w = tuple(F(x) for x in v)
        a = {r.coords for r in d.noncompact if d.ip.weights(w, r.coords) > 0}
        # weights pair through G^{-1}; rescaling G rescales every pairing by the same positive factor
        b = {r.coords for r in d.noncompact if scaled.weights(w, r.coords) > 0}
        assert a == b


@pytest.mark.parametrize("name", ["sp(4,R)", "su(2,1)", "su(2,2)", "so(2,4)"])
def test_long_root_orbit_sum_is_central(name):
    s = structure(name)
    d = s.roots
    dnp = s.delta_n_plus
    beta = max(dnp, key=lambda r: d.ip.weights(r.coords, r.coords))
    total = tuple(sum(act(w, beta.coords)[m] for w in s.weyl_k) for m in range(d.t_basis.dim))
    assert any(total)
    assert all(act(w, total) == total for w in s.weyl_k)
    assert all(d.ip.weights(total, a.coords) == 0 for a in d.compact)


def test_reference_system_is_holomorphic_and_z0_unique():
    for name in HERMITIAN:
        s = structure(name)
        assert is_abelian_root_set(s.roots, s.delta_n_plus)
        assert len(s.delta_n_plus) == len(s.roots.noncompact) // 2
        rg, rk, rn = rho_vectors(s.roots, s.delta_c_plus, s.delta_n_plus)
        assert rg == s.rho[0]
