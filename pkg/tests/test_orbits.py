from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orbitlab.cascade import canonical_representatives
from orbitlab.exact import rank
from orbitlab.orbits import (DegenerateFunctional, NotOpen, NotStronglyElliptic, Signs, cascade_signature,
                             covector_from_weight, dual_covector, is_holomorphic, is_open_orbit_point,
                             is_strongly_elliptic, kks_matrix, kostant_hull_check, lemma41_check, lift_from_s,
                             orbit_context, project_p, project_p1, sample_orbit_point, verify_theorem31)

from conftest import HERMITIAN, SMALL_HERMITIAN, structure


def w(*v):
    return tuple(F(x) for x in v)


def sym2_covector(c, a, b, d):
    """lam on n3 of sp(4,R) from the symmetric matrix [[a, b], [b, d]]."""
    lam = {c.x_index[0]: F(a), c.x_index[1]: F(d)}
    (z,) = c.s_indices(c.sum_root(0, 1))
    lam[z] = F(b)
    return [lam[i] for i in c.n3_indices()]


def test_kks_examples(su11, sp4):
    c = su11.cascade
    rep = canonical_representatives(c)[0]
    assert rank(kks_matrix(c, rep.covector)) == 2 == len(c.s_basis)
    assert rank(kks_matrix(c, [F(0)] * len(c.s_basis))) == 0
    assert not is_open_orbit_point(c, [F(0)] * len(c.s_basis))
    for rep in canonical_representatives(sp4.cascade):
        assert rank(kks_matrix(sp4.cascade, rep.covector)) == 6


@settings(max_examples=30, deadline=None)
@given(v=st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_kks_is_skew_with_even_rank(v):
    c = structure("sp(4,R)").cascade
    b = kks_matrix(c, [F(x) for x in v])
    assert all(b[i][j] == -b[j][i] for i in range(6) for j in range(6))
    assert rank(b) % 2 == 0


def test_signature_examples_sp4(sp4):
    c = sp4.cascade
    assert cascade_signature(c, sym2_covector(c, 1, 0, 1)) == Signs((1, 1))
    assert cascade_signature(c, sym2_covector(c, 0, 1, 0)) == NotOpen(1)
    assert cascade_signature(c, sym2_covector(c, 1, 0, -1)) == Signs((1, -1))


# The Z root vector is not sl2-normalized, so the middle coordinate carries a
# fixed scale kappa; kappa = 4 is read off the degenerate point [[1, 4], [4, 1]].
KAPPA = 4


@settings(max_examples=60, deadline=None)
@given(a=st.integers(1, 5), b=st.integers(-12, 12), d=st.integers(-5, 5))
def test_signature_matches_sym2_congruence(a, b, d):
    c = structure("sp(4,R)").cascade
    det = F(a * d) - F(b, KAPPA) ** 2
    sig = cascade_signature(c, sym2_covector(c, a, b, d))
    if det == 0:
        assert sig == NotOpen(2)
    else:
        assert sig == Signs((1, 1 if det > 0 else -1))


@pytest.mark.parametrize("name", HERMITIAN)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_openness_agrees_with_signature(name, data):
    c = structure(name).cascade
    n = len(c.s_basis)
    lam = [F(x) for x in data.draw(st.lists(st.integers(-2, 2), min_size=n, max_size=n))]
    sig = cascade_signature(c, lam)
    assert is_open_orbit_point(c, lam) == isinstance(sig, Signs)
    assert cascade_signature(c, lam, reverse=True) == sig


@pytest.mark.parametrize("name", ["su(1,1)", "sp(4,R)", "su(2,2)"])
def test_signature_is_an_orbit_invariant(name):
    s = structure(name)
    c = s.cascade
    ctx = orbit_context(s)
    rng = np.random.default_rng(5)
    for i in range(15):
        lam = [F(int(x)) for x in rng.integers(-3, 4, size=len(c.s_basis))]
        sig = cascade_signature(c, lam)
        if not isinstance(sig, Signs):
            continue
        word = ctx.random_an_word(rng, 3)
        moved = project_p(c, ctx.coadjoint(word, lift_from_s(c, lam)))
        assert cascade_signature(c, moved) == sig


def test_projection_is_linear(sp4):
    c = sp4.cascade
    n = sp4.g.dim
    f = [F(i) for i in range(n)]
    g = [F(n - i, 3) for i in range(n)]
    assert project_p(c, [0] * n) == [0] * len(c.s_basis)
    assert project_p(c, [a + b for a, b in zip(f, g)]) == [a + b for a, b in zip(project_p(c, f), project_p(c, g))]
    assert len(project_p1(c, f)) == c.n3.dim


def test_strongly_elliptic_examples(sp4):
    g = sp4.g
    assert is_strongly_elliptic(g, covector_from_weight(sp4, w(2, 1)))
    assert not is_strongly_elliptic(g, [F(0)] * g.dim)
    h = sp4.datum.a.basis[0]
    assert not is_strongly_elliptic(g, dual_covector(g, h))


def test_holomorphic_examples(sp4, su11):
    assert is_holomorphic(sp4, weight=w(2, 1))
    assert not is_holomorphic(sp4, weight=w(2, -1))
    assert is_holomorphic(sp4, f=covector_from_weight(sp4, w(2, 1)))
    for v in (1, -3, F(1, 2)):
        assert is_holomorphic(su11, weight=w(v))


def test_holomorphic_rejects_degenerate_and_misaligned(sp4):
    with pytest.raises(DegenerateFunctional):
        is_holomorphic(sp4, weight=w(1, -1))
    generic = [F(i + 1) for i in range(sp4.g.dim)]
    with pytest.raises(ValueError):
        is_holomorphic(sp4, f=generic)


@pytest.mark.parametrize("name", ["sp(4,R)", "su(2,1)", "su(2,2)"])
@settings(max_examples=20, deadline=None)
@given(v=st.lists(st.integers(-6, 6), min_size=3, max_size=3), k=st.integers(1, 9))
def test_holomorphic_is_scale_and_weyl_invariant(name, v, k):
    s = structure(name)
    weight = tuple(F(x) for x in v[: s.roots.t_basis.dim])
    try:
        base = is_holomorphic(s, weight=weight)
    except DegenerateFunctional:
        return
    assert is_holomorphic(s, weight=tuple(F(k, 2) * x for x in weight)) == base
    for wk in s.weyl_k:
        image = tuple(sum(r[j] * weight[j] for j in range(len(weight))) for r in wk)
        assert is_holomorphic(s, weight=image) == base


def test_sampling_preserves_strong_ellipticity_and_is_deterministic(sp4):
    f = covector_from_weight(sp4, w(2, 1))
    a = sample_orbit_point(sp4, f, seed=3, index=1)
    assert a == sample_orbit_point(sp4, f, seed=3, index=1)
    assert a != f
    assert is_strongly_elliptic(sp4.g, a)
    fl = sample_orbit_point(sp4, f, seed=3, index=1, mode="float")
    assert len(fl) == len(f)
    with pytest.raises(ValueError):
        sample_orbit_point(sp4, f, seed=3, mode="other")


def test_theorem_holomorphic_su11(su11):
    res = verify_theorem31(su11, w(2), 100, 11)
    assert res["verdict"] == "CONSISTENT-HOLOMORPHIC"
    assert len(res["signatures_histogram"]) == 1


def test_theorem_holomorphic_su21(su21):
    res = verify_theorem31(su21, tuple(2 * x for x in su21.sum_y_weight), 60, 2)
    assert res["verdict"] == "CONSISTENT-HOLOMORPHIC"


def test_theorem_no_open_orbit_branch():
    s = structure("so(4,1)")
    res = verify_theorem31(s, w(3, 1), 10, 0)
    assert res["verdict"] == "CONSISTENT-NO-OPEN-ORBIT" and not res["holomorphic"]
    res = verify_theorem31(structure("so(5,1)"), (), 10, 0)
    assert res["verdict"] == "CONSISTENT-NO-OPEN-ORBIT"


def test_theorem_requires_strongly_elliptic(sp4):
    with pytest.raises((NotStronglyElliptic, DegenerateFunctional)):
        verify_theorem31(sp4, w(1, -1), 5, 0)


def test_lemma41_su11(su11):
    for rep in canonical_representatives(su11.cascade):
        res = lemma41_check(su11, rep, 100, 4)
        assert res["x1_constant"]
        assert res["xj_witness"] is None


def test_lemma41_sp4_witness(sp4):
    reps = canonical_representatives(sp4.cascade)
    results = [lemma41_check(sp4, r, 100, 4) for r in reps]
    assert all(r["x1_constant"] for r in results)
    assert any(r["xj_witness"] for r in results)


@pytest.mark.parametrize("name", ["sp(4,R)", "su(2,1)"])
def test_kostant_hull(name):
    res = kostant_hull_check(structure(name))
    assert res["all_inside"]
    assert res["beta"] in res["orbit"]
    assert res["orbit_sum_nonzero"] and res["orbit_sum_fixed"]


def test_kostant_hull_sp4_midpoint(sp4):
    res = kostant_hull_check(sp4)
    assert set(res["orbit"]) == {w(2, 0), w(0, 2)}
    assert res["members"][w(1, 1)]


@pytest.mark.parametrize("name", ["sp(4,R)", "su(2,1)", "so*(6)"])
@settings(max_examples=25, deadline=None)
@given(data=st.data(), k=st.fractions(min_value=F(1, 10), max_value=10).filter(lambda x: x > 0))
def test_predicates_ignore_positive_rescaling(name, data, k):
    # a positive rescaling of the X_j normalization acts on lam by positive factors
    c = structure(name).cascade
    n = len(c.s_basis)
    lam = [F(x) for x in data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))]
    sig = cascade_signature(c, lam)
    assert cascade_signature(c, [k * x for x in lam]) == sig
    assert is_open_orbit_point(c, [k * x for x in lam]) == isinstance(sig, Signs)


@pytest.mark.parametrize("name,f", [("sp(4,R)", w(2, 1)), ("su(1,1)", w(1))])
def test_opposite_functionals_give_opposite_constant_orbits(name, f):
    s = structure(name)
    plus = verify_theorem31(s, f, 40, 1, stop_at_witness=False)["signatures_histogram"]
    minus = verify_theorem31(s, tuple(-x for x in f), 40, 1, stop_at_witness=False)["signatures_histogram"]
    assert len(plus) == len(minus) == 1
    (p,), (m,) = plus, minus
    assert p == p.replace("-", "+") and m == m.replace("+", "-")
