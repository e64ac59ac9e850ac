from fractions import Fraction as F

import pytest

from orbitlab.real_forms import (RealFormSpec, UnsupportedRealForm, build_real_form, cartan_decomposition,
                                 iwasawa_n, maximal_abelian_in_p, realize, restricted_roots)
from orbitlab.lie import is_compact_subalgebra

from conftest import ALL_ALGEBRAS, structure

DIMS = {  # name -> (dim g, dim k, real rank)
    "su(1,1)": (3, 1, 1), "su(2,1)": (8, 4, 1), "su(2,2)": (15, 7, 2), "sp(4,R)": (10, 4, 2),
    "sp(6,R)": (21, 9, 3), "so(2,4)": (15, 7, 2), "so*(6)": (15, 9, 1), "so(4,1)": (10, 6, 1),
    "so(5,1)": (15, 10, 1),
}


def mults(name):
    d = structure(name).datum
    return sorted((r, d.root_spaces[r].dim) for r in d.positive)


@pytest.mark.parametrize("text,family,params", [
    ("su(2,1)", "su_pq", (2, 1)), ("sp(4,R)", "sp_2n_R", (2,)), ("so*(6)", "so_2n_star", (3,)),
    ("so(4,1)", "so_p_q", (4, 1)), (" SP(6, r) ", "sp_2n_R", (3,)),
])
def test_parse(text, family, params):
    s = RealFormSpec.parse(text)
    assert (s.family, s.params) == (family, params)
    assert RealFormSpec.from_json(s.to_json()) == s


@pytest.mark.parametrize("bad", ["su(0,1)", "sp(3,R)", "so*(5)", "gl(3)", "so(1,1)", "su(6,5)", "so*(2)"])
def test_invalid_specs(bad):
    with pytest.raises(UnsupportedRealForm):
        RealFormSpec.parse(bad)


def test_unknown_family():
    with pytest.raises(UnsupportedRealForm):
        RealFormSpec("e6", (1,))


@pytest.mark.parametrize("name", ALL_ALGEBRAS)
def test_dimensions_and_cartan_decomposition(name):
    spec = RealFormSpec.parse(name)
    g = build_real_form(spec)
    k, p = cartan_decomposition(g)
    dim, dk, rr = DIMS[name]
    assert (g.dim, k.dim, maximal_abelian_in_p(g, spec).dim) == (dim, dk, rr)
    assert k.dim + p.dim == g.dim
    assert is_compact_subalgebra(k)
    # inner product -K(x, theta y) is positive definite
    assert all(g.inner(v, v) > 0 for v in k.basis + p.basis)


def test_matrix_roundtrip():
    real = realize(RealFormSpec.parse("su(2,1)"))
    for i, m in enumerate(real.matrices):
        c = real.coordinates(m)
        assert c == [F(int(i == j)) for j in range(len(real.matrices))]


def test_restricted_root_tables():
    assert mults("su(1,1)") == [((F(2),), 1)]
    assert sorted(m for _, m in mults("su(2,1)")) == [1, 2]
    assert all(m == 1 for _, m in mults("sp(4,R)"))
    assert all(m == 1 for _, m in mults("sp(6,R)"))
    so24 = dict(mults("so(2,4)"))
    assert sorted(so24.values()) == [1, 1, 2, 2]
    assert [m for _, m in mults("so(4,1)")] == [3]
    assert [m for _, m in mults("so(5,1)")] == [4]
    assert sorted(m for _, m in mults("so*(6)")) == [1, 4]


@pytest.mark.parametrize("name", ["su(2,1)", "sp(4,R)", "so(2,4)"])
def test_root_multiplicities_account_for_dimension(name):
    d = structure(name).datum
    total = sum(s.dim for s in d.root_spaces.values()) + d.m_subspace.dim + d.a.dim
    assert total == d.g.dim
    assert iwasawa_n(d).dim == sum(d.root_spaces[r].dim for r in d.positive)


def test_long_and_short_roots_of_so24():
    d = structure("so(2,4)").datum
    for r in d.positive:
        norm = d.inner(r, r)
        expected = 1 if norm == max(d.inner(x, x) for x in d.positive) else 2
        assert d.root_spaces[r].dim == expected
