"""Strongly orthogonal cascade, canonical open-orbit representatives, and the
graded pieces n1, n2, n3, n_c of a + n."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import isqrt

from .exact import ZERO, ONE, kernel, rank
from .lie import LieAlgebraData, Subspace, centralizer, is_compact_subalgebra
from .real_forms import RestrictedRootDatum, cartan_decomposition, lex_positive

__all__ = [
    "CascadeData",
    "CanonicalRep",
    "Prop51Check",
    "NoOpenOrbit",
    "build_cascade",
    "canonical_representatives",
    "verify_prop51_hypotheses",
    "maximal_abelian_subalgebra",
    "compact_cartan",
    "compact_cartan_of_k",
]


class NoOpenOrbit(ValueError):
    """Raised when an operation needs an open AN-orbit and none exists."""


def _half(v):
    return tuple(x / 2 for x in v)


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True, eq=False)
class CascadeData:
    datum: RestrictedRootDatum
    upsilon: tuple  # beta_1 .. beta_r
    X: tuple  # root vectors X_j (g-coordinates)
    Y: tuple  # X_j + theta X_j
    exists_open_orbit: bool
    s_basis: tuple  # basis of a + n: a-basis, then positive root spaces (X_j for beta_j)
    s_root: tuple  # root label of each s-basis vector (None for a)
    grading: dict  # positive root -> ("sum", i, j) | ("half", i) | ("diff", i, j) | None
    n1: Subspace | None = None
    n2: Subspace | None = None
    n3: Subspace | None = None
    nc: Subspace | None = None
    half: Subspace | None = None
    t_basis: Subspace | None = None
    h_k: Subspace | None = None

    @property
    def r(self) -> int:
        return len(self.upsilon)

    @property
    def g(self) -> LieAlgebraData:
        return self.datum.g

    @property
    def s(self) -> Subspace:
        return Subspace(self.g, self.s_basis, "a+n")

    def s_indices(self, root) -> list[int]:
        return [i for i, lab in enumerate(self.s_root) if lab == root]

    @property
    def x_index(self) -> tuple[int, ...]:
        """Position of each X_j in the a + n basis."""
        return tuple(self.s_indices(b)[0] for b in self.upsilon)

    def n3_indices(self) -> list[int]:
        return [i for i, lab in enumerate(self.s_root) if lab is not None and (self.grading.get(lab) or ("",))[0] == "sum"]

    @property
    def hermitian_grading(self) -> bool:
        """Every positive restricted root is (b_i+b_j)/2, b_i/2 or (b_i-b_j)/2."""
        return self.exists_open_orbit and all(v is not None for v in self.grading.values())

    def sum_root(self, i: int, j: int):
        return _half(_add(self.upsilon[i], self.upsilon[j]))

    def diff_root(self, i: int, j: int):
        return _half(_sub(self.upsilon[i], self.upsilon[j]))


def _strongly_orthogonal(datum, b, c) -> bool:
    return b != c and not datum.is_root(_add(b, c)) and not datum.is_root(_sub(b, c))


def _normalized_root_vector(g: LieAlgebraData, datum: RestrictedRootDatum, beta, sign=1):
    """Basis vector X of the 1-dim space g_beta scaled so that beta(-[X, theta X]) = 2."""
    x0 = list(datum.root_spaces[beta].basis[0])
    hx = [-v for v in g.bracket(x0, g.apply_theta(x0))]
    h = datum.a.coordinates(hx)
    t = sum((hk * bk for hk, bk in zip(h, beta)), ZERO)
    s = _rational_sqrt(2 / t)
    if s is None:
        raise AssertionError(f"root vector of {beta} cannot be sl2-normalized over Q (t={t})")
    return tuple(sign * s * v for v in x0)


def _classify(datum, upsilon, gamma):
    r = len(upsilon)
    for i in range(r):
        for j in range(i, r):
            if gamma == _half(_add(upsilon[i], upsilon[j])):
                return ("sum", i, j)
    for i in range(r):
        if gamma == _half(upsilon[i]):
            return ("half", i)
    for i in range(r):
        for j in range(i + 1, r):
            if gamma == _half(_sub(upsilon[i], upsilon[j])):
                return ("diff", i, j)
    return None


def build_cascade(datum: RestrictedRootDatum, signs=None) -> CascadeData:
    """Greedy cascade from the highest positive root; ties follow the lex order.

    ``signs`` flips the chosen root vectors X_j (default all +1).
    """
    g = datum.g
    chosen = []
    for beta in sorted(datum.positive, reverse=True):
        if all(_strongly_orthogonal(datum, beta, c) for c in chosen):
            chosen.append(beta)
    upsilon = tuple(chosen)
    r = len(upsilon)
    exists = r == datum.a.dim and all(datum.root_spaces[b].dim == 1 for b in upsilon)
    if signs is None:
        signs = (1,) * r
    if exists:
        X = tuple(_normalized_root_vector(g, datum, b, sgn) for b, sgn in zip(upsilon, signs))
    else:
        X = tuple(tuple(datum.root_spaces[b].basis[0]) for b in upsilon)
    Y = tuple(tuple(a + b for a, b in zip(x, g.apply_theta(x))) for x in X)

    s_basis = list(datum.a.basis)
    s_root = [None] * datum.a.dim
    for beta in datum.positive:
        if beta in upsilon:
            vecs = [X[upsilon.index(beta)]]
        else:
            vecs = list(datum.root_spaces[beta].basis)
        s_basis.extend(vecs)
        s_root.extend([beta] * len(vecs))
    grading = {gam: _classify(datum, upsilon, gam) for gam in datum.positive}

    c = CascadeData(datum, upsilon, X, Y, exists, tuple(tuple(v) for v in s_basis), tuple(s_root), grading)
    if not exists:
        return c

    def sub(kinds, name, with_a=False):
        vecs = list(datum.a.basis) if with_a else []
        for v, lab in zip(s_basis, s_root):
            if lab is not None and grading[lab] is not None and grading[lab][0] in kinds:
                vecs.append(v)
        return Subspace(g, tuple(tuple(v) for v in vecs), name)

    n3 = sub(("sum",), "n3")
    half = sub(("half",), "n_half")
    nc = sub(("diff",), "n_c")
    n1 = sub(("diff",), "n1", with_a=True)
    n2 = sub(("sum", "half"), "n2")
    m = datum.m_subspace
    h_k = maximal_abelian_subalgebra(g, m)
    c = CascadeData(datum, upsilon, X, Y, exists, c.s_basis, c.s_root, grading, n1, n2, n3, nc, half, None, h_k)
    t = compact_cartan(c, h_k)
    object.__setattr__(c, "t_basis", t)
    return c


def maximal_abelian_subalgebra(g: LieAlgebraData, within: Subspace) -> Subspace:
    """Greedy extension: add centralizer elements until the centralizer is the span."""
    chosen: list = []
    for _ in range(within.dim + 1):
        cent = centralizer(g, chosen, within=within) if chosen else within
        if cent.dim == len(chosen):
            break
        for v in cent.basis:
            if rank(chosen + [list(v)]) > len(chosen):
                chosen.append(list(v))
                break
    return Subspace(g, tuple(tuple(v) for v in chosen), "h_k")


def compact_cartan(c: CascadeData, h_k: Subspace) -> Subspace:
    """t = h_k + span(X_j + theta X_j); checked abelian, compact, theta-fixed, self-centralizing."""
    g = c.g
    basis = list(h_k.basis) + [list(y) for y in c.Y]
    t = Subspace(g, tuple(tuple(v) for v in basis), "t")
    _check_compact_cartan(g, t)
    return t


def compact_cartan_of_k(g: LieAlgebraData) -> Subspace | None:
    """A maximal abelian subalgebra of k, if it is a Cartan subalgebra of g."""
    k, _ = cartan_decomposition(g)
    t = maximal_abelian_subalgebra(g, k)
    t = Subspace(g, t.basis, "t")
    if centralizer(g, t.basis).dim != t.dim:
        return None
    _check_compact_cartan(g, t)
    return t


def _check_compact_cartan(g, t: Subspace):
    if not t.is_abelian():
        raise AssertionError("t is not abelian")
    if any(list(g.apply_theta(v)) != list(v) for v in t.basis):
        raise AssertionError("t is not theta-fixed")
    if not is_compact_subalgebra(t):
        raise AssertionError("t is not compact")
    if centralizer(g, t.basis).dim != t.dim:
        raise AssertionError("t is not self-centralizing (not of full rank)")


@dataclass(frozen=True)
class CanonicalRep:
    signs: tuple
    covector: tuple  # values on the a + n basis of the cascade


def canonical_representatives(c: CascadeData) -> list[CanonicalRep]:
    """One representative per open AN-orbit: s(X_j) = eps_j, zero elsewhere."""
    if not c.exists_open_orbit:
        raise NoOpenOrbit("no open AN-coadjoint orbit exists for this algebra")
    reps = []
    idx = c.x_index
    for eps in product((1, -1), repeat=c.r):
        cov = [ZERO] * len(c.s_basis)
        for j, e in enumerate(eps):
            cov[idx[j]] = Fraction(e)
        reps.append(CanonicalRep(tuple(eps), tuple(cov)))
    return reps


@dataclass(frozen=True)
class Prop51Check:
    ok: bool
    checks: dict
    reason: str = ""


def verify_prop51_hypotheses(c: CascadeData) -> Prop51Check:
    """Hypotheses (i)-(iv) for s = a + n with s1 = n1, s2 = n2, s3 = n3."""
    if not c.exists_open_orbit:
        return Prop51Check(False, {}, "no open AN-orbit: r != dim a or some g_beta_j has dim > 1")
    if not c.hermitian_grading:
        return Prop51Check(False, {}, "restricted roots are not graded by the cascade")
    from .orbits import is_open_orbit_point  # local: orbits depends on this module

    s = c.s
    g = c.g
    n1, n2, n3 = c.n1, c.n2, c.n3
    checks = {
        "n1_subalgebra": n1.is_subalgebra(),
        "n2_ideal": n2.is_ideal_of(s),
        "n3_abelian": n3.is_abelian(),
        "n3_ideal": n3.is_ideal_of(s),
        "n2_n2_in_n3": n3.contains_all(n2.brackets_with(n2)),
        "n2_n3_zero": all(not any(v) for v in n2.brackets_with(n3)),
        "dim_n3_eq_dim_n1": n3.dim == n1.dim,
        "direct_sum": n1.dim + n2.dim == s.dim and rank(list(n1.basis) + list(n2.basis)) == s.dim,
        "open_orbit_exists": is_open_orbit_point(c, canonical_representatives(c)[0].covector),
    }
    ok = all(checks.values())
    return Prop51Check(ok, checks, "" if ok else "failed: " + ", ".join(k for k, v in checks.items() if not v))
