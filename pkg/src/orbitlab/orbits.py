"""Coadjoint orbits of G and of S = AN: predicates, openness, signatures, sampling.

Covectors on g are rows in the dual basis.  Covectors on s = a + n are value
lists on the cascade's s-basis; on n3 they are value lists on the n3 part of it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cascade import CanonicalRep, CascadeData, NoOpenOrbit, canonical_representatives
from .complex_roots import act, is_abelian_root_set, is_wk_stable, positive_by
from .exact import ZERO, ONE, in_convex_hull, left_inverse, rank, solve, vec_mat
from .group import GroupContext, GroupWord
from .lie import LieAlgebraData, is_compact_subalgebra, stabilizer

__all__ = [
    "NotOpen",
    "Signs",
    "NotStronglyElliptic",
    "DegenerateFunctional",
    "PredicateDisagreement",
    "s_structure",
    "kks_matrix",
    "is_open_orbit_point",
    "cascade_signature",
    "project_p",
    "project_p1",
    "lift_from_s",
    "dual_covector",
    "covector_from_weight",
    "is_strongly_elliptic",
    "is_holomorphic",
    "holomorphic_system",
    "sample_orbit_point",
    "verify_theorem31",
    "lemma41_check",
    "kostant_hull_check",
    "orbit_context",
]


class NotStronglyElliptic(ValueError):
    pass


class DegenerateFunctional(ValueError):
    """<f, i alpha> = 0 for some noncompact root alpha."""


class PredicateDisagreement(AssertionError):
    """Two characterizations of the same property disagree."""


@dataclass(frozen=True)
class NotOpen:
    pivot: int  # 1-based cascade index where elimination stopped

    @property
    def label(self) -> str:
        return f"NotOpen({self.pivot})"


@dataclass(frozen=True)
class Signs:
    eps: tuple

    @property
    def label(self) -> str:
        return "Signs(" + ",".join("+" if e > 0 else "-" for e in self.eps) + ")"


# -- structure of s = a + n ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class SStructure:
    cascade: CascadeData
    consts: tuple  # consts[i][j] = s-coordinates of [s_i, s_j]
    pivots: tuple
    inv: tuple

    @property
    def dim(self) -> int:
        return len(self.consts)

    def coordinates(self, v) -> list:
        return [sum((row[j] * v[p] for j, p in enumerate(self.pivots) if v[p]), ZERO) for row in self.inv]


@lru_cache(maxsize=None)
def s_structure(c: CascadeData) -> SStructure:
    g = c.g
    basis = [list(v) for v in c.s_basis]
    pivots, inv = left_inverse(basis)
    n = len(basis)

    def coords(v):
        return tuple(sum((row[j] * v[p] for j, p in enumerate(pivots) if v[p]), ZERO) for row in inv)

    consts = [[None] * n for _ in range(n)]
    for i in range(n):
        consts[i][i] = tuple(ZERO for _ in range(n))
        for j in range(i + 1, n):
            v = g.bracket(basis[i], basis[j])
            cv = coords(v)
            if [sum((cv[k] * basis[k][r] for k in range(n) if cv[k]), ZERO) for r in range(g.dim)] != list(v):
                raise AssertionError("a + n is not closed under the bracket")
            consts[i][j] = cv
            consts[j][i] = tuple(-x for x in cv)
    return SStructure(c, tuple(tuple(r) for r in consts), tuple(pivots), tuple(tuple(r) for r in inv))


def kks_matrix(c: CascadeData, lam) -> list[list[Fraction]]:
    """B[i][j] = lam([s_i, s_j])."""
    st = s_structure(c)
    n = st.dim
    nz = [(k, x) for k, x in enumerate(lam) if x]
    return [[sum((x * st.consts[i][j][k] for k, x in nz), ZERO) for j in range(n)] for i in range(n)]


def is_open_orbit_point(c: CascadeData, lam) -> bool:
    """S.lam is open in s* iff the KKS form has full rank."""
    if len(lam) != len(c.s_basis):
        raise ValueError("covector length does not match dim(a + n)")
    return rank(kks_matrix(c, lam)) == len(lam)


# -- cascade elimination on n3* -----------------------------------------------

def _n3_covector(c: CascadeData, lam) -> dict:
    """Values of lam on the n3 basis, keyed by s-index."""
    idx = c.n3_indices()
    if len(lam) == len(c.s_basis):
        return {i: Fraction(lam[i]) for i in idx}
    if len(lam) == len(idx):
        return {i: Fraction(v) for i, v in zip(idx, lam)}
    raise ValueError("covector must live on a + n or on n3")


def cascade_signature(c: CascadeData, lam, reverse: bool = False) -> NotOpen | Signs:
    """Eliminate the off-diagonal part of lam|n3 with exp(n_c) and read the signs on X_k.

    Signs are invariant under the torus, so no final rescaling is needed.
    ``reverse`` runs the inner loop over j > k in decreasing order.
    """
    if not c.exists_open_orbit:
        raise NoOpenOrbit("cascade signature needs an open orbit")
    st = s_structure(c)
    lam3 = _n3_covector(c, lam)
    idx3 = list(lam3)
    xs = c.x_index
    r = c.r
    for k in range(r):
        pv = lam3[xs[k]]
        if pv == 0:
            return NotOpen(k + 1)
        js = range(k + 1, r)
        for j in (reversed(js) if reverse else js):
            y_idx = c.s_indices(c.diff_root(k, j))
            z_idx = c.s_indices(c.sum_root(k, j))
            if not z_idx or all(lam3[z] == 0 for z in z_idx):
                continue
            if not y_idx:
                raise AssertionError("missing root space needed for elimination")
            m = [[st.consts[y][z][xs[k]] for y in y_idx] for z in z_idx]
            coef = solve(m, [lam3[z] / pv for z in z_idx])
            if coef is None:
                raise AssertionError("elimination system is singular")
            lam3 = _exp_neg_ad_n3(st, lam3, idx3, dict(zip(y_idx, coef)))
        for j in range(k + 1, r):
            if any(lam3[z] for z in c.s_indices(c.sum_root(k, j))):
                raise AssertionError("elimination left an off-diagonal entry")
    return Signs(tuple(1 if lam3[x] > 0 else -1 for x in xs))


def _exp_neg_ad_n3(st: SStructure, lam3: dict, idx3: list, y: dict) -> dict:
    """lam o Ad(exp(-Y)) on n3 (an abelian ideal, so the series is finite)."""
    # (lam o ad(Y))(Z_i) = sum_k lam_k [Y, Z_i]_k
    def lam_ad(vals):
        out = {}
        for i in idx3:
            s = ZERO
            for yi, cy in y.items():
                if cy:
                    br = st.consts[yi][i]
                    s += cy * sum((vals[k] * br[k] for k in idx3 if br[k] and vals[k]), ZERO)
            out[i] = s
        return out

    out = dict(lam3)
    term = dict(lam3)
    for n in range(1, len(idx3) + 2):
        term = {i: -v / n for i, v in lam_ad(term).items()}
        if not any(term.values()):
            return out
        out = {i: out[i] + term[i] for i in idx3}
    raise AssertionError("ad(Y) is not nilpotent on n3")


# -- projections and duality --------------------------------------------------

def project_p(c: CascadeData, f) -> list:
    """Restriction of f in g* to a + n, as values on the s-basis."""
    return [sum((a * b for a, b in zip(f, v) if a and b), ZERO) for v in c.s_basis]


def project_p1(c: CascadeData, f) -> list:
    """Restriction of f in g* to n3."""
    lam = project_p(c, f)
    return [lam[i] for i in c.n3_indices()]


def lift_from_s(c: CascadeData, lam) -> list:
    """Some F in g* with F|_{a+n} = lam."""
    st = s_structure(c)
    g = c.g
    out = [ZERO] * g.dim
    for row_i, li in zip(st.inv, lam):
        if li:
            for j, p in enumerate(st.pivots):
                out[p] += li * row_i[j]
    return out


def dual_covector(g: LieAlgebraData, x) -> list:
    """F(e_i) = <x, e_i> = -K(x, theta e_i)."""
    km = g.killing_matrix
    tx = [-v for v in x]
    ktx = [sum((tx[i] * km[i][j] for i in range(g.dim) if tx[i]), ZERO) for j in range(g.dim)]
    return vec_mat(ktx, g.theta)


def covector_from_weight(structure, weight) -> list:
    """F = -K(X_f, .) with X_f in t chosen so that F(H_m) = weight_m."""
    d = structure.roots
    g = structure.g
    x = [sum((d.ip.gram_inv[m][k] * weight[k] for k in range(len(weight))), ZERO) for m in range(len(weight))]
    xf = [sum((c * h[i] for c, h in zip(x, d.t_basis.basis)), ZERO) for i in range(g.dim)]
    km = g.killing_matrix
    return [-sum((xf[i] * km[i][j] for i in range(g.dim) if xf[i]), ZERO) for j in range(g.dim)]


# -- predicates -----------------------------------------------------------------

def is_strongly_elliptic(g: LieAlgebraData, f) -> bool:
    return is_compact_subalgebra(stabilizer(g, f))


def _weight_of_covector(structure, f) -> tuple:
    d = structure.roots
    g = structure.g
    stab = stabilizer(g, f)
    if not stab.contains_all(d.t_basis.basis):
        raise ValueError("f is not aligned with t: t is not contained in g(f)")
    return tuple(sum((a * b for a, b in zip(f, h)), ZERO) for h in d.t_basis.basis)


def holomorphic_system(structure, weight) -> tuple:
    """Delta_n^+ = {alpha noncompact : <f, alpha> > 0}; rejects degenerate f."""
    d = structure.roots
    for r in d.noncompact:
        if d.ip.weights(weight, r.coords) == 0:
            raise DegenerateFunctional(f"f pairs to zero with the noncompact root {r.coords}")
    return positive_by(d, weight, d.noncompact)


def is_holomorphic(structure, f=None, weight=None) -> bool:
    """Bracket closure of the positive noncompact root spaces, cross-checked with W_K-stability.

    Give either a covector ``f`` on g (aligned with t) or its ``weight`` on the t-basis.
    """
    if structure.roots is None:
        return False
    if weight is None:
        weight = _weight_of_covector(structure, f)
    dnp = holomorphic_system(structure, weight)
    d = structure.roots
    closed = is_abelian_root_set(d, dnp)
    stable = is_wk_stable(d, dnp, structure.weyl_k)
    if closed != stable:
        raise PredicateDisagreement("bracket closure and W_K-stability disagree")
    return closed


# -- sampling -------------------------------------------------------------------

_CONTEXTS: dict = {}


def orbit_context(structure) -> GroupContext:
    key = id(structure)
    if key not in _CONTEXTS:
        _CONTEXTS[key] = (structure, GroupContext(structure))
    return _CONTEXTS[key][1]


def sample_word(structure, seed: int, index: int, k_len: int = 4, an_len: int = 3) -> GroupWord:
    """an . k with letters drawn from a generator seeded by (seed, index)."""
    ctx = orbit_context(structure)
    rng = np.random.default_rng([seed, index])
    k = ctx.random_k_word(rng, k_len)
    an = ctx.random_an_word(rng, an_len)
    return an + k


def sample_orbit_point(structure, f, seed: int, index: int = 0, mode: str = "exact"):
    """A point of G.f; exact mode uses rational letters only."""
    ctx = orbit_context(structure)
    if mode == "exact":
        return ctx.coadjoint(sample_word(structure, seed, index), f)
    if mode == "float":
        rng = np.random.default_rng([seed, index])
        return ctx.coadjoint(ctx.random_float_word(rng), f)
    raise ValueError("mode must be 'exact' or 'float'")


# -- verification drivers ---------------------------------------------------------

def verify_theorem31(structure, weight, n_samples: int, seed: int, stop_at_witness: bool = True) -> dict:
    """Holomorphic iff the projection of G.f is one open AN-orbit, checked on samples."""
    c = structure.cascade
    base = {"n_samples": n_samples, "seed": seed, "signatures_histogram": {}, "witnesses": []}
    if structure.roots is None:
        return {**base, "verdict": "CONSISTENT-NO-OPEN-ORBIT", "holomorphic": False, "samples_used": 0,
                "reason": "g has no compact Cartan subalgebra, so no strongly elliptic f exists"}
    f = covector_from_weight(structure, weight)
    if not is_strongly_elliptic(structure.g, f):
        raise NotStronglyElliptic("f is not strongly elliptic")
    holo = is_holomorphic(structure, weight=weight)
    if not c.exists_open_orbit:
        if holo:
            return {**base, "verdict": "VIOLATION", "holomorphic": True, "samples_used": 0,
                    "reason": "holomorphic f found although no open AN-orbit exists"}
        return {**base, "verdict": "CONSISTENT-NO-OPEN-ORBIT", "holomorphic": False, "samples_used": 0,
                "reason": "no open AN-orbit exists and f is not holomorphic"}
    hist: Counter = Counter()
    witnesses = []
    used = 0
    ctx = orbit_context(structure)
    for i in range(n_samples):
        word = sample_word(structure, seed, i)
        lam = project_p(c, ctx.coadjoint(word, f))
        sig = cascade_signature(c, lam)
        if isinstance(sig, Signs) != is_open_orbit_point(c, lam):
            raise PredicateDisagreement("KKS rank and cascade signature disagree on openness")
        hist[sig.label] += 1
        used = i + 1
        if not holo:
            if isinstance(sig, NotOpen):
                witnesses.append({"sample": i, "kind": "not-open", "signature": sig.label})
            elif len([k for k in hist if k.startswith("Signs")]) > 1 and not witnesses:
                witnesses.append({"sample": i, "kind": "mixed-signatures", "signatures": sorted(hist)})
            if witnesses and stop_at_witness:
                break
    out = {**base, "holomorphic": holo, "samples_used": used, "signatures_histogram": dict(sorted(hist.items())),
           "witnesses": witnesses}
    if holo:
        ok = len(hist) == 1 and next(iter(hist)).startswith("Signs")
        out["verdict"] = "CONSISTENT-HOLOMORPHIC" if ok else "VIOLATION"
    else:
        out["verdict"] = "CONSISTENT-NONHOLOMORPHIC" if witnesses else "INCONCLUSIVE"
    return out


def lemma41_check(structure, rep: CanonicalRep, n_samples: int, seed: int) -> dict:
    """Sign of (w.s)(X_1) over AN-words w; also looks for a sign change on X_j, j >= 2."""
    c = structure.cascade
    if not c.exists_open_orbit:
        raise NoOpenOrbit("no open AN-orbit")
    ctx = orbit_context(structure)
    F = lift_from_s(c, rep.covector)
    xs = c.x_index
    signs1 = set()
    witness = None
    for i in range(n_samples):
        rng = np.random.default_rng([seed, i])
        w = ctx.random_an_word(rng, 3)
        lam = project_p(c, ctx.coadjoint(w, F))
        v1 = lam[xs[0]]
        signs1.add(0 if v1 == 0 else (1 if v1 > 0 else -1))
        if witness is None:
            for j in range(1, c.r):
                vj = lam[xs[j]]
                if vj and (vj > 0) != (rep.signs[j] > 0):
                    witness = {"sample": i, "j": j + 1, "value": vj}
                    break
    return {
        "signs": rep.signs,
        "x1_constant": signs1 == {rep.signs[0]},
        "x1_signs_seen": sorted(signs1),
        "n_samples": n_samples,
        "seed": seed,
        "xj_witness": witness,
    }


def long_noncompact_root(structure):
    d = structure.roots
    dnp = structure.delta_n_plus
    norms = [d.ip.weights(r.coords, r.coords) for r in dnp]
    top = max(norms)
    return next(r for r, n in zip(dnp, norms) if n == top)


def kostant_hull_check(structure) -> dict:
    """Every alpha in Delta_n^+ lies in the convex hull of W_K.beta, beta long."""
    if structure.delta_n_plus is None:
        raise NoOpenOrbit("needs a Hermitian algebra with a holomorphic system")
    beta = long_noncompact_root(structure)
    orbit = sorted({act(w, beta.coords) for w in structure.weyl_k})
    members = {r.coords: in_convex_hull(r.coords, orbit) for r in structure.delta_n_plus}
    total = tuple(sum((v[m] for v in (act(w, beta.coords) for w in structure.weyl_k)), ZERO)
                  for m in range(len(beta.coords)))
    fixed = all(act(w, total) == total for w in structure.weyl_k)
    return {
        "beta": beta.coords,
        "orbit": orbit,
        "members": members,
        "all_inside": all(members.values()),
        "orbit_sum_nonzero": any(total),
        "orbit_sum_fixed": fixed,
    }
