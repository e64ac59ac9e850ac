"""Roots of (g_C, t_C) for a compact Cartan t, the compact Weyl group, Z_0 and rho.

A root alpha is stored by its values alpha(H_m)/i on the t-basis H_m.  These
"weight coordinates" are also how functionals f in t* and parameters lambda
are given.  Pairings use <phi, psi> = phi^T G^{-1} psi with G_mn = -K(H_m, H_n).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .exact import ZERO, ONE, Gaussian, I, inverse, is_positive_definite, kernel, rank, solve
from .lie import LieAlgebraData, Subspace, centralizer
from .real_forms import cartan_decomposition, simultaneous_eigenspaces

__all__ = [
    "ComplexRoot",
    "ComplexRootDatum",
    "InnerProductOnT",
    "RootDecompositionError",
    "NotHermitian",
    "root_decomposition",
    "weyl_group_K",
    "z0_element",
    "rho_vectors",
    "center_of_k",
    "positive_by",
    "is_abelian_root_set",
    "is_wk_stable",
]

WEYL_BOUND = 5000


class RootDecompositionError(AssertionError):
    """The eigenspace decomposition of ad(t) is not the expected one."""


class NotHermitian(ValueError):
    """Raised when an operation needs a nontrivial center of k."""


@dataclass(frozen=True)
class ComplexRoot:
    coords: tuple  # alpha(H_m)/i
    vector: tuple  # root vector over Q(i), g-coordinates
    compact: bool

    def __neg__(self):
        return ComplexRoot(tuple(-x for x in self.coords), tuple(v.conjugate() for v in self.vector), self.compact)


@dataclass(frozen=True, eq=False)
class InnerProductOnT:
    gram: tuple  # rows of -K on the t-basis

    def __post_init__(self):
        if not is_positive_definite(self.gram):
            raise RootDecompositionError("-K is not positive definite on t")

    @cached_property
    def gram_inv(self):
        return inverse(self.gram)

    @property
    def dim(self) -> int:
        return len(self.gram)

    def weights(self, phi, psi) -> Fraction:
        """Pairing of two weight-coordinate vectors."""
        gi = self.gram_inv
        n = self.dim
        return sum((phi[i] * gi[i][j] * psi[j] for i in range(n) if phi[i] for j in range(n)), ZERO)

    def vectors(self, x, y) -> Fraction:
        """Pairing of two elements of t given in t-basis coordinates."""
        gm = self.gram
        n = self.dim
        return sum((x[i] * gm[i][j] * y[j] for i in range(n) if x[i] for j in range(n)), ZERO)

    def reflection(self, alpha):
        """Matrix of s_alpha acting on weight-coordinate columns."""
        n = self.dim
        gi = self.gram_inv
        ga = [sum((gi[i][j] * alpha[j] for j in range(n)), ZERO) for i in range(n)]  # G^{-1} alpha
        aa = self.weights(alpha, alpha)
        return tuple(tuple((ONE if i == j else ZERO) - 2 * alpha[i] * ga[j] / aa for j in range(n)) for i in range(n))

    def scaled(self, c) -> "InnerProductOnT":
        return InnerProductOnT(tuple(tuple(c * x for x in row) for row in self.gram))


@dataclass(frozen=True, eq=False)
class ComplexRootDatum:
    g: LieAlgebraData
    t_basis: Subspace
    roots: tuple  # ComplexRoot records
    ip: InnerProductOnT

    @cached_property
    def by_coords(self) -> dict:
        return {r.coords: r for r in self.roots}

    @property
    def compact(self) -> tuple:
        return tuple(r for r in self.roots if r.compact)

    @property
    def noncompact(self) -> tuple:
        return tuple(r for r in self.roots if not r.compact)

    def is_root(self, coords) -> bool:
        return tuple(coords) in self.by_coords

    def weight_of(self, x) -> tuple:
        """Weight coordinates of the covector -K(x, .) restricted to t, for x in g."""
        g = self.g
        return tuple(-g.killing_form(x, h) for h in self.t_basis.basis)

    def root_value(self, alpha, x_t) -> Fraction:
        """alpha(X)/i for X = sum x_m H_m."""
        return sum((a * x for a, x in zip(alpha, x_t)), ZERO)


def _gaussian_kernel(rows, n_cols):
    return kernel(rows, n_cols=n_cols) if rows else kernel([], n_cols=n_cols)


def _normalize(vec):
    lead = next(v for v in vec if v)
    return tuple(v / lead for v in vec)


def root_decomposition(g: LieAlgebraData, t: Subspace) -> ComplexRootDatum:
    """Joint eigenvectors of ad(t) on g_C; eigenvalues must lie in iQ and spaces be lines."""
    ads = [g.ad(h) for h in t.basis]
    n = g.dim
    squares = []
    for a in ads:
        sq = [[sum((a[i][k] * a[k][j] for k in range(n) if a[i][k]), ZERO) for j in range(n)] for i in range(n)]
        squares.append(sq)
    spaces = simultaneous_eigenspaces(squares, n, error=RootDecompositionError)
    zero = tuple(ZERO for _ in t.basis)
    if len(spaces.get(zero, [])) != t.dim:
        raise RootDecompositionError("centralizer of t is larger than t")
    roots = []
    for key, vecs in spaces.items():
        if key == zero:
            continue
        qs = []
        for mu in key:
            if mu > 0:
                raise RootDecompositionError("ad(t) has a non-imaginary eigenvalue")
            q = _sqrt(-mu)
            if q is None:
                raise RootDecompositionError(f"eigenvalue sqrt({-mu}) i is not rational")
            qs.append(q)
        images = [[_apply(a, v) for v in vecs] for a in ads]
        found = 0
        for signs in _sign_patterns(qs):
            q = tuple(s * x for s, x in zip(signs, qs))
            rows = []
            for m in range(t.dim):
                for r in range(n):
                    rows.append([Gaussian(images[m][w][r]) - I * q[m] * vecs[w][r] for w in range(len(vecs))])
            coeffs = _gaussian_kernel(rows, len(vecs))
            if not coeffs:
                continue
            if len(coeffs) != 1:
                raise RootDecompositionError(f"root space for {q} has dimension {len(coeffs)}")
            vec = tuple(sum((c * v[r] for c, v in zip(coeffs[0], vecs) if c), Gaussian(0)) for r in range(n))
            vec = _normalize(vec)
            re = [v.re for v in vec]
            im = [v.im for v in vec]
            in_k = list(g.apply_theta(re)) == re and list(g.apply_theta(im)) == im
            in_p = list(g.apply_theta(re)) == [-x for x in re] and list(g.apply_theta(im)) == [-x for x in im]
            if in_k == in_p:
                raise RootDecompositionError(f"root space {q} is neither in k_C nor in p_C")
            roots.append(ComplexRoot(q, vec, in_k))
            found += 1
        if found != len(vecs):
            raise RootDecompositionError("eigenvalue signs do not account for the whole eigenspace")
    if len(roots) != n - t.dim:
        raise RootDecompositionError("wrong number of roots")
    roots.sort(key=lambda r: r.coords, reverse=True)
    gram = tuple(tuple(-g.killing_form(x, y) for y in t.basis) for x in t.basis)
    return ComplexRootDatum(g, t, tuple(roots), InnerProductOnT(gram))


def _apply(m, v):
    return [sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in m]


def _sqrt(x: Fraction):
    from .cascade import _rational_sqrt
    return _rational_sqrt(x)


def _sign_patterns(qs):
    from itertools import product
    choices = [(1,) if q == 0 else (1, -1) for q in qs]
    return product(*choices)


def weyl_group_K(d: ComplexRootDatum, ip: InnerProductOnT | None = None) -> list:
    """Closure of the compact reflections, as matrices on weight coordinates."""
    ip = ip or d.ip
    n = ip.dim
    ident = tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
    gens = []
    for r in d.compact:
        s = ip.reflection(r.coords)
        if s not in gens:
            gens.append(s)
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                ws = _matmul(s, w)
                if ws not in group:
                    group.add(ws)
                    nxt.append(ws)
                    if len(group) > WEYL_BOUND:
                        raise RootDecompositionError("compact Weyl group closure exceeded its bound")
        frontier = nxt
    return sorted(group)


def _matmul(a, b):
    n = len(b[0])
    return tuple(tuple(sum((x * b[k][j] for k, x in enumerate(row) if x), ZERO) for j in range(n)) for row in a)


def act(w, phi) -> tuple:
    return tuple(sum((a * x for a, x in zip(row, phi)), ZERO) for row in w)


def center_of_k(g: LieAlgebraData) -> Subspace:
    k, _ = cartan_decomposition(g)
    return centralizer(g, k.basis, within=k)


def positive_by(d: ComplexRootDatum, weight, roots=None, strict=True) -> tuple:
    """Roots alpha with <weight, alpha> > 0; raises if some pairing vanishes and ``strict``."""
    roots = d.roots if roots is None else roots
    out = []
    for r in roots:
        v = d.ip.weights(weight, r.coords)
        if v == 0 and strict:
            raise ValueError(f"weight is singular on the root {r.coords}")
        if v > 0:
            out.append(r)
    return tuple(out)


def is_abelian_root_set(d: ComplexRootDatum, roots) -> bool:
    """The span of the root vectors of ``roots`` is closed under brackets.

    For noncompact roots [p, p] lies in k, so closure means all brackets vanish.
    """
    g = d.g
    coords = {r.coords for r in roots}
    for a in roots:
        for b in roots:
            if a.coords >= b.coords:
                continue
            br = g.bracket(a.vector, b.vector)
            if any(br):
                s = tuple(x + y for x, y in zip(a.coords, b.coords))
                if s not in coords:
                    return False
    return True


def is_wk_stable(d: ComplexRootDatum, roots, group=None) -> bool:
    group = weyl_group_K(d) if group is None else group
    coords = {r.coords for r in roots}
    return all(act(w, c) in coords for w in group for c in coords)


def z0_element(d: ComplexRootDatum, delta_n_plus) -> tuple:
    """Coordinates of Z_0 on the t-basis: alpha(Z_0) = -i on delta_n_plus, 0 on compact roots."""
    z = center_of_k(d.g)
    if z.dim == 0:
        raise NotHermitian("the center of k is trivial")
    l = d.t_basis.dim
    rows = [list(r.coords) for r in delta_n_plus] + [list(r.coords) for r in d.compact]
    rhs = [-ONE] * len(delta_n_plus) + [ZERO] * len(d.compact)
    x = solve(rows, rhs)
    if x is None:
        raise NotHermitian("no Z_0 solves the system; delta_n_plus is not holomorphic")
    if rank(rows) != l:
        raise NotHermitian("Z_0 is not unique")
    vec = [sum((c * h[i] for c, h in zip(x, d.t_basis.basis)), ZERO) for i in range(d.g.dim)]
    if not z.contains(vec):
        raise NotHermitian("Z_0 is not central in k")
    return tuple(x)


def rho_vectors(d: ComplexRootDatum, delta_c_plus, delta_n_plus):
    """(rho_G, rho_K, rho_n) as weight coordinates."""
    l = d.t_basis.dim

    def half_sum(roots):
        return tuple(sum((r.coords[m] for r in roots), ZERO) / 2 for m in range(l))

    rho_k = half_sum(delta_c_plus)
    rho_n = half_sum(delta_n_plus)
    rho_g = tuple(a + b for a, b in zip(rho_k, rho_n))
    return rho_g, rho_k, rho_n
