"""Matrix realizations of the classical real forms and their Iwasawa data.

Every algebra is built from explicit (complex) matrices with theta(X) = -X^*.
Structure constants are read off once; downstream code never sees matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .exact import (ZERO, ONE, as_fraction, clear_denominators, integer_eigenvalues, inverse,
                    is_positive_definite, kernel, primitive, rank, rref)
from .lie import LieAlgebraData, Subspace, centralizer, full_space

__all__ = [
    "RealFormSpec",
    "Realization",
    "RestrictedRootDatum",
    "UnsupportedRealForm",
    "build_real_form",
    "realize",
    "cartan_decomposition",
    "maximal_abelian_in_p",
    "restricted_roots",
    "iwasawa_n",
    "FAMILIES",
]

FAMILIES = ("su_pq", "sp_2n_R", "so_2n_star", "so_p_q")
MAX_MATRIX_SIZE = 10


class UnsupportedRealForm(ValueError):
    pass


@dataclass(frozen=True)
class RealFormSpec:
    family: str
    params: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(int(x) for x in self.params))
        if self.family not in FAMILIES:
            raise UnsupportedRealForm(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        expected = 1 if self.family in ("sp_2n_R", "so_2n_star") else 2
        if len(self.params) != expected:
            raise UnsupportedRealForm(f"{self.family} takes {expected} integer parameter(s)")
        if any(x < 1 for x in self.params):
            raise UnsupportedRealForm("parameters must be positive")
        if self.matrix_size > MAX_MATRIX_SIZE:
            raise UnsupportedRealForm(f"matrix size {self.matrix_size} exceeds {MAX_MATRIX_SIZE}")
        if self.family == "so_p_q" and sum(self.params) < 3:
            raise UnsupportedRealForm("so(p,q) needs p + q >= 3")
        if self.family == "so_2n_star" and self.params[0] < 2:
            raise UnsupportedRealForm("so*(2n) needs n >= 2")

    @property
    def matrix_size(self) -> int:
        if self.family in ("su_pq", "so_p_q"):
            return sum(self.params)
        return 2 * self.params[0]

    @property
    def name(self) -> str:
        if self.family == "su_pq":
            return "su(%d,%d)" % self.params
        if self.family == "so_p_q":
            return "so(%d,%d)" % self.params
        if self.family == "sp_2n_R":
            return "sp(%d,R)" % (2 * self.params[0])
        return "so*(%d)" % (2 * self.params[0])

    @classmethod
    def from_json(cls, doc: dict) -> "RealFormSpec":
        family = doc.get("family")
        if family in ("su_pq", "so_p_q"):
            return cls(family, (doc["p"], doc["q"]))
        if family in ("sp_2n_R", "so_2n_star"):
            return cls(family, (doc["n"],))
        raise UnsupportedRealForm(f"unknown family {family!r}")

    def to_json(self) -> dict:
        if self.family in ("su_pq", "so_p_q"):
            return {"family": self.family, "p": self.params[0], "q": self.params[1]}
        return {"family": self.family, "n": self.params[0]}

    @classmethod
    def parse(cls, text: str) -> "RealFormSpec":
        """Parse names such as 'su(2,1)', 'sp(4,R)', 'so*(6)', 'so(4,1)'."""
        t = text.replace(" ", "").lower()
        try:
            if t.startswith("su(") and t.endswith(")"):
                p, q = t[3:-1].split(",")
                return cls("su_pq", (int(p), int(q)))
            if t.startswith("sp(") and t.endswith(")"):
                m = t[3:-1].split(",")[0]
                if int(m) % 2:
                    raise UnsupportedRealForm("sp(2n,R) needs an even size")
                return cls("sp_2n_R", (int(m) // 2,))
            if t.startswith("so*(") and t.endswith(")"):
                m = int(t[4:-1])
                if m % 2:
                    raise UnsupportedRealForm("so*(2n) needs an even size")
                return cls("so_2n_star", (m // 2,))
            if t.startswith("so(") and t.endswith(")"):
                p, q = t[3:-1].split(",")
                return cls("so_p_q", (int(p), int(q)))
        except ValueError as exc:
            if isinstance(exc, UnsupportedRealForm):
                raise
            raise UnsupportedRealForm(f"cannot parse {text!r}") from exc
        raise UnsupportedRealForm(f"cannot parse {text!r}")


# -- matrices: (re, im) pairs of int64 arrays ---------------------------------

def _E(n, i, j):
    m = np.zeros((n, n), dtype=np.int64)
    m[i, j] = 1
    return m


def _blocks(a, b, c, d):
    return np.block([[a, b], [c, d]])


def _cmul(x, y):
    return (x[0] @ y[0] - x[1] @ y[1], x[0] @ y[1] + x[1] @ y[0])


def _cbracket(x, y):
    p, q = _cmul(x, y), _cmul(y, x)
    return (p[0] - q[0], p[1] - q[1])


def _basis_su(p, q):
    n = p + q
    z = np.zeros((n, n), dtype=np.int64)
    k, pp = [], []
    same = lambda i, j: (i < p) == (j < p)
    for i in range(n):
        for j in range(i + 1, n):
            if same(i, j):
                k.append((f"E{i}{j}-E{j}{i}", (_E(n, i, j) - _E(n, j, i), z)))
                k.append((f"i(E{i}{j}+E{j}{i})", (z, _E(n, i, j) + _E(n, j, i))))
            else:
                pp.append((f"E{i}{j}+E{j}{i}", (_E(n, i, j) + _E(n, j, i), z)))
                pp.append((f"i(E{i}{j}-E{j}{i})", (z, _E(n, i, j) - _E(n, j, i))))
    for a in range(n - 1):
        k.append((f"i(E{a}{a}-E{a + 1}{a + 1})", (z, _E(n, a, a) - _E(n, a + 1, a + 1))))
    h = [(_E(n, a, p + a) + _E(n, p + a, a), z) for a in range(min(p, q))]
    return k, pp, h


def _basis_so(p, q):
    n = p + q
    z = np.zeros((n, n), dtype=np.int64)
    k, pp = [], []
    for i in range(n):
        for j in range(i + 1, n):
            if (i < p) == (j < p):
                k.append((f"E{i}{j}-E{j}{i}", (_E(n, i, j) - _E(n, j, i), z)))
            else:
                pp.append((f"E{i}{j}+E{j}{i}", (_E(n, i, j) + _E(n, j, i), z)))
    h = [(_E(n, a, p + a) + _E(n, p + a, a), z) for a in range(min(p, q))]
    return k, pp, h


def _basis_sp(n):
    z = np.zeros((n, n), dtype=np.int64)
    zz = np.zeros((2 * n, 2 * n), dtype=np.int64)
    k, pp = [], []
    for i in range(n):
        for j in range(i + 1, n):
            a = _E(n, i, j) - _E(n, j, i)
            k.append((f"A{i}{j}", (_blocks(a, z, z, a), zz)))
    for i in range(n):
        for j in range(i, n):
            s = _E(n, i, j) + _E(n, j, i) if i != j else _E(n, i, i)
            k.append((f"B{i}{j}", (_blocks(z, s, -s, z), zz)))
    for i in range(n):
        for j in range(i, n):
            s = _E(n, i, j) + _E(n, j, i) if i != j else _E(n, i, i)
            pp.append((f"S{i}{j}", (_blocks(s, z, z, -s), zz)))
            pp.append((f"T{i}{j}", (_blocks(z, s, s, z), zz)))
    h = [(_blocks(_E(n, a, a), z, z, -_E(n, a, a)), zz) for a in range(n)]
    return k, pp, h


def _basis_so_star(n):
    z = np.zeros((n, n), dtype=np.int64)
    zz = np.zeros((2 * n, 2 * n), dtype=np.int64)
    k, pp = [], []
    for i in range(n):
        for j in range(i + 1, n):
            a = _E(n, i, j) - _E(n, j, i)
            k.append((f"A{i}{j}", (_blocks(a, z, z, a), zz)))
            s = _E(n, i, j) + _E(n, j, i)
            # A = i s, conj(A) = -i s
            k.append((f"iS{i}{j}", (zz, _blocks(s, z, z, -s))))
    for i in range(n):
        d = _E(n, i, i)
        k.append((f"iD{i}", (zz, _blocks(d, z, z, -d))))
    for i in range(n):
        for j in range(i + 1, n):
            b = _E(n, i, j) - _E(n, j, i)
            pp.append((f"B{i}{j}", (_blocks(z, b, -b, z), zz)))
            pp.append((f"iB{i}{j}", (zz, _blocks(z, b, b, z))))
    h = []
    for a in range(n // 2):
        b = _E(n, 2 * a, 2 * a + 1) - _E(n, 2 * a + 1, 2 * a)
        h.append((_blocks(z, b, -b, z), zz))
    return k, pp, h


@dataclass(frozen=True, eq=False)
class Realization:
    """Matrix data behind an algebra: basis matrices and the standard a-basis."""

    spec: RealFormSpec
    algebra: LieAlgebraData
    matrices: tuple  # (re, im) per basis element
    dim_k: int
    a_basis: tuple  # coordinate vectors of the standard maximal abelian a in p
    _pivots: tuple = field(repr=False, default=())
    _left_inverse: tuple = field(repr=False, default=())

    def coordinates(self, mat) -> list[Fraction]:
        return _coordinates(mat, self.matrices, self._pivots, self._left_inverse)

    def matrix(self, coords):
        """Exact (re, im) Fraction matrices of a coordinate vector."""
        n = self.matrices[0][0].shape[0]
        re = [[ZERO] * n for _ in range(n)]
        im = [[ZERO] * n for _ in range(n)]
        for c, (mr, mi) in zip(coords, self.matrices):
            if not c:
                continue
            for a in range(n):
                for b in range(n):
                    if mr[a, b]:
                        re[a][b] += c * int(mr[a, b])
                    if mi[a, b]:
                        im[a][b] += c * int(mi[a, b])
        return re, im


def _flat(mat):
    return np.concatenate([mat[0].ravel(), mat[1].ravel()])


def _coordinates(mat, matrices, pivots, left_inv):
    flat = _flat(mat)
    rhs = [Fraction(int(flat[p])) for p in pivots]
    coords = [sum((row[j] * rhs[j] for j in range(len(rhs)) if rhs[j]), ZERO) for row in left_inv]
    # membership check: reconstruct exactly
    recon = np.zeros(flat.shape, dtype=object)
    for c, m in zip(coords, matrices):
        if c:
            recon = recon + _flat(m).astype(object) * c
    if any(Fraction(recon[i]) != int(flat[i]) for i in range(len(flat))):
        raise ValueError("matrix is not in the span of the realization basis")
    return coords


def _realize_uncached(spec: RealFormSpec) -> Realization:
    fam, par = spec.family, spec.params
    if fam == "su_pq":
        k, pp, h = _basis_su(*par)
    elif fam == "so_p_q":
        k, pp, h = _basis_so(*par)
    elif fam == "sp_2n_R":
        k, pp, h = _basis_sp(*par)
    else:
        k, pp, h = _basis_so_star(*par)
    labels = tuple(f"k:{lab}" for lab, _ in k) + tuple(f"p:{lab}" for lab, _ in pp)
    mats = tuple(m for _, m in k) + tuple(m for _, m in pp)
    n = len(mats)
    flat = np.array([_flat(m) for m in mats], dtype=np.int64)  # n x N
    cols = [[Fraction(int(x)) for x in flat[:, r]] for r in range(flat.shape[1])]
    # choose n independent real coordinates (rows of the N x n system)
    _, pivots = rref([[Fraction(int(flat[i, r])) for r in range(flat.shape[1])] for i in range(n)])
    if len(pivots) != n:
        raise UnsupportedRealForm("realization basis is not linearly independent")
    sub = [cols[p] for p in pivots]
    left_inv = tuple(tuple(r) for r in inverse(sub))
    pivots = tuple(pivots)

    def coords(m):
        return _coordinates(m, mats, pivots, left_inv)

    c = [[None] * n for _ in range(n)]
    zero = [ZERO] * n
    for i in range(n):
        c[i][i] = tuple(zero)
        for j in range(i + 1, n):
            v = coords(_cbracket(mats[i], mats[j]))
            c[i][j] = tuple(v)
            c[j][i] = tuple(-x for x in v)
    theta = []
    for m in mats:
        # theta(X) = -X^*  (conjugate transpose)
        t = (-m[0].T, m[1].T)
        theta.append(coords(t))
    theta_rows = tuple(tuple(theta[j][i] for j in range(n)) for i in range(n))
    g = LieAlgebraData(labels=labels, structure_constants=tuple(tuple(r) for r in c), theta=theta_rows)
    a_basis = tuple(tuple(coords(m)) for m in h)
    return Realization(spec, g, mats, len(k), a_basis, pivots, left_inv)


_REALIZATIONS: dict[RealFormSpec, Realization] = {}


def realize(spec: RealFormSpec) -> Realization:
    if spec not in _REALIZATIONS:
        _REALIZATIONS[spec] = _realize_uncached(spec)
    return _REALIZATIONS[spec]


def build_real_form(spec: RealFormSpec, check: bool = True) -> LieAlgebraData:
    """Structure constants of the real form; Jacobi and theta are checked exactly."""
    g = realize(spec).algebra
    if check:
        if not g.is_antisymmetric():
            raise AssertionError("structure constants are not antisymmetric")
        if not g.theta_is_involution():
            raise AssertionError("theta is not an involution")
        if g.theta_violations():
            raise AssertionError("theta is not an automorphism")
        if g.jacobi_violations():
            raise AssertionError("Jacobi identity fails")
    return g


def cartan_decomposition(g: LieAlgebraData) -> tuple[Subspace, Subspace]:
    """(k, p) as the +1 / -1 eigenspaces of theta, with bracket relations checked."""
    if not g.theta_is_involution():
        raise ValueError("theta is not involutive")
    n = g.dim
    th = g.theta
    plus = kernel([[th[i][j] - (ONE if i == j else ZERO) for j in range(n)] for i in range(n)])
    minus = kernel([[th[i][j] + (ONE if i == j else ZERO) for j in range(n)] for i in range(n)])
    k = Subspace(g, tuple(tuple(v) for v in plus), "k")
    p = Subspace(g, tuple(tuple(v) for v in minus), "p")
    if not (k.contains_all(k.brackets_with(k)) and p.contains_all(k.brackets_with(p))
            and k.contains_all(p.brackets_with(p))):
        raise AssertionError("Cartan decomposition bracket relations fail")
    return k, p


def maximal_abelian_in_p(g: LieAlgebraData, spec: RealFormSpec | None = None) -> Subspace:
    """The family's standard a, checked abelian, inside p, and self-centralizing in p."""
    if spec is None:
        spec = _spec_of(g)
    real = realize(spec)
    a = Subspace(g, real.a_basis, "a")
    _, p = cartan_decomposition(g)
    if not a.is_abelian() or not p.contains_all(a.basis):
        raise AssertionError("standard a is not an abelian subspace of p")
    if centralizer(g, a.basis, within=p).dim != a.dim:
        raise AssertionError("standard a is not maximal abelian in p")
    return a


def _spec_of(g: LieAlgebraData) -> RealFormSpec:
    for spec, real in _REALIZATIONS.items():
        if real.algebra is g:
            return spec
    raise ValueError("algebra was not built by build_real_form; pass its spec")


# -- restricted roots ----------------------------------------------------------

Root = tuple  # tuple of Fraction: values beta(H_k) on the a-basis


def lex_positive(v) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def _apply(m, v):
    return [sum((row[j] * v[j] for j in range(len(v)) if v[j]), ZERO) for row in m]


def _scaled_integer(m):
    d = 1
    for row in m:
        for x in row:
            d = lcm(d, x.denominator)
    return d, [[int(x * d) for x in row] for row in m]


def simultaneous_eigenspaces(operators, n: int, error=ValueError):
    """Joint eigenspaces of commuting, real-diagonalizable rational operators.

    Returns a dict eigenvalue-tuple -> list of basis vectors.
    """
    spaces = {(): [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]}
    for op in operators:
        d, op_int = _scaled_integer(op)
        eigen = [Fraction(e, d) for e in integer_eigenvalues(op_int)]
        new = {}
        for key, vecs in spaces.items():
            images = [_apply(op, v) for v in vecs]
            found = 0
            for mu in eigen:
                cols = [[im[r] - mu * v[r] for r in range(n)] for im, v in zip(images, vecs)]
                rows = [[col[r] for col in cols] for r in range(n)]
                coeffs = kernel(rows)
                if coeffs:
                    new[key + (mu,)] = [
                        [sum((c * v[r] for c, v in zip(cf, vecs) if c), ZERO) for r in range(n)] for cf in coeffs
                    ]
                    found += len(coeffs)
            if found != len(vecs):
                raise error("operator is not semisimple with rational eigenvalues")
        spaces = new
    return spaces


@dataclass(frozen=True, eq=False)
class RestrictedRootDatum:
    g: LieAlgebraData
    a: Subspace
    roots: tuple  # all restricted roots (tuples), lex-descending
    root_spaces: dict  # root -> Subspace
    m_subspace: Subspace

    @property
    def positive(self) -> tuple:
        return tuple(r for r in self.roots if lex_positive(r))

    @property
    def multiplicities(self) -> dict:
        return {r: s.dim for r, s in self.root_spaces.items()}

    def is_root(self, v) -> bool:
        return tuple(v) in self.root_spaces

    def highest_root(self):
        return max(self.positive)

    def gram_a(self):
        return [[self.g.killing_form(x, y) for y in self.a.basis] for x in self.a.basis]

    def inner(self, beta, gamma) -> Fraction:
        """Killing-dual inner product on a*."""
        ginv = inverse(self.gram_a())
        return sum((beta[i] * ginv[i][j] * gamma[j] for i in range(len(beta)) for j in range(len(gamma))), ZERO)


def restricted_roots(g: LieAlgebraData, a: Subspace) -> RestrictedRootDatum:
    ops = [g.ad(h) for h in a.basis]
    spaces = simultaneous_eigenspaces(ops, g.dim)
    zero = tuple(ZERO for _ in a.basis)
    if zero not in spaces:
        raise AssertionError("a has trivial centralizer")
    root_spaces = {}
    for key, vecs in spaces.items():
        if key == zero:
            continue
        vecs = [primitive(v) for v in vecs]
        root_spaces[key] = Subspace(g, tuple(tuple(v) for v in vecs), "g_" + ",".join(map(str, key)))
    k, _ = cartan_decomposition(g)
    m = centralizer(g, a.basis, within=k)
    m = Subspace(g, tuple(tuple(primitive(v)) for v in m.basis), "m")
    if m.dim + a.dim != len(spaces[zero]):
        raise AssertionError("centralizer of a is not m + a")
    roots = tuple(sorted(root_spaces, reverse=True))
    return RestrictedRootDatum(g, a, roots, root_spaces, m)


def iwasawa_n(datum: RestrictedRootDatum) -> Subspace:
    """n = sum of positive root spaces; checked nilpotent, a + n checked solvable."""
    g = datum.g
    vecs = [v for r in datum.positive for v in datum.root_spaces[r].basis]
    n = Subspace(g, tuple(vecs), "n")
    if not n.is_subalgebra():
        raise AssertionError("n is not a subalgebra")
    if not _is_nilpotent(n):
        raise AssertionError("n is not nilpotent")
    s = datum.a + n
    if not _is_solvable(s):
        raise AssertionError("a + n is not solvable")
    return n


def _span(g, vectors):
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return []
    r, piv = rref(vecs)
    return [row for row in r[: len(piv)]]


def _is_nilpotent(s: Subspace) -> bool:
    g = s.ambient
    cur = list(s.basis)
    for _ in range(g.dim + 1):
        if not cur:
            return True
        nxt = _span(g, [g.bracket(x, y) for x in s.basis for y in cur])
        if len(nxt) >= len(cur):
            return False
        cur = nxt
    return not cur


def _is_solvable(s: Subspace) -> bool:
    g = s.ambient
    cur = list(s.basis)
    for _ in range(g.dim + 1):
        if not cur:
            return True
        nxt = _span(g, [g.bracket(x, y) for x in cur for y in cur])
        if len(nxt) >= len(cur):
            return False
        cur = nxt
    return not cur
