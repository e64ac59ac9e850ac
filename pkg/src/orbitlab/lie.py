"""Lie algebras given by rational structure constants."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Sequence

from .exact import ZERO, ONE, as_fraction, is_positive_definite, kernel, mat_vec, rank, rref

__all__ = [
    "LieAlgebraData",
    "Subspace",
    "NotASubalgebra",
    "stabilizer",
    "is_compact_subalgebra",
    "centralizer",
    "span_contains",
    "save_algebra",
    "load_algebra",
]

Vector = tuple  # tuple of Fraction (or Gaussian for complexified vectors)


class NotASubalgebra(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LieAlgebraData:
    """Real Lie algebra with basis e_0..e_{n-1}, [e_i, e_j] = sum_k c[i][j][k] e_k.

    ``theta`` is the Cartan involution as a matrix acting on coordinate columns.
    """

    labels: tuple[str, ...]
    structure_constants: tuple  # c[i][j] is a tuple of length dim
    theta: tuple  # rows

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def _sparse(self):
        # (i, j) -> list of (k, c_ijk) with c_ijk != 0
        n = self.dim
        return [[[(k, c) for k, c in enumerate(self.structure_constants[i][j]) if c] for j in range(n)]
                for i in range(n)]

    def bracket(self, x: Sequence, y: Sequence) -> list:
        out = [ZERO] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        sp = self._sparse
        for i, a in xs:
            row = sp[i]
            for j, b in ys:
                ab = a * b
                for k, c in row[j]:
                    out[k] = out[k] + ab * c
        return out

    @cached_property
    def ad_matrices(self) -> list[list[list[Fraction]]]:
        """ad(e_i) as matrices: ad(e_i)[k][j] = c[i][j][k]."""
        n = self.dim
        return [[[self.structure_constants[i][j][k] for j in range(n)] for k in range(n)] for i in range(n)]

    def ad(self, x: Sequence) -> list[list]:
        n = self.dim
        m = [[ZERO] * n for _ in range(n)]
        for i, a in enumerate(x):
            if not a:
                continue
            adi = self.ad_matrices[i]
            for k in range(n):
                row = adi[k]
                mk = m[k]
                for j in range(n):
                    if row[j]:
                        mk[j] += a * row[j]
        return m

    @cached_property
    def killing_matrix(self) -> list[list[Fraction]]:
        n = self.dim
        c = self.structure_constants
        out = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                # tr(ad e_i ad e_j) = sum_{k,l} c[i][l][k] c[j][k][l]
                s = ZERO
                for l in range(n):
                    cil = c[i][l]
                    for k in range(n):
                        if cil[k]:
                            s += cil[k] * c[j][k][l]
                out[i][j] = out[j][i] = s
        return out

    def killing_form(self, x: Sequence, y: Sequence) -> Fraction:
        km = self.killing_matrix
        return sum((a * sum((km[i][j] * b for j, b in enumerate(y) if b), ZERO)
                    for i, a in enumerate(x) if a), ZERO)

    def apply_theta(self, x: Sequence) -> list:
        return mat_vec(self.theta, x)

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        """<x, y> = -K(x, theta y); positive definite."""
        return -self.killing_form(x, self.apply_theta(y))

    def basis_vector(self, i: int) -> list[Fraction]:
        v = [ZERO] * self.dim
        v[i] = ONE
        return v

    # -- invariant checks -------------------------------------------------
    def jacobi_violations(self) -> list[tuple[int, int, int]]:
        bad = []
        n = self.dim
        e = [self.basis_vector(i) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                eij = self.bracket(e[i], e[j])
                for k in range(j + 1, n):
                    s1 = self.bracket(e[k], eij)
                    s2 = self.bracket(e[i], self.bracket(e[j], e[k]))
                    s3 = self.bracket(e[j], self.bracket(e[k], e[i]))
                    if any(a + b + c for a, b, c in zip(s1, s2, s3)):
                        bad.append((i, j, k))
        return bad

    def is_antisymmetric(self) -> bool:
        c = self.structure_constants
        n = self.dim
        return all(c[i][j][k] == -c[j][i][k] for i in range(n) for j in range(n) for k in range(n))

    def theta_violations(self) -> list[tuple[int, int]]:
        n = self.dim
        bad = []
        th = [self.apply_theta(self.basis_vector(i)) for i in range(n)]
        for i in range(n):
            for j in range(i, n):
                lhs = self.apply_theta(self.structure_constants[i][j])
                rhs = self.bracket(th[i], th[j])
                if list(lhs) != list(rhs):
                    bad.append((i, j))
        return bad

    def theta_is_involution(self) -> bool:
        n = self.dim
        sq = [mat_vec(self.theta, mat_vec(self.theta, self.basis_vector(i))) for i in range(n)]
        return all(sq[i] == self.basis_vector(i) for i in range(n))

    def killing_invariance_violations(self) -> list[tuple[int, int, int]]:
        n = self.dim
        km = self.killing_matrix
        bad = []
        c = self.structure_constants
        for z in range(n):
            for x in range(n):
                zx = c[z][x]
                for y in range(x, n):
                    zy = c[z][y]
                    a = sum((zx[k] * km[k][y] for k in range(n) if zx[k]), ZERO)
                    b = sum((zy[k] * km[x][k] for k in range(n) if zy[k]), ZERO)
                    if a + b:
                        bad.append((z, x, y))
        return bad


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace of an algebra, spanned by independent coordinate vectors."""

    ambient: LieAlgebraData
    basis: tuple = field(default_factory=tuple)
    name: str = ""

    def __post_init__(self):
        basis = tuple(tuple(as_fraction(x) for x in v) for v in self.basis)
        object.__setattr__(self, "basis", basis)
        if basis and rank(basis) != len(basis):
            raise ValueError(f"basis of {self.name or 'subspace'} is not linearly independent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        return span_contains(self.basis, v)

    def contains_all(self, vectors) -> bool:
        if not self.basis:
            return all(not any(v) for v in vectors)
        r = rank(self.basis)
        return all(rank(list(self.basis) + [list(v)]) == r for v in vectors if any(v))

    def brackets_with(self, other: "Subspace"):
        g = self.ambient
        return [g.bracket(x, y) for x in self.basis for y in other.basis]

    def is_subalgebra(self) -> bool:
        return self.contains_all(self.brackets_with(self))

    def is_ideal_of(self, other: "Subspace | None" = None) -> bool:
        """Closure under brackets with ``other`` (the whole algebra by default)."""
        if other is None:
            other = full_space(self.ambient)
        return self.contains_all(other.brackets_with(self))

    def is_abelian(self) -> bool:
        return all(not any(v) for v in self.brackets_with(self))

    def killing_gram(self) -> list[list[Fraction]]:
        g = self.ambient
        return [[g.killing_form(x, y) for y in self.basis] for x in self.basis]

    def coordinates(self, v: Sequence) -> list[Fraction]:
        """Coordinates of v in this basis (v must lie in the span)."""
        from .exact import solve, transpose
        x = solve(transpose(self.basis), list(v))
        if x is None:
            raise ValueError(f"vector not in {self.name or 'subspace'}")
        return x

    def __add__(self, other: "Subspace") -> "Subspace":
        vecs = list(self.basis)
        for v in other.basis:
            if rank(vecs + [v]) > len(vecs):
                vecs.append(v)
        return Subspace(self.ambient, tuple(vecs), f"{self.name}+{other.name}")


def full_space(g: LieAlgebraData) -> Subspace:
    return Subspace(g, tuple(tuple(g.basis_vector(i)) for i in range(g.dim)), "g")


def span_contains(basis: Sequence[Sequence], v: Sequence) -> bool:
    if not any(v):
        return True
    if not basis:
        return False
    return rank(list(basis) + [list(v)]) == rank(basis)


def stabilizer(g: LieAlgebraData, f: Sequence) -> Subspace:
    """g(f) = {X : f([X, e_j]) = 0 for all j}; f given in the dual basis."""
    n = g.dim
    c = g.structure_constants
    # row j of the system: sum_i X_i f([e_i, e_j]) = 0
    fz = [(k, a) for k, a in enumerate(f) if a]
    rows = [[sum((a * c[i][j][k] for k, a in fz), ZERO) for i in range(n)] for j in range(n)]
    return Subspace(g, tuple(tuple(v) for v in kernel(rows)), "stabilizer")


def is_compact_subalgebra(s: Subspace) -> bool:
    """Negative definiteness of the ambient Killing form restricted to s."""
    if not s.is_subalgebra():
        raise NotASubalgebra(f"{s.name or 'subspace'} is not closed under the bracket")
    gram = s.killing_gram()
    return is_positive_definite([[-x for x in row] for row in gram])


def centralizer(g: LieAlgebraData, elements: Sequence[Sequence], within: Subspace | None = None) -> Subspace:
    """{X in within : [X, e] = 0 for every e in elements}."""
    if within is None:
        within = full_space(g)
    basis = within.basis
    if not basis:
        return within
    rows = []
    for e in elements:
        cols = [g.bracket(b, e) for b in basis]
        rows.extend([[col[k] for col in cols] for k in range(g.dim)])
    if not rows:
        return within
    coeffs = kernel(rows)
    vecs = [tuple(sum((c * b[k] for c, b in zip(cf, basis) if c), ZERO) for k in range(g.dim)) for cf in coeffs]
    return Subspace(g, tuple(vecs), "centralizer")


# -- cache file ------------------------------------------------------------
# Layout (schema_version 1):
# {"schema_version": 1, "labels": [...],
#  "structure_constants": [[i, j, k, "num", "den"], ...]   # nonzero c_ijk, i < j
#  "theta": [[["num", "den"], ...], ...]}

def _frac_pair(x: Fraction) -> list[str]:
    return [str(x.numerator), str(x.denominator)]


def algebra_to_json(g: LieAlgebraData) -> dict:
    records = []
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            for k, c in enumerate(g.structure_constants[i][j]):
                if c:
                    records.append([i, j, k, *_frac_pair(c)])
    return {
        "schema_version": 1,
        "labels": list(g.labels),
        "structure_constants": records,
        "theta": [[_frac_pair(x) for x in row] for row in g.theta],
    }


def algebra_from_json(doc: dict) -> LieAlgebraData:
    if doc.get("schema_version") != 1:
        raise ValueError("unsupported cache schema_version")
    n = len(doc["labels"])
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i, j, k, num, den in doc["structure_constants"]:
        v = Fraction(int(num), int(den))
        c[i][j][k] = v
        c[j][i][k] = -v
    theta = tuple(tuple(Fraction(int(a), int(b)) for a, b in row) for row in doc["theta"])
    return LieAlgebraData(
        labels=tuple(doc["labels"]),
        structure_constants=tuple(tuple(tuple(row) for row in ci) for ci in c),
        theta=theta,
    )


def save_algebra(g: LieAlgebraData, path: str | Path) -> None:
    Path(path).write_text(json.dumps(algebra_to_json(g), indent=1))


def load_algebra(path: str | Path) -> LieAlgebraData:
    return algebra_from_json(json.loads(Path(path).read_text()))
