"""Exact arithmetic and linear algebra over Q and Q(i).

Vectors are tuples (or lists) of ``Fraction``/``Gaussian`` entries and matrices
are lists of rows.  Nothing in this module ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "Gaussian",
    "as_fraction",
    "rank",
    "rref",
    "kernel",
    "solve",
    "mat_mul",
    "mat_vec",
    "vec_mat",
    "identity",
    "transpose",
    "inverse",
    "clear_denominators",
    "charpoly",
    "integer_eigenvalues",
    "is_positive_definite",
    "in_convex_hull",
    "primitive",
    "left_inverse",
    "DimensionError",
    "ZERO",
    "ONE",
    "I",
]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    pass


class Gaussian:
    """Element ``re + i*im`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @staticmethod
    def _lift(other):
        if isinstance(other, Gaussian):
            return other
        if isinstance(other, (int, Fraction)):
            return Gaussian(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Gaussian(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Gaussian(self.re * other, self.im * other)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Gaussian(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Gaussian(self.re / other, self.im / other)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("Gaussian division by zero")
        return Gaussian((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __pow__(self, k: int):
        if k < 0:
            return 1 / (self ** -k)
        out, base = Gaussian(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return Gaussian(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        return f"Gaussian({self.re}, {self.im})"


I = Gaussian(0, 1)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Gaussian):
        if x.im != 0:
            raise ValueError(f"{x!r} is not real")
        return x.re
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def identity(n: int) -> list[list[Fraction]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = list(zip(*b))
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append([sum((x * col[k] for k, x in nz), ZERO) for col in bt])
    return out


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    nz = [(k, x) for k, x in enumerate(v) if x]
    return [sum((row[k] * x for k, x in nz), ZERO) for row in a]


def vec_mat(v: Sequence, a: Sequence[Sequence]) -> list:
    """Row vector times matrix."""
    if not a:
        return []
    out = [ZERO] * len(a[0])
    for x, row in zip(v, a):
        if not x:
            continue
        for j, y in enumerate(row):
            if y:
                out[j] += x * y
    return out


def clear_denominators(row: Iterable[Fraction]) -> list[int]:
    """Scale a rational row to an integer row (by the lcm of denominators)."""
    row = [as_fraction(x) for x in row]
    d = 1
    for x in row:
        d = lcm(d, x.denominator)
    return [int(x * d) for x in row]


def _is_real(m) -> bool:
    return all(not isinstance(x, Gaussian) for row in m for x in row)


def _bareiss_rank(rows: list[list[int]]) -> int:
    # fraction-free elimination; every division below is exact
    rows = [r[:] for r in rows]
    n_rows = len(rows)
    if n_rows == 0:
        return 0
    n_cols = len(rows[0])
    prev = 1
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, n_rows):
            ric = rows[i][c]
            rows[i] = [(p * rows[i][j] - ric * rows[r][j]) // prev for j in range(n_cols)]
        prev = p
        r += 1
        if r == n_rows:
            break
    return r


def rank(m: Sequence[Sequence]) -> int:
    """Exact rank.  Rational input goes through fraction-free Bareiss elimination."""
    m = [list(row) for row in m]
    if not m or not m[0]:
        return 0
    if _is_real(m):
        return _bareiss_rank([clear_denominators(row) for row in m])
    return len(rref(m)[1])


def rref(m: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over Q or Q(i); returns (matrix, pivot columns)."""
    a = [[x if isinstance(x, Gaussian) else as_fraction(x) for x in row] for row in m]
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return a, pivots


def kernel(m: Sequence[Sequence], n_cols: int | None = None) -> list[list]:
    """Basis of the right null space {v : m v = 0}.

    Each basis vector has a 1 in its free coordinate and 0 in the other free
    coordinates.  ``n_cols`` is needed only when ``m`` has no rows.
    """
    if not m:
        if n_cols is None:
            raise DimensionError("kernel of an empty matrix needs n_cols")
        return [[ONE if i == j else ZERO for i in range(n_cols)] for j in range(n_cols)]
    a, pivots = rref(m)
    n = len(a[0])
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [ZERO] * n
        v[fcol] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][fcol]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list | None:
    """One exact solution x of a x = b, or None when the system is inconsistent."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    r, pivots = rref(aug)
    if n in pivots:
        return None
    x = [ZERO] * n
    for i, pc in enumerate(pivots):
        x[pc] = r[i][n]
    return x


def inverse(a: Sequence[Sequence]) -> list[list]:
    n = len(a)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r]


def charpoly(a: Sequence[Sequence]) -> list[Fraction]:
    """Coefficients [c_0, ..., c_n] of det(x I - a), c_n = 1 (Faddeev-LeVerrier)."""
    n = len(a)
    a = [[as_fraction(x) for x in row] for row in a]
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    m = [[ZERO] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        m = mat_mul(a, m)
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            m[i][i] += c_prev
        am = mat_mul(a, m)
        coeffs[n - k] = -sum((am[i][i] for i in range(n)), ZERO) / k
    return coeffs


def _poly_eval(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def integer_eigenvalues(a: Sequence[Sequence]) -> list[int]:
    """Distinct integer roots of the characteristic polynomial of an integer matrix.

    Integer roots of a monic integer polynomial are bounded by the max absolute
    row sum of the matrix, so a bounded scan is complete.
    """
    ints = [[int(as_fraction(x)) for x in row] for row in a]
    if any(as_fraction(x).denominator != 1 for row in a for x in row):
        raise ValueError("integer_eigenvalues needs an integer matrix")
    coeffs = [int(c) for c in charpoly(ints)]
    bound = max((sum(abs(x) for x in row) for row in ints), default=0)
    roots = []
    low = next(i for i, c in enumerate(coeffs) if c != 0)
    if low > 0:
        roots.append(0)
    reduced = coeffs[low:]
    tail = abs(reduced[0])
    for x in range(1, bound + 1):
        if tail % x:
            continue
        for cand in (x, -x):
            if _poly_eval(reduced, cand) == 0:
                roots.append(cand)
    return sorted(roots)


def is_positive_definite(sym: Sequence[Sequence]) -> bool:
    """Exact positive-definiteness via symmetric elimination (all pivots > 0).

    The empty form counts as positive definite.
    """
    a = [[as_fraction(x) for x in row] for row in sym]
    n = len(a)
    for k in range(n):
        p = a[k][k]
        if p <= 0:
            return False
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return True


def _simplex_phase1(a: list[list[Fraction]], b: list[Fraction]) -> bool:
    """Feasibility of {x >= 0 : a x = b} by exact phase-1 simplex with Bland's rule."""
    m = len(a)
    n = len(a[0]) if m else 0
    # make b >= 0
    rows = []
    for row, bi in zip(a, b):
        if bi < 0:
            rows.append([-x for x in row] + [-bi])
        else:
            rows.append(list(row) + [bi])
    # tableau columns: x_0..x_{n-1}, art_0..art_{m-1}, rhs
    tab = []
    for i, row in enumerate(rows):
        tab.append(row[:n] + [ONE if j == i else ZERO for j in range(m)] + [row[n]])
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimise sum of artificials -> reduced costs
    obj = [ZERO] * (width + 1)
    for row in tab:
        for j in range(n):
            obj[j] -= row[j]
        obj[width] -= row[width]
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(tab):
            if row[enter] > 0:
                ratio = row[width] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            # cannot happen in phase 1 (objective bounded below by 0)
            break
        i = best[1]
        p = tab[i][enter]
        tab[i] = [x / p for x in tab[i]]
        for k in range(m):
            if k != i and tab[k][enter]:
                f = tab[k][enter]
                tab[k] = [x - f * y for x, y in zip(tab[k], tab[i])]
        if obj[enter]:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, tab[i])]
        basis[i] = enter
    return obj[width] == 0


def in_convex_hull(y: Sequence, generators: Sequence[Sequence]) -> bool:
    """True iff y is a convex combination of the generators (decided exactly)."""
    y = [as_fraction(x) for x in y]
    gens = [[as_fraction(x) for x in g] for g in generators]
    if not gens:
        return False
    d = len(y)
    if any(len(g) != d for g in gens):
        raise DimensionError("all vectors must have the same dimension")
    a = [[g[i] for g in gens] for i in range(d)] + [[ONE] * len(gens)]
    return _simplex_phase1(a, y + [ONE])


def primitive(v: Sequence[Fraction]) -> list[Fraction]:
    """Scale a nonzero rational vector to coprime integers with positive leading entry."""
    ints = clear_denominators(v)
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return [ZERO] * len(ints)
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return [Fraction(x // g) for x in ints]


def left_inverse(vectors: Sequence[Sequence]) -> tuple[list[int], list[list]]:
    """(pivots, inv) with coords(v) = inv . v[pivots] for v in the span of ``vectors``."""
    _, pivots = rref(vectors)
    if len(pivots) != len(vectors):
        raise ValueError("vectors are not linearly independent")
    square = [[v[p] for v in vectors] for p in pivots]
    return pivots, inverse(square)
