"""Group words and their exact adjoint/coadjoint action.

Letters act on g through Ad.  Every letter except FloatExp has a rational Ad
matrix, so words made of them move rational covectors to rational covectors.
Covectors are rows in the dual basis; the coadjoint action is f -> f o Ad(g^-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .exact import ZERO, ONE, Gaussian, integer_eigenvalues, inverse, mat_vec, vec_mat
from .lie import LieAlgebraData
from .real_forms import cartan_decomposition

__all__ = [
    "NilpotentExp",
    "TorusScale",
    "PythagoreanRotation",
    "FloatExp",
    "GroupWord",
    "GroupContext",
    "pythagorean",
    "random_rational",
]


@dataclass(frozen=True)
class NilpotentExp:
    X: tuple  # g-coordinates of an ad-nilpotent element

    def inverse(self):
        return NilpotentExp(tuple(-x for x in self.X))


@dataclass(frozen=True)
class TorusScale:
    t: tuple  # positive rationals, one per a-coordinate

    def inverse(self):
        return TorusScale(tuple(1 / x for x in self.t))


@dataclass(frozen=True)
class PythagoreanRotation:
    generator: int  # index into GroupContext.rotation_generators
    cos: Fraction
    sin: Fraction

    def __post_init__(self):
        if self.cos * self.cos + self.sin * self.sin != 1:
            raise ValueError("cos^2 + sin^2 must be 1")

    def inverse(self):
        return PythagoreanRotation(self.generator, self.cos, -self.sin)


@dataclass(frozen=True)
class FloatExp:
    X: tuple
    time: float

    def inverse(self):
        return FloatExp(self.X, -self.time)


@dataclass(frozen=True)
class GroupWord:
    letters: tuple = ()

    @property
    def exact(self) -> bool:
        return not any(isinstance(x, FloatExp) for x in self.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple(x.inverse() for x in reversed(self.letters)))

    def __add__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)


def pythagorean(t: Fraction) -> tuple[Fraction, Fraction]:
    """(cos, sin) of the angle 2 arctan t, both rational."""
    d = 1 + t * t
    return (1 - t * t) / d, 2 * t / d


def random_rational(rng: np.random.Generator, num: int = 3, den: int = 3) -> Fraction:
    return Fraction(int(rng.integers(-num, num + 1)), int(rng.integers(1, den + 1)))


class _Rotation:
    """Spectral data of ad(K) for K in k with spectrum in iZ."""

    def __init__(self, g: LieAlgebraData, k_vec):
        n = g.dim
        a = g.ad(k_vec)
        a2 = _mm(a, a)
        d, a2_int = _scaled(a2)
        if d != 1:
            raise ValueError("ad(K)^2 is not integral")
        eig = sorted(set(integer_eigenvalues(a2_int)))
        ks = []
        for mu in eig:
            j = _isqrt_neg(mu)
            if j is None:
                raise ValueError("ad(K) spectrum is not in iZ")
            ks.append(j)
        ident = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        self.parts = []  # (j, Q_j, A Q_j / j)
        for j in ks:
            q = ident
            for i in ks:
                if i == j:
                    continue
                shifted = [[a2[r][c] + (i * i if r == c else 0) for c in range(n)] for r in range(n)]
                q = _mm(q, shifted)
                q = [[x / (i * i - j * j) for x in row] for row in q]
            aq = [[x / j for x in row] for row in _mm(a, q)] if j else None
            self.parts.append((j, q, aq))

    def _apply(self, v, cos, sin, mult):
        out = [ZERO] * len(v)
        z = Gaussian(cos, sin)
        for j, q, aq in self.parts:
            zj = z ** j
            out = [o + zj.re * x for o, x in zip(out, mult(v, q))]
            if aq is not None and zj.im:
                out = [o + zj.im * x for o, x in zip(out, mult(v, aq))]
        return out

    def apply_row(self, f, cos, sin):
        """f . Ad(exp(theta K)) with cos theta, sin theta given."""
        return self._apply(f, cos, sin, vec_mat)

    def apply_col(self, x, cos, sin):
        return self._apply(x, cos, sin, lambda v, m: mat_vec(m, v))


def _monomial(t, exponents) -> Fraction:
    out = ONE
    for tm, bm in zip(t, exponents):
        out *= Fraction(tm) ** bm
    return out


def _mm(a, b):
    n = len(b[0])
    return [[sum((x * b[k][j] for k, x in enumerate(row) if x), ZERO) for j in range(n)] for row in a]


def _scaled(m):
    from math import lcm
    d = 1
    for row in m:
        for x in row:
            d = lcm(d, Fraction(x).denominator)
    return d, [[int(x * d) for x in row] for row in m]


def _isqrt_neg(mu):
    from math import isqrt
    if mu > 0:
        return None
    r = isqrt(-mu)
    return r if r * r == -mu else None


class GroupContext:
    """Caches the data needed to act by letters on one algebra."""

    def __init__(self, structure):
        self.structure = structure
        self.g = structure.g
        self.cascade = structure.cascade
        self.datum = structure.datum

    @cached_property
    def rotation_generators(self) -> list:
        """Basis vectors of k whose ad has spectrum in iZ."""
        k, _ = cartan_decomposition(self.g)
        gens = []
        for v in k.basis:
            try:
                gens.append((tuple(v), _Rotation(self.g, v)))
            except ValueError:
                continue
        if not gens and k.dim:
            raise AssertionError("no rotation generator with integral spectrum")
        return gens

    @cached_property
    def _torus_frame(self):
        """Basis of g adapted to a: (P, P^{-1}, restricted root of each column)."""
        d = self.datum
        cols = []
        labels = []
        centralizer_basis = list(d.m_subspace.basis) + list(d.a.basis)
        for v in centralizer_basis:
            cols.append(list(v))
            labels.append(None)
        for root in d.roots:
            if any(Fraction(x).denominator != 1 for x in root):
                raise AssertionError("restricted roots are not integral on the a-basis")
            for v in d.root_spaces[root].basis:
                cols.append(list(v))
                labels.append(tuple(int(x) for x in root))
        n = self.g.dim
        p = [[cols[c][r] for c in range(n)] for r in range(n)]
        return p, inverse(p), labels

    @cached_property
    def n_basis(self) -> list:
        d = self.datum
        return [tuple(v) for root in d.positive for v in d.root_spaces[root].basis]

    @cached_property
    def nc_basis(self) -> list:
        c = self.cascade
        return [tuple(v) for v in c.nc.basis] if c.nc is not None else []

    # -- single letters on a row covector: f -> f . Ad(letter) ----------------
    def _row_ad(self, f, letter):
        g = self.g
        if isinstance(letter, NilpotentExp):
            ad = g.ad(letter.X)
            out = list(f)
            term = list(f)
            for k in range(1, g.dim + 2):
                term = [x / k for x in vec_mat(term, ad)]
                if not any(term):
                    return out
                out = [a + b for a, b in zip(out, term)]
            raise ValueError("element is not ad-nilpotent")
        if isinstance(letter, TorusScale):
            p, pinv, labels = self._torus_frame
            y = vec_mat(f, p)
            for i, lab in enumerate(labels):
                if lab is not None:
                    y[i] *= _monomial(letter.t, lab)
            return vec_mat(y, pinv)
        if isinstance(letter, PythagoreanRotation):
            _, rot = self.rotation_generators[letter.generator]
            return rot.apply_row(list(f), letter.cos, letter.sin)
        if isinstance(letter, FloatExp):
            m = _float_ad_exp(g, letter.X, letter.time)
            return list(np.asarray([float(x) for x in f]) @ m)
        raise TypeError(f"unknown letter {letter!r}")

    def coadjoint(self, word: GroupWord, f) -> list:
        """Ad*(w) f = f o Ad(w^{-1}), letter by letter from the right."""
        out = list(f)
        for letter in reversed(word.letters):
            out = self._row_ad(out, letter.inverse())
        return out

    def _col_ad(self, x, letter):
        """Ad(letter) x for x in g-coordinates."""
        g = self.g
        if isinstance(letter, NilpotentExp):
            ad = g.ad(letter.X)
            out = list(x)
            term = list(x)
            for k in range(1, g.dim + 2):
                term = [v / k for v in mat_vec(ad, term)]
                if not any(term):
                    return out
                out = [a + b for a, b in zip(out, term)]
            raise ValueError("element is not ad-nilpotent")
        if isinstance(letter, TorusScale):
            p, pinv, labels = self._torus_frame
            y = mat_vec(pinv, x)
            for i, lab in enumerate(labels):
                if lab is not None:
                    y[i] *= _monomial(letter.t, lab)
            return mat_vec(p, y)
        if isinstance(letter, PythagoreanRotation):
            _, rot = self.rotation_generators[letter.generator]
            return rot.apply_col(list(x), letter.cos, letter.sin)
        if isinstance(letter, FloatExp):
            m = _float_ad_exp(g, letter.X, letter.time)
            return list(m @ np.asarray([float(v) for v in x]))
        raise TypeError(f"unknown letter {letter!r}")

    def adjoint(self, word: GroupWord, x) -> list:
        """Ad(w) x, applying the rightmost letter first."""
        out = list(x)
        for letter in reversed(word.letters):
            out = self._col_ad(out, letter)
        return out

    # -- random words ------------------------------------------------------------
    def random_k_word(self, rng, length: int = 4) -> GroupWord:
        gens = self.rotation_generators
        if not gens:
            return GroupWord()
        letters = []
        for _ in range(length):
            i = int(rng.integers(len(gens)))
            c, s = pythagorean(random_rational(rng, 4, 3))
            letters.append(PythagoreanRotation(i, c, s))
        return GroupWord(tuple(letters))

    def random_an_word(self, rng, length: int = 3, scale: int = 3) -> GroupWord:
        letters = []
        r = self.datum.a.dim
        for _ in range(length):
            if rng.random() < 0.3:
                t = tuple(Fraction(int(rng.integers(1, 4)), int(rng.integers(1, 4))) for _ in range(r))
                letters.append(TorusScale(t))
            else:
                letters.append(NilpotentExp(self._random_combo(rng, self.n_basis, scale)))
        return GroupWord(tuple(letters))

    def random_theta_nc_word(self, rng, length: int = 2, scale: int = 3) -> GroupWord:
        """exp of random elements of theta(n_c)."""
        basis = [tuple(self.g.apply_theta(v)) for v in self.nc_basis]
        if not basis:
            return GroupWord()
        return GroupWord(tuple(NilpotentExp(self._random_combo(rng, basis, scale)) for _ in range(length)))

    def random_nc_word(self, rng, length: int = 2, scale: int = 3) -> GroupWord:
        if not self.nc_basis:
            return GroupWord()
        return GroupWord(tuple(NilpotentExp(self._random_combo(rng, self.nc_basis, scale))
                               for _ in range(length)))

    def _random_combo(self, rng, basis, scale):
        n = self.g.dim
        out = [ZERO] * n
        for v in basis:
            c = random_rational(rng, scale, 2)
            if c:
                out = [o + c * x for o, x in zip(out, v)]
        return tuple(out)

    def random_float_word(self, rng, length: int = 4) -> GroupWord:
        n = self.g.dim
        letters = []
        for _ in range(length):
            x = tuple(Fraction(int(v)) for v in rng.integers(-2, 3, size=n))
            letters.append(FloatExp(x, float(rng.normal(scale=0.3))))
        return GroupWord(tuple(letters))


def _float_ad_exp(g: LieAlgebraData, x, time: float) -> np.ndarray:
    """exp(time ad x) by scaling and squaring of a Taylor series (float64)."""
    a = np.array([[float(v) for v in row] for row in g.ad(x)]) * time
    norm = np.abs(a).sum(axis=1).max() if a.size else 0.0
    s = max(0, int(np.ceil(np.log2(norm))) + 1) if norm > 0.5 else 0
    a = a / 2 ** s
    out = np.eye(len(a))
    term = np.eye(len(a))
    for k in range(1, 20):
        term = term @ a / k
        out = out + term
    for _ in range(s):
        out = out @ out
    return out
