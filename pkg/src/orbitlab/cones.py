"""Sampled checks of the invariant cone C_max and the symmetric cone Omega+ in n3.

C_max is sampled as Ad(G)-translates of points X in t with alpha(X)/i > 0 for
every alpha in the reference Delta_n^+.  Omega+ is sampled as
Ad(theta(N_c)) applied to positive combinations of the X_j.  The pairing is
<X, Y> = -K(X, theta Y).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .cascade import NoOpenOrbit
from .exact import ZERO, inverse
from .group import GroupWord, NilpotentExp, TorusScale
from .orbits import Signs, cascade_signature, dual_covector, orbit_context, project_p1

__all__ = ["cone_tests", "dual_action_check", "cmax_sample", "omega_plus_sample", "theta_word", "find_cone_violation"]


def theta_word(g, word: GroupWord) -> GroupWord:
    """The word for theta(b): theta on nilpotent letters, inversion on the torus."""
    out = []
    for letter in word.letters:
        if isinstance(letter, NilpotentExp):
            out.append(NilpotentExp(tuple(g.apply_theta(letter.X))))
        elif isinstance(letter, TorusScale):
            out.append(letter.inverse())
        else:
            raise TypeError("theta_word handles AN letters only")
    return GroupWord(tuple(out))


def _t_vector(structure, x_t):
    basis = structure.roots.t_basis.basis
    return [sum((c * h[i] for c, h in zip(x_t, basis)), ZERO) for i in range(structure.g.dim)]


def cmax_sample(structure, rng) -> list:
    """X in t with alpha(X)/i > 0 on Delta_n^+, returned in g-coordinates."""
    d = structure.roots
    z = structure.z0
    for _ in range(1000):
        a = Fraction(int(rng.integers(1, 5)))
        x_t = [-a * zm + Fraction(int(rng.integers(-3, 4)), int(rng.integers(2, 6))) for zm in z]
        if all(d.root_value(r.coords, x_t) > 0 for r in structure.delta_n_plus):
            return _t_vector(structure, x_t)
    raise AssertionError("could not sample a point of c_max")


def omega_plus_sample(structure, rng, boundary: bool = False) -> list:
    """Ad(theta(N_c)) sum c_j X_j with c_j > 0 (only c_1 when ``boundary``)."""
    c = structure.cascade
    ctx = orbit_context(structure)
    g = structure.g
    coeffs = [Fraction(int(rng.integers(1, 6)), int(rng.integers(1, 4))) for _ in range(c.r)]
    if boundary:
        coeffs = [coeffs[0]] + [ZERO] * (c.r - 1)
    v = [sum((cj * x[i] for cj, x in zip(coeffs, c.X)), ZERO) for i in range(g.dim)]
    return ctx.adjoint(ctx.random_theta_nc_word(rng), v)


def _n3_values(structure, y) -> list:
    """lambda_Y on n3: Z -> <Y, Z>."""
    return project_p1(structure.cascade, dual_covector(structure.g, y))


def _group_sample(structure, rng) -> GroupWord:
    ctx = orbit_context(structure)
    return ctx.random_an_word(rng, 2) + ctx.random_k_word(rng, 3)


def cone_tests(structure, n_samples: int, seed: int) -> dict:
    if structure.delta_n_plus is None:
        raise NoOpenOrbit("cone tests need a Hermitian algebra with an open AN-orbit")
    g = structure.g
    c = structure.cascade
    ctx = orbit_context(structure)
    plus = Signs((1,) * c.r)
    failures = []
    min_pair = None
    counts = {"pairs": 0, "boundary_pairs": 0, "projections_all_plus": 0, "omega_signature_plus": 0,
              "omega_pairs": 0, "lemma53": 0}
    omegas = []
    for i in range(n_samples):
        rng = np.random.default_rng([seed, i])
        x = cmax_sample(structure, rng)
        y = ctx.adjoint(_group_sample(structure, rng), x)
        w = omega_plus_sample(structure, rng)
        w1 = omega_plus_sample(structure, rng, boundary=True)
        # (a) strict positivity against Omega+ and its rank-one boundary
        for key, target in (("pairs", w), ("boundary_pairs", w1)):
            v = g.inner(y, target)
            if v > 0:
                counts[key] += 1
            else:
                failures.append({"sample": i, "check": key, "value": v})
            if key == "pairs":
                min_pair = v if min_pair is None else min(min_pair, v)
        # (b) projection of C_max lands in the all-plus orbit
        if cascade_signature(c, _n3_values(structure, y)) == plus:
            counts["projections_all_plus"] += 1
        else:
            failures.append({"sample": i, "check": "projection"})
        # (c) Omega+ samples are all-plus and pair positively with each other
        if cascade_signature(c, _n3_values(structure, w)) == plus:
            counts["omega_signature_plus"] += 1
        else:
            failures.append({"sample": i, "check": "omega_signature"})
        for prev in omegas[-3:]:
            if g.inner(w, prev) > 0:
                counts["omega_pairs"] += 1
            else:
                failures.append({"sample": i, "check": "self_duality"})
        omegas.append(w)
        # (d) AN-translates of f = <V, .> project to pr_n3(Ad(theta b) V)
        if _lemma53_sample(structure, rng):
            counts["lemma53"] += 1
        else:
            failures.append({"sample": i, "check": "lemma53"})
    return {
        "n_samples": n_samples,
        "seed": seed,
        "counts": counts,
        "min_pair_value": min_pair,
        "failures": failures,
        "ok": not failures,
    }


def _lemma53_sample(structure, rng) -> bool:
    c = structure.cascade
    g = structure.g
    ctx = orbit_context(structure)
    coeffs = [Fraction(int(rng.integers(1, 6)), int(rng.integers(1, 4))) for _ in range(c.r)]
    v = [sum((cj * x[i] for cj, x in zip(coeffs, c.X)), ZERO) for i in range(g.dim)]
    f = dual_covector(g, v)
    ok = True
    for b in (ctx.random_nc_word(rng), ctx.random_an_word(rng, 3)):
        lhs = project_p1(c, ctx.coadjoint(b, f))
        rhs = _n3_values(structure, ctx.adjoint(theta_word(g, b), v))
        ok &= lhs == rhs and cascade_signature(c, lhs) == Signs((1,) * c.r)
    return ok


def find_cone_violation(structure, x, n_samples: int, seed: int) -> dict:
    """Look for g, W with <Ad(g) x, W> <= 0; never claims positivity."""
    ctx = orbit_context(structure)
    g = structure.g
    for i in range(n_samples):
        rng = np.random.default_rng([seed, i])
        word = GroupWord() if i == 0 else _group_sample(structure, rng)
        y = ctx.adjoint(word, x)
        for boundary in (True, False):
            w = omega_plus_sample(structure, rng, boundary=boundary)
            v = g.inner(y, w)
            if v <= 0:
                return {"status": "WITNESS", "sample": i, "value": v}
    return {"status": "UNRESOLVED", "n_samples": n_samples}


def dual_action_check(structure, n_samples: int, seed: int) -> dict:
    """Restriction of f to n3 equals <pr_n3 X_f, .>, with pr orthogonal for <,>."""
    g = structure.g
    c = structure.cascade
    n = g.dim
    km = g.killing_matrix
    m = [[-sum((km[i][k] * g.theta[k][j] for k in range(n) if km[i][k]), ZERO) for j in range(n)] for i in range(n)]
    minv = inverse(m)
    nb = [list(c.s_basis[i]) for i in c.n3_indices()]
    gram = [[sum((a[i] * m[i][j] * b[j] for i in range(n) if a[i] for j in range(n) if b[j]), ZERO) for b in nb]
            for a in nb]
    gram_inv = inverse(gram)
    bad = 0
    for s in range(n_samples):
        rng = np.random.default_rng([seed, s])
        f = [Fraction(int(v), int(rng.integers(1, 4))) for v in rng.integers(-4, 5, size=n)]
        direct = project_p1(c, f)
        x = [sum((minv[i][j] * f[j] for j in range(n) if f[j]), ZERO) for i in range(n)]  # <x, .> = f
        nmx = [sum((b[i] * m[i][j] * x[j] for i in range(n) if b[i] for j in range(n) if x[j]), ZERO) for b in nb]
        coef = [sum((gram_inv[a][b] * nmx[b] for b in range(len(nb))), ZERO) for a in range(len(nb))]
        px = [sum((cf * b[i] for cf, b in zip(coef, nb)), ZERO) for i in range(n)]
        via = [g.inner(px, b) for b in nb]
        bad += via != direct
    return {"n_samples": n_samples, "seed": seed, "mismatches": bad, "ok": bad == 0}
