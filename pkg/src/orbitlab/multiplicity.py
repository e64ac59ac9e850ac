"""Blattner parameter, Weyl dimensions of K-types, and the Liouville volume of K.f.

lambda is given in weight coordinates (its values lambda(H_m)/i); the functional
f = -i lambda then has the same coordinates on the t-basis.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .complex_roots import act, is_abelian_root_set, positive_by, rho_vectors, z0_element
from .exact import ZERO
from .orbits import Signs, cascade_signature, is_open_orbit_point, project_p

__all__ = [
    "PositiveSystem",
    "NotAdmissible",
    "IntegralityWarning",
    "positive_system",
    "blattner",
    "weyl_dim",
    "observation_check",
    "liouville_volume_Kf",
    "sphere_volume_mc",
    "integrality_defects",
    "h_point",
    "multiplicity_report",
    "admissible_grid",
]


class NotAdmissible(ValueError):
    """lambda is singular, or its noncompact positive roots are not holomorphic."""


class IntegralityWarning(UserWarning):
    pass


@dataclass(frozen=True)
class PositiveSystem:
    delta_c_plus: tuple
    delta_n_plus: tuple
    rho_g: tuple
    rho_k: tuple
    rho_n: tuple


def positive_system(structure, lam) -> PositiveSystem:
    """Delta^+ = {alpha : <lambda, alpha> > 0}; must be regular with abelian Delta_n^+."""
    d = structure.roots
    if d is None:
        raise NotAdmissible("g has no compact Cartan subalgebra")
    lam = tuple(Fraction(x) for x in lam)
    if len(lam) != d.t_basis.dim:
        raise NotAdmissible(f"lambda needs {d.t_basis.dim} coordinates")
    try:
        dcp = positive_by(d, lam, d.compact)
        dnp = positive_by(d, lam, d.noncompact)
    except ValueError as exc:
        raise NotAdmissible(f"lambda is singular: {exc}") from exc
    if not is_abelian_root_set(d, dnp):
        raise NotAdmissible("lambda does not define a holomorphic positive system")
    return PositiveSystem(dcp, dnp, *rho_vectors(d, dcp, dnp))


def blattner(structure, lam):
    """(Lambda, Lambda') = (lambda + rho_G - 2 rho_K, lambda - rho_K)."""
    ps = positive_system(structure, lam)
    big = tuple(Fraction(l) + g - 2 * k for l, g, k in zip(lam, ps.rho_g, ps.rho_k))
    prime = tuple(Fraction(l) - k for l, k in zip(lam, ps.rho_k))
    return big, prime, ps


def weyl_dim(structure, weight, ps: PositiveSystem, check_dominant: bool = True) -> Fraction:
    """prod over Delta_c^+ of <weight + rho_K, alpha> / <rho_K, alpha>."""
    ip = structure.roots.ip
    shifted = tuple(w + r for w, r in zip(weight, ps.rho_k))
    out = Fraction(1)
    for a in ps.delta_c_plus:
        num = ip.weights(shifted, a.coords)
        if check_dominant and ip.weights(weight, a.coords) < 0:
            raise NotAdmissible(f"weight is not dominant for {a.coords}")
        out *= num / ip.weights(ps.rho_k, a.coords)
    return out


def observation_check(structure, lam) -> bool:
    big, prime, ps = blattner(structure, lam)
    return weyl_dim(structure, big, ps) == weyl_dim(structure, prime, ps, check_dominant=False)


def liouville_volume_Kf(structure, lam) -> Fraction:
    """Symplectic volume of K.f_K: prod of <lambda, alpha> / <rho_K, alpha> over Delta_c^+."""
    ps = positive_system(structure, lam)
    ip = structure.roots.ip
    out = Fraction(1)
    for a in ps.delta_c_plus:
        v = ip.weights(lam, a.coords)
        if v == 0:
            raise NotAdmissible("K-orbit of f is degenerate")
        out *= v / ip.weights(ps.rho_k, a.coords)
    return out


def sphere_volume_mc(radius: float, n_samples: int = 10 ** 6, seed: int = 0, blocks: int = 10) -> dict:
    """Monte Carlo of the Liouville volume of the radius-R coadjoint sphere in su(2)*.

    Chart xi(th, ph) = R (sin th cos ph, sin th sin ph, cos th); the KKS form is
    xi . (d_th xi x d_ph xi) / R^2 dth dph, and the volume is its integral over 2 pi.
    The exact value is 2R.
    """
    total = 0.0
    per = n_samples // blocks
    for b in range(blocks):
        rng = np.random.default_rng([seed, b])
        th = rng.uniform(0.0, np.pi, per)
        ph = rng.uniform(0.0, 2 * np.pi, per)
        st, ct, sp, cp = np.sin(th), np.cos(th), np.sin(ph), np.cos(ph)
        xi = radius * np.stack([st * cp, st * sp, ct])
        d_th = radius * np.stack([ct * cp, ct * sp, -st])
        d_ph = radius * np.stack([-st * sp, st * cp, np.zeros_like(th)])
        density = np.einsum("ij,ij->j", xi, np.cross(d_th, d_ph, axis=0)) / radius ** 2
        total += density.sum()
    estimate = total / (per * blocks) * (2 * np.pi ** 2) / (2 * np.pi)
    return {"estimate": float(estimate), "exact": 2 * radius, "n_samples": per * blocks, "seed": seed,
            "chart": "spherical (theta, phi), form xi.(d_theta xi x d_phi xi)/R^2, divided by 2 pi"}


def integrality_defects(structure, lam) -> list:
    """Roots alpha with 2<lambda, alpha>/<alpha, alpha> not an integer."""
    d = structure.roots
    out = []
    for a in d.roots:
        v = 2 * d.ip.weights(lam, a.coords) / d.ip.weights(a.coords, a.coords)
        if v.denominator != 1:
            out.append(a.coords)
    return out


def h_point(structure, ps: PositiveSystem) -> dict:
    """h = -K(Z_0, .) on a + n with Z_0 built from Delta_n^+ of lambda."""
    d = structure.roots
    g = structure.g
    c = structure.cascade
    z = z0_element(d, ps.delta_n_plus)
    zv = [sum((x * h[i] for x, h in zip(z, d.t_basis.basis)), ZERO) for i in range(g.dim)]
    km = g.killing_matrix
    F = [-sum((zv[i] * km[i][j] for i in range(g.dim) if zv[i]), ZERO) for j in range(g.dim)]
    lam = project_p(c, F)
    sig = cascade_signature(c, lam)
    return {"z0": z, "h": lam, "open": is_open_orbit_point(c, lam), "signature": sig.label,
            "constant_signature": isinstance(sig, Signs) and len(set(sig.eps)) == 1}


def multiplicity_report(structure, lam, mc_samples: int = 10 ** 6, seed: int = 0) -> dict:
    lam = tuple(Fraction(x) for x in lam)
    big, prime, ps = blattner(structure, lam)
    dims = (weyl_dim(structure, big, ps), weyl_dim(structure, prime, ps, check_dominant=False))
    vol = liouville_volume_Kf(structure, lam)
    defects = integrality_defects(structure, lam)
    if defects:
        warnings.warn(f"lambda is not integral on {len(defects)} roots; identities are still rational",
                      IntegralityWarning)
    out = {
        "lambda": lam,
        "Lambda": big,
        "Lambda_prime": prime,
        "rho_G": ps.rho_g,
        "rho_K": ps.rho_k,
        "rho_n": ps.rho_n,
        "dim_tau_Lambda": dims[0],
        "dim_tau_Lambda_prime": dims[1],
        "liouville_volume": vol,
        "all_equal": dims[0] == dims[1] == vol,
        "integral": not defects,
        "h_point": h_point(structure, ps) if structure.cascade.exists_open_orbit else None,
    }
    if len(ps.delta_c_plus) == 1 and mc_samples:
        a = ps.delta_c_plus[0].coords
        ip = structure.roots.ip
        radius = ip.weights(lam, a) / ip.weights(a, a)
        mc = sphere_volume_mc(float(radius), mc_samples, seed)
        mc["relative_error"] = abs(mc["estimate"] - float(vol)) / float(vol)
        out["monte_carlo"] = mc
    return out


def admissible_grid(structure, bound: int = 6, limit: int | None = None) -> list:
    """Integral admissible lambda with integer coordinates in [-bound, bound]."""
    from itertools import product
    l = structure.roots.t_basis.dim
    out = []
    for lam in product(range(-bound, bound + 1), repeat=l):
        try:
            positive_system(structure, lam)
        except NotAdmissible:
            continue
        if integrality_defects(structure, tuple(Fraction(x) for x in lam)):
            continue
        out.append(tuple(Fraction(x) for x in lam))
        if limit and len(out) >= limit:
            break
    return out
