"""All derived data of one real form, built once and cached per RealFormSpec."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .cascade import CascadeData, build_cascade, compact_cartan_of_k
from .complex_roots import (ComplexRootDatum, center_of_k, is_abelian_root_set, positive_by,
                            rho_vectors, root_decomposition, weyl_group_K, z0_element)
from .exact import ZERO
from .lie import LieAlgebraData
from .real_forms import RealFormSpec, RestrictedRootDatum, build_real_form, maximal_abelian_in_p, restricted_roots

__all__ = ["Structure", "load_structure", "regular_element"]


@dataclass(frozen=True, eq=False)
class Structure:
    spec: RealFormSpec
    g: LieAlgebraData
    datum: RestrictedRootDatum
    cascade: CascadeData
    roots: ComplexRootDatum | None  # None when g has no compact Cartan subalgebra
    hermitian: bool
    delta_n_plus: tuple | None  # holomorphic reference system, positive on sum Y_j
    delta_c_plus: tuple | None
    regular: tuple | None  # element defining delta_c_plus
    weyl_k: list | None
    rho: tuple | None  # (rho_G, rho_K, rho_n) for the reference system
    z0: tuple | None  # t-coordinates

    @property
    def sum_y_weight(self) -> tuple:
        """Weight coordinates of -K(sum Y_j, .), the reference holomorphic direction."""
        c = self.cascade
        y = [sum((v[i] for v in c.Y), ZERO) for i in range(self.g.dim)]
        return self.roots.weight_of(y)


def regular_element(d: ComplexRootDatum, roots) -> tuple:
    """First of a fixed list of decreasing weights that pairs nonzero with every root in ``roots``."""
    l = d.t_basis.dim
    candidates = [tuple(l - m for m in range(l))]
    candidates += [tuple(3 ** (l - m) + m for m in range(l)), tuple(7 ** (l - m) - 2 * m for m in range(l))]
    candidates += [tuple(11 ** (l - m) + 5 ** m for m in range(l))]
    for v in candidates:
        if all(d.ip.weights(v, r.coords) != 0 for r in roots):
            return v
    raise AssertionError("no regular element among the fixed candidates")


def _holomorphic_signs(c: CascadeData, d: ComplexRootDatum):
    """Signs eps (eps_1 = +1) for which sum eps_j Y_j defines an abelian Delta_n^+.

    The pairing of -K(sum eps_j Y_j, .) with alpha is alpha(sum eps_j Y_j)/i.
    """
    hk = c.h_k.dim
    for tail in product((1, -1), repeat=c.r - 1):
        eps = (1,) + tail
        pos = []
        ok = True
        for root in d.noncompact:
            v = sum((e * root.coords[hk + j] for j, e in enumerate(eps)), ZERO)
            if v == 0:
                ok = False
                break
            if v > 0:
                pos.append(root)
        if ok and is_abelian_root_set(d, pos):
            return eps
    return None


@lru_cache(maxsize=None)
def load_structure(spec: RealFormSpec, algebra: LieAlgebraData | None = None) -> Structure:
    """Build (or reuse) everything derived from ``spec``.

    ``algebra`` may be a previously cached copy of the structure constants; it
    must be in the basis of the matrix realization of ``spec``.
    """
    g = build_real_form(spec) if algebra is None else algebra
    a = maximal_abelian_in_p(g, spec)
    datum = restricted_roots(g, a)
    c = build_cascade(datum)
    hermitian = center_of_k(g).dim > 0
    if c.exists_open_orbit:
        d = root_decomposition(g, c.t_basis)
        if hermitian:
            eps = _holomorphic_signs(c, d)
            if eps is None:
                raise AssertionError("no sign choice of the cascade vectors gives a holomorphic system")
            if eps != (1,) * c.r:
                c = build_cascade(datum, signs=eps)
                d = root_decomposition(g, c.t_basis)
    else:
        t = compact_cartan_of_k(g)
        d = root_decomposition(g, t) if t is not None else None
    if d is None:
        return Structure(spec, g, datum, c, None, hermitian, None, None, None, None, None, None)
    regular = regular_element(d, d.compact)
    dcp = positive_by(d, regular, d.compact)
    wk = weyl_group_K(d)
    dnp = rho = z0 = None
    if hermitian and c.exists_open_orbit:
        s = Structure(spec, g, datum, c, d, hermitian, None, None, None, None, None, None)
        dnp = positive_by(d, s.sum_y_weight, d.noncompact)
        if not is_abelian_root_set(d, dnp):
            raise AssertionError("reference noncompact system is not abelian")
        rho = rho_vectors(d, dcp, dnp)
        z0 = z0_element(d, dnp)
    return Structure(spec, g, datum, c, d, hermitian, dnp, dcp, regular, wk, rho, z0)
