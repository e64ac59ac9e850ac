"""Exact computations on coadjoint orbits of Hermitian real forms and their AN-subgroups."""

from .real_forms import RealFormSpec, build_real_form
from .structure import Structure, load_structure

__all__ = ["RealFormSpec", "build_real_form", "Structure", "load_structure"]
__version__ = "0.1.0"
