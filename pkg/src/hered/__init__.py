"""Higher hereditary monomial algebras: resolutions, Ext, preprojective algebras."""

__version__ = "0.1.0"

from .quiver import MonomialPresentation, Path, Quiver, load_presentation, parse_presentation
from .bardzell import compute_ap, gldim
from .bimodule_ext import bimodule_ext, obstruction_battery
from .modrep import nrf_probe
from .preprojective import QuiverWithPotential, load_qp, parse_qp
from .planarity import planar_qp_check

__all__ = [
    "MonomialPresentation",
    "Path",
    "Quiver",
    "QuiverWithPotential",
    "bimodule_ext",
    "compute_ap",
    "gldim",
    "load_presentation",
    "load_qp",
    "nrf_probe",
    "obstruction_battery",
    "parse_presentation",
    "parse_qp",
    "planar_qp_check",
]
