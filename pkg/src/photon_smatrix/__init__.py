"""One- and two-photon scattering from multilevel emitters in a 1D waveguide."""

from .core import (
    Chirality,
    Kind,
    Scatterer,
    ScattererError,
    TwoPhotonPoint,
    ValidationError,
    validate,
)
from .crit import CritSet, crit_polynomial, crit_roots, quench_scan
from .single_photon import (
    a_matrix,
    alpha,
    amplitudes_s,
    beta,
    poles,
    r_nonchiral,
    t_chiral,
    t_nonchiral,
)
from .two_photon import (
    FluorescenceMap,
    fluorescence_map,
    t2_general,
    t2_nonchiral,
    t2_simplified,
    t2_two2ls,
    t2_v2_closed,
)

__version__ = "0.1.0"

__all__ = [
    "Chirality",
    "Kind",
    "Scatterer",
    "ScattererError",
    "TwoPhotonPoint",
    "ValidationError",
    "validate",
    "CritSet",
    "crit_polynomial",
    "crit_roots",
    "quench_scan",
    "a_matrix",
    "alpha",
    "amplitudes_s",
    "beta",
    "poles",
    "r_nonchiral",
    "t_chiral",
    "t_nonchiral",
    "FluorescenceMap",
    "fluorescence_map",
    "t2_general",
    "t2_nonchiral",
    "t2_simplified",
    "t2_two2ls",
    "t2_v2_closed",
    "__version__",
]
