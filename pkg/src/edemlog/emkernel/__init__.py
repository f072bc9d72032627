"""1D layered-medium electromagnetic kernel."""

from .coupling import (
    coupling_tensor,
    coupling_tensor_quadrature,
    homogeneous_coupling,
)
from .hankel import HankelFilter, default_filter, load_filter_text
from .layers import (
    BOUNDARY_CLEARANCE,
    CouplingTensor,
    DipolePose,
    LayerStack,
    wavenumber,
    wavenumber_squared,
)
from .modes import ReflectionCoefficients, reflection_coefficients

__all__ = [
    "BOUNDARY_CLEARANCE",
    "CouplingTensor",
    "DipolePose",
    "HankelFilter",
    "LayerStack",
    "ReflectionCoefficients",
    "coupling_tensor",
    "coupling_tensor_quadrature",
    "default_filter",
    "homogeneous_coupling",
    "load_filter_text",
    "reflection_coefficients",
    "wavenumber",
    "wavenumber_squared",
]
