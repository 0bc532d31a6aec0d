"""Exact computation and estimation of D'Angelo and Catlin q-types."""

from .algebra import INFINITY, ExtendedRational, GaussianRational, PolyC, UniSeries
from .catlin import (
    CylinderVariety,
    build_cylinder,
    catlin_q_estimate,
    catlin_q_hypersurface,
    slice_cylinder,
    tau_generic,
    tau_slice,
    tau_slice_hypersurface,
)
from .contact import (
    CurveGerm,
    HypersurfaceGerm,
    LinearSlice,
    curve_order,
    hypersurface_contact,
    ideal_contact,
    q_positivity,
)
from .dangelo import Delta1Report, delta1_bounds, delta1_monomial, deltaq_sampled_inf, tilde_deltaq
from .local import IdealPresentation, generic_multiplicity, multiplicity, standard_basis
from .parse import parse
from .sampling import GenericValueReport, SliceSampler

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "CurveGerm",
    "CylinderVariety",
    "Delta1Report",
    "ExtendedRational",
    "GaussianRational",
    "GenericValueReport",
    "HypersurfaceGerm",
    "IdealPresentation",
    "LinearSlice",
    "PolyC",
    "SliceSampler",
    "UniSeries",
    "build_cylinder",
    "catlin_q_estimate",
    "catlin_q_hypersurface",
    "curve_order",
    "delta1_bounds",
    "delta1_monomial",
    "deltaq_sampled_inf",
    "generic_multiplicity",
    "hypersurface_contact",
    "ideal_contact",
    "multiplicity",
    "parse",
    "q_positivity",
    "slice_cylinder",
    "standard_basis",
    "tau_generic",
    "tau_slice",
    "tau_slice_hypersurface",
    "tilde_deltaq",
]
