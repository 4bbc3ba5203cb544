"""Finite and analytic gyrogroups with paratopological structure checks."""

from .analytic import AnalyticConfig, EinsteinGyrogroup, MobiusGyrogroup, analytic_suite
from .core import UNBOUNDED, GyroError, Report, identity_suite
from .finite import FiniteGyrogroup, cyclic_subgyrogroup, direct_product, quotient, validate
from .paratopo import classify, generate_topology
from .refine import Instance, projective_refine
from .topology import FiniteTopology

__version__ = "0.1.0"

__all__ = [
    "AnalyticConfig",
    "EinsteinGyrogroup",
    "FiniteGyrogroup",
    "FiniteTopology",
    "GyroError",
    "Instance",
    "MobiusGyrogroup",
    "Report",
    "UNBOUNDED",
    "analytic_suite",
    "classify",
    "cyclic_subgyrogroup",
    "direct_product",
    "generate_topology",
    "identity_suite",
    "projective_refine",
    "quotient",
    "validate",
]
