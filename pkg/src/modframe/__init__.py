"""Controlled continuous K-g-frames on Hilbert modules over matrix algebras.

The package assembles controlled frame operators by quadrature, decides the
frame inequalities with three-valued verdicts, computes optimal bounds and
checks the structural results on controlled K-g-frames instance by instance.
"""
from .algebra import DEFAULT_TOL, Status, ToleranceConfig, Verdict
from .certify import (BoundsReport, certify_lower_K, certify_upper, controller_spectral_data,
                      douglas_check, optimal_bounds)
from .errors import DomainError, InputError, ModFrameError, NotAdjointable
from .frame import (FrameInstance, MeasureDiscretization, OperatorFamily, analysis_apply,
                    assemble_frame_operator, build_paper_example, discretize_interval,
                    synthesis_apply)
from .modules import ModuleOperator, ModuleSpace, ModuleVector, inner_product

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL", "Status", "ToleranceConfig", "Verdict", "BoundsReport", "certify_lower_K",
    "certify_upper", "controller_spectral_data", "douglas_check", "optimal_bounds", "DomainError",
    "InputError", "ModFrameError", "NotAdjointable", "FrameInstance", "MeasureDiscretization",
    "OperatorFamily", "analysis_apply", "assemble_frame_operator", "build_paper_example",
    "discretize_interval", "synthesis_apply", "ModuleOperator", "ModuleSpace", "ModuleVector",
    "inner_product", "__version__",
]
