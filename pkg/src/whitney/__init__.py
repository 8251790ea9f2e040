"""Whitney-type analytic extensions of finite datasets on symmetric spaces and groups."""

from . import basis, geometry, groups, perturb, scalar, solve
from ._kernels import BACKEND
from .basis import (AdS22Plus, BasisNode, GroupHDS, HalfPlane, HyperboloidMinus, RealLine,
                    Sphere2, basis_node, ell_range, eval_basis, family_from_config,
                    laplacian_defect)
from .errors import *  # noqa: F401,F403
from .geometry import (BlockRotation, HyperbolicCoords, QuadricPoint, Signature,
                       apply_block_rotation, from_hyperbolic, quadric_form, to_hyperbolic)
from .groups import (DomainPoint, GroupElement, disk_action, fit_on_group, kernel_eval,
                     matrix_coefficient)
from .perturb import (CayleyRotation, Dataset, PerturbationRecord, cayley, ensure_distinct,
                      general_position_check)
from .scalar import EXACT, FLOAT, GaussianRational, int_power, invert
from .solve import (RepresentationReport, WhitneyExtension, closed_form_coefficients,
                    elementary_symmetric, exact_correct, fit, maximize_summands,
                    representation_report, residual, vandermonde_solve)

__version__ = "0.1.0"
