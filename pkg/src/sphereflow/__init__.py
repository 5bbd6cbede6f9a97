"""Mean curvature flow laboratory for hypersurfaces of the unit sphere."""

__version__ = "0.1.0"

from . import constants, exact_flows, inequality_lab, norms, simulator, tensor_core  # noqa: F401
