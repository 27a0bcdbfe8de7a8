"""Flat general rotational surfaces in E^4_2 and their pointwise 1-type Gauss maps."""

__version__ = "0.1.0"

from .algebra import Bivector, PseudoVector4, inner4, inner6, wedge  # noqa: E402
from .detector import (  # noqa: E402
    Classification,
    OneTypeReport,
    classify_flat_one_type,
    detect,
    verify_theorem,
)
from .gauss_map import (  # noqa: E402
    GaussSample,
    calibrate,
    gauss_map_at,
    laplacian_closed,
    laplacian_numeric,
)
from .jets import Jet3  # noqa: E402
from .profile import (  # noqa: E402
    EXAMPLE1_PARAMS,
    ExponentialFamilyParams,
    ProfileCurve,
    analytic_curve,
    curve_from_spec,
    derived_invariants,
    invariants_abc,
    synthesize_family,
    validate,
)
from .surface import (  # noqa: E402
    SurfaceKind,
    covariant_derivative_table,
    eval_surface,
    frame,
    gauss_codazzi_residuals,
    gaussian_curvature,
    shape_data,
)
