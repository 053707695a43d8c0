"""Fucik spectrum of real matrices.

Computes, for a real n x n matrix, the tangent structure of its Fucik
spectrum at diagonal points (lambda, lambda): all admissible emanation
directions with nondegeneracy certificates, one-sided tangents at defective
eigenvalues, and a brute-force trace of the full spectrum in a window to
cross-validate the predictions.
"""

from .degenerate import (
    DegeneracyClass,
    OneSidedEntry,
    OneSidedTangents,
    case1_direction,
    classify,
    defective_directions,
    one_sided_tangents,
)
from .errors import (
    CapacityError,
    DefectiveDirectionError,
    FucikError,
    InvalidInputError,
    RangeError,
    SpectralError,
    VerificationError,
    WrongClassError,
)
from .fixtures import Fixture, get_fixture, summing_matrix
from .linalg import (
    EigenvalueData,
    SpectralData,
    Tolerances,
    pos_neg_parts,
    project_onto,
    restricted_solve,
    sign_matrices,
    spectral_data,
)
from .tangents import (
    NondegeneracyVerdict,
    TangentDirection,
    check_nondegeneracy,
    eta_from_point,
    quadrant_of,
    slope_from_eta,
    tangent_directions,
)
from .tracer import (
    FucikPoint,
    FucikPointSet,
    SlopeEstimate,
    TraceWindow,
    numerical_slopes,
    residual,
    trace,
    write_csv,
    write_svg,
)

__version__ = "0.1.0"
