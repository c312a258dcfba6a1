"""Hyperbolic Clifford algebra kernel.

Layers, bottom to top: exterior algebras of multivectors/multiforms over
a declared base space; the metric-free duality products pairing them; the
hyperbolic space V ⊕ V* with its Clifford ("mother") algebra, Hodge dual
and Poincaré maps; extensors with duality adjoints and the two operator
extensions; smooth fields of all of these on coordinate charts with
covariant, deformed and relative derivatives plus torsion and curvature;
and a randomized identity-suite harness with a CLI front end.
"""

from .exterior import (
    AlgebraError,
    BaseSpace,
    DimensionMismatch,
    GradeError,
    Kind,
    Multiform,
    Multivector,
    PairingError,
    dual,
    format_blades,
    primal,
)
from .exterior import hyperbolic as hyperbolic_space
from .duality import dsp, lcontr, rcontr
from .hyperbolic import (
    HVector,
    Metric,
    basis_e,
    basis_t,
    clifford,
    embed_dual,
    embed_primal,
    extract_dual,
    extract_primal,
    gram_inner,
    hodge,
    hodge_inv,
    hv_inner,
    hv_lcontr,
    hv_rcontr,
    hyperbolic_conjugate,
    orthonormal_basis_vector,
    orthonormal_to_witt,
    poincare_down,
    poincare_up,
    sigma,
    split_by_metric,
    hvector_endomorphism,
    witt_to_orthonormal,
)
from .extensor import (
    ExtSignature,
    Extensor,
    ExteriorOperator,
    VSpaceSig,
    ce,
    ce_on_extensor,
    duality_adjoint,
    epe,
    epe_on_extensor,
    ext_dsp,
    ext_eval,
    ext_eval_projected,
    ext_lcontr,
    ext_rcontr,
    ext_wedge,
    identity_extensor,
    part_diamond,
    vsig,
)
from .scalarfield import Const, Coord, Cos, Exp, ScalarField, Sin, const, coord
from .fields import (
    Chart,
    ExtensorField,
    FrameField,
    MultiformField,
    MultivectorField,
    OperatorField,
    box_chart,
    coordinate_coform,
    coordinate_vector,
    directional,
    field_ce_on_extensor,
    field_dsp,
    field_epe_on_extensor,
    field_ext_dsp,
    field_ext_lcontr,
    field_ext_rcontr,
    field_ext_wedge,
    field_lcontr,
    field_rcontr,
    form_field,
    lie_bracket,
    vector_field,
)
from .connection import (
    Connection,
    connection_difference,
    deform,
    jacobian,
    relative_connection,
    relative_partial,
    split_twist_operator,
)
from .geometry import (
    cartan_torsion,
    curvature,
    curvature_bivector,
    custom_preset,
    flat_preset,
    nabla_curvature,
    preset,
    sphere_preset,
    torsion,
    torsion_extensor,
    torsion_tensor,
)
from .checks import SUITE_NAMES, SuiteReport, run_all, run_suite
from .expr import ParseError, eval_ast, parse, parse_scalar_field, print_ast

__version__ = "0.1.0"
