"""Slice regular quaternionic function theory and Bergman kernels at desk scale."""

from .cbergman import (
    ComplexKernel,
    bergman_project,
    disk_kernel_eval,
    kernel_RI_split,
    numeric_kernel_build,
    re_im_apply,
    re_im_closed_form,
)
from .errors import (
    BadOrder,
    DegreeTooHigh,
    GramNotReal,
    IllConditioned,
    NearBoundary,
    NotSliceValued,
    OutOfDomain,
    ParseError,
    RealInput,
)
from .holo import HoloClass, HoloSeries, c_anti_decompose, c_pair_decompose, classify, conj_reflect, holo_eval
from .qalg import (
    E1,
    E2,
    E3,
    Frame,
    ImaginaryUnit,
    Quaternion,
    SlicePoint,
    complete_frame,
    imaginary_unit_of,
    quat_conj,
    quat_mul,
    slice_coords,
)
from .quad import (
    BallRule,
    PlanarRule,
    build_ball_rule,
    build_disk_rule,
    build_rectangle_rule,
    integrate_ball,
    integrate_slice,
)
from .sbergman import (
    FirstKindKernel,
    component_reproduce,
    component_sum_reproduce,
    first_kind_eval,
    gram_build,
    kernel_consistency,
    m_i_apply,
    mi_adjoint_identity,
    second_kind_components,
    second_kind_eval,
    slice_reproduce,
    two_stage_reproduce,
)
from .slicefn import (
    AlphaBeta,
    IntrinsicClass,
    SliceSeries,
    alpha_beta_of,
    cr_residual,
    extend_P,
    extend_series,
    fourfold_decompose,
    is_intrinsic,
    refined_split,
    restrict_Q,
    split_basis,
)

__version__ = "0.1.0"
