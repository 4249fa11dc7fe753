"""Exact cone-pairing supports, cover-number brackets, and slice lifts.

The heavy lifting lives in the compiled extension ``soccover._core``; this
package re-exports its public surface.
"""

from soccover._core import (  # noqa: F401
    ColumnGraph,
    CoverCertificate,
    Matrix,
    SocLift,
    SupportPattern,
    __version__,
    build_an_moment,
    build_an_trig,
    build_slice_lift,
    classify,
    classify_float,
    collinear,
    column_graph,
    cover_number_exact,
    cover_number_upper,
    find_clique,
    find_zero_block,
    forced_zero_closure,
    generalized_slack_entry_trig,
    inner,
    lift_feasible,
    lower_bound_chain,
    moment_vector,
    orthogonal_ray,
    psd2_check,
    psd3_check,
    sample_verify_lift,
    slice_decompose,
    slice_decompose_float,
    to_psd2,
    trig_vector,
    turan_threshold,
    verify_cover,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
