"""Curvature engines and the model metrics."""
from .coord import CoordMetric, coord_curvature, curvature_from_jet, flat, sphere2
from .curvature import CurvatureData, curvature_span_dim
from .g2 import (
    g2_metric,
    g2_sample_points,
    maurer_cartan_residuals,
    numeric_coframe_d,
    sl2_coframe,
    su2_coframe,
)
from .io import metric_from_json
from .lie import (
    FrameMetric,
    abelian,
    bi_invariant,
    direct_sum,
    einstein_constant,
    lie_group_curvature,
    su2_metric,
    su2_structure,
    wick_rotate_frame_metric,
)
from .walker import (
    WalkerClass,
    WalkerSpec,
    counting_weight,
    example_specs,
    walker_boost_weights,
    walker_classify,
    walker_curvature,
)
