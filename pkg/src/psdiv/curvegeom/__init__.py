from .classes import (
    DivisorClass,
    canonical_class,
    curve_to_orthogonal,
    geometric_genus,
    intersection_number,
    orthogonal_to_curve,
    proximity_inequalities_hold,
    strict_transform,
    total_transform,
)
from .cluster import (
    INFINITY,
    BlowupCluster,
    ClusterPoint,
    LocalState,
    NearCenter,
    RootCenter,
    bad_directions,
    blowup_at,
    local_state,
)
from .curves import (
    AFFINE,
    LINE_AT_INFINITY,
    PROJECTIVE,
    PlaneCurve,
    SNCVerdict,
    bad_root_points,
    is_snc_pair,
    singular_points_rational,
)
from .resolution import SNCCertificate, chain_multiplicities, cluster_labels, log_resolution, log_resolution_pair, snc_certificate

__all__ = [
    "AFFINE", "INFINITY", "LINE_AT_INFINITY", "PROJECTIVE",
    "BlowupCluster", "ClusterPoint", "DivisorClass", "LocalState", "NearCenter",
    "PlaneCurve", "RootCenter", "SNCCertificate", "SNCVerdict",
    "bad_directions", "bad_root_points", "blowup_at", "canonical_class",
    "chain_multiplicities", "cluster_labels", "curve_to_orthogonal", "geometric_genus",
    "intersection_number", "is_snc_pair", "local_state", "log_resolution",
    "log_resolution_pair", "orthogonal_to_curve", "proximity_inequalities_hold",
    "singular_points_rational", "snc_certificate", "strict_transform", "total_transform",
]
