"""Toric fans and intersection theory on anticanonical K3 surfaces."""

from .fan import Fan3, check_smooth, divisor_relations, mpcp_fan
from .intersection import (
    RestrictedIntersection,
    class_coordinates,
    dual_face_of_ray,
    pairwise_intersection,
    picard_gram,
    picard_number_check,
    self_intersection,
    self_intersection_oracle,
)
