"""Constructive embeddings of codes into MDS codes and of partial Latin hypercubes into Latin hypercubes."""

from .combinators import (
    Subcube,
    extend_dimension,
    flatten,
    force_point_latin,
    generalized_product,
    mcneish_product,
    switch_subcode,
)
from .core_codes import (
    AxisPlane,
    ExplicitCode,
    code_distance,
    hamming_distance,
    is_mds,
    projection,
    retract,
)
from .embed_general import (
    PatchedMdsCode,
    build_patched_code,
    oracle_complete_plane,
    oracle_contains,
    verify_patched,
)
from .embed_latin import LatinHypercube, embed_partial_latin
from .linear_mds import LinearMdsCode, build_check_matrix, verify_mds_matrix

__version__ = "0.1.0"

__all__ = [
    "AxisPlane",
    "ExplicitCode",
    "LatinHypercube",
    "LinearMdsCode",
    "PatchedMdsCode",
    "Subcube",
    "build_check_matrix",
    "build_patched_code",
    "code_distance",
    "embed_partial_latin",
    "extend_dimension",
    "flatten",
    "force_point_latin",
    "generalized_product",
    "hamming_distance",
    "is_mds",
    "mcneish_product",
    "oracle_complete_plane",
    "oracle_contains",
    "projection",
    "retract",
    "switch_subcode",
    "verify_mds_matrix",
    "verify_patched",
]
