"""Concrete Jacobi forms: lattice theta series, numeric slash checks, file format."""

from .data import JacobiFormData
from .lattice import LatticeSpec, e8_gram, e8_spec, short_vectors, theta_series
from .numeric import (
    DEFAULT_POINTS,
    default_points,
    GroupElement,
    SlashReport,
    delta_covariance_check,
    evaluate,
    iota,
    slash,
    slash_check,
    standard_generators,
    tail_bound,
)
from .serialize import (
    deserialize,
    deserialize_components,
    deserialize_decomposition,
    deserialize_nh,
    dump,
    load,
    serialize,
    serialize_components,
    serialize_decomposition,
    serialize_nh,
)

__all__ = [
    "JacobiFormData",
    "LatticeSpec",
    "e8_gram",
    "e8_spec",
    "short_vectors",
    "theta_series",
    "DEFAULT_POINTS",
    "default_points",
    "GroupElement",
    "SlashReport",
    "delta_covariance_check",
    "evaluate",
    "iota",
    "slash",
    "slash_check",
    "standard_generators",
    "tail_bound",
    "deserialize",
    "deserialize_components",
    "deserialize_decomposition",
    "deserialize_nh",
    "dump",
    "load",
    "serialize",
    "serialize_components",
    "serialize_decomposition",
    "serialize_nh",
]
