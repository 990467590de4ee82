"""Python bindings for the stiffid core library."""

import json

from ._core import (
    IoError,
    NumericalError,
    StiffidError,
    ValidationError,
    __version__,
    assemble_parallel,
    deflection,
    eigen3,
    fnv1a,
    normalize_campaign,
    synth,
    validate_campaign,
)
from . import _core


def identify(text, planes=("xy", "yz")):
    return json.loads(_core.identify(text, list(planes)))


def center(text):
    return json.loads(_core.center(text))


__all__ = [
    "IoError",
    "NumericalError",
    "StiffidError",
    "ValidationError",
    "__version__",
    "assemble_parallel",
    "center",
    "deflection",
    "eigen3",
    "fnv1a",
    "identify",
    "normalize_campaign",
    "synth",
    "validate_campaign",
]
