"""Frames, sequence spaces and verification suites on finite metric-measure models."""

import json as _json

from ._btl import (  # noqa: F401
    ConfigError,
    ConvergenceError,
    DoublingProfile,
    Frame,
    FramePair,
    Model,
    PreconditionError,
    Spectrum,
    Symbol,
    doubling,
    frames,
    list_suites,
    maximal_net,
    model,
    spectrum,
)
from ._btl import run as _run


def run(config):
    """Run suites from a config dict or JSON string; returns manifest and records."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _run(config)
