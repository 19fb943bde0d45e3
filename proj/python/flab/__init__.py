"""Numerical Fourier analysis on the real line.

Functions are passed as JSON expression strings, e.g. '{"kind": "gaussian", "a": 1}'.
"""

import json as _json

from ._flab import (
    FlabError,
    __version__,
    check_ids,
    convolve,
    describe,
    evaluate,
    fourier,
    inverse_symmetric,
    kernel,
)
from ._flab import verify as _verify


def expr(kind, **params):
    """JSON text for a catalog function or combinator."""
    return _json.dumps({"kind": kind, **params})


def verify(suite="all", jobs=1):
    """Run a verification suite and return the report as a dict."""
    return _json.loads(_verify(suite, jobs))


__all__ = [
    "FlabError",
    "__version__",
    "check_ids",
    "convolve",
    "describe",
    "evaluate",
    "expr",
    "fourier",
    "inverse_symmetric",
    "kernel",
    "verify",
]
