"""Arbitrary-precision spectra of integer linear recurrences.

Numbers are returned as decimal strings so no precision is lost.
"""

import json

from ._core import (
    DEFAULT_PRECISION,
    MIN_PRECISION,
    Error,
    HypothesisError,
    ParseError,
    PrecisionError,
    ResourceLimitError,
    RunConfig,
    UndecidedError,
    command_names,
    hom_sym,
    parse_polynomial,
)
from ._core import run_command as _run_command

__all__ = [
    "DEFAULT_PRECISION",
    "MIN_PRECISION",
    "Error",
    "HypothesisError",
    "ParseError",
    "PrecisionError",
    "ResourceLimitError",
    "RunConfig",
    "UndecidedError",
    "command_names",
    "conditions",
    "decode",
    "encode",
    "hom_sym",
    "parse_polynomial",
    "realize",
    "rho",
    "roots",
    "run",
    "spectrum",
]


def run(command, poly="", **options):
    """Run a command; returns (report dict, csv text, exit status)."""
    config = RunConfig()
    config.poly = poly
    for key, value in options.items():
        if key == "window":
            config.window_lo, config.window_hi = value
        elif hasattr(config, key):
            setattr(config, key, value)
        else:
            raise TypeError(f"unknown option {key!r}")
    report, csv, status = _run_command(command, config)
    return json.loads(report), csv, status


def roots(poly, precision=DEFAULT_PRECISION, k=0):
    return run("roots", poly, precision=precision, k=k)[0]["roots"]


def rho(poly, window=(-50, 50), precision=DEFAULT_PRECISION, k=0):
    return run("rho", poly, window=window, precision=precision, k=k)[0]["table"]


def encode(poly, n_hi=50, seed=1, half=False, precision=DEFAULT_PRECISION, k=0):
    return run("encode", poly, window=(-1, n_hi), seed=seed, half=half, precision=precision, k=k)[0]


def decode(poly, word, precision=DEFAULT_PRECISION, k=0):
    return run("decode", poly, word=word, precision=precision, k=k)[0]


def conditions(poly, precision=DEFAULT_PRECISION):
    return run("conditions", poly, precision=precision)[0]["conditions"]


def spectrum(poly, K=6, precision=DEFAULT_PRECISION):
    return run("spectrum", poly, K=K, precision=precision)[0]["spectrum"]


def realize(poly, R=(10, 20, 40), a=40, b=40, precision=DEFAULT_PRECISION):
    return run("realize", poly, R=list(R), a=a, b=b, precision=precision)[0]["results"]
