"""Exact Kohmoto-model tooling (thin wrapper over the C++ core)."""

import json
from fractions import Fraction

from . import _core
from ._core import (
    DegeneracyError,
    PrecisionError,
    PreconditionError,
    UnsupportedRegime,
    complexity,
    period_word,
    window,
)

__all__ = [
    "farey_distance",
    "mediant",
    "period_word",
    "window",
    "complexity",
    "spectrum_periodic",
    "defect_spectrum",
    "optimality_certificate",
    "butterfly_csv",
    "run_cli",
    "PreconditionError",
    "PrecisionError",
    "UnsupportedRegime",
    "DegeneracyError",
]


def _s(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def farey_distance(x, y):
    return Fraction(_core.farey_distance(_s(x), _s(y)))


def mediant(a, b):
    return Fraction(_core.mediant(_s(a), _s(b)))


def spectrum_periodic(r, V=5, tol="1/1000000000"):
    return json.loads(_core.spectrum_periodic(_s(r), _s(V), _s(tol)))


def defect_spectrum(r, side, V=5, tol="1/1000000000"):
    return json.loads(_core.defect_spectrum(_s(r), side, _s(V), _s(tol)))


def optimality_certificate(r, side, V=5, kmax=40, tol="1/10000000000"):
    return json.loads(_core.optimality_certificate(_s(r), side, _s(V), kmax, _s(tol)))


def butterfly_csv(Q, V=5, fast=True, defects=True, threads=1):
    return _core.butterfly_csv(Q, _s(V), fast, defects, threads)


def run_cli(*args):
    return _core.run_cli([str(a) for a in args])
