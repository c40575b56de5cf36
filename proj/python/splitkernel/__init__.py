"""Weighted norm inequalities for splitting kernels."""

import json

from ._core import (
    ConfigError,
    DivergentIntegral,
    Error,
    ExponentOrderViolation,
    ExponentOutOfScope,
    HypothesisViolated,
    NonConvergent,
    ParamOutOfRange,
    SideConditionViolated,
    UnknownKernel,
    catalog_names,
    closed_form,
    integrate,
    struve,
    struve_asymptotic,
    struve_series,
    transform,
)
from . import _core


def _decode(text):
    return json.loads(text, parse_constant=float)


def _number(x):
    if isinstance(x, str) and x in ("inf", "-inf", "nan"):
        return float(x)
    return x


def _numbers(doc):
    if isinstance(doc, dict):
        return {k: _numbers(v) for k, v in doc.items()}
    if isinstance(doc, list):
        return [_numbers(v) for v in doc]
    return _number(doc)


def check(kernel, p="2", q="2", u="x^0", v="x^0"):
    """Two-condition boundedness verdict as a dict."""
    return _numbers(_decode(_core._check(kernel, str(p), str(q), u, v)))


def probe(kernel, p, q, u, v, region, r_grid):
    """Operator ratios over the extremal family of region 1 or 2."""
    return _numbers(_decode(_core._probe(kernel, str(p), str(q), u, v, region, list(r_grid))))


def sharp_constant(kernel):
    """Best ratio over the x^(-1/2 +- e) windows for p = q = 2."""
    return _numbers(_decode(_core._sharp(kernel)))


def glue(kernel, p, q, u, v, grid):
    """Split and joint functionals of the kernel's two conditions."""
    return _numbers(_decode(_core._glue(kernel, str(p), str(q), u, v, list(grid))))


def run(*args):
    """Runs the command-line front end; returns (exit code, stdout, stderr)."""
    return _core._run([str(a) for a in args])


__all__ = [
    "ConfigError", "DivergentIntegral", "Error", "ExponentOrderViolation", "ExponentOutOfScope",
    "HypothesisViolated", "NonConvergent", "ParamOutOfRange", "SideConditionViolated",
    "UnknownKernel", "catalog_names", "check", "closed_form", "glue", "integrate", "probe",
    "run", "sharp_constant", "struve", "struve_asymptotic", "struve_series", "transform",
]
