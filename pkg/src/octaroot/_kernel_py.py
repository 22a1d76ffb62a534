"""Pure-Python basin kernel, used when the compiled extension is unavailable.

Same call signature as ``octaroot._kernel``.  It drives the generic
:func:`octaroot.methods.step` on Python ``complex`` values, so it is also the
reference the compiled kernel is checked against.
"""

from __future__ import annotations

import cmath

import numpy as np

from .errors import StepBreakdown
from .methods import MethodSpec
from .methods import step as _generic_step
from .mpnum import HwComplexContext
from .problems import _horner, _horner2

# index -> (method id, parameter names); order fixed by the compiled kernel
METHODS = (
    ("newton", ()),
    ("kt4", ()),
    ("kt8naive", ()),
    ("family", ("a", "b", "c")),
    ("chun-lee", ("beta", "gamma")),
    ("neta", ("A",)),
    ("sharma", ("alpha",)),
    ("bcst", ()),
)


class _HwPoly:
    ctx = HwComplexContext()

    def __init__(self, coeffs):
        self.coeffs = tuple(complex(c) for c in coeffs)

    def value(self, z):
        return _horner(self.coeffs, z)

    def derivative(self, z):
        return _horner2(self.coeffs, z)[1]

    def value_and_derivative(self, z):
        return _horner2(self.coeffs, z)


def _spec(method_code, params):
    mid, names = METHODS[method_code]
    return MethodSpec(mid, **{n: complex(v) for n, v in zip(names, params)})


def _nearest(z, roots, tol):
    best, bd = -1, 0.0
    for k, r in enumerate(roots):
        d = abs(z - r)
        if best < 0 or d < bd:
            best, bd = k, d
    return best if bd < tol else -1


def _escaped(z, escape, finite=cmath.isfinite):
    if not finite(z):
        return True
    try:
        return abs(z) > escape
    except OverflowError:
        return True


def classify_full(spec, prob, roots, z, max_iters, tol, escape=1e8, finite=cmath.isfinite):
    """``(root_index, iters, last_point)`` for one seed; ``-1`` means nonconvergent.

    Works for any scalar type the problem accepts; ``finite`` decides what
    counts as a non-finite iterate.
    """
    k = _nearest(z, roots, tol)
    if k >= 0:
        return k, 0, z
    for n in range(1, max_iters + 1):
        try:
            z = _generic_step(spec, prob, z)
        except StepBreakdown:
            return -1, n, z
        if _escaped(z, escape, finite):
            return -1, n, z
        k = _nearest(z, roots, tol)
        if k >= 0:
            return k, n, z
    return -1, max_iters, z


def classify(spec, prob, roots, z, max_iters, tol, escape=1e8):
    """``(root_index, iters)`` for one IEEE-double seed."""
    return classify_full(spec, prob, roots, z, max_iters, tol, escape)[:2]


def render(method_code, params, coeffs, roots, x_min, x_max, y_min, y_max, width, height,
           max_iters, tol, escape=1e8, threads=1, row0=0, rows=-1):
    if rows < 0:
        rows = height - row0
    spec = _spec(method_code, params)
    prob = _HwPoly(coeffs)
    roots = [complex(r) for r in roots]
    dx = (x_max - x_min) / width
    dy = (y_max - y_min) / height
    out_root = np.empty((rows, width), dtype=np.int16)
    out_iters = np.empty((rows, width), dtype=np.int32)
    for j in range(rows):
        y = y_max - (row0 + j + 0.5) * dy
        for i in range(width):
            z0 = complex(x_min + (i + 0.5) * dx, y)
            out_root[j, i], out_iters[j, i] = classify(spec, prob, roots, z0, max_iters, tol, escape)
    return out_root, out_iters


def quotient(a, b):
    return complex(a) / complex(b)


def step(method_code, params, coeffs, z):
    try:
        return _generic_step(_spec(method_code, params), _HwPoly(coeffs), complex(z))
    except StepBreakdown:
        return None
