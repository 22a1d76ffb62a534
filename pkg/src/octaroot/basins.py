"""Basins of attraction on a pixel grid, their statistics and PPM images.

Each pixel center ``z0`` is iterated with a method on a test polynomial in
IEEE double precision.  Capture (distance to the nearest root below
``capture_tol``) is tested before the first step and after every step.
Numeric breakdown stops a pixel early and marks it nonconvergent with the
steps performed so far.

The per-pixel loop lives in a compiled extension (``octaroot._kernel``)
when available and in :mod:`octaroot._kernel_py` otherwise.  Set
``OCTAROOT_PURE=1`` to force the pure-Python kernel.
"""

from __future__ import annotations

import colorsys
import csv
import io
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import _kernel_py
from .methods import MethodSpec, family, get_method
from .mpnum import HwComplexContext, big_context
from .problems import PolyProblem, TestPolynomial, test_polynomial

if os.environ.get("OCTAROOT_PURE"):
    _compiled = None
else:
    try:
        from . import _kernel as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKENDS = {"python": _kernel_py}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled
DEFAULT_BACKEND = "compiled" if _compiled is not None else "python"

METHOD_CODES = {mid: k for k, (mid, _) in enumerate(_kernel_py.METHODS)}
ESCAPE_RADIUS = 1e8

__all__ = [
    "GridSpec",
    "BasinField",
    "BasinStats",
    "SweepResult",
    "render",
    "stats",
    "write_image",
    "image_bytes",
    "sweep",
    "stats_csv",
    "spot_check",
    "classify_point",
    "stats_record",
    "COUNTING_MODES",
    "DEFAULT_BACKEND",
    "BACKENDS",
]


@dataclass(frozen=True)
class GridSpec:
    """Rectangle ``[x_min, x_max] x [y_min, y_max]`` sampled at ``width x height`` pixels."""

    x_min: float = -3.0
    x_max: float = 3.0
    y_min: float = -3.0
    y_max: float = 3.0
    width: int = 512
    height: int = 512

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("grid needs x_min < x_max and y_min < y_max")
        if self.width < 1 or self.height < 1:
            raise ValueError("grid needs at least one pixel")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """``"x_min:x_max:y_min:y_max:width:height"``, e.g. ``"-3:3:-3:3:512:512"``."""
        parts = text.split(":")
        if len(parts) != 6:
            raise ValueError(f"grid {text!r}: expected x_min:x_max:y_min:y_max:width:height")
        x0, x1, y0, y1 = (float(p) for p in parts[:4])
        return cls(x0, x1, y0, y1, int(parts[4]), int(parts[5]))

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.width

    @property
    def dy(self) -> float:
        return (self.y_max - self.y_min) / self.height

    def center(self, i: int, j: int) -> complex:
        """Center of column ``i``, row ``j`` (row 0 is the top edge, ``y_max``)."""
        return complex(self.x_min + (i + 0.5) * self.dx, self.y_max - (j + 0.5) * self.dy)

    def __str__(self):
        return f"{self.x_min:g}:{self.x_max:g}:{self.y_min:g}:{self.y_max:g}:{self.width}:{self.height}"


@dataclass
class BasinField:
    """Per-pixel outcome of a render.

    ``root_index[j, i]`` is the index into ``poly.roots()`` or ``-1`` for a
    nonconvergent pixel; ``iters[j, i]`` is the number of steps performed.
    """

    grid: GridSpec
    root_index: np.ndarray
    iters: np.ndarray
    method: MethodSpec
    poly: TestPolynomial
    max_iters: int = 15
    capture_tol: float = 1e-3

    def cell(self, i: int, j: int):
        k = int(self.root_index[j, i])
        return (None if k < 0 else k), int(self.iters[j, i])

    @property
    def converged(self) -> np.ndarray:
        return self.root_index >= 0


COUNTING_MODES = ("max", "performed")


@dataclass(frozen=True)
class BasinStats:
    """Convergence measures of a field, kept as exact fractions of the counts.

    ``counting`` says how nonconvergent pixels enter the iteration sums:
    ``"max"`` charges each of them ``max_iters`` (the published tables do
    this), ``"performed"`` uses the steps actually taken before breakdown.
    """

    pixels: int
    nonconvergent: int
    iters_total: int
    iters_nonconvergent: int
    counting: str = "max"

    @property
    def ipp(self) -> Fraction:
        """Mean iterations per point."""
        return Fraction(self.iters_total, self.pixels)

    @property
    def nc_pct(self) -> Fraction:
        """Percentage of nonconvergent points."""
        return Fraction(100 * self.nonconvergent, self.pixels)

    @property
    def icc(self) -> Fraction | None:
        """Mean iterations per convergent point; ``None`` without convergent points."""
        conv = self.pixels - self.nonconvergent
        if conv == 0:
            return None
        return Fraction(self.iters_total - self.iters_nonconvergent, conv)

    @property
    def inc(self) -> Fraction | None:
        if self.nonconvergent == 0:
            return None
        return Fraction(self.iters_nonconvergent, self.nonconvergent)

    def decomposition_holds(self) -> bool:
        """``ipp == nc * inc + (1 - nc) * icc`` exactly, with ``nc`` the fraction."""
        nc = self.nc_pct / 100
        rhs = Fraction(0)
        if self.inc is not None:
            rhs += nc * self.inc
        if self.icc is not None:
            rhs += (1 - nc) * self.icc
        return rhs == self.ipp

    def as_floats(self) -> tuple:
        icc = None if self.icc is None else float(self.icc)
        return float(self.ipp), float(self.nc_pct), icc


def _method_params(spec: MethodSpec):
    ctx = HwComplexContext()
    names = dict(_kernel_py.METHODS)[spec.id]
    return [ctx.convert(getattr(spec, n)) for n in names]


def _poly_arrays(poly: TestPolynomial):
    ctx = HwComplexContext()
    coeffs = np.array([ctx.convert(c) for c in poly.coeffs], dtype=np.complex128)
    roots = np.array(poly.roots(), dtype=np.complex128)
    return coeffs, roots


def _resolve(method, poly):
    spec = get_method(method)
    if isinstance(poly, str):
        poly = test_polynomial(poly)
    return spec, poly


def render(method, poly, grid: GridSpec | None = None, max_iters: int = 15,
           capture_tol: float = 1e-3, threads: int | None = None,
           backend: str | None = None) -> BasinField:
    """Classify every pixel of ``grid`` under ``method`` applied to ``poly``.

    ``threads`` only affects the compiled backend; results are assembled by
    pixel index, so the output does not depend on it.
    """
    spec, poly = _resolve(method, poly)
    grid = grid or GridSpec()
    if max_iters < 0:
        raise ValueError("max_iters must be >= 0")
    if not capture_tol > 0:
        raise ValueError("capture_tol must be positive")
    kernel = BACKENDS[backend or DEFAULT_BACKEND]
    coeffs, roots = _poly_arrays(poly)
    root_index, iters = kernel.render(
        METHOD_CODES[spec.id], _method_params(spec), coeffs, roots,
        float(grid.x_min), float(grid.x_max), float(grid.y_min), float(grid.y_max),
        grid.width, grid.height, max_iters, float(capture_tol), ESCAPE_RADIUS,
        threads or os.cpu_count() or 1,
    )
    return BasinField(grid, root_index, iters, spec, poly, max_iters, capture_tol)


def stats(fld: BasinField, counting: str = "max") -> BasinStats:
    """Exact I/P, NC and I_C/C of a field under the given ``counting`` mode."""
    if counting not in COUNTING_MODES:
        raise ValueError(f"counting must be one of {COUNTING_MODES}")
    nc = ~fld.converged
    it = fld.iters.astype(np.int64)
    n_nc = int(nc.sum())
    it_nc = n_nc * fld.max_iters if counting == "max" else int(it[nc].sum())
    return BasinStats(
        pixels=int(fld.iters.size),
        nonconvergent=n_nc,
        iters_total=int(it[~nc].sum()) + it_nc,
        iters_nonconvergent=it_nc,
        counting=counting,
    )


# --------------------------------------------------------------------------
# images


def _palette(n_roots: int, max_iters: int) -> np.ndarray:
    lut = np.zeros((n_roots + 1, max_iters + 1, 3), dtype=np.uint8)
    for k in range(n_roots):
        for n in range(max_iters + 1):
            v = max(0.25, 1.0 - n / (max_iters + 1))
            rgb = colorsys.hsv_to_rgb(k / n_roots, 1.0, v)
            lut[k, n] = [int(round(255 * c)) for c in rgb]
    return lut  # row n_roots stays black for nonconvergent pixels


def image_bytes(fld: BasinField) -> bytes:
    """Binary PPM (P6) of the field: hue by root, brightness by iteration count."""
    n_roots = len(fld.poly.roots())
    lut = _palette(n_roots, fld.max_iters)
    idx = np.where(fld.root_index < 0, n_roots, fld.root_index).astype(np.intp)
    its = np.clip(fld.iters, 0, fld.max_iters).astype(np.intp)
    pixels = lut[idx, its]
    header = f"P6\n{fld.grid.width} {fld.grid.height}\n255\n".encode("ascii")
    return header + np.ascontiguousarray(pixels).tobytes()


def write_image(fld: BasinField, path) -> Path:
    path = Path(path)
    path.write_bytes(image_bytes(fld))
    return path


# --------------------------------------------------------------------------
# tables and sweeps

STATS_COLUMNS = ("method", "poly", "width", "height", "ipp", "nc_pct", "icc")


def stats_record(fld: BasinField, st: BasinStats | None = None, method_name: str | None = None) -> dict:
    st = st or stats(fld)
    ipp, nc, icc = st.as_floats()
    return {
        "method": method_name or str(fld.method),
        "poly": fld.poly.id,
        "width": fld.grid.width,
        "height": fld.grid.height,
        "ipp": f"{ipp:.6g}",
        "nc_pct": f"{nc:.6g}",
        "icc": "NONE" if icc is None else f"{icc:.6g}",
    }


def stats_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=STATS_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(records)
    return buf.getvalue()


@dataclass
class SweepResult:
    params: tuple
    stats: BasinStats
    field: BasinField = field(repr=False)

    @property
    def image(self) -> bytes:
        return image_bytes(self.field)


def sweep(params, poly, grid: GridSpec | None = None, counting: str = "max",
          **render_kw) -> list[SweepResult]:
    """Render the family once per ``(a, b, c)`` triple."""
    out = []
    for triple in params:
        a, b, c = triple
        fld = render(family(a, b, c), poly, grid, **render_kw)
        out.append(SweepResult(tuple(triple), stats(fld, counting), fld))
    return out


# --------------------------------------------------------------------------
# precision spot check


def classify_point(method, poly, z0, ctx=None, max_iters: int = 15, capture_tol=1e-3):
    """Classify one seed in any scalar context (default IEEE double).

    Returns ``(root_index, iters, terminal_distance, terminal_modulus)`` where
    the last two describe the final iterate's nearest root.
    """
    spec, poly = _resolve(method, poly)
    ctx = ctx or HwComplexContext()
    prob = PolyProblem(poly, ctx)
    roots = poly.roots(ctx)
    z = ctx.convert(z0)
    if isinstance(ctx, HwComplexContext):
        params = _method_params(spec)
        names = dict(_kernel_py.METHODS)[spec.id]
        spec = MethodSpec(spec.id, **dict(zip(names, params)))
    k, n, zt = _kernel_py.classify_full(spec, prob, roots, z, max_iters, capture_tol,
                                        ESCAPE_RADIUS, finite=ctx.is_finite)
    dist = min(abs(zt - r) for r in roots)
    return k, n, dist, abs(zt)


@dataclass
class SpotCheck:
    method: str
    poly: str
    samples: int
    mismatches: list
    excused: list

    @property
    def ok(self) -> bool:
        return not self.mismatches


def spot_check(method, poly, samples: int = 1000, seed: int = 0, grid: GridSpec | None = None,
               digits: int = 64, max_iters: int = 15, capture_tol: float = 1e-3) -> SpotCheck:
    """Compare hardware classification against ``digits``-digit big floats on random pixels.

    Disagreements whose big-float terminal distance is within
    ``10 * eps * |z|`` of ``capture_tol`` are excused.
    """
    spec, poly = _resolve(method, poly)
    grid = grid or GridSpec()
    rng = random.Random(seed)
    big = big_context(digits, True)
    eps = sys.float_info.epsilon
    bad, excused = [], []
    for _ in range(samples):
        i, j = rng.randrange(grid.width), rng.randrange(grid.height)
        z0 = grid.center(i, j)
        hw = classify_point(spec, poly, z0, None, max_iters, capture_tol)[:2]
        k, n, dist, mod = classify_point(spec, poly, z0, big, max_iters, capture_tol)
        if hw == (k, n):
            continue
        entry = (i, j, hw, (k, n))
        if abs(float(dist) - capture_tol) <= 10 * eps * max(float(mod), 1.0):
            excused.append(entry)
        else:
            bad.append(entry)
    return SpotCheck(str(spec), poly.id, samples, bad, excused)
