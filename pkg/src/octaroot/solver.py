"""Iteration driver, empirical convergence orders and the error-table runs."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from mpmath.ctx_mp_python import _mpf as MPF

from .errors import DegenerateTrace, StepBreakdown
from .methods import MethodSpec, get_method, step
from .mpnum import big_context, paper_parts
from .problems import test_function

__all__ = [
    "IterationTrace",
    "StopRule",
    "solve",
    "coc",
    "acoc",
    "efficiency_index",
    "TableCell",
    "table_cell",
    "reproduce_table",
    "format_table",
    "cells_to_csv",
    "DEFAULT_PRECISION",
    "TABLE_ITERATIONS",
]

DEFAULT_PRECISION = 2048
TABLE_ITERATIONS = 3


@dataclass
class StopRule:
    """When to stop iterating.  ``None`` disables a tolerance."""

    max_iters: int = 10
    residual_tol: object = None
    step_tol: object = None

    def __post_init__(self):
        if self.max_iters is None and self.residual_tol is None and self.step_tol is None:
            raise ValueError("at least one stopping criterion must be active")


@dataclass
class IterationTrace:
    method: MethodSpec
    iterates: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    errors: list | None = None
    evals: tuple = (0, 0)

    @property
    def iterations(self) -> int:
        return len(self.iterates) - 1


def _abs(v):
    return abs(v)


def solve(method, f, x0, stop: StopRule | None = None, root=None) -> IterationTrace:
    """Iterate ``method`` on ``f`` from ``x0`` until ``stop`` fires.

    ``f`` is a problem object (see :class:`octaroot.methods.ProblemFn`).  When
    ``root`` is given the trace also records ``|x_n - root|``.

    Raises
    ------
    StepBreakdown
        With the partial trace attached as ``exc.trace``.
    """
    spec = get_method(method)
    stop = stop or StopRule()
    trace = IterationTrace(spec, errors=[] if root is not None else None)
    per_f, per_df = spec.evals

    def record(x):
        trace.iterates.append(x)
        r = _abs(f.value(x))
        trace.residuals.append(r)
        if root is not None:
            trace.errors.append(_abs(x - root))
        return r

    x = x0
    r = record(x)
    n = 0
    while r != 0:
        if stop.max_iters is not None and n >= stop.max_iters:
            break
        try:
            x_next = step(spec, f, x)
        except StepBreakdown as exc:
            trace.evals = (n * per_f, n * per_df)
            exc.trace = trace
            raise
        n += 1
        r = record(x_next)
        moved = _abs(x_next - x)
        x = x_next
        if stop.residual_tol is not None and r <= stop.residual_tol:
            break
        if stop.step_tol is not None and moved <= stop.step_tol:
            break
    trace.evals = (n * per_f, n * per_df)
    return trace


def _ln(v):
    if isinstance(v, MPF):
        return v.context.ln(v)
    return math.log(v)


def _log_ratio(num, den):
    if num == 0 or den == 0:
        raise DegenerateTrace("zero difference in the trace")
    return _ln(num) - _ln(den)


def _order(e0, e1, e2):
    den = _log_ratio(e1, e0)
    if den == 0:
        raise DegenerateTrace("no contraction between consecutive terms")
    return _log_ratio(e2, e1) / den


def coc(trace: IterationTrace):
    """Computational order from the last three errors ``|x_n - x*|``."""
    if trace.errors is None:
        raise DegenerateTrace("COC needs a known root")
    if len(trace.errors) < 4:
        raise DegenerateTrace("COC needs at least three iterates beyond x0")
    return _order(*trace.errors[-3:])


def acoc(trace: IterationTrace):
    """Approximated computational order from the last three step sizes."""
    xs = trace.iterates
    if len(xs) < 4:
        raise DegenerateTrace("ACOC needs at least four iterates including x0")
    d0 = _abs(xs[-3] - xs[-4])
    d1 = _abs(xs[-2] - xs[-3])
    d2 = _abs(xs[-1] - xs[-2])
    return _order(d0, d1, d2)


def efficiency_index(evals_per_step: int, order: int) -> float:
    """``order ** (1 / evals_per_step)``."""
    if evals_per_step < 1 or order < 2:
        raise ValueError("need evals >= 1 and order >= 2")
    return order ** (1.0 / evals_per_step)


# --------------------------------------------------------------------------
# error tables


@dataclass
class TableCell:
    method: str
    function: str
    errors: list
    coc: object
    acoc: object
    trace: IterationTrace | None = None
    truncate: bool = True

    def error_parts(self, sig=3, truncate=None):
        """Mantissa/exponent pairs; cut rather than rounded unless ``truncate=False``."""
        cut = self.truncate if truncate is None else truncate
        return [paper_parts(e, sig, cut) for e in self.errors]

    def record(self) -> dict:
        rec = {"method": self.method, "function": self.function}
        for n, (m, k) in enumerate(self.error_parts(), start=1):
            rec[f"err{n}_mantissa"] = m
            rec[f"err{n}_exponent"] = k
        rec["coc"] = f"{float(self.coc):.4f}"
        rec["acoc"] = f"{float(self.acoc):.4f}"
        return rec


def table_cell(method, fid, precision: int = DEFAULT_PRECISION, iters: int = TABLE_ITERATIONS,
               truncate: bool = True):
    """Run ``method`` on test function ``fid`` and measure errors and orders.

    The errors cover ``x_1 .. x_iters`` and COC uses the last three of them.
    ACOC with ``n = iters`` needs ``x_{iters+1}``, so one extra step is taken
    for it; that iterate only enters through ``x_{iters+1} - x_iters``, which
    stays resolvable at table precision even when its own error does not.
    """
    spec = get_method(method)
    tf = test_function(fid)
    ctx = big_context(precision, spec.is_complex)
    f = tf.problem(ctx)
    trace = solve(spec, f, tf.x0(ctx), StopRule(max_iters=iters + 1), root=tf.root(ctx))
    shown = IterationTrace(
        spec,
        iterates=trace.iterates[: iters + 1],
        residuals=trace.residuals[: iters + 1],
        errors=trace.errors[: iters + 1],
        evals=trace.evals,
    )
    return TableCell(
        method=method if isinstance(method, str) else str(spec),
        function=tf.id,
        errors=shown.errors[1:],
        coc=coc(shown),
        acoc=acoc(trace) if trace.iterations > iters else acoc(shown),
        trace=trace,
        truncate=truncate,
    )


def reproduce_table(functions=("f1", "f2", "f3", "f4"), methods=("m1", "m2", "m3", "m4", "m5", "m6"),
                    precision: int = DEFAULT_PRECISION, iters: int = TABLE_ITERATIONS,
                    truncate: bool = True):
    """All (function, method) cells, in row-major order."""
    return [table_cell(m, fid, precision, iters, truncate) for fid in functions for m in methods]


def format_table(cells) -> str:
    """Human-readable block: one column per method, grouped by function."""
    by_fn = {}
    for c in cells:
        by_fn.setdefault(c.function, []).append(c)
    out = []
    for fid, row in by_fn.items():
        tf = test_function(fid)
        width = 14
        out.append(f"{fid}, x0={tf.x0_literal}")
        out.append(" " * 12 + "".join(f"{c.method.upper():>{width}}" for c in row))
        n_err = len(row[0].errors)
        for n in range(n_err):
            label = f"|x{n + 1}-x*|"
            vals = []
            for c in row:
                m, k = c.error_parts()[n]
                vals.append(f"{m}e{k}")
            out.append(f"{label:<12}" + "".join(f"{v:>{width}}" for v in vals))
        out.append(f"{'COC':<12}" + "".join(f"{float(c.coc):>{width}.4f}" for c in row))
        out.append(f"{'ACOC':<12}" + "".join(f"{float(c.acoc):>{width}.4f}" for c in row))
        out.append("")
    return "\n".join(out)


def cells_to_csv(cells) -> str:
    buf = io.StringIO()
    recs = [c.record() for c in cells]
    if not recs:
        return ""
    writer = csv.DictWriter(buf, fieldnames=list(recs[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(recs)
    return buf.getvalue()
