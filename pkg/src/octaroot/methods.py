"""Iteration maps: the weighted three-point family and the comparison methods.

Each map is a plain function of a problem ``f`` (anything with ``value``,
``derivative`` and ``value_and_derivative``) and a point ``x``.  Only the
operators ``+ - * /`` and ``== 0`` are used on values, so the same code runs
on mpmath numbers, Python ``complex``, exact rationals and
:class:`~octaroot.series.TruncSeries`.

The hardware basin kernel (``_kernel.pyx``) mirrors these formulas operation
by operation; any change to the order of operations here has to be repeated
there or the compiled and pure-Python basin renders stop agreeing bit for bit.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import DomainError, StepBreakdown
from .mpnum import GaussianRational, _to_exact, parse_exact

__all__ = [
    "MethodSpec",
    "ProblemFn",
    "CountingProblem",
    "family",
    "get_method",
    "weight_J",
    "weight_G",
    "step",
    "divided_difference",
    "CATALOG",
    "TABLE_METHODS",
    "ORDER",
    "EVALS",
]


@dataclass(frozen=True)
class MethodSpec:
    """Identifier plus parameters of an iteration map.

    ``label`` is display-only: ``get_method("m1") == family(1/2, 1/2, 1/2)``.
    """

    id: str
    a: object = None
    b: object = None
    c: object = None
    A: object = None
    alpha: object = None
    beta: object = None
    gamma: object = None
    label: str = field(default="", compare=False)

    def __str__(self):
        if self.label:
            return self.label
        if self.id == "family":
            return f"family(a={self.a}, b={self.b}, c={self.c})"
        if self.id == "neta":
            return f"neta(A={self.A})"
        if self.id == "sharma":
            return f"sharma(alpha={self.alpha})"
        return self.id

    @property
    def order(self) -> int:
        return ORDER[self.id]

    @property
    def evals(self) -> tuple[int, int]:
        return EVALS[self.id]

    @property
    def is_complex(self) -> bool:
        return any(
            isinstance(v, GaussianRational) and v.im != 0
            for v in (self.a, self.b, self.c, self.A, self.alpha)
        )


def family(a, b, c, label: str = "") -> MethodSpec:
    """The three-point family with rational weights parameterized by ``a, b, c``."""
    return MethodSpec("family", a=_to_exact(a), b=_to_exact(b), c=_to_exact(c), label=label)


_HALF = Fraction(1, 2)

_ALIASES = {
    "m1": lambda: family(_HALF, _HALF, _HALF, label="M1"),
    "m2": lambda: family(
        GaussianRational(_HALF, _HALF), GaussianRational(1, 1), GaussianRational(-_HALF, _HALF),
        label="M2",
    ),
    "m3": lambda: MethodSpec("chun-lee", beta=Fraction(0), gamma=Fraction(0), label="M3"),
    "m4": lambda: MethodSpec("neta", A=Fraction(0), label="M4"),
    "m5": lambda: MethodSpec("sharma", alpha=Fraction(1), label="M5"),
    "m6": lambda: MethodSpec("bcst", label="M6"),
}

TABLE_METHODS = ("m1", "m2", "m3", "m4", "m5", "m6")

ORDER = {
    "newton": 2,
    "kt4": 4,
    "kt8naive": 8,
    "family": 8,
    "chun-lee": 8,
    "neta": 8,
    "sharma": 8,
    "bcst": 8,
}

# (f evaluations, f' evaluations) per step
EVALS = {
    "newton": (1, 1),
    "kt4": (2, 1),
    "kt8naive": (3, 2),
    "family": (3, 1),
    "chun-lee": (3, 1),
    "neta": (3, 1),
    "sharma": (3, 1),
    "bcst": (3, 1),
}


def get_method(name, **params) -> MethodSpec:
    """Resolve an id or alias (``"m1"`` .. ``"m6"``) to a :class:`MethodSpec`.

    Keyword parameters override defaults: ``get_method("neta", A=1)``,
    ``get_method("family", a="1+i", b=0, c="1/2")``.
    """
    if isinstance(name, MethodSpec):
        return replace(name, **{k: _to_exact(v) for k, v in params.items()}) if params else name
    key = name.lower()
    if key in _ALIASES:
        spec = _ALIASES[key]()
        if params:
            spec = replace(spec, label="", **{k: _to_exact(v) for k, v in params.items()})
        return spec
    if key == "family":
        p = {k: params.get(k, _HALF) for k in ("a", "b", "c")}
        return family(**p)
    if key == "neta":
        return MethodSpec("neta", A=_to_exact(params.get("A", 0)))
    if key == "sharma":
        return MethodSpec("sharma", alpha=_to_exact(params.get("alpha", 1)))
    if key == "chun-lee":
        return MethodSpec(
            "chun-lee",
            beta=_to_exact(params.get("beta", 0)),
            gamma=_to_exact(params.get("gamma", 0)),
        )
    if key in ("newton", "kt4", "kt8naive", "bcst"):
        if params:
            raise ValueError(f"method {key!r} takes no parameters")
        return MethodSpec(key)
    raise KeyError(f"unknown method {name!r}")


CATALOG = ("newton", "kt4", "kt8naive", "m1", "m2", "m3", "m4", "m5", "m6")


# --------------------------------------------------------------------------
# problems


class ProblemFn:
    """``f`` and ``f'`` bound to a scalar context."""

    def __init__(self, f, df, ctx=None, name: str = ""):
        self._f = f
        self._df = df
        self.ctx = ctx
        self.name = name

    def value(self, x):
        return self._f(x)

    def derivative(self, x):
        return self._df(x)

    def value_and_derivative(self, x):
        return self._f(x), self._df(x)

    def __repr__(self):
        return f"ProblemFn({self.name or self._f!r})"


class CountingProblem:
    """Wraps a problem and counts evaluations of ``f`` and ``f'``."""

    def __init__(self, inner):
        self.inner = inner
        self.ctx = getattr(inner, "ctx", None)
        self.f_evals = 0
        self.df_evals = 0

    def value(self, x):
        self.f_evals += 1
        return self.inner.value(x)

    def derivative(self, x):
        self.df_evals += 1
        return self.inner.derivative(x)

    def value_and_derivative(self, x):
        self.f_evals += 1
        self.df_evals += 1
        return self.inner.value_and_derivative(x)


# --------------------------------------------------------------------------
# helpers


class _Exact(Exception):
    """Internal early exit: a sub-step landed exactly on a root."""

    def __init__(self, point):
        self.point = point


def _div(num, den, stage):
    try:
        return num / den
    except (ZeroDivisionError, DomainError):
        raise StepBreakdown(stage, "zero denominator") from None


def _guard(v, stage):
    if type(v) is complex and not cmath.isfinite(v):
        raise StepBreakdown(stage, "non-finite value")
    return v


def _f(f, x, stage):
    fx = _guard(f.value(x), stage)
    if fx == 0:
        raise _Exact(x)
    return fx


def _start(f, x):
    fx, dfx = f.value_and_derivative(x)
    _guard(fx, "x")
    _guard(dfx, "x")
    if fx == 0:
        raise _Exact(x)
    return fx, dfx


def _const(f, v):
    ctx = getattr(f, "ctx", None)
    return ctx.convert(v) if ctx is not None else v


# --------------------------------------------------------------------------
# weight functions


def weight_J(t, u, a, b):
    """Rational weight ``J(t, u)`` of the family.

    ``(1 + a t + (2+b) u + (2a+1) t^2 + 4a t^3) / (1 + (a-2) t + b u + t^2)``.
    Equals 1 at the origin.
    """
    tt = t * t
    num = 1 + a * t + (2 + b) * u + (2 * a + 1) * tt + 4 * a * (tt * t)
    den = 1 + (a - 2) * t + b * u + tt
    return _div(num, den, "J")


def weight_G(s, c):
    """Rational weight ``G(s) = (1 + c s) / (1 + (c-1) s)``."""
    return _div(1 + c * s, 1 + (c - 1) * s, "G")


# --------------------------------------------------------------------------
# steps


def _newton(spec, f, x):
    fx, dfx = _start(f, x)
    return _guard(x - _div(fx, dfx, "x"), "x")


def _kt_y_z(f, x):
    """Shared Newton + Kung-Traub sub-steps; returns ``fx, dfx, y, fy, z``."""
    fx, dfx = _start(f, x)
    w = _div(fx, dfx, "y")
    y = _guard(x - w, "y")
    fy = _f(f, y, "y")
    d = fx - fy
    z = _guard(y - _div(fx * fy, d * d, "z") * w, "z")
    return fx, dfx, y, fy, z


def _kt4(spec, f, x):
    fx, dfx, y, fy, z = _kt_y_z(f, x)
    return z


def _kt8naive(spec, f, x):
    fx, dfx, y, fy, z = _kt_y_z(f, x)
    fz = _f(f, z, "z")
    dfz = _guard(f.derivative(z), "z")
    return _guard(z - _div(fz, dfz, "x"), "x")


def _family(spec, f, x):
    a, b, c = _const(f, spec.a), _const(f, spec.b), _const(f, spec.c)
    fx, dfx, y, fy, z = _kt_y_z(f, x)
    fz = _f(f, z, "z")
    t = _div(fy, fx, "x")
    u = _div(fz, fx, "x")
    s = _div(fz, fy, "x")
    jw = weight_J(t, u, a, b)
    gw = weight_G(s, c)
    return _guard(z - _div(fz, dfx, "x") * jw * gw, "x")


def _chun_lee(spec, f, x):
    beta, gamma = _const(f, spec.beta), _const(f, spec.gamma)
    fx, dfx = _start(f, x)
    y = _guard(x - _div(fx, dfx, "y"), "y")
    fy = _f(f, y, "y")
    t = _div(fy, fx, "z")
    omt = 1 - t
    z = _guard(y - _div(fy, dfx, "z") * _div(1, omt * omt, "z"), "z")
    fz = _f(f, z, "z")
    s = _div(fz, fx, "x")
    u = _div(fz, fy, "x")
    h = -beta - gamma + t + t * t / 2 - t * t * t / 2
    jw = beta + s / 2
    p = gamma + u / 2
    w = 1 - h - jw - p
    return _guard(z - _div(fz, dfx, "x") * _div(1, w * w, "x"), "x")


def _neta(spec, f, x):
    A = _const(f, spec.A)
    fx, dfx = _start(f, x)
    y = _guard(x - _div(fx, dfx, "y"), "y")
    fy = _f(f, y, "y")
    z = _guard(
        y - _div(fx + A * fy, fx + (A - 2) * fy, "z") * _div(fy, dfx, "z"), "z"
    )
    fz = _f(f, z, "z")
    Fy = fy - fx
    Fz = fz - fx
    inv_d = _div(1, dfx, "x")
    # (1/F)(...) regrouped as (...)/F: same value, no pole in an intermediate
    zeta_y = _div(_div(y - x, Fy, "x") - inv_d, Fy, "x")
    zeta_z = _div(_div(z - x, Fz, "x") - inv_d, Fz, "x")
    delta2 = -_div(zeta_y - zeta_z, Fy - Fz, "x")
    delta1 = zeta_y + delta2 * Fy
    fx2 = fx * fx
    return _guard(y + delta1 * fx2 + delta2 * (fx2 * fx), "x")


def _dd(fa, fb, a, b, stage):
    return _div(fa - fb, a - b, stage)


def _sharma(spec, f, x):
    alpha = _const(f, spec.alpha)
    fx, dfx = _start(f, x)
    y = _guard(x - _div(fx, dfx, "y"), "y")
    fy = _f(f, y, "y")
    z = _guard(y - _div(fy, dfx, "z") * _div(fx, fx - 2 * fy, "z"), "z")
    fz = _f(f, z, "z")
    fxy = _dd(fx, fy, x, y, "x")
    fxz = _dd(fx, fz, x, z, "x")
    fyz = _dd(fy, fz, y, z, "x")
    t = _div(fz, fx, "x")
    W = 1 + _div(t, 1 + alpha * t, "x")
    return _guard(z - _div(fxy * fz, fxz * fyz, "x") * W, "x")


def _bcst(spec, f, x):
    fx, dfx = _start(f, x)
    w = _div(fx, dfx, "y")
    w2 = w * w
    w5 = w2 * w2 * w
    y = _guard(x - w * (1 + w5), "y")
    fy = _f(f, y, "y")
    t = _div(fy, fx, "z")
    omt = 1 - t
    z = _guard(y - _div(fy, dfx, "z") * _div(1, omt * omt, "z"), "z")
    fz = _f(f, z, "z")
    s = _div(fz, fy, "x")
    u = _div(fz, fx, "x")
    t2 = t * t
    num = 1 + t2 + 5 * (t2 * t2) + s
    den = 1 - t - u
    return _guard(z - _div(fz, dfx, "x") * _div(num, den * den, "x"), "x")


_STEPS = {
    "newton": _newton,
    "kt4": _kt4,
    "kt8naive": _kt8naive,
    "family": _family,
    "chun-lee": _chun_lee,
    "neta": _neta,
    "sharma": _sharma,
    "bcst": _bcst,
}


def step(method, f, x):
    """One iteration ``x -> x_next`` of ``method`` on problem ``f``.

    If ``f`` vanishes exactly at ``x``, ``y`` or ``z`` that point is returned
    unchanged.

    Raises
    ------
    StepBreakdown
        A denominator was exactly zero or a hardware value went non-finite.
    """
    spec = get_method(method) if not isinstance(method, MethodSpec) else method
    try:
        return _STEPS[spec.id](spec, f, x)
    except _Exact as hit:
        return hit.point


def divided_difference(f, x, y):
    """First divided difference ``(f(x) - f(y)) / (x - y)``."""
    if x == y:
        raise StepBreakdown("dd", "coincident nodes")
    return _dd(f.value(x), f.value(y), x, y, "dd")


def parse_param(value):
    """CLI literal -> exact parameter (``"0.5"``, ``"1/2"``, ``"1+1i"``)."""
    return parse_exact(value) if isinstance(value, str) else _to_exact(value)
