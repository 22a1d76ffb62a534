"""Benchmark problems: four smooth test functions and six complex polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import mpmath

from .methods import ProblemFn
from .mpnum import GaussianRational, HwComplexContext, big_context, parse_exact

__all__ = [
    "TestFunction",
    "TestPolynomial",
    "PolyProblem",
    "test_function",
    "test_polynomial",
    "poly_eval",
    "FUNCTION_IDS",
    "POLY_IDS",
    "read_polynomial",
]

FUNCTION_IDS = ("f1", "f2", "f3", "f4")
POLY_IDS = ("p1", "p2", "p3", "p4", "p5", "p6")


# --------------------------------------------------------------------------
# smooth test functions


def _f1(ctx):
    def f(x):
        return ctx.ln(1 + x * x) + ctx.exp(x * x - 3 * x) * ctx.sin(x)

    def df(x):
        g = ctx.exp(x * x - 3 * x)
        return 2 * x / (1 + x * x) + g * ((2 * x - 3) * ctx.sin(x) + ctx.cos(x))

    return f, df


def _f2(ctx):
    def f(x):
        return 1 + ctx.exp(2 + x - x * x) + x * x * x - ctx.cos(1 + x)

    def df(x):
        return (1 - 2 * x) * ctx.exp(2 + x - x * x) + 3 * x * x + ctx.sin(1 + x)

    return f, df


def _f3(ctx):
    half_pi = ctx.pi() / 2

    def f(x):
        q = 1 + x * x
        return q * ctx.cos(half_pi * x) + ctx.ln(x * x + 2 * x + 2) / q

    def df(x):
        q = 1 + x * x
        r = x * x + 2 * x + 2
        return (
            2 * x * ctx.cos(half_pi * x)
            - half_pi * q * ctx.sin(half_pi * x)
            + (2 * x + 2) / (r * q)
            - 2 * x * ctx.ln(r) / (q * q)
        )

    return f, df


def _f4(ctx):
    pi = ctx.pi()

    def f(x):
        x2 = x * x
        return x2 * x2 + ctx.sin(pi / x2) - 5

    def df(x):
        x2 = x * x
        return 4 * x2 * x - 2 * pi / (x2 * x) * ctx.cos(pi / x2)

    return f, df


_FUNCTIONS = {
    "f1": ("ln(1+x^2) + exp(x^2-3x) sin x", _f1, lambda ctx: ctx.convert(0), "0.35"),
    "f2": ("1 + exp(2+x-x^2) + x^3 - cos(1+x)", _f2, lambda ctx: ctx.convert(-1), "-0.3"),
    "f3": (
        "(1+x^2) cos(pi x/2) + ln(x^2+2x+2)/(1+x^2)",
        _f3,
        lambda ctx: ctx.convert(-1),
        "-1.1",
    ),
    "f4": ("x^4 + sin(pi/x^2) - 5", _f4, lambda ctx: ctx.sqrt(ctx.convert(2)), "1.5"),
}


@dataclass(frozen=True)
class TestFunction:
    """A smooth test function with analytic derivative, known root and start."""

    __test__ = False  # not a pytest class

    id: str
    formula: str
    x0_literal: str

    def problem(self, ctx) -> ProblemFn:
        f, df = _FUNCTIONS[self.id][1](ctx)
        return ProblemFn(f, df, ctx, name=self.id)

    def root(self, ctx):
        return _FUNCTIONS[self.id][2](ctx)

    def x0(self, ctx):
        return ctx.convert(self.x0_literal)


def test_function(fid: str) -> TestFunction:
    """Look up ``f1`` .. ``f4``."""
    try:
        formula, _, _, x0 = _FUNCTIONS[fid.lower()]
    except KeyError:
        raise KeyError(f"unknown test function {fid!r}; expected one of {FUNCTION_IDS}") from None
    return TestFunction(fid.lower(), formula, x0)


test_function.__test__ = False


# --------------------------------------------------------------------------
# polynomials


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def _expand(*factors):
    out = [Fraction(1)]
    for f in factors:
        out = _poly_mul(out, [parse_exact(c) if isinstance(c, str) else Fraction(c) for c in f])
    return tuple(c if not (isinstance(c, GaussianRational) and c.im == 0) else c.re for c in out)


def _unit_roots(mp, n, k, radius, offset):
    # radius * exp(i*(2k + offset)*pi/n)
    return radius * mp.expjpi(mp.mpf(2 * k + offset) / n)


def _roots_p5(mp):
    return [_unit_roots(mp, 7, k, 1, 0) for k in range(7)]


def _roots_p6(mp):
    small = mp.root(mp.mpf(1) / 10, 5)
    big = mp.root(mp.mpf(10), 5)
    return [_unit_roots(mp, 5, k, small, 0) for k in range(5)] + [
        _unit_roots(mp, 5, k, big, 1) for k in range(5)
    ]


_POLYS = {
    "p1": ("z^2 - 1", [(1, 0, -1)], lambda mp: [1, -1]),
    "p2": ("z^3 - z", [(1, 0, -1, 0)], lambda mp: [0, 1, -1]),
    "p3": (
        "z(z^2+1)(z^2+4)",
        [(1, 0), (1, 0, 1), (1, 0, 4)],
        lambda mp: [0, 2j, -2j, 1j, -1j],
    ),
    "p4": (
        "(z^4-1)(z^2+2i)",
        [(1, 0, 0, 0, -1), (1, 0, "2i")],
        lambda mp: [1, 1j, -1, -1j, -1 + 1j, 1 - 1j],
    ),
    "p5": ("z^7 - 1", [(1, 0, 0, 0, 0, 0, 0, -1)], _roots_p5),
    "p6": (
        "(10z^5-1)(z^5+10)",
        [(10, 0, 0, 0, 0, -1), (1, 0, 0, 0, 0, 10)],
        _roots_p6,
    ),
}

_ROOT_DIGITS = 60


def _canonical(roots):
    """Ascending argument in (-pi, pi], ties by ascending modulus."""

    def key(r):
        r = mpmath.mpc(r)
        arg = mpmath.arg(r) if r != 0 else mpmath.mpf(0)
        if arg <= -mpmath.pi + mpmath.mpf(10) ** (-40):
            arg = +mpmath.pi
        return (arg, abs(r))

    with mpmath.workdps(_ROOT_DIGITS):
        return tuple(sorted(roots, key=key))


@dataclass(frozen=True)
class TestPolynomial:
    """Polynomial with exact coefficients (highest degree first) and its simple roots."""

    __test__ = False

    id: str
    formula: str
    coeffs: tuple
    _roots: tuple  # mpmath values at _ROOT_DIGITS, canonical order

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def roots(self, ctx=None):
        """Roots converted into ``ctx`` (default hardware complex), canonical order."""
        ctx = ctx or HwComplexContext()
        if isinstance(ctx, HwComplexContext):
            return tuple(complex(r) for r in self._roots)
        return tuple(ctx.mp.mpc(r) for r in self._roots)

    def problem(self, ctx=None) -> "PolyProblem":
        return PolyProblem(self, ctx or HwComplexContext())


def test_polynomial(pid: str) -> TestPolynomial:
    """Look up ``p1`` .. ``p6``; roots are computed to 60 digits and sorted canonically."""
    try:
        formula, factors, rootfn = _POLYS[pid.lower()]
    except KeyError:
        raise KeyError(f"unknown polynomial {pid!r}; expected one of {POLY_IDS}") from None
    coeffs = _expand(*factors)
    with mpmath.workdps(_ROOT_DIGITS):
        roots = tuple(mpmath.mpc(r) for r in rootfn(mpmath.mp))
    return TestPolynomial(pid.lower(), formula, coeffs, _canonical(roots))


test_polynomial.__test__ = False


def custom_polynomial(coeffs, roots, name="custom") -> TestPolynomial:
    """Polynomial from user coefficients (highest first) and user-supplied roots."""
    coeffs = tuple(parse_exact(c) if isinstance(c, str) else c for c in coeffs)
    with mpmath.workdps(_ROOT_DIGITS):
        rs = tuple(mpmath.mpc(complex(parse_exact(r))) if isinstance(r, str) else mpmath.mpc(r)
                   for r in roots)
    if len(rs) != len(coeffs) - 1:
        raise ValueError(f"expected {len(coeffs) - 1} roots, got {len(rs)}")
    poly = TestPolynomial(name, name, coeffs, _canonical(rs))
    scale = max(abs(complex(c)) for c in coeffs)
    for r in poly.roots():
        if abs(poly_eval(poly, r)[0]) > 1e-6 * scale * max(1.0, abs(r)) ** poly.degree:
            raise ValueError(f"{r} is not a root of the supplied polynomial")
    return poly


def read_polynomial(path) -> TestPolynomial:
    """Read a polynomial text file.

    One complex coefficient per line, highest degree first; then a line
    ``roots:`` followed by one root per line.  ``#`` starts a comment.
    """
    coeffs, roots, target = [], [], None
    target = coeffs
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower() == "roots:":
            target = roots
            continue
        target.append(line)
    if not coeffs or not roots:
        raise ValueError(f"{path}: need coefficients and a 'roots:' section")
    return custom_polynomial(coeffs, roots, name=Path(path).stem)


def _ctx_coeffs(poly, ctx):
    return tuple(ctx.convert(c) for c in poly.coeffs)


def poly_eval(poly: TestPolynomial, z, ctx=None):
    """``(p(z), p'(z))`` by Horner's rule in one pass."""
    if ctx is None:
        ctx = HwComplexContext() if isinstance(z, (complex, float, int)) else _guess_ctx(z)
    cs = _ctx_coeffs(poly, ctx)
    return _horner2(cs, z)


def _guess_ctx(z):
    prec = z.context.dps
    return big_context(prec, True)


def _horner(cs, z):
    p = cs[0]
    for c in cs[1:]:
        p = p * z + c
    return p


def _horner2(cs, z):
    p = cs[0]
    dp = cs[0] * 0
    for c in cs[1:]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


class PolyProblem:
    """A test polynomial bound to a scalar context, usable as a problem."""

    def __init__(self, poly: TestPolynomial, ctx):
        self.poly = poly
        self.ctx = ctx
        self.coeffs = _ctx_coeffs(poly, ctx)

    def value(self, z):
        return _horner(self.coeffs, z)

    def derivative(self, z):
        return _horner2(self.coeffs, z)[1]

    def value_and_derivative(self, z):
        return _horner2(self.coeffs, z)
