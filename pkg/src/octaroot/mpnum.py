"""Scalar realizations behind one arithmetic contract.

Every iteration formula in :mod:`octaroot.methods` is written once with the
ordinary Python operators.  What changes between a 2,048-digit table run, a
hardware-precision basin scan and an exact series expansion is only the type
of the values flowing through it.  This module provides those types and a
small context object per realization that knows how to build constants and
evaluate elementary functions:

``BigRealContext`` / ``BigComplexContext``
    mpmath ``mpf`` / ``mpc`` values at a fixed number of decimal digits.
``HwComplexContext``
    Python ``complex`` (IEEE double).  Non-finite values propagate.
``RationalContext``
    exact ``Fraction`` values, or :class:`GaussianRational` once an
    imaginary part appears.
"""

from __future__ import annotations

import cmath
import functools
import math
import re
from decimal import ROUND_05UP, ROUND_DOWN, ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from numbers import Rational

import mpmath
from mpmath.ctx_mp import MPContext
from mpmath.ctx_mp_python import _mpc as MPC
from mpmath.ctx_mp_python import _mpf as MPF
from mpmath.libmp import repr_dps, to_str

from .errors import DomainError, NonFinite

__all__ = [
    "GaussianRational",
    "BigRealContext",
    "BigComplexContext",
    "HwComplexContext",
    "RationalContext",
    "big_context",
    "const_pi",
    "arith",
    "elem",
    "parse_exact",
    "format_paper",
    "paper_parts",
    "format_sci",
    "format_full",
    "parse_real",
]


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational(self.re / other, self.im / other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n
        )

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / (self ** -n)
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return self.re == other.real and self.im == other.imag
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def is_real(self):
        return self.im == 0

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"


def _to_exact(v):
    """Normalize ints/Fractions/GaussianRationals/complex to an exact value."""
    if isinstance(v, GaussianRational):
        return v if v.im != 0 else v.re
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, Rational):
        return Fraction(v.numerator, v.denominator)
    if isinstance(v, float):
        return Fraction(v)
    if isinstance(v, complex):
        if v.imag == 0:
            return Fraction(v.real)
        return GaussianRational(Fraction(v.real), Fraction(v.imag))
    if isinstance(v, str):
        return parse_exact(v)
    raise TypeError(f"cannot convert {v!r} to an exact number")


_NUM = r"[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?(?:/[0-9]+)?"
_COMPLEX_RE = re.compile(
    rf"^(?P<re>[+-]?{_NUM})?(?:(?P<isign>[+-])?(?P<im>{_NUM})?(?P<i>[ij]))?$"
)


def parse_exact(text: str):
    """Parse ``"1/2"``, ``"-0.5"``, ``"1+1i"``, ``"-1+i"``, ``"0.5-2/3i"`` exactly.

    Returns a :class:`~fractions.Fraction` for real input and a
    :class:`GaussianRational` otherwise.  Decimal literals are read exactly
    (``"0.1"`` is 1/10, not the nearest double).
    """
    s = text.strip().replace(" ", "")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    m = _COMPLEX_RE.match(s)
    if not s or m is None or (m.group("re") is None and m.group("i") is None):
        raise ValueError(f"not a number literal: {text!r}")
    re_part = _frac(m.group("re")) if m.group("re") else Fraction(0)
    if m.group("i") is None:
        return re_part
    if m.group("re") is not None and m.group("isign") is None:
        # "2i" parsed as re="2" followed by "i"
        im_part, re_part = re_part, Fraction(0)
    else:
        im_part = _frac(m.group("im")) if m.group("im") else Fraction(1)
        if m.group("isign") == "-":
            im_part = -im_part
    if im_part == 0:
        return re_part
    return GaussianRational(re_part, im_part)


def _frac(tok: str) -> Fraction:
    if "/" in tok:
        num, den = tok.split("/")
        return Fraction(Decimal(num)) / Fraction(int(den))
    return Fraction(Decimal(tok))


# --------------------------------------------------------------------------
# contexts


class _BigContext:
    kind = "big"
    is_complex = False

    def __init__(self, precision: int):
        if precision < 1:
            raise ValueError("precision must be a positive number of digits")
        self.precision = int(precision)
        self.mp = _mpcontext(self.precision)

    def __repr__(self):
        return f"{type(self).__name__}({self.precision})"

    def __eq__(self, other):
        return type(self) is type(other) and self.precision == other.precision

    def __hash__(self):
        return hash((type(self).__name__, self.precision))

    def pi(self):
        return +self.mp.pi

    def zero(self):
        return self.mp.mpf(0)

    def is_finite(self, x):
        return bool(self.mp.isfinite(x))

    def is_zero(self, x):
        return x == 0

    def abs(self, x):
        return abs(x)

    def pow_int(self, x, n: int):
        if n < 0 and x == 0:
            raise DomainError("zero to a negative power")
        return x ** int(n)

    def exp(self, x):
        return self.mp.exp(x)

    def sin(self, x):
        return self.mp.sin(x)

    def cos(self, x):
        return self.mp.cos(x)

    def real_of(self, x):
        return self.mp.re(x)


class BigRealContext(_BigContext):
    """Arbitrary-precision real scalars (mpmath ``mpf``)."""

    kind = "big-real"

    def convert(self, v):
        v = _unwrap(v)
        if isinstance(v, GaussianRational):
            if v.im != 0:
                raise DomainError("complex constant in a real context")
            v = v.re
        if isinstance(v, complex):
            if v.imag != 0:
                raise DomainError("complex constant in a real context")
            v = v.real
        if isinstance(v, Fraction):
            return self.mp.mpf(v.numerator) / v.denominator
        if isinstance(v, MPC):
            if v.imag != 0:
                raise DomainError("complex constant in a real context")
            v = v.real
        return self.mp.mpf(v)

    def ln(self, x):
        if x <= 0:
            raise DomainError(f"ln of non-positive real {mpmath.nstr(x, 5)}")
        return self.mp.ln(x)

    def sqrt(self, x):
        if x < 0:
            raise DomainError("sqrt of a negative real in a real context")
        return self.mp.sqrt(x)


class BigComplexContext(_BigContext):
    """Arbitrary-precision complex scalars (mpmath ``mpc``), principal branches."""

    kind = "big-complex"
    is_complex = True

    def convert(self, v):
        v = _unwrap(v)
        if isinstance(v, GaussianRational):
            return self.mp.mpc(
                self.mp.mpf(v.re.numerator) / v.re.denominator,
                self.mp.mpf(v.im.numerator) / v.im.denominator,
            )
        if isinstance(v, Fraction):
            return self.mp.mpc(self.mp.mpf(v.numerator) / v.denominator)
        return self.mp.mpc(v)

    def zero(self):
        return self.mp.mpc(0)

    def ln(self, x):
        if x == 0:
            raise DomainError("ln(0)")
        return self.mp.mpc(self.mp.ln(x))

    def sqrt(self, x):
        return self.mp.mpc(self.mp.sqrt(x))


class HwComplexContext:
    """IEEE double complex scalars (Python ``complex``).

    Overflow and NaN are not trapped by the operators; :meth:`is_finite`
    lets callers classify breakdown.
    """

    kind = "hw-complex"
    is_complex = True
    precision = None

    def __repr__(self):
        return "HwComplexContext()"

    def __eq__(self, other):
        return type(self) is type(other)

    def __hash__(self):
        return hash("hw-complex")

    def convert(self, v):
        v = _unwrap(v)
        if isinstance(v, (GaussianRational, Fraction)):
            return complex(v)
        if isinstance(v, (MPF, MPC)):
            return complex(v)
        return complex(v)

    def zero(self):
        return 0j

    def pi(self):
        return complex(math.pi)

    def is_finite(self, x):
        return cmath.isfinite(x)

    def is_zero(self, x):
        return x == 0

    def abs(self, x):
        return abs(x)

    def pow_int(self, x, n: int):
        if n < 0 and x == 0:
            raise DomainError("zero to a negative power")
        result = 1 + 0j
        base = x if n >= 0 else 1 / x
        n = abs(int(n))
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exp(self, x):
        return cmath.exp(x)

    def ln(self, x):
        if x == 0:
            raise DomainError("ln(0)")
        return cmath.log(x)

    def sin(self, x):
        return cmath.sin(x)

    def cos(self, x):
        return cmath.cos(x)

    def sqrt(self, x):
        return cmath.sqrt(x)

    def real_of(self, x):
        return x.real


class RationalContext:
    """Exact rational (or Gaussian rational) scalars.

    Only the algebraic operations are available; transcendental functions
    raise :class:`DomainError`.
    """

    kind = "exact-rational"
    is_complex = False
    precision = None

    def __repr__(self):
        return "RationalContext()"

    def __eq__(self, other):
        return type(self) is type(other)

    def __hash__(self):
        return hash("exact-rational")

    def convert(self, v):
        return _to_exact(_unwrap(v))

    def zero(self):
        return Fraction(0)

    def is_finite(self, x):
        return True

    def is_zero(self, x):
        return x == 0

    def abs(self, x):
        if isinstance(x, GaussianRational) and x.im != 0:
            raise DomainError("modulus of a Gaussian rational is not rational")
        return abs(x.re if isinstance(x, GaussianRational) else x)

    def pow_int(self, x, n: int):
        if n < 0 and x == 0:
            raise DomainError("zero to a negative power")
        return x ** int(n)

    def pi(self):
        raise DomainError("pi is not rational")

    def _no(self, name):
        def f(x):
            if name == "exp" and x == 0:
                return Fraction(1)
            if name == "ln" and x == 1:
                return Fraction(0)
            if name in ("sin",) and x == 0:
                return Fraction(0)
            if name == "cos" and x == 0:
                return Fraction(1)
            if name == "sqrt" and isinstance(x, (int, Fraction)) and x >= 0:
                num, den = Fraction(x).numerator, Fraction(x).denominator
                rn, rd = math.isqrt(num), math.isqrt(den)
                if rn * rn == num and rd * rd == den:
                    return Fraction(rn, rd)
            raise DomainError(f"{name} has no exact rational value here")

        return f

    def __getattr__(self, name):
        if name in ("exp", "ln", "sin", "cos", "sqrt"):
            return self._no(name)
        raise AttributeError(name)


@functools.lru_cache(maxsize=None)
def _mpcontext(precision: int) -> MPContext:
    ctx = MPContext()
    ctx.dps = precision
    return ctx


@functools.lru_cache(maxsize=None)
def big_context(precision: int, complex_: bool = False):
    """Shared big-float context for ``precision`` decimal digits."""
    return BigComplexContext(precision) if complex_ else BigRealContext(precision)


def _unwrap(v):
    if isinstance(v, str):
        return parse_exact(v)
    return v


def _value_precision(x):
    ctx = getattr(x, "context", None)
    if isinstance(ctx, MPContext):
        return ctx.dps
    return None


# --------------------------------------------------------------------------
# module-level operations


_ARITH = {
    "add": lambda x, y: x + y,
    "sub": lambda x, y: x - y,
    "mul": lambda x, y: x * y,
    "div": lambda x, y: x / y,
}


def arith(x, y=None, op: str = "add"):
    """Apply ``op`` in {add, sub, mul, div, neg} with mixed-precision promotion.

    Big-float operands from different precisions are lifted to the larger
    precision first.  Exact division by zero raises :class:`DomainError`; a
    non-finite hardware operand raises :class:`NonFinite`.
    """
    if op == "neg":
        _check_hw(x)
        return -x
    if op not in _ARITH:
        raise ValueError(f"unknown op {op!r}")
    _check_hw(x)
    _check_hw(y)
    px, py = _value_precision(x), _value_precision(y)
    if px is not None or py is not None:
        prec = max(p for p in (px, py) if p is not None)
        cplx = isinstance(x, MPC) or isinstance(y, MPC)
        ctx = big_context(prec, cplx)
        x, y = ctx.convert(x), ctx.convert(y)
    if op == "div" and y == 0:
        raise DomainError("division by zero")
    return _ARITH[op](x, y)


def _check_hw(v):
    if isinstance(v, (complex, float)) and not cmath.isfinite(v):
        raise NonFinite(f"non-finite operand {v!r}")


def elem(ctx, x, fn: str, n: int | None = None):
    """Evaluate an elementary function ``fn`` of ``x`` in ``ctx``."""
    if fn == "pow_int":
        if n is None:
            raise ValueError("pow_int needs an exponent")
        return ctx.pow_int(x, n)
    if fn not in ("exp", "ln", "sin", "cos", "sqrt", "abs"):
        raise ValueError(f"unknown elementary function {fn!r}")
    try:
        return getattr(ctx, fn)(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"{fn}({x}) undefined") from exc


def const_pi(precision: int):
    """pi rounded to ``precision`` significant decimal digits."""
    if precision < 1:
        raise ValueError("precision must be >= 1")
    ctx = _mpcontext(precision + 10)
    return big_context(precision).convert(parse_real(ctx.nstr(ctx.pi, precision)))


def parse_real(text: str, precision: int | None = None):
    """Parse a decimal string into a ``BigRealContext`` value."""
    if precision is None:
        digits = len(re.sub(r"[^0-9]", "", text.split("e")[0].split("E")[0]))
        precision = max(digits, 15)
    ctx = big_context(precision)
    return ctx.mp.mpf(text)


# --------------------------------------------------------------------------
# formatting


def _to_decimal(x, digits: int = 40) -> Decimal:
    # Sticky rounding (05UP) keeps a later rounding or truncation to fewer
    # digits correct: 0.1249999... must not become 0.125 before being cut.
    if isinstance(x, (MPC, complex)):
        x = abs(x)
    if isinstance(x, MPF):
        sign, man, exp, _ = x._mpf_
        if not man:
            return Decimal(0)
        x = Fraction((-1) ** sign * int(man) * 2 ** max(int(exp), 0), 2 ** max(-int(exp), 0))
    if isinstance(x, Fraction):
        with localcontext() as dctx:
            dctx.prec = digits
            dctx.rounding = ROUND_05UP
            dctx.Emin, dctx.Emax = -(10**9), 10**9
            return Decimal(x.numerator) / Decimal(x.denominator)
    if isinstance(x, (int, float)):
        return Decimal(repr(x)) if isinstance(x, float) else Decimal(x)
    raise TypeError(f"cannot format {type(x).__name__}")


def paper_parts(x, sig: int = 3, truncate: bool = False) -> tuple[str, int]:
    """Split ``|x|`` into a mantissa string in [0.1, 1) and a decimal exponent.

    The mantissa is rounded half-even, or cut after ``sig`` digits when
    ``truncate`` is set (the convention of the published error tables).

    >>> paper_parts(Fraction(14, 100000))
    ('0.140', -3)
    >>> paper_parts(Fraction(8936, 10**8), truncate=True)
    ('0.893', -4)
    """
    mode = ROUND_DOWN if truncate else ROUND_HALF_EVEN
    d = _to_decimal(x).copy_abs()
    if d == 0:
        return "0." + "0" * sig, 0
    k = d.adjusted() + 1
    with localcontext() as dctx:
        dctx.prec = len(d.as_tuple().digits) + sig + 2
        dctx.Emin, dctx.Emax = -(10**9), 10**9
        quantum = Decimal(1).scaleb(-sig)
        m = d.scaleb(-k).quantize(quantum, rounding=mode)
        if m >= 1:
            m = (m / 10).quantize(quantum, rounding=mode)
            k += 1
    return f"{m:f}", k


def format_paper(x, sig: int = 3, truncate: bool = False) -> str:
    """Format ``|x|`` as ``0.ddde-k`` (mantissa in [0.1, 1))."""
    m, k = paper_parts(x, sig, truncate)
    if Decimal(m) == 0:
        return "0."
    return f"{m}e{k:+d}" if k > 0 else f"{m}e{k}"


def format_sci(x, digits: int = 3) -> str:
    """Scientific notation ``m.ddd...e+-k`` with ``digits`` significant digits."""
    d = _to_decimal(x, max(40, digits + 10))
    if d == 0:
        return f"{0:.{max(digits - 1, 0)}f}e+0"
    with localcontext() as dctx:
        dctx.prec = digits
        d = +d
    k = d.adjusted()
    m = d.scaleb(-k).quantize(Decimal(1).scaleb(-(digits - 1)), rounding=ROUND_HALF_EVEN)
    return f"{m:f}e{k:+d}"


def format_full(x) -> str:
    """All digits needed to reproduce an mpmath value exactly."""
    if isinstance(x, MPC):
        raise TypeError("format real and imaginary parts separately")
    prec = x.context.prec
    return to_str(x._mpf_, repr_dps(prec))
