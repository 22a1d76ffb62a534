from decimal import Decimal, getcontext
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from octaroot.errors import DomainError, NonFinite
from octaroot.mpnum import (
    GaussianRational,
    HwComplexContext,
    RationalContext,
    arith,
    big_context,
    const_pi,
    elem,
    format_full,
    format_paper,
    format_sci,
    paper_parts,
    parse_exact,
    parse_real,
)

# independent evaluators, frozen: sympy.E.evalf(30), sympy.pi.evalf(30)
E_30 = "2.71828182845904523536028747135"
PI_30 = "3.14159265358979323846264338328"


def test_frozen_constants_match_sympy():
    assert str(sympy.E.evalf(30)) == E_30
    assert str(sympy.pi.evalf(30)) == PI_30


# -- arith ----------------------------------------------------------------

def test_arith_examples():
    assert arith(1, 1, "add") == 2
    ctx = big_context(50)
    third = arith(ctx.convert(1), ctx.convert(3), "div")
    assert ctx.mp.nstr(third, 50) == "0." + "3" * 50
    assert arith(complex(1, 1), complex(1, -1), "mul") == 2
    assert arith(GaussianRational(1, 1), GaussianRational(1, -1), "mul") == 2
    assert arith(Fraction(1, 3), None, "neg") == Fraction(-1, 3)


def test_arith_errors():
    with pytest.raises(DomainError):
        arith(Fraction(1), Fraction(0), "div")
    with pytest.raises(DomainError):
        arith(big_context(30).convert(1), 0, "div")
    with pytest.raises(NonFinite):
        arith(complex("inf"), 1j, "add")
    with pytest.raises(NonFinite):
        arith(complex("nan"), None, "neg")
    with pytest.raises(ValueError):
        arith(1, 2, "pow")


def test_arith_promotes_to_larger_precision():
    lo, hi = big_context(20), big_context(60)
    r = arith(lo.convert(1), hi.convert(3), "div")
    assert r.context.dps == 60
    assert arith(hi.convert(2), lo.convert(1), "sub").context.dps == 60


# -- elementary functions ------------------------------------------------

def test_elem_examples():
    ctx = big_context(30)
    assert elem(ctx, ctx.convert(1), "ln") == 0
    assert ctx.mp.nstr(elem(ctx, ctx.convert(1), "exp"), 30) == E_30
    c100 = big_context(100)
    s = elem(c100, c100.pi() / 2, "sin")
    assert abs(s - 1) < c100.mp.mpf(10) ** -99
    assert elem(ctx, ctx.convert(-3), "abs") == 3
    assert elem(ctx, ctx.convert(2), "pow_int", 10) == 1024


def test_elem_domain_errors():
    real = big_context(30)
    with pytest.raises(DomainError):
        elem(real, real.convert(0), "ln")
    with pytest.raises(DomainError):
        elem(real, real.convert(-1), "sqrt")
    cplx = big_context(30, True)
    with pytest.raises(DomainError):
        elem(cplx, cplx.convert(0), "ln")
    with pytest.raises(DomainError):
        elem(HwComplexContext(), 0j, "ln")
    with pytest.raises(ValueError):
        elem(real, real.convert(1), "tan")


def test_complex_principal_branches():
    ctx = big_context(40, True)
    r = elem(ctx, ctx.convert(-1), "sqrt")
    assert abs(r - ctx.mp.mpc(0, 1)) < ctx.mp.mpf(10) ** -39
    lg = elem(ctx, ctx.convert(-1), "ln")
    assert abs(lg.imag - ctx.pi()) < ctx.mp.mpf(10) ** -39
    hw = HwComplexContext()
    assert elem(hw, -1 + 0j, "sqrt") == 1j


def test_rational_context_exact_special_values():
    ctx = RationalContext()
    assert elem(ctx, Fraction(0), "exp") == 1
    assert elem(ctx, Fraction(9, 4), "sqrt") == Fraction(3, 2)
    with pytest.raises(DomainError):
        elem(ctx, Fraction(2), "sqrt")
    with pytest.raises(DomainError):
        ctx.pi()


def test_hw_modulus_has_no_intermediate_overflow():
    assert HwComplexContext().abs(complex(3e300, 4e300)) == pytest.approx(5e300)
    ctx = big_context(30, True)
    assert ctx.abs(ctx.convert(complex(3, 4))) == 5


# -- const_pi -------------------------------------------------------------

@pytest.mark.parametrize("digits, text", [(1, "3.0"), (10, "3.141592654"), (30, PI_30)])
def test_const_pi(digits, text):
    p = const_pi(digits)
    assert p == parse_real(text, digits)


# -- parsing and formatting ----------------------------------------------

@pytest.mark.parametrize("text, value", [
    ("1/2", Fraction(1, 2)),
    ("-0.5", Fraction(-1, 2)),
    ("0.1", Fraction(1, 10)),
    ("1e-3", Fraction(1, 1000)),
    ("1+1i", GaussianRational(1, 1)),
    ("-1+i", GaussianRational(-1, 1)),
    ("2i", GaussianRational(0, 2)),
    ("-i", GaussianRational(0, -1)),
    ("0.5-2/3i", GaussianRational(Fraction(1, 2), Fraction(-2, 3))),
    ("(1/2+1/2j)", GaussianRational(Fraction(1, 2), Fraction(1, 2))),
    ("3+0i", Fraction(3)),
])
def test_parse_exact(text, value):
    assert parse_exact(text) == value


@pytest.mark.parametrize("bad", ["", "abc", "1+", "i i", "1/"])
def test_parse_exact_rejects(bad):
    with pytest.raises(ValueError):
        parse_exact(bad)


def test_paper_parts_examples():
    assert paper_parts(Fraction(14, 100000)) == ("0.140", -3)
    assert paper_parts(Fraction(8936, 10**8), truncate=True) == ("0.893", -4)
    assert paper_parts(Fraction(8936, 10**8)) == ("0.894", -4)
    assert paper_parts(Fraction(9999, 10**4)) == ("0.100", 1)
    assert paper_parts(0) == ("0.000", 0)
    assert format_paper(Fraction(583, 10**31)) == "0.583e-28"
    assert format_sci(Fraction(1, 3), 3) == "3.33e-1"


def test_paper_parts_handles_tiny_big_floats():
    ctx = big_context(2048)
    x = ctx.convert("3.62e-224")
    assert paper_parts(x) == ("0.362", -223)


_decimals = st.decimals(min_value=Decimal("1e-300"), max_value=Decimal("1e300"),
                        allow_nan=False, allow_infinity=False, places=None).filter(lambda d: d > 0)


@given(_decimals)
def test_paper_parts_mantissa_range(d):
    m, k = paper_parts(Fraction(d), truncate=True)
    mant = Decimal(m)
    assert Decimal("0.1") <= mant < 1
    # truncation never exceeds the value, rounding stays within half a unit
    assert mant.scaleb(k) <= d
    rm, rk = paper_parts(Fraction(d))
    assert abs(Decimal(rm).scaleb(rk) - d) <= Decimal("0.0005").scaleb(rk) * Decimal("1.0000001")


# -- properties -----------------------------------------------------------

_mant = st.integers(min_value=-(10**30), max_value=10**30)
_exp = st.integers(min_value=-40, max_value=40)


def _big(m, e, ctx):
    return ctx.convert(Fraction(m) * Fraction(10) ** e)


@settings(max_examples=60)
@given(_mant, _exp, _mant, _exp, _mant, _exp)
def test_field_laws_big_float(m1, e1, m2, e2, m3, e3):
    ctx = big_context(100)
    x, y, z = _big(m1, e1, ctx), _big(m2, e2, ctx), _big(m3, e3, ctx)
    eps = ctx.mp.eps
    scale = max(abs(x), abs(y), abs(z), 1e-300)
    assert abs((x + y) + z - (x + (y + z))) <= 8 * eps * scale
    assert abs((x * y) * z - x * (y * z)) <= 8 * eps * abs(x * y * z)
    assert abs(x * (y + z) - (x * y + x * z)) <= 8 * eps * max(abs(x * y), abs(x * z), abs(x * (y + z)))
    assert x + y == y + x and x * y == y * x


_q = st.fractions(min_value=-(10**6), max_value=10**6, max_denominator=50)


@given(_q, _q, _q, _q, _q, _q)
def test_field_laws_exact(a, b, c, d, e, f):
    x, y, z = GaussianRational(a, b), GaussianRational(c, d), GaussianRational(e, f)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if y != 0:
        assert (x / y) * y == x


@given(_mant, _exp, st.integers(min_value=5, max_value=200))
def test_round_trip_full_digits(m, e, digits):
    ctx = big_context(digits)
    x = _big(m, e, ctx)
    assert parse_real(format_full(x), digits) == x


@settings(max_examples=40)
@given(st.fractions(min_value=-5, max_value=5, max_denominator=100),
       st.sampled_from(["exp", "sin", "cos"]))
def test_monotone_refinement(q, fn):
    lo, hi = big_context(50), big_context(100)
    x = lo.convert(q)
    a = elem(lo, x, fn)
    b = elem(hi, hi.convert(x), fn)
    # agrees within the 50-digit result's own tolerance (4 ulp)
    tol = 4 * lo.mp.eps * max(abs(a), lo.mp.mpf(10) ** -40)
    assert abs(hi.convert(a) - b) <= hi.convert(tol)


@settings(max_examples=40)
@given(st.fractions(min_value=Fraction(1, 100), max_value=100, max_denominator=100))
def test_monotone_refinement_ln_sqrt(q):
    lo, hi = big_context(50), big_context(100)
    for fn in ("ln", "sqrt"):
        x = lo.convert(q)
        a = elem(lo, x, fn)
        b = elem(hi, hi.convert(x), fn)
        tol = 4 * lo.mp.eps * max(abs(a), 1)
        assert abs(hi.convert(a) - b) <= hi.convert(tol)


def test_contexts_are_values():
    assert big_context(30) == big_context(30)
    assert big_context(30) != big_context(31)
    assert big_context(30, True) != big_context(30)
    assert HwComplexContext() == HwComplexContext()
    assert hash(RationalContext()) == hash(RationalContext())


def test_real_context_rejects_complex_constants():
    with pytest.raises(DomainError):
        big_context(30).convert("1+1i")
    with pytest.raises(DomainError):
        big_context(30).convert(1j)


def test_decimal_cross_check_exp():
    # a second, unrelated evaluator: the stdlib decimal module
    getcontext().prec = 40
    ctx = big_context(40)
    assert abs(Decimal(mpmath.nstr(ctx.exp(ctx.convert(1)), 39)) - Decimal(1).exp()) < Decimal("1e-37")
