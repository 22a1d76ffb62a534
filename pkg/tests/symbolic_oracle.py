"""Symbolic error expansions computed with sympy sparse polynomials.

Works over QQ[c2..c6] with the error variable ``e`` truncated at a fixed
order.  It shares no code with ``octaroot.series`` and serves as the
independent oracle for the exact-series engine.
"""

from functools import lru_cache

from sympy import QQ
from sympy.polys.rings import ring

N = 10  # working order; divisions by valuation-v series cost v exact terms
R, e, c2, c3, c4, c5, c6 = ring("e,c2,c3,c4,c5,c6", QQ)
C = (c2, c3, c4, c5, c6)


def trunc(p, n=None):
    n = N if n is None else n
    return R({m: v for m, v in p.terms() if m[0] < n})


def mul(a, b):
    return trunc(a * b)


def valuation(p):
    return min(m[0] for m in p.monoms()) if p else None


def div(a, b):
    """Truncated ``a / b``; ``b / e^v`` must have constant term 1."""
    v = valuation(b)
    a = R({(m[0] - v,) + m[1:]: c for m, c in a.terms()})
    b = R({(m[0] - v,) + m[1:]: c for m, c in b.terms()})
    if any(m[0] < 0 for m in a.monoms()):
        raise ValueError("pole")
    x = b - 1
    if any(m[0] == 0 for m in x.monoms()):
        raise ValueError("constant term of the denominator is not 1")
    inv, term = R(1), R(1)
    for _ in range(N):
        term = mul(term, -x)
        inv += term
    return mul(a, trunc(inv))


def f(x):
    out, p = x, x
    for c in C:
        p = mul(p, x)
        out += c * p
    return trunc(out)


def df(x):
    out, p = R(1), R(1)
    for k, c in enumerate(C, start=2):
        p = mul(p, x)
        out += k * c * p
    return trunc(out)


@lru_cache(maxsize=None)
def kt4_error():
    """``z - x*`` of one two-point step started at ``x* + e``."""
    fx, dfx = f(e), df(e)
    w = div(fx, dfx)
    y = e - w
    fy = f(y)
    d = fx - fy
    return trunc(y - mul(div(mul(fx, fy), mul(d, d)), w))


def newton_error():
    return trunc(e - div(f(e), df(e)))


def coefficient(p, k):
    """Coefficient of ``e^k`` as a polynomial in c2..c6."""
    return R({(0,) + m[1:]: c for m, c in p.terms() if m[0] == k})
