"""Shared builders for the test modules (plain functions, no fixtures)."""

import random
from fractions import Fraction

from octaroot.methods import ProblemFn
from octaroot.mpnum import RationalContext

ALIAS_PAIRS = (
    ("m1", ("family", {"a": "1/2", "b": "1/2", "c": "1/2"})),
    ("m2", ("family", {"a": "1/2+1/2i", "b": "1+1i", "c": "-1/2+1/2i"})),
    ("m3", ("chun-lee", {"beta": 0, "gamma": 0})),
    ("m4", ("neta", {"A": 0})),
    ("m5", ("sharma", {"alpha": 1})),
    ("m6", ("bcst", {})),
)

STEP_METHODS = ("newton", "kt4", "kt8naive", "m1", "m2", "m3", "m4", "m5", "m6")


def small_rational(rng: random.Random, bound: int = 9, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if q or not nonzero:
            return q


def poly_fn(coeffs, ctx=None, shift=0, scale=1):
    """``scale * p(x - shift)`` for coefficients given highest degree first."""
    cs = tuple(coeffs)
    n = len(cs) - 1
    dcs = tuple(c * (n - k) for k, c in enumerate(cs[:-1]))

    def horner(ps, x):
        acc = ps[0]
        for c in ps[1:]:
            acc = acc * x + c
        return acc

    return ProblemFn(lambda x: scale * horner(cs, x - shift),
                     lambda x: scale * horner(dcs, x - shift),
                     ctx or RationalContext())


def random_cubic(rng: random.Random):
    """Rational cubic with a known simple rational root.

    Returns ``(coeffs, root)``; the quadratic cofactor is kept away from
    that root so ``p'(root) != 0``.
    """
    while True:
        r = small_rational(rng)
        p, q = small_rational(rng), small_rational(rng, nonzero=True)
        if r * r + p * r + q == 0:
            continue
        # (x - r)(x^2 + p x + q)
        coeffs = (Fraction(1), p - r, q - p * r, -q * r)
        return coeffs, r
