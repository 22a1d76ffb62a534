"""Exact truncated power series in the error variable ``e``.

A :class:`TruncSeries` stores rational (or Gaussian rational) coefficients of
``e^0 .. e^N`` together with ``accurate_order``, the largest power whose
coefficient is guaranteed exact.  Division by a series of valuation ``v``
loses ``v`` orders of accuracy, so every operation propagates the bound.

Because the iteration maps in :mod:`octaroot.methods` are written with plain
operators, feeding them a :class:`SeriesProblem` (the model function
``f(x* + e) = e + c2 e^2 + ...`` with ``x* = 0``) and ``x = e`` produces the
error series of one step.  Its coefficients ``R_k`` decide the order.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import DomainError, OrderViolation, ValuationError
from .mpnum import GaussianRational, _to_exact

DEFAULT_ORDER = 9

_SCALARS = (int, Fraction, GaussianRational)


class TruncSeries:
    """Power series truncated after ``e^N`` with exact coefficients."""

    __slots__ = ("coeffs", "accurate_order")

    def __init__(self, coeffs, accurate_order=None):
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("a series needs at least one coefficient")
        n = len(self.coeffs) - 1
        if accurate_order is None:
            accurate_order = n
        self.accurate_order = min(int(accurate_order), n)

    # -- construction -----------------------------------------------------

    @classmethod
    def constant(cls, value, order=DEFAULT_ORDER):
        return cls((value,) + (0,) * order, order)

    @classmethod
    def variable(cls, order=DEFAULT_ORDER):
        """The series ``e`` itself."""
        if order < 1:
            raise ValueError("order must be >= 1")
        return cls((0, 1) + (0,) * (order - 1), order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def valuation(self) -> int:
        """Index of the first nonzero exact coefficient.

        When every exact coefficient vanishes the true valuation is only
        known to exceed ``accurate_order``; ``accurate_order + 1`` is returned.
        """
        for k in range(self.accurate_order + 1):
            if self.coeffs[k] != 0:
                return k
        return self.accurate_order + 1

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(self.coeffs[: order + 1], min(self.accurate_order, order))

    def exact_coeffs(self):
        return self.coeffs[: self.accurate_order + 1]

    def _lift(self, other):
        if isinstance(other, TruncSeries):
            if other.order != self.order:
                raise ValueError(
                    f"working orders differ: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, _SCALARS):
            return TruncSeries.constant(other, self.order)
        return None

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return TruncSeries(
            (a + b for a, b in zip(self.coeffs, o.coeffs)),
            min(self.accurate_order, o.accurate_order),
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return TruncSeries(
            (a - b for a, b in zip(self.coeffs, o.coeffs)),
            min(self.accurate_order, o.accurate_order),
        )

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return TruncSeries((-a for a in self.coeffs), self.accurate_order)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return TruncSeries((a * other for a in self.coeffs), self.accurate_order)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = self.order
        a, b = self.coeffs, o.coeffs
        out = [0] * (n + 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j in range(n + 1 - i):
                bj = b[j]
                if bj != 0:
                    out[i + j] += ai * bj
        acc = min(
            self.valuation() + o.accurate_order,
            self.accurate_order + o.valuation(),
            n,
        )
        return TruncSeries(out, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            if other == 0:
                raise DomainError("series divided by zero")
            if isinstance(other, int):
                other = Fraction(other)
            return TruncSeries((a / other for a in self.coeffs), self.accurate_order)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ts_div(self, o)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ts_div(o, self)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = TruncSeries.constant(1, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, TruncSeries) else other
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs and self.accurate_order == o.accurate_order

    def __hash__(self):
        return hash((self.coeffs, self.accurate_order))

    def __repr__(self):
        return f"TruncSeries({list(self.coeffs)!r}, accurate_order={self.accurate_order})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.exact_coeffs()):
            if c == 0:
                continue
            terms.append(f"({c})" + ("" if k == 0 else f"e^{k}"))
        return " + ".join(terms or ["0"]) + f" + O(e^{self.accurate_order + 1})"


def ts_add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a + b


def ts_sub(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a - b


def ts_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def ts_div(num: TruncSeries, den: TruncSeries) -> TruncSeries:
    """Quotient of two series, shifting out the valuation of ``den``.

    Raises
    ------
    DomainError
        ``den`` is identically zero.
    ValuationError
        ``den`` vanishes to higher order than ``num`` (the ratio has a pole),
        or ``den``'s leading term is not determined at the known accuracy.
    """
    n = num.order
    if den.order != n:
        raise ValueError("working orders differ")
    v = den.valuation()
    if v > den.accurate_order:
        if den.accurate_order == n:
            raise DomainError("division by an identically zero series")
        raise ValuationError("leading term of the denominator is not known")
    va = num.valuation()
    if va < v:
        raise ValuationError(
            f"numerator valuation {va} is below denominator valuation {v}"
        )
    a = num.coeffs[v:] + (0,) * v
    b = den.coeffs[v:] + (0,) * v
    b0 = Fraction(b[0]) if isinstance(b[0], int) else b[0]
    q = []
    for k in range(n + 1):
        acc = a[k]
        for j in range(1, k + 1):
            if b[j] != 0 and q[k - j] != 0:
                acc -= b[j] * q[k - j]
        q.append(acc / b0)
    accurate = min(num.accurate_order - v, (va - v) + (den.accurate_order - v), n)
    return TruncSeries(q, accurate)


def compose_poly(coeffs, inner: TruncSeries) -> TruncSeries:
    """``sum coeffs[k] * inner**k`` by Horner's rule (``inner`` must vanish at 0)."""
    if inner.accurate_order < 0 or inner.coeffs[0] != 0:
        raise ValuationError("inner series must have a zero constant term")
    out = TruncSeries.constant(coeffs[-1], inner.order)
    for c in reversed(coeffs[:-1]):
        out = out * inner + c
    return out


@dataclass(frozen=True)
class FunctionModel:
    """Normalized Taylor coefficients ``c2, c3, ...`` of ``f`` about its root.

    ``f(x* + e) / f'(x*) = e + c2 e^2 + c3 e^3 + ...``.  The model is treated
    as that exact polynomial, so no truncation error enters the expansion.
    """

    c: tuple

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(_to_exact(v) for v in self.c))

    @property
    def coefficients(self):
        """``(0, 1, c2, c3, ...)``."""
        return (Fraction(0), Fraction(1)) + self.c

    @property
    def derivative_coefficients(self):
        cs = self.coefficients
        return tuple(k * cs[k] for k in range(1, len(cs)))

    def ck(self, k):
        if k == 1:
            return Fraction(1)
        idx = k - 2
        return self.c[idx] if 0 <= idx < len(self.c) else Fraction(0)

    def __str__(self):
        return "(" + ", ".join(f"c{k + 2}={v}" for k, v in enumerate(self.c)) + ")"


def ts_compose(outer: FunctionModel, inner: TruncSeries) -> TruncSeries:
    """``inner + c2 inner^2 + c3 inner^3 + ...`` for a model and a series with zero constant term."""
    return compose_poly(outer.coefficients, inner)


class SeriesProblem:
    """The model function seen as a problem whose root sits at ``x* = 0``."""

    def __init__(self, model: FunctionModel):
        self.model = model
        self.ctx = SeriesContext()
        self._d = model.derivative_coefficients

    def value(self, x):
        return ts_compose(self.model, x)

    def derivative(self, x):
        if x.coeffs[0] != 0:
            raise ValuationError("derivative evaluated away from the root")
        out = TruncSeries.constant(self._d[-1], x.order)
        for c in reversed(self._d[:-1]):
            out = out * x + c
        return out

    def value_and_derivative(self, x):
        return self.value(x), self.derivative(x)


class SeriesContext:
    """Scalar context for series evaluation: constants stay exact."""

    kind = "exact-rational-series"
    is_complex = False
    precision = None

    def convert(self, v):
        return _to_exact(v)

    def is_finite(self, x):
        return True


# --------------------------------------------------------------------------
# order certification


def expand_step(step_fn, model: FunctionModel, order: int = DEFAULT_ORDER) -> TruncSeries:
    """Error series of ``step_fn(problem, x)`` started from ``x = x* + e``.

    The working order is raised internally until the result is exact
    through ``e^order``.
    """
    problem = SeriesProblem(model)
    for work in range(order, order + 16):
        x1 = step_fn(problem, TruncSeries.variable(work))
        if x1.accurate_order >= order:
            return x1.truncate(order)
    raise ValuationError("could not reach the requested accuracy")


def expand_method(method, model: FunctionModel, order: int = DEFAULT_ORDER) -> TruncSeries:
    """Error series ``e_{n+1}(e_n)`` of one step of ``method``."""
    from .methods import get_method, step

    method = get_method(method)
    return expand_step(lambda f, x: step(method, f, x), model, order)


def _nonzero_small_rational(rng: random.Random) -> Fraction:
    p = 0
    while p == 0:
        p = rng.randint(-9, 9)
    return Fraction(p, rng.randint(1, 9))


def leading_factors(method, model: FunctionModel):
    """Factors of the leading error coefficient ``R_p`` of ``method`` at ``model``.

    ``R_p`` equals ``leading_constant(method) * prod(factor ** power)``; see
    :func:`leading_coefficient`.  A model where any factor vanishes hides the
    order (``R_p = 0`` without the method being of higher order).
    """
    return tuple(f for f, _ in _leading_terms(method, model)[1])


def leading_coefficient(method, model: FunctionModel):
    """Closed form of ``R_p`` for the catalog methods (pinned by the test suite)."""
    const, terms = _leading_terms(method, model)
    out = const
    for f, power in terms:
        out = out * f**power
    return out


def _leading_terms(method, model):
    from .methods import get_method

    spec = get_method(method)
    c2, c3, c4 = model.ck(2), model.ck(3), model.ck(4)
    q = 2 * c2**2 - c3
    one = Fraction(1)
    if spec.id == "newton":
        return one, [(c2, 1)]
    if spec.id == "kt4":
        return one, [(c2, 1), (q, 1)]
    if spec.id == "kt8naive":
        return one, [(c2, 3), (q, 2)]
    if spec.id == "family":
        a, b, c = spec.a, spec.b, spec.c
        tail = (
            (10 * a + 4 * b + 4 * c + 3) * c2**4
            - (2 * a + 2 * b + 4 * c + 4) * c2**2 * c3
            + c * c3**2
            + c2 * c4
        )
        return one, [(c2, 1), (q, 1), (tail, 1)]
    if spec.id == "chun-lee":
        tail = 7 * c2**4 + 10 * c2**2 * c3 - 4 * c2 * c4 - c3**2
        return Fraction(-1, 4), [(c2, 1), (q, 1), (tail, 1)]
    if spec.id == "neta":
        A = spec.A
        return one, [
            (c2, 2),
            (5 * c2**3 - 5 * c2 * c3 + c4, 1),
            ((2 * A + 1) * c2**2 - c3, 1),
        ]
    if spec.id == "sharma":
        return one, [(c2, 2), (c2**2 - c3, 1), (3 * c2**3 - 4 * c2 * c3 + c4, 1)]
    if spec.id == "bcst":
        return Fraction(-1), [(c2, 1), (q, 1), (7 * c2**2 * c3 - c2 * c4 - c3**2, 1)]
    raise KeyError(spec.id)


def random_model(rng: random.Random, method=None, size: int = 7) -> FunctionModel:
    """Draw ``c2..c8`` as nonzero ``p/q`` with ``|p|, q <= 9``.

    With ``method`` given, models on which a factor of its leading error
    coefficient vanishes are redrawn.
    """
    while True:
        model = FunctionModel(tuple(_nonzero_small_rational(rng) for _ in range(size)))
        if method is None or all(f != 0 for f in leading_factors(method, model)):
            return model


@dataclass
class OrderReport:
    """Outcome of :func:`verify_order`."""

    method: object
    expected: int
    vanished_through: int
    leading_coeff: object
    trials: int
    seeds: list = field(default_factory=list)
    witness_model: FunctionModel | None = None

    @property
    def certified_order(self) -> int:
        return self.vanished_through + 1

    def to_text(self) -> str:
        lines = [
            f"method           : {self.method}",
            f"expected order   : {self.expected}",
            f"vanished through : e^{self.vanished_through}",
            f"certified order  : {self.certified_order}",
            f"trials           : {self.trials}",
            f"witness model    : {self.witness_model}",
            f"leading coeff    : {self.leading_coeff}",
        ]
        return "\n".join(lines)

    def to_record(self) -> dict:
        return {
            "method": str(self.method),
            "expected": self.expected,
            "vanished_through": self.vanished_through,
            "leading_coeff": str(self.leading_coeff),
            "trials": self.trials,
            "seeds": list(self.seeds),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True)


def _trial_seeds(seed: int, trials: int):
    rng = random.Random(seed)
    return [rng.randrange(2**32) for _ in range(trials)]


def verify_order(method, expected: int, trials: int = 20, seed: int = 0) -> OrderReport:
    """Certify that ``method`` has convergence order exactly ``expected``.

    For each seeded random model the one-step error series must have
    ``R_0 .. R_{expected-1}`` exactly zero and ``R_expected`` nonzero.

    Raises
    ------
    OrderViolation
        On the first trial contradicting the claimed order.
    """
    from .methods import get_method

    if trials < 1:
        raise ValueError("trials must be >= 1")
    method = get_method(method)
    order = max(DEFAULT_ORDER, expected + 1)
    seeds = _trial_seeds(seed, trials)
    leading = witness = None
    for s in seeds:
        model = random_model(random.Random(s), method)
        r = expand_method(method, model, order)
        for k in range(expected):
            if r[k] != 0:
                raise OrderViolation(method, k, model, r[k])
        if r[expected] == 0:
            raise OrderViolation(method, expected, model, r[expected])
        if leading is None:
            leading, witness = r[expected], model
    return OrderReport(
        method=method,
        expected=expected,
        vanished_through=expected - 1,
        leading_coeff=leading,
        trials=trials,
        seeds=seeds,
        witness_model=witness,
    )


def measure_order(method, model: FunctionModel, max_order: int = 12) -> int:
    """Index of the first nonzero error coefficient for one model."""
    r = expand_method(method, model, max_order)
    for k in range(max_order + 1):
        if r[k] != 0:
            return k
    return max_order + 1


WEIGHT_KEYS = ("J00", "J10", "J20", "J01", "J30", "G0", "G1")


def check_weight_conditions(a, b, c) -> dict:
    """Derivatives at the origin of the rational weight functions for ``(a, b, c)``.

    Evaluates :func:`octaroot.methods.weight_J` and :func:`weight_G` on exact
    series arguments: ``J(e, 0)``, ``J(0, e)`` and ``G(e)``.
    """
    from .methods import weight_G, weight_J

    a, b, c = _to_exact(a), _to_exact(b), _to_exact(c)
    n = 4
    e = TruncSeries.variable(n)
    zero = TruncSeries.constant(0, n)
    jt = weight_J(e, zero, a, b)
    ju = weight_J(zero, e, a, b)
    g = weight_G(e, c)
    return {
        "J00": jt[0],
        "J10": jt[1] * factorial(1),
        "J20": jt[2] * factorial(2),
        "J01": ju[1],
        "J30": jt[3] * factorial(3),
        "G0": g[0],
        "G1": g[1],
    }
