import csv
import io
import math
from fractions import Fraction

import pytest

from helpers import poly_fn
from octaroot.errors import DegenerateTrace, StepBreakdown
from octaroot.methods import get_method
from octaroot.mpnum import big_context
from octaroot.problems import test_function
from octaroot.solver import (
    IterationTrace,
    StopRule,
    acoc,
    cells_to_csv,
    coc,
    efficiency_index,
    format_table,
    solve,
    table_cell,
)


def _synthetic(order, n=5, digits=3000):
    # x_k = e_k with e_k = 10^-(order^k); the root is 0
    ctx = big_context(digits)
    xs = [ctx.mp.mpf(10) ** -(order**k) for k in range(n)]
    return IterationTrace(get_method("m1"), iterates=xs, residuals=list(xs), errors=list(xs))


@pytest.mark.parametrize("order", [2, 4, 8])
def test_synthetic_orders(order):
    tr = _synthetic(order, n={2: 8, 4: 5, 8: 5}[order])
    assert abs(coc(tr) - order) < 1e-12
    # step sizes are dominated by the earlier error, so ACOC is exact to ~10^-order^k
    assert abs(acoc(tr) - order) < 1e-6


def test_efficiency_index():
    assert efficiency_index(4, 8) == pytest.approx(1.68179, abs=1e-5)
    assert efficiency_index(1, 5) == 5
    assert efficiency_index(2, 2) == pytest.approx(math.sqrt(2))
    with pytest.raises(ValueError):
        efficiency_index(0, 2)
    with pytest.raises(ValueError):
        efficiency_index(3, 1)


def test_newton_coc_is_two():
    tf = test_function("f1")
    ctx = big_context(200)
    tr = solve("newton", tf.problem(ctx), tf.x0(ctx), StopRule(max_iters=6), root=tf.root(ctx))
    assert abs(coc(tr) - 2) < 1e-2
    assert abs(acoc(tr) - 2) < 1e-2


def test_exact_root_stops_immediately():
    tr = solve("newton", poly_fn((1, 0, -1)), Fraction(1), root=Fraction(1))
    assert tr.iterations == 0 and tr.evals == (0, 0)
    assert tr.residuals == [0]


def test_trace_bookkeeping():
    tf = test_function("f2")
    ctx = big_context(100)
    tr = solve("m1", tf.problem(ctx), tf.x0(ctx), StopRule(max_iters=2), root=tf.root(ctx))
    assert tr.iterations == 2
    assert tr.evals == (6, 2)
    assert len(tr.iterates) == len(tr.residuals) == len(tr.errors) == 3


def test_stop_rules():
    with pytest.raises(ValueError):
        StopRule(max_iters=None)
    f = poly_fn((1, 0, -2))
    tr = solve("newton", f, Fraction(1), StopRule(max_iters=None, step_tol=Fraction(1, 10**6)))
    assert abs(tr.iterates[-1] ** 2 - 2) < Fraction(1, 10**20)
    tr = solve("newton", f, Fraction(1), StopRule(max_iters=50, residual_tol=Fraction(1, 10**3)))
    assert tr.residuals[-1] <= Fraction(1, 10**3) < tr.residuals[-2]


def test_breakdown_carries_partial_trace():
    # x^2 + 1 over the rationals: Newton from 1 reaches 0 where f' vanishes
    with pytest.raises(StepBreakdown) as exc:
        solve("newton", poly_fn((1, 0, 1)), Fraction(1), StopRule(max_iters=5))
    tr = exc.value.trace
    assert tr.iterates == [1, 0]
    assert tr.evals == (1, 1)


def test_degenerate_traces():
    tr = IterationTrace(get_method("m1"), iterates=[1, 1, 1, 1], residuals=[1] * 4, errors=[1, 1, 1, 1])
    with pytest.raises(DegenerateTrace):
        coc(tr)
    with pytest.raises(DegenerateTrace):
        acoc(tr)
    with pytest.raises(DegenerateTrace):
        coc(IterationTrace(get_method("m1"), iterates=[1, 2], errors=[1, 2]))
    with pytest.raises(DegenerateTrace):
        coc(IterationTrace(get_method("m1"), iterates=[1, 2, 3, 4]))
    with pytest.raises(DegenerateTrace):
        acoc(IterationTrace(get_method("m1"), iterates=[1, 2, 3]))


# -- table runs ----------------------------------------------------------

def test_published_cell_m5_f4(table):
    cell = table[("f4", "m5")]
    assert cell.error_parts()[0] == ("0.642", -10)
    assert f"{float(cell.coc):.4f}" == "8.0000"


def test_more_precision_leaves_printed_digits_unchanged(table):
    lo = table[("f4", "m5")]
    hi = table_cell("m5", "f4", precision=4096)
    assert hi.error_parts() == lo.error_parts()
    assert f"{float(hi.coc):.4f}" == f"{float(lo.coc):.4f}"


@pytest.mark.parametrize("fid", ["f1", "f2", "f3", "f4"])
def test_error_constant_is_stable(table, fid):
    # e_{n+1} / e_n^8 settles to the asymptotic constant
    for m in ("m1", "m3", "m4", "m5"):
        e = table[(fid, m)].errors
        c1 = e[1] / e[0] ** 8
        c2 = e[2] / e[1] ** 8
        assert 0.5 <= c2 / c1 <= 2


def test_coc_and_acoc_agree(table):
    for cell in table.values():
        assert abs(cell.coc - cell.acoc) < 1e-2


def test_truncation_switch(table):
    cell = table[("f1", "m4")]
    assert cell.error_parts()[0] == ("0.893", -4)
    assert cell.error_parts(truncate=False)[0] == ("0.894", -4)


def test_csv_and_text_output(table):
    cells = [table[("f1", m)] for m in ("m1", "m2")]
    text = cells_to_csv(cells)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["method"] for r in rows] == ["m1", "m2"]
    assert rows[0]["err2_mantissa"] == "0.583" and rows[0]["err2_exponent"] == "-28"
    assert rows[0]["coc"] == "8.0000"
    assert cells_to_csv([]) == ""
    block = format_table(cells)
    assert block.splitlines()[0] == "f1, x0=0.35"
    assert "0.583e-28" in block and "ACOC" in block


def test_complex_method_uses_complex_context(table):
    cell = table[("f1", "m2")]
    assert type(cell.trace.iterates[-1]).__name__ == "mpc"
    assert type(table[("f1", "m1")].trace.iterates[-1]).__name__ == "mpf"
    assert cell.error_parts()[1] == ("0.562", -25)
