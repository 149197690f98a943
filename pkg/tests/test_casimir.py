from fractions import Fraction

import pytest

from qosp.casimir import (casimir_report, central_quadratic_search, classify_sequence, casimir_closed_form_at,
                          casimir_closed_form, twisted_central_search)
from qosp.element import EnvelopingElement
from qosp.linalg import RowSpace
from qosp.rep import build_osp12
from qosp.scalar import T, LaurentPoly, RatFunc

t = LaurentPoly.var("t", T)
q = t ** 2


def test_closed_form_values():
    # -(1/2) [-3/2]_{4} = -(1/2) (1 - 4^{-3/2}) / (1 - 4) = 7/48
    assert casimir_closed_form_at(1, 2) == Fraction(7, 48)
    assert casimir_closed_form_at(2, 2) == Fraction(31, 192)
    for n in range(1, 6):
        assert casimir_closed_form_at(n, 1) == Fraction(2 * n + 1, 4)


def test_closed_form_as_rational_function():
    n = 3
    c = casimir_closed_form(n)
    assert c * RatFunc(-2 * (1 - q ** 2)) == RatFunc(1 - q ** (-(2 * n + 1)))


def test_central_search_single_module():
    found = central_quadratic_search(build_osp12(1).evaluate(2))
    one = EnvelopingElement.scalar(1, ())
    assert (one, 1) in found
    assert any(not e.is_scalar() and s != 0 for e, s in found)


def test_central_search_symbolic_input_defaults_to_q2():
    assert central_quadratic_search(build_osp12(2)) == central_quadratic_search(build_osp12(2).evaluate(2))


def test_twisted_search_requires_common_q():
    with pytest.raises(ValueError):
        twisted_central_search([build_osp12(1).evaluate(2), build_osp12(2).evaluate(3)], 1)


def test_classify():
    space = RowSpace(3)
    space.add([1, 2, 3])
    assert classify_sequence([2, 4, 6], space) == "exact"
    assert classify_sequence([3, 4, 5], space) == "affine"
    assert classify_sequence([1, 0, 0], space) == "mismatch"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_twisted_element_symbolically(n):
    # X = 1 - (1+q) V- V+ + q (1+q) V+ V-
    reps = build_osp12(n)
    g = reps.generators
    x = reps.identity() - (g["Vm"] @ g["Vp"]).scale(1 + q) + (g["Vp"] @ g["Vm"]).scale(q * (1 + q))
    assert (x @ g["Vp"] + (g["Vp"] @ x).scale(q)).is_zero()
    assert (x @ g["Vm"] + (g["Vm"] @ x).scale(q ** -1)).is_zero()
    value = x[n, n]
    assert value * (1 - q ** -1) == 1 - q ** (-(2 * n + 1))
    assert RatFunc(value) == casimir_closed_form(n) * RatFunc(2 * q * (1 + q))


def test_report_deformed():
    d = casimir_report((1, 2, 3), 2).data
    sectors = {s["sector"]: s["match"] for s in d["sectors"]}
    assert sectors["central"] == "mismatch"
    assert sectors["twisted(q)"] == "affine"
    assert sectors["twisted(-q)"] == "exact"
    assert d["matches_paper_formula"] == "exact" and d["best_sector"] == "twisted(-q)"
    sym = d["symbolic_twisted(-q)"]
    assert sym["ratfunc_equal_up_to_ratio"] is True
    assert sym["element"] == "1 + (-1 - t^2)*Vm*Vp + (t^2 + t^4)*Vp*Vm"
    assert all(e["commutant_dim"] == 1 for e in d["per_n"])


def test_report_classical():
    d = casimir_report((1, 2, 3), 1).data
    sectors = {s["sector"]: s for s in d["sectors"]}
    assert set(sectors) == {"central", "graded"}
    assert sectors["graded"]["match"] == "exact"
    assert sectors["central"]["match"] == "mismatch"
    # the even Casimir acts by n(n+1), the square of the graded value up to shift
    el = [e for e in sectors["central"]["elements"] if e["element"] != "1"]
    assert [Fraction(v) for v in el[0]["values"]] == [2, 6, 12]
