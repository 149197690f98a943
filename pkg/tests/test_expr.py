import pytest

from qosp.element import EnvelopingElement
from qosp.expr import ExprSyntaxError, parse_expr, parse_scalar
from qosp.scalar import PRS, T, LaurentPoly

GENS = ("A", "B")
p, r, s = (LaurentPoly.var(v, PRS) for v in PRS)


def W(*w, c=1):
    return EnvelopingElement.word(w, PRS, c)


def test_products_and_sums():
    e = parse_expr("2 A*B - p^2 B A + s/r", PRS, GENS)
    assert e == W("A", "B", c=2) - W("B", "A", c=p ** 2) + EnvelopingElement.scalar(s / r, PRS)


def test_parentheses_distribute():
    assert parse_expr("(A + B)^2", PRS, GENS) == W("A", "A") + W("A", "B") + W("B", "A") + W("B", "B")


def test_negative_exponent_scalar():
    assert parse_scalar("p^-2 s", PRS) == p ** -2 * s


def test_alias():
    q2 = parse_scalar("q^2", T, {"q": LaurentPoly.var("t", T, 2)})
    assert q2 == LaurentPoly.var("t", T, 4)


@pytest.mark.parametrize("text, pos", [
    ("A + ", 4), ("A / B", 2), ("p / (p + 1)", 2), ("A ^ x", 4), ("(A", 2), ("Z", 0), ("A $", 2),
])
def test_errors_report_position(text, pos):
    with pytest.raises(ExprSyntaxError) as ei:
        parse_expr(text, PRS, GENS)
    assert ei.value.position == pos
