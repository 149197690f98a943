"""q-integers and the Jackson derivative as exact matrices on monomial bases."""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import RepMatrix
from .scalar import LaurentPoly, RatFunc, T

__all__ = ["PolyBasis", "qint", "qint_half", "q_base", "jackson_matrix", "mult_by_x_matrix"]


@dataclass(frozen=True)
class PolyBasis:
    """Monomials x^0 .. x^degree_bound; x^k is coordinate k."""

    degree_bound: int

    def __post_init__(self):
        if self.degree_bound < 0:
            raise ValueError("degree bound must be nonnegative")

    @property
    def dim(self) -> int:
        return self.degree_bound + 1


def q_base(power: int = 1) -> LaurentPoly:
    """q**power as a monomial in t, where q = t**2."""
    return LaurentPoly.var("t", T, 2 * power)


def qint(n: int, base=None):
    """[n]_base = (1 - base**n) / (1 - base), expanded as a finite sum.

    ``base`` defaults to q = t**2. Any invertible ring element works, e.g. a
    Fraction for evaluated computations.
    """
    if base is None:
        base = q_base()
    one = base ** 0
    acc = one - one
    if n >= 0:
        term = one
        for _ in range(n):
            acc = acc + term
            term = term * base
    else:
        inv = one / base
        term = inv
        for _ in range(-n):
            acc = acc - term
            term = term * inv
    return acc


def qint_half(twice_n: int, base_power: int = 2) -> RatFunc:
    """[twice_n / 2]_{q**base_power} as a rational function of t.

    With q = t**2, (q**base_power)**(m/2) = t**(base_power * m), so half-integer
    arguments stay integral in t.
    """
    num = 1 - LaurentPoly.var("t", T, base_power * twice_n)
    den = 1 - LaurentPoly.var("t", T, 2 * base_power)
    return RatFunc(num, den)


def jackson_matrix(basis: PolyBasis | int, base=None) -> RepMatrix:
    """Square matrix of D_base on P(n): column k holds [k]_base at row k-1."""
    n = basis.degree_bound if isinstance(basis, PolyBasis) else int(basis)
    if base is None:
        base = q_base()
    zero = base * 0
    rows = [[zero] * (n + 1) for _ in range(n + 1)]
    for k in range(1, n + 1):
        rows[k - 1][k] = qint(k, base)
    return RepMatrix(rows, zero, n + 1)


def mult_by_x_matrix(basis_in: PolyBasis | int, basis_out: PolyBasis | int, zero=None,
                     truncate: bool = False) -> RepMatrix:
    """Multiplication by x from P(deg_in) into P(deg_out)."""
    din = basis_in.degree_bound if isinstance(basis_in, PolyBasis) else int(basis_in)
    dout = basis_out.degree_bound if isinstance(basis_out, PolyBasis) else int(basis_out)
    if dout < din + 1 and not truncate:
        raise ValueError(f"x * P({din}) does not fit in P({dout}); pass truncate=True")
    if zero is None:
        zero = LaurentPoly.zero(T)
    one = zero + 1
    rows = [[zero] * (din + 1) for _ in range(dout + 1)]
    for k in range(din + 1):
        if k + 1 <= dout:
            rows[k + 1][k] = one
    return RepMatrix(rows, zero, din + 1)
