"""Exact coefficient arithmetic.

Three layers: :class:`fractions.Fraction` for rationals, :class:`LaurentPoly`
for sparse multivariate Laurent polynomials in named deformation variables,
and :class:`RatFunc` for fractions of Laurent polynomials.

Everything is immutable. Plain ``int`` and ``Fraction`` operands are coerced
to constants of the other operand's ring.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "Fraction",
    "IncompatibleScalarError",
    "LaurentPoly",
    "RatFunc",
    "SPECIALIZATIONS",
    "as_fraction",
    "laurent_add",
    "laurent_mul",
    "ratfunc_eq",
    "evaluate",
    "substitute_specialization",
]

Number = Union[int, Fraction]


class IncompatibleScalarError(ValueError):
    """Raised when two scalars live over different variable lists."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, LaurentPoly) and x.is_constant():
        return x.constant_term()
    raise TypeError(f"cannot interpret {x!r} as a rational")


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class LaurentPoly:
    """Sparse Laurent polynomial with rational coefficients.

    ``terms`` maps exponent tuples (one entry per variable, negative allowed)
    to nonzero :class:`Fraction` coefficients.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, Number] | None = None):
        variables = tuple(variables)
        clean = {}
        if terms:
            nv = len(variables)
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nv:
                    raise ValueError(f"exponent {e} does not match variables {variables}")
                c = as_fraction(c)
                if c:
                    clean[e] = c
        object.__setattr__(self, "vars", variables)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "LaurentPoly":
        return cls(variables)

    @classmethod
    def const(cls, c: Number, variables: Iterable[str]) -> "LaurentPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int] | Iterable[int], variables: Iterable[str],
                 coeff: Number = 1) -> "LaurentPoly":
        variables = tuple(variables)
        if isinstance(exponents, Mapping):
            unknown = set(exponents) - set(variables)
            if unknown:
                raise IncompatibleScalarError(f"unknown variables {sorted(unknown)}")
            e = tuple(int(exponents.get(v, 0)) for v in variables)
        else:
            e = tuple(exponents)
        return cls(variables, {e: coeff})

    @classmethod
    def var(cls, name: str, variables: Iterable[str], power: int = 1) -> "LaurentPoly":
        return cls.monomial({name: power}, variables)

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                if other.is_constant() and not other.vars:
                    return LaurentPoly.const(other.constant_term(), self.vars)
                if self.is_constant() and not self.vars:
                    raise IncompatibleScalarError("constant-only ring on left; coerce explicitly")
                raise IncompatibleScalarError(
                    f"variable lists differ: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other, self.vars)
        return NotImplemented

    # -- queries ------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading_exponent(self) -> tuple:
        return max(self.terms)

    def degree_span(self, variable: str) -> tuple[int, int]:
        """(min, max) exponent of ``variable``; (0, 0) for zero."""
        if not self.terms:
            return (0, 0)
        i = self.vars.index(variable)
        es = [e[i] for e in self.terms]
        return min(es), max(es)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPoly(self.vars, out)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentPoly":
        """Inverse of a monomial; other elements are not units."""
        if not self.is_monomial():
            raise ZeroDivisionError(f"{self} is not a unit in the Laurent ring")
        (e, c), = self.terms.items()
        return LaurentPoly(self.vars, {tuple(-a for a in e): 1 / c})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return LaurentPoly(self.vars, {e: c / other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if self.is_monomial():
            (e, c), = self.terms.items()
            return LaurentPoly(self.vars, {tuple(a * k for a in e): c ** k})
        result = LaurentPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        if isinstance(other, LaurentPoly):
            return self.vars == other.vars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.is_constant():
                h = hash(self.constant_term())
            else:
                h = hash((self.vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- evaluation / substitution -----------------------------------------

    def evaluate(self, assignment: Mapping[str, Number]) -> Fraction:
        missing = [v for v in self.vars if v not in assignment]
        if missing:
            raise KeyError(f"no value for {missing}")
        vals = [as_fraction(assignment[v]) for v in self.vars]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(vals, e):
                if k:
                    if not x and k < 0:
                        raise ZeroDivisionError("negative power of a variable assigned zero")
                    term *= x ** k
            total += term
        return total

    def evaluate_square(self, variable: str, square_value: Number) -> "LaurentPoly | Fraction":
        """Evaluate at ``variable**2 = square_value``; every exponent of it must be even.

        Returns a Fraction if no variables remain, else a LaurentPoly in the rest.
        """
        i = self.vars.index(variable)
        x = as_fraction(square_value)
        rest = self.vars[:i] + self.vars[i + 1:]
        out: dict[tuple, Fraction] = {}
        for e, c in self.terms.items():
            k = e[i]
            if k % 2:
                raise ValueError(f"odd power {variable}^{k}: not a function of {variable}^2")
            if not x and k < 0:
                raise ZeroDivisionError("negative power of a variable assigned zero")
            r = e[:i] + e[i + 1:]
            out[r] = out.get(r, 0) + c * x ** (k // 2)
        if not rest:
            return out.get((), Fraction(0))
        return LaurentPoly(rest, out)

    def substitute(self, images: Mapping[str, "LaurentPoly"], target_vars: Iterable[str]) -> "LaurentPoly":
        """Ring map sending each variable to the given image over ``target_vars``."""
        target_vars = tuple(target_vars)
        one = LaurentPoly.const(1, target_vars)
        result = LaurentPoly.zero(target_vars)
        for e, c in self.terms.items():
            term = one * c
            for v, k in zip(self.vars, e):
                if k:
                    img = images[v]
                    if not isinstance(img, LaurentPoly):
                        img = LaurentPoly.const(img, target_vars)
                    term = term * img ** k
            result = result + term
        return result

    # -- printing -----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items())

    def _monomial_str(self, e: tuple) -> str:
        parts = []
        for v, k in zip(self.vars, e):
            if k == 1:
                parts.append(v)
            elif k:
                parts.append(f"{v}^{k}")
        return " ".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            mono = self._monomial_str(e)
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if not mono:
                body = _fmt_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_rational(a)} * {mono}"
            if i == 0:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.vars}, {str(self)!r})"


class RatFunc:
    """Fraction of Laurent polynomials, normalized so the denominator's leading term is 1.

    No gcd is taken: equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | Number = 1):
        if not isinstance(num, LaurentPoly) and not isinstance(den, LaurentPoly):
            raise TypeError("numerator or denominator must be a LaurentPoly")
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.const(num, den.vars)
        if not isinstance(den, LaurentPoly):
            den = LaurentPoly.const(den, num.vars)
        if den.vars != num.vars:
            raise IncompatibleScalarError(f"variable lists differ: {num.vars} vs {den.vars}")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        e = den.leading_exponent()
        lead = LaurentPoly(den.vars, {e: den.terms[e]})
        inv = lead.inverse()
        object.__setattr__(self, "num", num * inv)
        object.__setattr__(self, "den", den * inv)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @property
    def vars(self):
        return self.num.vars

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, LaurentPoly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc(LaurentPoly.const(other, self.vars))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.den, self.den * o.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ratfunc_eq(self, o)

    __hash__ = None

    def evaluate(self, assignment: Mapping[str, Number]) -> Fraction:
        return self.num.evaluate(assignment) / self.den.evaluate(assignment)

    def evaluate_square(self, variable: str, square_value: Number):
        return self.num.evaluate_square(variable, square_value) / \
            self.den.evaluate_square(variable, square_value)

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


def laurent_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.vars != b.vars:
        raise IncompatibleScalarError(f"variable lists differ: {a.vars} vs {b.vars}")
    return a + b


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.vars != b.vars:
        raise IncompatibleScalarError(f"variable lists differ: {a.vars} vs {b.vars}")
    return a * b


def ratfunc_eq(a: RatFunc, b: RatFunc) -> bool:
    if a.vars != b.vars:
        raise IncompatibleScalarError(f"variable lists differ: {a.vars} vs {b.vars}")
    return a.num * b.den == b.num * a.den


def evaluate(a: LaurentPoly, assignment: Mapping[str, Number]) -> Fraction:
    return a.evaluate(assignment)


PRS = ("p", "r", "s")
T = ("t",)

# Images of p, r, s. The one-parameter family uses t with q = t**2.
SPECIALIZATIONS = {
    "q": {"p": LaurentPoly.var("t", T), "r": LaurentPoly.const(1, T), "s": LaurentPoly.var("t", T, -1)},
    "classical": {"p": LaurentPoly.const(1, T), "r": LaurentPoly.const(1, T), "s": LaurentPoly.const(1, T)},
}


def substitute_specialization(a: LaurentPoly, rule: str = "q") -> LaurentPoly:
    """Map a polynomial over {p, r, s} to one over {t}.

    ``rule`` is ``"q"`` (p -> t, s -> 1/t, r -> 1) or ``"classical"`` (p = r = s = 1).
    """
    try:
        images = SPECIALIZATIONS[rule]
    except KeyError:
        raise ValueError(f"unknown specialization {rule!r}") from None
    return a.substitute(images, T)
