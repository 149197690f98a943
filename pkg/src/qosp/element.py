"""Elements of a free associative algebra over a Laurent-polynomial ring.

A word is a tuple of generator names; the empty tuple is the unit.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .scalar import LaurentPoly, _fmt_rational

__all__ = ["EnvelopingElement", "Word"]

Word = tuple


class EnvelopingElement:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[Word, object] | None = None):
        variables = tuple(variables)
        clean: dict[Word, LaurentPoly] = {}
        for w, c in (terms or {}).items():
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.const(c, variables)
            elif c.vars != variables:
                c = LaurentPoly.const(c.constant_term(), variables) if c.is_constant() else c
                if c.vars != variables:
                    raise ValueError(f"coefficient over {c.vars}, expected {variables}")
            if c:
                w = tuple(w)
                prev = clean.get(w)
                c = c if prev is None else prev + c
                if c:
                    clean[w] = c
                else:
                    clean.pop(w, None)
        object.__setattr__(self, "vars", variables)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("EnvelopingElement is immutable")

    @classmethod
    def zero(cls, variables) -> "EnvelopingElement":
        return cls(variables)

    @classmethod
    def word(cls, word: Iterable[str], variables, coeff=1) -> "EnvelopingElement":
        return cls(variables, {tuple(word): coeff})

    @classmethod
    def scalar(cls, c, variables) -> "EnvelopingElement":
        return cls(variables, {(): c})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return not self.terms or set(self.terms) == {()}

    def scalar_part(self) -> LaurentPoly:
        return self.terms.get((), LaurentPoly.zero(self.vars))

    def _lift(self, other) -> "EnvelopingElement":
        if isinstance(other, EnvelopingElement):
            return other
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return EnvelopingElement.scalar(other, self.vars)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for w, c in o.terms.items():
            out[w] = out[w] + c if w in out else c
        return EnvelopingElement(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return EnvelopingElement(self.vars, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "EnvelopingElement":
        return EnvelopingElement(self.vars, {w: c * x for w, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.scale(other)
        if not isinstance(other, EnvelopingElement):
            return NotImplemented
        out: dict[Word, LaurentPoly] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out[w] + c1 * c2 if w in out else c1 * c2
        return EnvelopingElement(self.vars, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def map_coefficients(self, fn: Callable[[LaurentPoly], LaurentPoly], variables) -> "EnvelopingElement":
        return EnvelopingElement(variables, {w: fn(c) for w, c in self.terms.items()})

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.vars == o.vars and self.terms == o.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def sorted_terms(self, key: Callable[[Word], object] | None = None):
        key = key or (lambda w: (len(w), w))
        return sorted(self.terms.items(), key=lambda wc: key(wc[0]))

    def format(self, key: Callable[[Word], object] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (w, c) in enumerate(self.sorted_terms(key)):
            word = "*".join(w)
            neg = False
            if c.is_constant():
                r = c.constant_term()
                neg = r < 0
                r = -r if neg else r
                if not w:
                    body = _fmt_rational(r)
                elif r == 1:
                    body = word
                else:
                    body = f"{_fmt_rational(r)}*{word}"
            else:
                if c.is_monomial() and next(iter(c.terms.values())) < 0:
                    neg, c = True, -c
                cs = f"({c})"
                body = cs if not w else f"{cs}*{word}"
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"EnvelopingElement({self.format()!r})"
