from fractions import Fraction

from hypothesis import strategies as st

from qosp.scalar import PRS, LaurentPoly

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exponents = st.integers(min_value=-3, max_value=3)


@st.composite
def laurent(draw, variables=PRS, max_terms=4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(exponents) for _ in variables)
        terms[e] = terms.get(e, Fraction(0)) + draw(small_fracs)
    return LaurentPoly(variables, terms)


@st.composite
def laurent_monomial(draw, variables=PRS):
    c = draw(small_fracs.filter(bool))
    return LaurentPoly.monomial([draw(exponents) for _ in variables], variables, c)
