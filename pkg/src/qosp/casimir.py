"""Central and twisted-central elements of the osp(1,2) representations.

An element X of the enveloping algebra is *twisted central* with twist k when

    X V+ = k V+ X,    X V- = k^-1 V- X,    X H = H X,    X J+- = k^+-2 J+- X.

k = 1 is ordinary centrality (a Casimir acts as a scalar on an irreducible
module); k = -1 is the graded sector of a super-Casimir; k = -q is its
deformation. Such an X is fixed on an irreducible module by its eigenvalue on
the lowest-weight vector (x^0 in the second component, killed by V-), which is
the "value" reported here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .element import EnvelopingElement, Word
from .linalg import RepMatrix, RowSpace, nullspace
from .qcalc import qint_half
from .rep import RepSet, _check_q, build_osp12, commutant_dimension
from .scalar import T, LaurentPoly, RatFunc, as_fraction

__all__ = [
    "OSP12_GENERATORS", "QUADRATIC_WORDS", "casimir_closed_form", "casimir_closed_form_at",
    "TwistedSolutions", "twisted_central_search", "central_quadratic_search",
    "classify_sequence", "casimir_report",
]

OSP12_GENERATORS = ("H", "Jm", "Jp", "Vm", "Vp")
QUADRATIC_WORDS: tuple[Word, ...] = ((),) + tuple((g,) for g in OSP12_GENERATORS) + \
    tuple(product(OSP12_GENERATORS, repeat=2))

_EXPONENTS = {"H": 0, "Jm": -2, "Jp": 2, "Vm": -1, "Vp": 1}


def casimir_closed_form(n: int) -> RatFunc:
    """-(1/2) [-n - 1/2]_{q^2} as a rational function of t (q = t^2)."""
    return qint_half(-(2 * n + 1), base_power=2) * Fraction(-1, 2)


def casimir_closed_form_at(n: int, q) -> Fraction:
    q = as_fraction(q)
    if q == 1:
        # q-integers tend to ordinary numbers
        return Fraction(-1, 2) * Fraction(-(2 * n + 1), 2)
    return casimir_closed_form(n).evaluate_square("t", q)


def _lowest_weight_index(reps: RepSet) -> int:
    return reps.module.n


def _twist_rows(reps: RepSet, mats: Sequence[RepMatrix], twist: Fraction, n_extra: int,
                slot: int | None) -> list[list[Fraction]]:
    """Linear equations on word coefficients (plus value slots) for one module."""
    W = len(mats)
    d = reps.dim
    rows = []
    for g in OSP12_GENERATORS:
        if g not in reps.generators:
            continue
        gm = reps.generators[g]
        k = twist ** _EXPONENTS[g]
        prods = [m @ gm - (gm @ m).scale(k) for m in mats]
        for i in range(d):
            for j in range(d):
                row = [p[i, j] for p in prods]
                if any(row):
                    rows.append(row + [Fraction(0)] * n_extra)
    if slot is not None:
        v0 = _lowest_weight_index(reps)
        for i in range(d):
            row = [m[i, v0] for m in mats] + [Fraction(0)] * n_extra
            if i == v0:
                row[W + slot] = Fraction(-1)
            if any(row):
                rows.append(row)
    return rows


@dataclass
class TwistedSolutions:
    """Basis of twisted-central word combinations, with their values on each module."""

    twist: Fraction
    ns: tuple[int, ...]
    q: Fraction
    words: tuple[Word, ...]
    vectors: list[list[Fraction]]   # coefficient vectors (words) followed by values (ns)

    @property
    def kernel_dim(self) -> int:
        """Combinations acting as zero on every module."""
        W = len(self.words)
        return sum(1 for v in self.vectors if not any(v[W:]))

    def value_space(self) -> RowSpace:
        W = len(self.words)
        rs = RowSpace(len(self.ns))
        for v in self.vectors:
            rs.add(v[W:])
        return rs

    def nontrivial(self) -> list[list[Fraction]]:
        W = len(self.words)
        return [v for v in self.vectors if any(v[W:])]

    def element(self, v: Sequence[Fraction]) -> EnvelopingElement:
        return EnvelopingElement((), {w: c for w, c in zip(self.words, v) if c})

    def values(self, v: Sequence[Fraction]) -> list[Fraction]:
        return list(v[len(self.words):])


def twisted_central_search(reps_list: Sequence[RepSet], twist, words: Sequence[Word] = QUADRATIC_WORDS
                           ) -> TwistedSolutions:
    """Word combinations with n-independent coefficients that are twisted central on every module.

    All modules must be evaluated at the same q.
    """
    reps_list = list(reps_list)
    qs = {r.q for r in reps_list}
    if len(qs) != 1 or None in qs:
        raise ValueError("all representations must be evaluated at one common q")
    q = qs.pop()
    twist = as_fraction(twist)
    words = tuple(words)
    N = len(reps_list)
    rows = []
    for k, reps in enumerate(reps_list):
        mats = [reps.word(w) for w in words]
        rows.extend(_twist_rows(reps, mats, twist, N, k))
    sols = nullspace(rows, len(words) + N)
    space = RowSpace(len(words) + N)
    for v in sols:
        space.add(v)
    return TwistedSolutions(twist, tuple(r.module.n for r in reps_list), q, words, space.basis())


def central_quadratic_search(reps: RepSet, assignment=None) -> list[tuple[EnvelopingElement, Fraction]]:
    """Basis of <=quadratic word combinations commuting with all generators, with their scalars.

    Symbolic input is evaluated at ``assignment`` (default q = 2).
    """
    if reps.q is None:
        reps = reps.evaluate(_check_q((assignment or {"q": 2})["q"]))
    sols = twisted_central_search([reps], 1)
    out = []
    for v in sols.vectors:
        e = sols.element(v)
        m = reps.element(e)
        s = m.is_scalar()
        if s is None:
            raise ArithmeticError("central element is not scalar; module is reducible")
        out.append((e, s))
    return out


def classify_sequence(target: Sequence[Fraction], values: RowSpace) -> str:
    """'exact' if target is a value sequence, 'affine' if only after adding a constant."""
    if not any(values.reduce(target)):
        return "exact"
    aff = RowSpace(values.width)
    for b in values.basis():
        aff.add(b)
    aff.add([1] * values.width)
    if not any(aff.reduce(target)):
        return "affine"
    return "mismatch"


def _interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients (low to high) of the interpolating polynomial."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    return coeffs


def _poly_at(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _symbolic_element(twist_power: int, twist_sign: int, ns: Sequence[int],
                      sample_qs: Sequence[Fraction] = (2, 3, 5, 7, 11, 13, 17), max_degree: int = 4):
    """Reconstruct a unique nontrivial twisted-central element with coefficients polynomial in q.

    Returns (element over t, values as LaurentPoly per n) or None.
    """
    vecs = {}
    for qv in sample_qs:
        qv = Fraction(qv)
        twist = twist_sign * qv ** twist_power
        reps = [build_osp12(n).evaluate(qv) for n in ns]
        sols = twisted_central_search(reps, twist)
        nt = sols.nontrivial()
        if len(nt) != 1:
            return None
        v = nt[0]
        W = len(sols.words)
        # normalize on the first nonzero coefficient
        piv = next(i for i, x in enumerate(v[:W]) if x)
        vecs[qv] = (piv, [x / v[piv] for x in v[:W]])
    pivs = {p for p, _ in vecs.values()}
    if len(pivs) != 1:
        return None
    fit_qs = list(vecs)[:max_degree + 1]
    check_qs = list(vecs)[max_degree + 1:]
    words = QUADRATIC_WORDS
    coeffs = {}
    for i, w in enumerate(words):
        ys = [vecs[x][1][i] for x in fit_qs]
        poly = _interpolate(fit_qs, ys)
        if any(_poly_at(poly, x) != vecs[x][1][i] for x in check_qs):
            return None
        if any(poly):
            c = LaurentPoly(T, {(2 * k,): a for k, a in enumerate(poly) if a})
            coeffs[w] = c
    element = EnvelopingElement(T, coeffs)
    t_twist = LaurentPoly.monomial((2 * twist_power,), T, twist_sign)
    values = []
    for n in ns:
        reps = build_osp12(n)
        x = reps.element(element)
        for g in OSP12_GENERATORS:
            gm = reps.generators[g]
            if not (x @ gm - (gm @ x).scale(t_twist ** _EXPONENTS[g])).is_zero():
                return None
        v0 = _lowest_weight_index(reps)
        col = [x[i, v0] for i in range(reps.dim)]
        if any(c for i, c in enumerate(col) if i != v0):
            return None
        values.append(col[v0])
    return element, values


_SECTORS = {
    # name: (sign, power of q) giving twist = sign * q**power
    "central": (1, 0),
    "graded": (-1, 0),
    "twisted(q)": (1, 1),
    "twisted(-q)": (-1, 1),
    "twisted(q^-1)": (1, -1),
    "twisted(-q^-1)": (-1, -1),
}


@dataclass
class CasimirReport:
    data: dict

    def to_json(self) -> str:
        return json.dumps(self.data, indent=2, sort_keys=True)


def _sector_summary(name, q, ns, sols: TwistedSolutions) -> dict:
    target = [casimir_closed_form_at(n, q) for n in ns]
    space = sols.value_space()
    W = len(sols.words)
    elems = [{"element": sols.element(v).format(), "values": [str(x) for x in sols.values(v)]}
             for v in sols.nontrivial()]
    return {"sector": name, "twist": str(sols.twist), "value_space_dim": len(space),
            "kernel_dim": sols.kernel_dim, "elements": elems,
            "match": classify_sequence(target, space) if len(space) else "mismatch"}


def casimir_report(ns: Iterable[int] = (1, 2, 3, 4), q=2, symbolic: bool = True) -> CasimirReport:
    """Search for Casimir-type elements and compare with -(1/2)[-n-1/2]_{q^2}.

    Per-module data covers irreducibility and the plain central search; the
    joint search then fixes word coefficients independently of n so value
    sequences can be compared with the closed form across n.
    """
    ns = tuple(ns)
    q = as_fraction(q)
    if q == 0:
        raise ValueError("q must be nonzero")
    reps = [build_osp12(n).evaluate(q) for n in ns]
    per_n = []
    for r in reps:
        found = central_quadratic_search(r)
        entry = {"n": r.module.n, "commutant_dim": commutant_dimension(r)}
        entry["central_space_dim"] = len(found)
        entry["scalars"] = sorted({str(s) for _, s in found if s is not None}, key=lambda x: Fraction(x))
        entry["nonidentity_scalar_element"] = any(
            not e.is_scalar() and s is not None and s != 0 for e, s in found)
        entry["closed_form"] = str(casimir_closed_form_at(r.module.n, q))
        per_n.append(entry)
    sectors = []
    seen = set()
    for name, (sign, power) in _SECTORS.items():
        twist = sign * q ** power
        if twist in seen:
            continue
        seen.add(twist)
        sectors.append(_sector_summary(name, q, ns, twisted_central_search(reps, twist)))
    rank_order = {"exact": 0, "affine": 1, "mismatch": 2}
    best = min(sectors, key=lambda s: rank_order[s["match"]])
    central = sectors[0]
    data = {
        "schema": 1, "algebra": "osp12q", "ns": list(ns), "q": str(q),
        "mode": "classical" if q == 1 else "deformed",
        "per_n": per_n,
        "central_space_dim": {str(e["n"]): e["central_space_dim"] for e in per_n},
        "scalars": {str(e["n"]): e["scalars"] for e in per_n},
        "sectors": sectors,
        "central_match": central["match"],
        "best_sector": best["sector"] if best["match"] != "mismatch" else None,
        "matches_paper_formula": best["match"],
    }
    if symbolic and q != 1:
        sym = _symbolic_element(1, -1, ns)
        if sym is not None:
            element, values = sym
            alpha = RatFunc(values[0]) / casimir_closed_form(ns[0])
            ok = all(RatFunc(v) == alpha * casimir_closed_form(n) for n, v in zip(ns, values))
            data["symbolic_twisted(-q)"] = {
                "element": element.format(),
                "values": [str(v) for v in values],
                "ratio_to_closed_form": str(alpha),
                "ratfunc_equal_up_to_ratio": ok,
            }
        else:
            data["symbolic_twisted(-q)"] = None
    return CasimirReport(data)

