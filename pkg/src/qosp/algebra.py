"""Quommutator superalgebras as declarative relation tables.

A relation on the ordered pair (A, B) with coefficient c reads

    A B - c B A = rhs      (quommutator, at least one generator bosonic)
    A B + c B A = rhs      (antiquommutator, both fermionic)

and ``rhs`` is a linear combination of generators and, for the single
quadratic relation of osp(2,2), of two-letter words.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Iterable, Mapping

from .element import EnvelopingElement
from .expr import ExprSyntaxError, parse_expr
from .scalar import PRS, T, LaurentPoly, substitute_specialization

__all__ = [
    "BOSONIC", "FERMIONIC", "QUOMMUTATOR", "ANTIQUOMMUTATOR",
    "Generator", "Relation", "AlgebraSpec", "AlgebraFormatError", "CoverageError",
    "builtin_osp22_prs", "builtin_osp22_q", "builtin_osp22_classical", "builtin_osp12_q",
    "literal_eq4_fourth", "literal_eq10", "BUILTINS", "get_builtin",
    "format_algebra", "load_algebra", "specialize", "perturb",
]

BOSONIC = "bosonic"
FERMIONIC = "fermionic"
QUOMMUTATOR = "quommutator"
ANTIQUOMMUTATOR = "antiquommutator"

VERBATIM = "verbatim"
REPAIRED = "repaired"


class AlgebraFormatError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        loc = f"line {line}, column {column}: " if line else ""
        super().__init__(loc + message)
        self.line = line
        self.column = column


class CoverageError(ValueError):
    def __init__(self, message: str, pair: tuple[str, str]):
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True)
class Generator:
    name: str
    parity: str
    order_index: int

    @property
    def fermionic(self) -> bool:
        return self.parity == FERMIONIC


@dataclass(frozen=True)
class Relation:
    left: str
    right: str
    kind: str
    coeff: LaurentPoly
    rhs: EnvelopingElement
    provenance: str = VERBATIM
    note: str = field(default="", compare=False)

    @property
    def pair(self) -> frozenset:
        return frozenset((self.left, self.right))

    @property
    def is_square(self) -> bool:
        return self.left == self.right

    @property
    def rhs_linear(self) -> dict[str, LaurentPoly]:
        return {w[0]: c for w, c in self.rhs.terms.items() if len(w) == 1}

    @property
    def rhs_quadratic(self) -> dict[tuple[str, str], LaurentPoly]:
        return {w: c for w, c in self.rhs.terms.items() if len(w) == 2}

    def element(self) -> EnvelopingElement:
        """LHS - RHS as an element of the free algebra; zero in the quotient."""
        v = self.coeff.vars
        ab = EnvelopingElement.word((self.left, self.right), v)
        ba = EnvelopingElement.word((self.right, self.left), v)
        sign = 1 if self.kind == ANTIQUOMMUTATOR else -1
        return ab + ba.scale(self.coeff * sign) - self.rhs

    def map_coefficients(self, fn, variables) -> "Relation":
        return replace(self, coeff=fn(self.coeff), rhs=self.rhs.map_coefficients(fn, variables))

    def label(self) -> str:
        o, c = ("{", "}") if self.kind == ANTIQUOMMUTATOR else ("[", "]")
        return f"{o}{self.left},{self.right}{c}"


@dataclass(frozen=True)
class AlgebraSpec:
    name: str
    parameters: tuple[str, ...]
    generators: tuple[Generator, ...]
    relations: tuple[Relation, ...]
    partial: bool = False
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        if sorted(g.order_index for g in self.generators) != list(range(len(names))):
            raise ValueError("order_index must be a bijection onto 0..count-1")

    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(g.name for g in sorted(self.generators, key=lambda g: g.order_index))

    def generator(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def relation(self, a: str, b: str) -> Relation:
        key = frozenset((a, b))
        for r in self.relations:
            if r.pair == key:
                return r
        raise KeyError((a, b))

    def validate(self) -> None:
        """Check the parity rule and, for total specs, pair coverage."""
        names = set(self.generator_names)
        seen: dict[frozenset, Relation] = {}
        for r in self.relations:
            for g in (r.left, r.right):
                if g not in names:
                    raise ValueError(f"relation {r.label()} uses unknown generator {g}")
            both_odd = self.generator(r.left).fermionic and self.generator(r.right).fermionic
            if (r.kind == ANTIQUOMMUTATOR) != both_odd:
                raise ValueError(f"relation {r.label()} violates the parity rule")
            if r.pair in seen:
                raise CoverageError(f"duplicate relation for pair ({r.left},{r.right})", (r.left, r.right))
            seen[r.pair] = r
        if self.partial:
            return
        order = self.generator_names
        for a, b in combinations(order, 2):
            if frozenset((a, b)) not in seen:
                raise CoverageError(f"missing relation for pair ({a},{b})", (a, b))
        for g in self.generators:
            if g.fermionic and frozenset((g.name,)) not in seen:
                raise CoverageError(f"missing square relation for ({g.name},{g.name})", (g.name, g.name))

    def ordered_relations(self) -> list[Relation]:
        idx = {g.name: g.order_index for g in self.generators}

        def key(r):
            i, j = sorted((idx[r.left], idx[r.right]))
            return (i, j)
        return sorted(self.relations, key=key)

    def deviations(self) -> list[Relation]:
        return [r for r in self.relations if r.provenance != VERBATIM]


# -- built-in tables ---------------------------------------------------------

_OSP22_GENERATORS = (
    ("E11", BOSONIC), ("E22", BOSONIC), ("E12", BOSONIC), ("E21", BOSONIC),
    ("V1", FERMIONIC), ("V2", FERMIONIC), ("Vb1", FERMIONIC), ("Vb2", FERMIONIC),
)

# (left, right, coeff, rhs); "{" rows are antiquommutators, "[" quommutators.
_OSP22_TABLE = [
    # fermion squares and fermion-fermion pairs
    ("{", "V1", "V1", "1", "0"),
    ("{", "V2", "V2", "1", "0"),
    ("{", "Vb1", "Vb1", "1", "0"),
    ("{", "Vb2", "Vb2", "1", "0"),
    ("{", "V1", "V2", "p/(s r)", "0"),
    ("{", "Vb1", "Vb2", "s/(p r)", "0"),
    ("{", "Vb1", "V1", "1", "E11"),
    ("{", "Vb2", "V2", "1", "E22"),
    ("{", "Vb1", "V2", "p s r", "E12"),
    ("{", "Vb2", "V1", "p s/r", "E21"),
    # bosons against V
    ("[", "E11", "V1", "1", "0"),
    ("[", "E22", "V1", "s^2", "V1"),
    ("[", "E21", "V1", "p s/r", "0"),
    ("[", "E12", "V1", "s r/p", "-(s r/p)*V2"),
    ("[", "E11", "V2", "p^2", "V2"),
    ("[", "E22", "V2", "1", "0"),
    ("[", "E21", "V2", "p/(s r)", "-(p/(s r))*V1"),
    ("[", "E12", "V2", "p s r", "0"),
    # bosons against Vb
    ("[", "E11", "Vb1", "1", "0"),
    ("[", "E22", "Vb1", "1/s^2", "-(1/s^2)*Vb1"),
    ("[", "E21", "Vb1", "p r/s", "Vb2"),
    ("[", "E12", "Vb1", "1/(p s r)", "0"),
    ("[", "E11", "Vb2", "1/p^2", "-(1/p^2)*Vb2"),
    ("[", "E22", "Vb2", "1", "0"),
    ("[", "E21", "Vb2", "r/(p s)", "0"),
    ("[", "E12", "Vb2", "s/(p r)", "Vb1"),
    # boson-boson
    ("[", "E11", "E22", "1", "0"),
    ("[", "E11", "E21", "1/p^2", "-(1/p^2)*E21"),
    ("[", "E22", "E21", "s^2", "E21"),
    ("[", "E11", "E12", "p^2", "E12"),
    ("[", "E22", "E12", "1/s^2", "-(1/s^2)*E12"),
    ("[", "E12", "E21", "s^2/p^2",
     "E11 - (s^2/p^2)*E22 + (s^2 - 1)*V1*Vb1 - (s^2/p^2)*(p^2 - 1)*V2*Vb2"),
]

_REPAIRS = {
    frozenset(("Vb2", "V1")): "printed as {Vb2,V2}_{ps/r} = E22, which duplicates the (Vb2,V2) pair "
                               "and leaves (Vb2,V1) uncovered",
    frozenset(("E12", "E21")): "printed with left side [E22,E12]_{s^2/p^2}, a pair already fixed by "
                                "another relation",
}


def _make_generators(spec_rows) -> tuple[Generator, ...]:
    return tuple(Generator(n, par, i) for i, (n, par) in enumerate(spec_rows))


def _make_relation(kind, a, b, coeff, rhs, params, gens, provenance=VERBATIM, note="") -> Relation:
    c = parse_expr(coeff, params, gens).scalar_part()
    r = parse_expr(rhs, params, gens)
    return Relation(a, b, ANTIQUOMMUTATOR if kind == "{" else QUOMMUTATOR, c, r, provenance, note)


def builtin_osp22_prs() -> AlgebraSpec:
    """Three-parameter osp(2,2) over {p, r, s}, with the two typo repairs applied."""
    gens = _make_generators(_OSP22_GENERATORS)
    names = [g.name for g in gens]
    rels = []
    for kind, a, b, c, rhs in _OSP22_TABLE:
        note = _REPAIRS.get(frozenset((a, b)), "")
        rels.append(_make_relation(kind, a, b, c, rhs, PRS, names,
                                   REPAIRED if note else VERBATIM, note))
    spec = AlgebraSpec("osp22prs", PRS, gens, tuple(rels),
                       notes=tuple(f"{k}: {v}" for k, v in (("Vb2,V1", _REPAIRS[frozenset(("Vb2", "V1"))]),
                                                            ("E12,E21", _REPAIRS[frozenset(("E12", "E21"))]))))
    spec.validate()
    return spec


def literal_eq4_fourth(params=PRS) -> Relation:
    """The fourth fermion-fermion relation exactly as printed."""
    names = [n for n, _ in _OSP22_GENERATORS]
    return _make_relation("{", "Vb2", "V2", "p s/r", "E22", params, names)


def literal_eq10(params=PRS) -> Relation:
    """The quadratic boson relation with the printed left-hand pair (E22, E12)."""
    names = [n for n, _ in _OSP22_GENERATORS]
    return _make_relation("[", "E22", "E12", "s^2/p^2",
                          "E11 - (s^2/p^2)*E22 + (s^2 - 1)*V1*Vb1 - (s^2/p^2)*(p^2 - 1)*V2*Vb2",
                          params, names)


def specialize(spec: AlgebraSpec, rule: str = "q", name: str | None = None) -> AlgebraSpec:
    """Apply a parameter specialization (see :data:`qosp.scalar.SPECIALIZATIONS`) to every coefficient."""
    fn = lambda c: substitute_specialization(c, rule)  # noqa: E731
    rels = tuple(r.map_coefficients(fn, T) for r in spec.relations)
    return replace(spec, name=name or f"{spec.name}:{rule}", parameters=T, relations=rels)


def builtin_osp22_q() -> AlgebraSpec:
    """One-parameter osp(2,2)_q: p = t, s = 1/t, r = 1 with q = t^2."""
    return specialize(builtin_osp22_prs(), "q", "osp22q")


def builtin_osp22_classical() -> AlgebraSpec:
    return specialize(builtin_osp22_prs(), "classical", "osp22classical")


def builtin_osp12_q() -> AlgebraSpec:
    """The three defining anti-quommutators of deformed osp(1,2); deliberately partial."""
    gens = _make_generators((("H", BOSONIC), ("Jm", BOSONIC), ("Jp", BOSONIC),
                             ("Vm", FERMIONIC), ("Vp", FERMIONIC)))
    names = [g.name for g in gens]
    aliases = {"q": LaurentPoly.var("t", T, 2)}
    rels = []
    for a, b, rhs in (("Vm", "Vp", "H"), ("Vm", "Vm", "Jm"), ("Vp", "Vp", "Jp")):
        c = parse_expr("q", T, names, aliases).scalar_part()
        rels.append(Relation(a, b, ANTIQUOMMUTATOR, c, parse_expr(rhs, T, names)))
    spec = AlgebraSpec("osp12q", T, gens, tuple(rels), partial=True,
                       notes=("bosonic and mixed relations are not part of this table",))
    spec.validate()
    return spec


BUILTINS = {
    "osp22prs": builtin_osp22_prs,
    "osp22q": builtin_osp22_q,
    "osp22classical": builtin_osp22_classical,
    "osp12q": builtin_osp12_q,
}


def get_builtin(name: str) -> AlgebraSpec:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise KeyError(f"unknown built-in algebra {name!r}; choose from {sorted(BUILTINS)}") from None


def perturb(spec: AlgebraSpec, a: str, b: str, coeff: LaurentPoly) -> AlgebraSpec:
    """Copy of ``spec`` with the quommutator coefficient of pair (a, b) replaced."""
    old = spec.relation(a, b)
    new = replace(old, coeff=coeff, provenance="perturbed", note=f"coefficient {old.coeff} -> {coeff}")
    rels = tuple(new if r is old else r for r in spec.relations)
    return replace(spec, name=f"{spec.name}+perturbed({a},{b})", relations=rels)


# -- text format ---------------------------------------------------------------

def _fmt_coeff(c: LaurentPoly) -> str:
    return f"({c})"


def format_algebra(spec: AlgebraSpec) -> str:
    """Deterministic text serialization, relations ordered by generator index pairs."""
    lines = [f"algebra: {spec.name}"]
    if spec.partial:
        lines.append("partial: true")
    lines.append("params: " + " ".join(spec.parameters))
    gens = sorted(spec.generators, key=lambda g: g.order_index)
    lines.append("generators: " + " ".join(f"{g.name}:{g.parity}" for g in gens))
    idx = {g.name: g.order_index for g in gens}
    for note in spec.notes:
        lines.append(f"# {note}")
    for r in spec.ordered_relations():
        o, c = ("{", "}") if r.kind == ANTIQUOMMUTATOR else ("[", "]")
        rhs = r.rhs.format(key=lambda w: (len(w), [idx[x] for x in w]))
        line = f"{o}{r.left},{r.right}{c}_{_fmt_coeff(r.coeff)} = {rhs}"
        if r.provenance != VERBATIM:
            line += f" @{r.provenance}"
        lines.append(line)
    return "\n".join(lines) + "\n"


_REL = re.compile(r"^\s*([\[{])\s*(\w+)\s*,\s*(\w+)\s*([\]}])\s*_\s*")
_PARITIES = {"bosonic": BOSONIC, "even": BOSONIC, "b": BOSONIC,
             "fermionic": FERMIONIC, "odd": FERMIONIC, "f": FERMIONIC}


def _split_coeff(text: str, start: int, lineno: int) -> tuple[str, int]:
    """Read a parenthesized or bare-token coefficient beginning at ``start``."""
    if start < len(text) and text[start] == "(":
        depth = 0
        for i in range(start, len(text)):
            if text[i] == "(":
                depth += 1
            elif text[i] == ")":
                depth -= 1
                if depth == 0:
                    return text[start + 1:i], i + 1
        raise AlgebraFormatError("unbalanced parentheses in coefficient", lineno, start + 1)
    m = re.compile(r"[^\s=]+").match(text, start)
    if not m:
        raise AlgebraFormatError("missing coefficient", lineno, start + 1)
    return m.group(0), m.end()


def load_algebra(source: str) -> AlgebraSpec:
    """Parse the relation-file format produced by :func:`format_algebra`."""
    name = "loaded"
    params: tuple[str, ...] | None = None
    gens: tuple[Generator, ...] | None = None
    partial = False
    notes: list[str] = []
    rels: list[Relation] = []
    for lineno, raw in enumerate(source.splitlines(), 1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            notes.append(stripped[1:].strip())
            continue
        line = raw.split("#", 1)[0].rstrip()
        head = re.match(r"^\s*(algebra|partial|params|generators)\s*:(.*)$", line)
        if head:
            key, val = head.group(1), head.group(2).strip()
            if key == "algebra":
                name = val
            elif key == "partial":
                partial = val.lower() in ("1", "true", "yes")
            elif key == "params":
                params = tuple(val.split())
            else:
                out = []
                for i, tok in enumerate(val.split()):
                    if ":" not in tok:
                        raise AlgebraFormatError(f"generator {tok!r} lacks a parity", lineno,
                                                 line.find(tok) + 1)
                    g, par = tok.split(":", 1)
                    if par.lower() not in _PARITIES:
                        raise AlgebraFormatError(f"unknown parity {par!r}", lineno, line.find(tok) + 1)
                    out.append(Generator(g, _PARITIES[par.lower()], i))
                gens = tuple(out)
            continue
        m = _REL.match(line)
        if not m:
            raise AlgebraFormatError("expected a relation like {A,B}_(c) = rhs", lineno, 1)
        if params is None or gens is None:
            raise AlgebraFormatError("relation before params/generators header", lineno, 1)
        o, a, b, c = m.groups()
        if (o, c) not in (("{", "}"), ("[", "]")):
            raise AlgebraFormatError("mismatched brackets", lineno, m.start(4) + 1)
        coeff_text, pos = _split_coeff(line, m.end(), lineno)
        rest = line[pos:]
        eq = re.match(r"\s*=\s*", rest)
        if not eq:
            raise AlgebraFormatError("expected '='", lineno, pos + 1)
        rhs_start = pos + eq.end()
        rhs_text = line[rhs_start:]
        provenance = VERBATIM
        tag = re.search(r"\s@(\w+)\s*$", " " + rhs_text)
        if tag:
            provenance = tag.group(1)
            rhs_text = (" " + rhs_text)[:tag.start()].strip()
        names = [g.name for g in gens]
        try:
            coeff = parse_expr(coeff_text, params, ()).scalar_part()
        except ExprSyntaxError as e:
            raise AlgebraFormatError(f"coefficient: {e}", lineno, m.end() + 2 + e.position) from None
        try:
            rhs = parse_expr(rhs_text, params, names)
        except ExprSyntaxError as e:
            raise AlgebraFormatError(f"right-hand side: {e}", lineno, rhs_start + 1 + e.position) from None
        kind = ANTIQUOMMUTATOR if o == "{" else QUOMMUTATOR
        rels.append(Relation(a, b, kind, coeff, rhs, provenance))
    if params is None or gens is None:
        raise AlgebraFormatError("missing params/generators header")
    spec = AlgebraSpec(name, params, gens, tuple(rels), partial=partial, notes=tuple(notes))
    spec.validate()
    return spec
