"""Normal ordering by two-letter rewriting, with diamond-lemma confluence checks.

Each relation on a pair of distinct generators becomes one rule rewriting the
larger two-letter word into smaller ones; fermionic squares become rules
``AA -> rhs / (1 + c)``. Words are compared by weighted degree (bosons weigh
2, fermions 1 by default) and then lexicographically by generator index. The
weighting lets the quadratic relation for (E12, E21), whose right side holds
fermion bilinears, still decrease.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .algebra import ANTIQUOMMUTATOR, AlgebraSpec
from .element import EnvelopingElement, Word
from .scalar import LaurentPoly

__all__ = [
    "DEFAULT_STEP_BUDGET", "OrientationError", "StepBudgetExceeded",
    "RewriteSystem", "orient", "normal_form", "critical_pairs", "check_confluence",
    "ConfluenceReport", "Failure", "step_budget_from_env",
]

DEFAULT_STEP_BUDGET = 10 ** 6


def step_budget_from_env(default: int = DEFAULT_STEP_BUDGET) -> int:
    raw = os.environ.get("QOSP_STEP_BUDGET")
    return int(raw) if raw else default


class OrientationError(ValueError):
    pass


class StepBudgetExceeded(RuntimeError):
    def __init__(self, budget: int, word: Word):
        super().__init__(f"normal form exceeded {budget} rule applications (last word {'*'.join(word)})")
        self.budget = budget
        self.word = word


@dataclass(frozen=True)
class RewriteSystem:
    """Rules keyed by their two-letter left side ``(B, A)``."""

    spec: AlgebraSpec
    order: tuple[str, ...]
    weights: Mapping[str, int]
    rules: Mapping[tuple[str, str], EnvelopingElement]
    _index: Mapping[str, int] = field(repr=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(self.order)})

    @property
    def variables(self) -> tuple[str, ...]:
        return self.spec.parameters

    def key(self, word: Word):
        """Sort key of the monomial order."""
        idx = self._index
        return (sum(self.weights[g] for g in word), [idx[g] for g in word])

    def is_canonical(self, word: Word) -> bool:
        return not any((word[i], word[i + 1]) in self.rules for i in range(len(word) - 1))

    def format(self, e: EnvelopingElement) -> str:
        return e.format(key=self.key)

    def element(self, word: Iterable[str], coeff=1) -> EnvelopingElement:
        return EnvelopingElement.word(tuple(word), self.variables, coeff)


def orient(spec: AlgebraSpec, order: Iterable[str] | None = None,
           weights: Mapping[str, int] | None = None) -> RewriteSystem:
    """Turn every relation of a total spec into a decreasing rewrite rule."""
    if spec.partial:
        raise OrientationError(f"{spec.name} is partial; normal ordering needs a total relation table")
    spec.validate()
    order = tuple(order) if order is not None else spec.generator_names
    if sorted(order) != sorted(spec.generator_names):
        raise OrientationError("order must be a permutation of the generators")
    if weights is None:
        weights = {g.name: 1 if g.fermionic else 2 for g in spec.generators}
    idx = {g: i for i, g in enumerate(order)}
    v = spec.parameters
    rules: dict[tuple[str, str], EnvelopingElement] = {}
    for rel in spec.relations:
        a, b, c = rel.left, rel.right, rel.coeff
        sign = 1 if rel.kind == ANTIQUOMMUTATOR else -1
        if a == b:
            # (1 + c) A A = rhs
            factor = 1 + c
            if factor.is_zero():
                if rel.rhs:
                    raise OrientationError(f"{rel.label()}: 0 = nonzero right-hand side")
                continue
            if rel.rhs.is_zero():
                rules[(a, a)] = EnvelopingElement.zero(v)
                continue
            if not factor.is_monomial():
                raise OrientationError(f"{rel.label()}: 1 + coefficient = {factor} is not invertible")
            rules[(a, a)] = rel.rhs.scale(factor.inverse())
            continue
        if not c.is_monomial():
            raise OrientationError(f"{rel.label()}: coefficient {c} is not invertible")
        ab = EnvelopingElement.word((a, b), v)
        ba = EnvelopingElement.word((b, a), v)
        if idx[b] > idx[a]:
            # AB + sign c BA = rhs  =>  BA -> (rhs - AB) / (sign c)
            rules[(b, a)] = (rel.rhs - ab).scale((c * sign).inverse())
        else:
            # AB -> rhs - sign c BA
            rules[(a, b)] = rel.rhs - ba.scale(c * sign)
    system = RewriteSystem(spec, order, dict(weights), rules)
    for lhs, rhs in rules.items():
        k = system.key(lhs)
        for w in rhs.terms:
            if not system.key(w) < k:
                raise OrientationError(
                    f"rule {'*'.join(lhs)} -> {system.format(rhs)} does not decrease: "
                    f"{'*'.join(w) or '1'} is not smaller")
    return system


def _find_redex(word: Word, rules, rightmost: bool):
    rng = range(len(word) - 2, -1, -1) if rightmost else range(len(word) - 1)
    for i in rng:
        if (word[i], word[i + 1]) in rules:
            return i
    return None


def normal_form(e: EnvelopingElement | Word, sys: RewriteSystem, strategy: str = "leftmost",
                step_budget: int | None = None) -> EnvelopingElement:
    """Exhaustively rewrite ``e``; ``strategy`` picks the leftmost or rightmost redex."""
    if not isinstance(e, EnvelopingElement):
        e = sys.element(e)
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rightmost = strategy == "rightmost"
    budget = step_budget_from_env() if step_budget is None else step_budget
    rules = sys.rules
    zero = LaurentPoly.zero(sys.variables)
    pending: dict[Word, LaurentPoly] = dict(e.terms)
    done: dict[Word, LaurentPoly] = {}
    steps = 0
    while pending:
        # expand the largest pending word first so equal words merge before expansion
        word = max(pending, key=sys.key)
        coeff = pending.pop(word)
        if not coeff:
            continue
        i = _find_redex(word, rules, rightmost)
        if i is None:
            c = done.get(word, zero) + coeff
            if c:
                done[word] = c
            else:
                done.pop(word, None)
            continue
        steps += 1
        if steps > budget:
            raise StepBudgetExceeded(budget, word)
        prefix, suffix = word[:i], word[i + 2:]
        for rw, rc in rules[(word[i], word[i + 1])].terms.items():
            w = prefix + rw + suffix
            pending[w] = pending.get(w, zero) + coeff * rc
    return EnvelopingElement(sys.variables, done)


def critical_pairs(sys: RewriteSystem) -> list[Word]:
    """All words C B A where both C B and B A are rule left sides."""
    by_first: dict[str, list[str]] = {}
    for (x, y) in sys.rules:
        by_first.setdefault(x, []).append(y)
    out = []
    for (c, b) in sys.rules:
        for a in by_first.get(b, ()):
            out.append((c, b, a))
    return sorted(out, key=sys.key)


@dataclass(frozen=True)
class Failure:
    word: Word
    residual: EnvelopingElement


@dataclass(frozen=True)
class ConfluenceReport:
    algebra: str
    parameter_mode: str
    overlaps_total: int
    failures: tuple[Failure, ...]
    system: RewriteSystem = field(repr=False, compare=False)

    @property
    def overlaps_failed(self) -> int:
        return len(self.failures)

    @property
    def confluent(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "algebra": self.algebra,
            "parameter_mode": self.parameter_mode,
            "overlaps_total": self.overlaps_total,
            "overlaps_failed": self.overlaps_failed,
            "failures": [{"word": "*".join(f.word), "residual": self.system.format(f.residual)}
                         for f in self.failures],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def resolve_overlap(word: Word, sys: RewriteSystem, step_budget: int | None = None
                    ) -> tuple[EnvelopingElement, EnvelopingElement]:
    """Normal forms of C B A after first rewriting C B, respectively B A."""
    c, b, a = word
    v = sys.variables
    left = sys.rules[(c, b)] * EnvelopingElement.word((a,), v)
    right = EnvelopingElement.word((c,), v) * sys.rules[(b, a)]
    return (normal_form(left, sys, step_budget=step_budget),
            normal_form(right, sys, step_budget=step_budget))


def check_confluence(sys: RewriteSystem, parameter_mode: str | None = None,
                     step_budget: int | None = None) -> ConfluenceReport:
    failures = []
    overlaps = critical_pairs(sys)
    for w in overlaps:
        l, r = resolve_overlap(w, sys, step_budget)
        if l != r:
            failures.append(Failure(w, l - r))
    if parameter_mode is None:
        parameter_mode = "symbolic" if any(
            not c.is_constant() for rel in sys.spec.relations for c in [rel.coeff, *rel.rhs.terms.values()]
        ) else "evaluated"
    return ConfluenceReport(sys.spec.name, parameter_mode, len(overlaps), tuple(failures), sys)
