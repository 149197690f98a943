import itertools
import random

import pytest

from qosp.algebra import builtin_osp12_q, builtin_osp22_classical, builtin_osp22_prs, builtin_osp22_q, perturb
from qosp.element import EnvelopingElement
from qosp.rewrite import (OrientationError, StepBudgetExceeded, check_confluence, critical_pairs,
                          normal_form, orient)
from qosp.scalar import PRS, T, LaurentPoly, substitute_specialization

p, r, s = (LaurentPoly.var(v, PRS) for v in PRS)
SYS = orient(builtin_osp22_prs())
SYS_Q = orient(builtin_osp22_q())


def nf(text_word, system=SYS):
    return normal_form(tuple(text_word.split("*")), system)


def test_basic_normal_forms():
    assert SYS.format(nf("Vb1*V1")) == "E11 - V1*Vb1"
    assert nf("V1*V1").is_zero()
    assert SYS.format(nf("E11*E22")) == "E11*E22"
    assert SYS.format(nf("E22*E11")) == "E11*E22"


def test_rules_decrease():
    for lhs, rhs in SYS.rules.items():
        assert all(SYS.key(w) < SYS.key(lhs) for w in rhs.terms)


def test_plain_degree_order_does_not_terminate():
    with pytest.raises(OrientationError):
        orient(builtin_osp22_prs(), weights={g: 1 for g in SYS.order})


def test_partial_spec_rejected():
    with pytest.raises(OrientationError):
        orient(builtin_osp12_q())


def test_critical_pairs_match_brute_force():
    words = [w for w in itertools.product(SYS.order, repeat=3)
             if (w[0], w[1]) in SYS.rules and (w[1], w[2]) in SYS.rules]
    assert sorted(words) == sorted(critical_pairs(SYS))
    assert len(words) == 88


@pytest.mark.parametrize("build", [builtin_osp22_prs, builtin_osp22_q, builtin_osp22_classical])
def test_confluent(build):
    rep = check_confluence(orient(build()))
    assert rep.overlaps_total == 88
    assert rep.confluent, rep.to_json()


def test_report_fields():
    d = check_confluence(SYS).to_dict()
    assert d == {"schema": 1, "algebra": "osp22prs", "parameter_mode": "symbolic",
                 "overlaps_total": 88, "overlaps_failed": 0, "failures": []}


@pytest.mark.parametrize("pair", [("E22", "E21"), ("E11", "V2"), ("Vb2", "V1"), ("V1", "Vb2")])
def test_perturbation_breaks_confluence(pair):
    spec = builtin_osp22_prs()
    old = spec.relation(*pair).coeff
    rep = check_confluence(orient(perturb(spec, *pair, old * s)))
    assert rep.overlaps_failed >= 1
    assert all(not f.residual.is_zero() for f in rep.failures)


def test_step_budget():
    with pytest.raises(StepBudgetExceeded):
        nf("Vb2*Vb1*V2*V1*E21*E12", SYS).__class__  # warm
        normal_form(("Vb2", "Vb1", "V2", "V1", "E21", "E12"), SYS, step_budget=2)


def test_step_budget_env(monkeypatch):
    monkeypatch.setenv("QOSP_STEP_BUDGET", "1")
    with pytest.raises(StepBudgetExceeded):
        normal_form(("Vb1", "V1", "Vb1"), SYS)


def _random_words(n, seed=2024):
    rng = random.Random(seed)
    return [tuple(rng.choice(SYS.order) for _ in range(rng.randint(0, 5))) for _ in range(n)]


def _to_q(e: EnvelopingElement) -> EnvelopingElement:
    return e.map_coefficients(substitute_specialization, T)


def test_rewrite_properties_on_random_words():
    words = _random_words(200)
    rng = random.Random(7)
    for w in words:
        a = normal_form(w, SYS)
        assert all(SYS.is_canonical(x) for x in a.terms)
        assert normal_form(a, SYS) == a
        assert normal_form(w, SYS, "rightmost") == a
        assert normal_form(w, SYS_Q) == _to_q(a)
        v = rng.choice(words)
        c1, c2 = p ** rng.randint(-2, 2) * 3, s - r
        combo = EnvelopingElement.word(w, PRS, c1) + EnvelopingElement.word(v, PRS, c2)
        assert normal_form(combo, SYS) == a.scale(c1) + normal_form(v, SYS).scale(c2)
