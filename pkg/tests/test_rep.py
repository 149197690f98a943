import itertools
from fractions import Fraction

import pytest

from qosp.algebra import builtin_osp22_classical, builtin_osp22_q
from qosp.linalg import rank
from qosp.rep import (VB2_PRINTED, build_osp12, build_osp22, build_osp22_fermions, check_relation,
                      commutant_dimension, derive_bosonic, direct_sum, solve_vb2_normalization, span_rank,
                      span_ranks, span_report, typo_repair_oracle, verify_all)
from qosp.scalar import T, LaurentPoly, RatFunc

SPEC_Q = builtin_osp22_q()


def _block_shape(m, n):
    """'even' if block diagonal, 'odd' if block off-diagonal."""
    first, second = range(n), range(n, 2 * n + 1)
    diag = any(m[i, j] for i in first for j in first) or any(m[i, j] for i in second for j in second)
    off = any(m[i, j] for i in first for j in second) or any(m[i, j] for i in second for j in first)
    return {(True, False): "even", (False, True): "odd", (False, False): "zero"}.get((diag, off), "mixed")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gradings(n):
    reps = build_osp22(n)
    assert reps.dim == 2 * n + 1
    for g, m in reps.generators.items():
        want = "odd" if g.startswith("V") else "even"
        assert _block_shape(m, n) in (want, "zero"), g


def test_lowering_generators_direction():
    reps = build_osp22_fermions(2)
    # sigma_- sends the first block into the second
    v1 = reps.generators["V1"]
    assert v1[2, 0] == 1 and v1[0, 2] == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_verify_symbolic(n):
    report = verify_all(SPEC_Q, build_osp22(n))
    assert report.passed, report.to_json()
    assert report.relations_checked == 32


@pytest.mark.parametrize("q", [3, Fraction(1, 2), -2])
def test_verify_evaluated(q):
    assert verify_all(SPEC_Q, build_osp22(2, q)).passed


def test_verify_classical():
    spec = builtin_osp22_classical()
    assert verify_all(spec, build_osp22(2, 1, spec)).passed


def test_printed_prefactor_fails_exactly_these_relations():
    reps = derive_bosonic(build_osp22_fermions(2, VB2_PRINTED), SPEC_Q)
    failing = {f["relation_id"] for f in verify_all(SPEC_Q, reps).failures}
    assert failing == {"[E22,E12]", "[E22,E21]", "[E22,V1]", "[E22,Vb1]", "[E12,E21]",
                       "[E12,Vb2]", "[E21,V2]"}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_vb2_normalization_solved(n):
    assert solve_vb2_normalization(n) == RatFunc(-LaurentPoly.var("t", T, 2))


def test_residual_reports_entries():
    reps = derive_bosonic(build_osp22_fermions(1, VB2_PRINTED), SPEC_Q)
    res = check_relation(SPEC_Q.relation("E22", "V1"), reps)
    assert not res.is_zero()


def test_oracle_prefers_repairs():
    d = typo_repair_oracle(ns=(1, 2), q_values=(2,))
    assert d["eq4_fourth"]["verdict"] == "repaired"
    assert d["eq10_pair"]["verdict"] == "repaired"
    assert d["frozen_table_matches_oracle"] is True
    assert len(d["deviations_from_print"]) == 3


def test_span_matches_brute_force():
    ev = build_osp22(1, 2)
    gens = [ev.generators[g] for g in ("V1", "V2", "Vb1", "Vb2")]
    words = [ev.identity()]
    for L in (1, 2):
        for w in itertools.product(gens, repeat=L):
            m = ev.identity()
            for g in w:
                m = m @ g
            words.append(m)
    assert rank([m.flat() for m in words], 9) == 9
    assert span_ranks(ev, 2) == [1, 5, 9]


def test_span_reports():
    assert span_report(build_osp22(2), 2)["ranks_by_word_length"] == [1, 5, 12, 20, 25]
    r = span_report(build_osp22(3), 2)
    assert r["saturated"] and r["saturating_length"] == 6 and r["target_rank"] == 49
    assert span_rank(build_osp22(1), 1) == 5
    with pytest.raises(ValueError):
        span_rank(build_osp22(1), 1, {"q": 1})


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_osp12_irreducible(n):
    assert commutant_dimension(build_osp12(n)) == 1


def test_osp12_relations():
    reps = build_osp12(2)
    q = LaurentPoly.var("t", T, 2)
    g = reps.generators
    assert (g["Vm"] @ g["Vp"] + (g["Vp"] @ g["Vm"]).scale(q) - g["H"]).is_zero()
    assert all(g["H"][i, j] == 0 for i in range(5) for j in range(5) if i != j)
    # [H, V+]_q = V+
    assert (g["H"] @ g["Vp"] - (g["Vp"] @ g["H"]).scale(q) - g["Vp"]).is_zero()


def test_direct_sum_is_reducible():
    a, b = build_osp12(1).evaluate(2), build_osp12(2).evaluate(2)
    assert commutant_dimension(direct_sum(a, b)) == 2
