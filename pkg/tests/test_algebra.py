import pytest

from qosp.algebra import (ANTIQUOMMUTATOR, REPAIRED, AlgebraFormatError, CoverageError, builtin_osp12_q,
                          builtin_osp22_classical, builtin_osp22_prs, builtin_osp22_q, format_algebra,
                          get_builtin, literal_eq4_fourth, literal_eq10, load_algebra, perturb)
from qosp.scalar import PRS, T, LaurentPoly

p, r, s = (LaurentPoly.var(v, PRS) for v in PRS)


@pytest.mark.parametrize("build", [builtin_osp22_prs, builtin_osp22_q, builtin_osp22_classical])
def test_total_tables(build):
    spec = build()
    spec.validate()
    assert len(spec.relations) == 32
    assert sum(r.is_square for r in spec.relations) == 4


def test_selected_entries():
    spec = builtin_osp22_prs()
    rel = spec.relation("Vb1", "V1")
    assert rel.kind == ANTIQUOMMUTATOR and rel.coeff == 1
    assert spec.relation("Vb2", "V1").coeff == p * s / r
    assert spec.relation("E12", "E21").coeff == s ** 2 / p ** 2


def test_repairs_are_disclosed():
    spec = builtin_osp22_prs()
    repaired = {(r.left, r.right) for r in spec.deviations()}
    assert repaired == {("Vb2", "V1"), ("E12", "E21")}
    assert all(r.provenance == REPAIRED for r in spec.deviations())
    text = format_algebra(spec)
    assert text.count("@repaired") == 2


def test_literal_variants_differ_from_table():
    spec = builtin_osp22_prs()
    lit4 = literal_eq4_fourth()
    assert (lit4.left, lit4.right) == ("Vb2", "V2")
    lit10 = literal_eq10()
    assert {lit10.left, lit10.right} == {"E22", "E12"}
    assert spec.relation("E22", "E12").rhs != lit10.rhs


def test_specialization_coefficients_in_t():
    spec = builtin_osp22_q()
    assert spec.parameters == T
    assert spec.relation("Vb2", "V1").coeff == LaurentPoly.const(1, T)
    assert spec.relation("E12", "E21").coeff == LaurentPoly.var("t", T, -4)


@pytest.mark.parametrize("name", ["osp22prs", "osp22q", "osp22classical", "osp12q"])
def test_round_trip(name):
    spec = get_builtin(name)
    again = load_algebra(format_algebra(spec))
    assert again.ordered_relations() == spec.ordered_relations()
    assert (again.name, again.parameters, again.generators, again.partial) == \
        (spec.name, spec.parameters, spec.generators, spec.partial)
    assert format_algebra(again) == format_algebra(spec)


def test_osp12_is_partial():
    spec = builtin_osp12_q()
    assert spec.partial
    assert {r.pair for r in spec.relations} >= {frozenset(("Vm", "Vp"))}


def _drop_line(text, prefix):
    return "\n".join(l for l in text.splitlines() if not l.startswith(prefix)) + "\n"


def test_missing_pair_named():
    text = _drop_line(format_algebra(builtin_osp22_prs()), "[E11,E12]")
    with pytest.raises(CoverageError) as ei:
        load_algebra(text)
    assert set(ei.value.pair) == {"E11", "E12"}


def test_duplicate_pair_named():
    text = format_algebra(builtin_osp22_prs()) + "[E12,E11]_(p^-2) = -(p^-2)*E12\n"
    with pytest.raises(CoverageError) as ei:
        load_algebra(text)
    assert set(ei.value.pair) == {"E11", "E12"}


def test_parity_rule_enforced():
    text = format_algebra(builtin_osp22_prs()).replace("[E11,V1]_(1) = 0", "{E11,V1}_(1) = 0")
    with pytest.raises(ValueError):
        load_algebra(text)


@pytest.mark.parametrize("bad, line", [
    ("params: p r s\ngenerators: A:bosonic B\n", 2),
    ("params: p\ngenerators: A:bosonic\n[A,A]_(p = 0\n", 3),
    ("params: p\ngenerators: A:bosonic B:bosonic\n[A,B}_(p) = 0\n", 3),
    ("params: p\ngenerators: A:bosonic B:bosonic\nA B = 0\n", 3),
])
def test_format_errors_carry_line(bad, line):
    with pytest.raises(AlgebraFormatError) as ei:
        load_algebra(bad)
    assert ei.value.line == line


def test_perturb():
    spec = perturb(builtin_osp22_prs(), "E22", "E21", s ** 3)
    rel = spec.relation("E22", "E21")
    assert rel.coeff == s ** 3 and rel.provenance == "perturbed"
    assert spec.name.endswith("perturbed(E22,E21)")


def test_unknown_builtin():
    with pytest.raises(KeyError):
        get_builtin("sl2")
