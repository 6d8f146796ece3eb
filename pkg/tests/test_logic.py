import pytest
from hypothesis import given
from hypothesis import strategies as st

from bellcheck import logic
from bellcheck.errors import UnboundAtomError
from bellcheck.logic import And, Atom, Implies, Not, Or

A, B, C, D = (Atom(n) for n in "ABCD")

# Disjunction rows (A, B, A|B)
OR_ROWS = [(1, 1, 1), (1, 0, 1), (0, 1, 1), (0, 0, 0)]


@pytest.mark.parametrize("a,b,expected", OR_ROWS)
def test_or_table(a, b, expected):
    assert logic.evaluate(A | B, {"A": a, "B": b}) == expected


def test_not():
    assert logic.evaluate(~A, {"A": 1}) == 0


def test_unbound_atom():
    with pytest.raises(UnboundAtomError):
        logic.evaluate(A & B, {"A": 1})


def test_atom_name_nonempty():
    with pytest.raises(ValueError):
        Atom("")


formulas = st.recursive(
    st.sampled_from([A, B, C, D]),
    lambda sub: st.one_of(
        sub.map(Not),
        st.tuples(sub, sub).map(lambda p: And(*p)),
        st.tuples(sub, sub).map(lambda p: Or(*p)),
        st.tuples(sub, sub).map(lambda p: Implies(*p)),
    ),
    max_leaves=8,
)


@given(formulas)
def test_double_negation(f):
    for a in logic.assignments("ABCD"):
        assert logic.evaluate(Not(Not(f)), a) == logic.evaluate(f, a)


@given(formulas)
def test_rewrite_preserves_truth_table(f):
    g = logic.implication_as_disjunction(f)
    assert "->" not in str(g)
    for a in logic.assignments("ABCD"):
        assert logic.evaluate(f, a) == logic.evaluate(g, a)


class TestRewrite:
    def test_simple(self):
        g = logic.implication_as_disjunction(Implies(A, B))
        assert g == Or(Not(A), B)
        assert len(logic.truth_table(g)) == 4
        assert logic.equivalent(Implies(A, B), g)

    def test_tautology(self):
        g = logic.implication_as_disjunction(Implies(A, A))
        assert all(v == 1 for _, v in logic.truth_table(g))

    def test_atoms_unchanged(self):
        f = Implies(And(A, B), Or(C, Not(A)))
        assert logic.atoms(logic.implication_as_disjunction(f)) == logic.atoms(f)


class TestCases:
    def test_case_1(self):
        r = logic.case_analysis(1, 0)
        assert (r.nb, r.k, r.nb_or_k) == (0, 0, 0)
        assert r.verdict == "consistent" and r.proposition == 1

    def test_case_2(self):
        r = logic.case_analysis(0, 1)
        assert r.nb == 1 and r.k == "unconstrained" and r.nb_or_k == 1
        assert r.verdict == "consistent" and r.proposition == 2
        assert sorted(m["K"] for m in r.models) == [0, 1]

    def test_case_3(self):
        r = logic.case_analysis(1, 1)
        assert (r.nb, r.k, r.nb_or_k) == (0, 1, 1)
        assert r.verdict == "consistent" and r.proposition == 3

    def test_uncovered_pair(self):
        r = logic.case_analysis(0, 0)
        assert not r.covered
        assert r.verdict == "inconsistent"
        assert "NB = 1 (forced by BT = 0)" in r.constraints

    def test_invalid(self):
        with pytest.raises(ValueError):
            logic.case_analysis(2, 0)


class TestContradictionSchema:
    def test_full_set(self):
        r = logic.contradiction_schema()
        assert r.members == ("R", "D", "L", "M", "K")
        assert r.conflicting_values == {0, 1}
        assert r.quantity == "norm_product"
        assert not r.satisfiable

    @pytest.mark.parametrize("dropped", logic.PREMISES)
    def test_dropping_any_member(self, dropped):
        r = logic.contradiction_schema([p for p in logic.PREMISES if p != dropped])
        assert r.satisfiable
        assert len(r.conflicting_values) == 1

    def test_unknown_premise(self):
        with pytest.raises(ValueError):
            logic.contradiction_schema(["R", "Z"])
