from hypothesis import given, settings, strategies as st

from lpverify.parser import parse_atom, parse_term
from lpverify.terms import (
    Atom, Clause, Literal, Struct, Var, apply_subst, clause_vars, is_ground, match, mklist, numeral,
    rename_clause, term_key, term_str, unify,
)


def T(text):
    return parse_term(text)


def test_unify_basic():
    s = unify(T("f(X,b)"), T("f(a,Y)"))
    assert s == {"X": T("a"), "Y": T("b")}


def test_unify_occur_check_and_clash():
    assert unify(Var("X"), T("f(X)")) is None
    assert unify(T("a"), T("b")) is None
    assert unify(T("f(a)"), T("f(a,b)")) is None


def test_unify_chain_is_resolved():
    s = unify(T("f(X,Y,Z)"), T("f(Y,Z,g(a))"))
    for name in "XYZ":
        assert s[name] == T("g(a)")


def test_apply_subst():
    assert apply_subst({"X": T("a")}, parse_atom("p(X,Y)")) == parse_atom("p(a,Y)")
    a = parse_atom("p(X,Y)")
    assert apply_subst({}, a) is a
    c = Clause(parse_atom("p(X)"), (Literal(False, parse_atom("q(X)")),))
    assert str(apply_subst({"X": T("b")}, c)) == "p(b) :- \\+ q(b)."


def test_atom_and_struct_differ():
    assert Atom("p") != Struct("p")
    assert Atom("p", (T("a"),)) == parse_atom("p(a)")


def test_printing():
    assert term_str(mklist([T("a"), T("b")])) == "[a,b]"
    assert term_str(mklist([T("a")], Var("T"))) == "[a|T]"
    assert term_str(numeral(2)) == "s(s(0))"
    assert term_str(Struct("Hello")) == "'Hello'"


def test_match_repeated_variable():
    assert match(parse_atom("p(X,X)"), parse_atom("p(a,a)")) == {"X": T("a")}
    assert match(parse_atom("p(X,X)"), parse_atom("p(a,b)")) is None


def test_rename_is_apart():
    c = Clause(parse_atom("p(X)"), (Literal(True, parse_atom("q(X,Y)")),))
    r = rename_clause(c, 7)
    assert {v.name for v in clause_vars(r)} == {"X#7", "Y#7"}
    assert not is_ground(r)


def test_term_key_orders_by_depth_first():
    ts = [T("f(a)"), T("b"), T("a"), T("f(f(a))")]
    assert [term_str(t) for t in sorted(ts, key=term_key)] == ["a", "b", "f(a)", "f(f(a))"]


# -- property tests -------------------------------------------------------------

_names = st.sampled_from(["a", "b", "c"])
_vars = st.sampled_from(["X", "Y", "Z"]).map(Var)


def _terms():
    return st.recursive(
        st.one_of(_names.map(Struct), _vars),
        lambda sub: st.tuples(st.sampled_from(["f", "g"]), st.lists(sub, min_size=1, max_size=2)).map(
            lambda p: Struct(p[0], p[1])),
        max_leaves=6,
    )


@settings(max_examples=300, deadline=None)
@given(_terms(), _terms())
def test_unifier_unifies_and_is_idempotent(t1, t2):
    s = unify(t1, t2)
    if s is None:
        return
    assert apply_subst(s, t1) == apply_subst(s, t2)
    for t in s.values():
        assert apply_subst(s, t) == t


@settings(max_examples=200, deadline=None)
@given(_terms())
def test_print_parse_round_trip(t):
    assert parse_term(term_str(t)) == t


@settings(max_examples=200, deadline=None)
@given(_terms())
def test_unify_with_renamed_self(t):
    # a term always unifies with a variant of itself
    names = {v.name: Var(v.name + "_r") for v in _iter(t)}
    assert unify(t, apply_subst(names, t)) is not None


def _iter(t):
    from lpverify.terms import iter_vars
    return list(iter_vars(t))
