import pytest

from conftest import APPEND, CONCAT, build
from lpverify.errors import ParseError
from lpverify.herbrand import Signature, herbrand_slice
from lpverify.parser import parse_atom
from lpverify.specs import (
    Classification, SpecInterpretation, SpecPair, check_pair_consistency, classify, eval_level, eval_spec,
    parse_levels, parse_spec,
)

A = parse_atom


def test_parse_spec_single_rule():
    s = parse_spec("append(X,Y,Z) := islist(X), islist(Y), concat(X,Y,Z).")
    assert len(s.rules) == 1


def test_empty_spec_is_all_false():
    s = parse_spec("")
    assert s.rules == ()
    assert not eval_spec(s, A("p(a)"))


def test_concat_spec():
    s = parse_spec(CONCAT)
    assert eval_spec(s, A("append([a],[b],[a,b])"))
    assert not eval_spec(s, A("append([a],[b],[])"))
    assert not eval_spec(s, A("append(a,[],a)"))  # first argument must be a list


def test_guards():
    s = parse_spec("""
        p(X, Y) := len(X) + 1 =< len(Y), \\+ X == Y.
        q(X) := isnat(X), natval(X) > 2 ; X == a.
        r(X) := (X == a ; X == b), true.
        t(X) := size(X) == 3.
        u(X, Y) := max(len(X), 1) \\== len(Y).
    """)
    assert eval_spec(s, A("p([a],[a,b])"))
    assert not eval_spec(s, A("p([a],[b])"))
    assert eval_spec(s, A("q(s(s(s(0))))"))
    assert eval_spec(s, A("q(a)"))
    assert not eval_spec(s, A("q(s(0))"))
    assert eval_spec(s, A("r(b)")) and not eval_spec(s, A("r(c)"))
    assert eval_spec(s, A("t(f(a,b))"))
    assert eval_spec(s, A("u([],[])")) and not eval_spec(s, A("u([],[a])"))


def test_rules_are_a_disjunction():
    s = parse_spec("p(a) := true.\np(X) := X == b.")
    assert eval_spec(s, A("p(a)")) and eval_spec(s, A("p(b)")) and not eval_spec(s, A("p(c)"))


@pytest.mark.parametrize("text", [
    "p(X) := Y == a.",          # guard variable not in pattern
    "p(X) := .",
    "p(X) := len(X) == a.",
    "p(X) true.",
])
def test_spec_errors(text):
    with pytest.raises(ParseError):
        parse_spec(text)


def test_levels():
    lm = parse_levels("level append(Xs,_,_) = len(Xs).")
    assert len(lm.rules) == 1
    assert eval_level(lm, A("append([a],[],[a])")) == 1
    assert eval_level(lm, A("other(a)")) == 0
    lm = parse_levels("level win(c) = 1. level win(b) = 2. level win(a) = 3.")
    assert len(lm.rules) == 3
    assert [eval_level(lm, A(f"win({x})")) for x in "abc"] == [3, 2, 1]
    assert eval_level(parse_levels("level even(N) = natval(N)."), A("even(s(s(0)))")) == 2


def test_levels_first_match_and_default():
    lm = parse_levels("level p(a) = 5.\nlevel p(X) = 1.\ndefault = 7.")
    assert eval_level(lm, A("p(a)")) == 5
    assert eval_level(lm, A("p(b)")) == 1
    assert eval_level(lm, A("q")) == 7
    with pytest.raises(ParseError):
        parse_levels("level p(X) = len(Y).")
    with pytest.raises(ParseError):
        parse_levels("p(X) = 1.")


def test_classify():
    pair = SpecPair(SpecInterpretation.from_atoms("c", [A("p(a)"), A("p(b)")]),
                    SpecInterpretation.from_atoms("k", [A("p(a)")]))
    assert classify(pair, A("p(a)")) is Classification.REQUIRED_TRUE
    assert classify(pair, A("p(b)")) is Classification.DONT_CARE
    assert classify(pair, A("p(c)")) is Classification.REQUIRED_FALSE


def test_pair_consistency():
    sl = herbrand_slice(Signature(frozenset({("a", 0)}), frozenset({("p", 1)})), 0)
    s = SpecInterpretation.from_atoms("s", [A("p(a)")])
    assert check_pair_consistency(SpecPair(s, s), sl).passed
    r = check_pair_consistency(SpecPair(SpecInterpretation("empty"), s), sl)
    assert not r.passed
    assert [str(v.instance) for v in r.violations] == ["p(a)"]
    assert r.violations[0].kind == "PAIR"


def test_concat_pair_consistent_at_depth_3():
    _, sl = build(APPEND, 3)
    s = parse_spec(CONCAT)
    assert check_pair_consistency(SpecPair(s, s), sl).passed
    # 15 lists of length <= 3; concatenations that stay within length 3
    assert sum(eval_spec(s, a) for a in sl.base) == sum(2 ** (i + j) for i in range(4) for j in range(4 - i))
