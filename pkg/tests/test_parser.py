import pytest

from lpverify.errors import ParseError
from lpverify.parser import directives, parse_atom, parse_program, parse_query, parse_term
from lpverify.terms import CONS, NIL, Struct, numeral


def test_negation_in_body():
    p = parse_program("p :- q, \\+ r.")
    (c,) = p.clauses
    assert c.head.indicator == ("p", 0)
    assert [(l.positive, l.atom.functor) for l in c.body] == [(True, "q"), (False, "r")]
    assert p.kind == "normal"


def test_definite_kind():
    p = parse_program("even(0).\neven(s(s(X))) :- even(X).")
    assert len(p) == 2
    assert p.kind == "definite"


def test_lists_desugar_to_cons():
    (c,) = parse_program("append([H|T],Y,[H|Z]) :- append(T,Y,Z).").clauses
    first = c.head.args[0]
    assert first.functor == CONS and first.arity == 2
    assert parse_term("[]") == Struct(NIL)
    assert parse_term("[a,b]") == parse_term("[a|[b|[]]]")


def test_integers_are_numerals():
    assert parse_term("3") == numeral(3)


def test_anonymous_variables_are_distinct():
    (c,) = parse_program("p(_, _) :- q(_).").clauses
    names = [a.name for a in c.head.args] + [c.body[0].atom.args[0].name]
    assert len(set(names)) == 3


def test_comments_and_quoted_names():
    p = parse_program("% a comment\np('hello world'). % trailing\n")
    assert p.clauses[0].head.args[0].functor == "hello world"


def test_error_position():
    with pytest.raises(ParseError) as e:
        parse_program("p(a).\nq(b :- r.")
    assert e.value.line == 2
    assert e.value.column == 5


@pytest.mark.parametrize("text", ["p(a)", "X :- p.", "p :- .", "p(a,).", "[a]."])
def test_malformed_programs(text):
    with pytest.raises(ParseError):
        parse_program(text)


def test_unexpected_character():
    with pytest.raises(ParseError):
        parse_program("p(a) & q.")


def test_query():
    lits = parse_query("win(X), \\+ lose(X).")
    assert [l.positive for l in lits] == [True, False]
    with pytest.raises(ParseError):
        parse_atom("p(a) q")


def test_directives():
    text = "%! options --depth 3\n% plain\n  %! type t ::= a.\np."
    assert directives(text) == [(1, "options --depth 3"), (3, "type t ::= a.")]


def test_print_round_trip_of_programs():
    text = "append([],L,L).\nappend([H|T],L,[H|R]) :- append(T,L,R).\nwin(X) :- move(X,Y), \\+ win(Y).\n"
    p = parse_program(text)
    assert str(parse_program(str(p))) == str(p)
