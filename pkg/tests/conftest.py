from pathlib import Path

import pytest

from lpverify.herbrand import collect_signature, herbrand_slice, parse_sort_decls
from lpverify.parser import parse_program
from lpverify.specs import parse_levels, parse_spec

CORPUS = Path(__file__).resolve().parent.parent / "src" / "lpverify" / "corpus"

EVEN = "even(0).\neven(s(s(X))) :- even(X).\n"
WIN = "win(X) :- move(X, Y), \\+ win(Y).\nmove(a, b).\nmove(b, c).\n"
APPEND = """%! type elem ::= a ; b.
%! type list ::= [] ; [elem|list].
%! pred append(list, list, list).
append([], L, L).
append([H|T], L, [H|R]) :- append(T, L, R).
"""
CONCAT = "append(A, B, C) := concat(A, B, C)."
WIN_SPEC = "win(b) := true.\nmove(a, b) := true.\nmove(b, c) := true.\n"
WIN_LEVELS = "level move(X, Y) = 0.\nlevel win(c) = 1.\nlevel win(b) = 2.\nlevel win(a) = 3.\n"


def build(text, depth, extra=(), constants=()):
    """Program and slice for a program text."""
    p = parse_program(text)
    sorts = parse_sort_decls(text)
    sig = collect_signature(p, extra, sorts=sorts, constants=constants)
    return p, herbrand_slice(sig, depth, sorts=sorts)


def spec(text, name="s"):
    return parse_spec(text, name)


def levels(text):
    return parse_levels(text)


@pytest.fixture
def corpus_dir():
    return CORPUS
