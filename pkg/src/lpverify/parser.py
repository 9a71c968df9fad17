"""Tokenizer and recursive-descent parser for the Edinburgh-style clause syntax.

Grammar accepted for programs::

    clause  ::= atom '.' | atom ':-' literal (',' literal)* '.'
    literal ::= atom | '\\+' atom
    term    ::= VAR | INT | name ['(' term (',' term)* ')'] | list
    list    ::= '[' ']' | '[' term (',' term)* ['|' term] ']'

Nonnegative integers are sugar for s-numerals and lists for './2' and '[]'.
"""
import re
from dataclasses import dataclass
from typing import List

from .errors import ParseError
from .terms import CONS, NIL, Atom, Clause, Literal, Program, Struct, Var, clause_vars, apply_subst, numeral

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<name>[a-z][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
  | (?P<quoted>'(?:[^'\\\n]|\\.)*')
  | (?P<punct>::=|:-|:=|\\==|\\\+|==|=<|>=|<|>|=|\+|\(|\)|\[|\]|\||,|;|\.)
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str  # var | name | int | punct | eof
    value: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(line, pos - line_start + 1, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        value = m.group()
        col = pos - line_start + 1
        if kind == "quoted":
            body = value[1:-1]
            value = re.sub(r"\\(.)", r"\1", body)
            if not value:
                raise ParseError(line, col, "empty quoted name")
            kind = "name"
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, value, line, col))
        newlines = value.count("\n") if kind in ("ws",) else 0
        if newlines:
            line += newlines
            line_start = pos + value.rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class Parser:
    """Token cursor with term-level productions shared by program, spec and level files."""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self._anon = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k=1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, value, kind="punct"):
        t = self.tok
        return t.kind == kind and t.value == value

    def at_end(self):
        return self.tok.kind == "eof"

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.i += 1
        return t

    def error(self, message, tok=None):
        t = tok or self.tok
        found = "end of input" if t.kind == "eof" else repr(t.value)
        return ParseError(t.line, t.col, f"{message} (found {found})")

    def expect(self, value, kind="punct") -> Token:
        if not self.at(value, kind):
            raise self.error(f"expected {value!r}")
        return self.advance()

    def accept(self, value, kind="punct") -> bool:
        if self.at(value, kind):
            self.advance()
            return True
        return False

    # -- terms --

    def term(self):
        t = self.tok
        if t.kind == "var":
            self.advance()
            if t.value == "_":
                self._anon += 1
                return Var(f"_#{self._anon}")
            return Var(t.value)
        if t.kind == "int":
            self.advance()
            return numeral(int(t.value))
        if t.kind == "name":
            self.advance()
            if self.accept("("):
                return Struct(t.value, self.arguments())
            return Struct(t.value)
        if self.accept("["):
            return self.list_rest()
        raise self.error("expected a term")

    def arguments(self):
        args = [self.term()]
        while self.accept(","):
            args.append(self.term())
        self.expect(")")
        return args

    def list_rest(self):
        if self.accept("]"):
            return Struct(NIL)
        items = [self.term()]
        while self.accept(","):
            items.append(self.term())
        tail = self.term() if self.accept("|") else Struct(NIL)
        self.expect("]")
        for item in reversed(items):
            tail = Struct(CONS, (item, tail))
        return tail

    def atom(self) -> Atom:
        t = self.tok
        if t.kind != "name":
            raise self.error("expected an atom")
        s = self.term()
        return Atom(s.functor, s.args)

    # -- clauses --

    def literal(self) -> Literal:
        if self.accept("\\+"):
            return Literal(False, self.atom())
        return Literal(True, self.atom())

    def clause(self) -> Clause:
        head = self.atom()
        body = []
        if self.accept(":-"):
            body.append(self.literal())
            while self.accept(","):
                body.append(self.literal())
        self.expect(".")
        return name_anonymous(Clause(head, tuple(body)))


def name_anonymous(x):
    """Give each anonymous variable a distinct printable name unused elsewhere in ``x``."""
    if isinstance(x, Clause):
        names = [v.name for v in clause_vars(x)]
    else:
        from .terms import term_vars
        names = [v.name for v in term_vars(x)]
    anon = [n for n in names if n.startswith("_#")]
    if not anon:
        return x
    used = set(names)
    s, k = {}, 0
    for n in anon:
        k += 1
        while f"_{k}" in used:
            k += 1
        s[n] = Var(f"_{k}")
    return apply_subst(s, x)


def parse_program(text: str) -> Program:
    p = Parser(text)
    clauses = []
    while not p.at_end():
        clauses.append(p.clause())
    return Program(tuple(clauses))


def parse_term(text: str):
    p = Parser(text)
    t = p.term()
    if not p.at_end():
        raise p.error("trailing input after term")
    return name_anonymous(t)


def parse_atom(text: str) -> Atom:
    p = Parser(text)
    a = p.atom()
    if not p.at_end():
        raise p.error("trailing input after atom")
    return name_anonymous(a)


def parse_query(text: str) -> List[Literal]:
    """A conjunction of literals, with an optional trailing '.'."""
    p = Parser(text)
    lits = [p.literal()]
    while p.accept(","):
        lits.append(p.literal())
    p.accept(".")
    if not p.at_end():
        raise p.error("trailing input after query")
    return list(name_anonymous(Clause(Atom("$query"), tuple(lits))).body)


def directives(text: str):
    """``%!`` comment lines, as (line number, content) pairs."""
    out = []
    for n, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if stripped.startswith("%!"):
            out.append((n, stripped[2:].strip()))
    return out
