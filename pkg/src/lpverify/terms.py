"""Abstract syntax of the clause language, substitutions and unification.

Terms are immutable and hash-consed lightly: every compound caches its hash,
depth and groundness on construction, because grounding builds millions of
them and re-hashing nested tuples dominates otherwise.
"""
import re
from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple, Union

NIL = "[]"
CONS = "."

_PLAIN_NAME = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


class Var:
    __slots__ = ("name", "_hash")

    depth = 0
    ground = False

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("$var", name))

    def __eq__(self, other):
        return type(other) is Var and other.name == self.name

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Var({self.name!r})"

    def __str__(self):
        return self.name


class Struct:
    """A compound term ``functor(args...)``; a constant has no args."""

    __slots__ = ("functor", "args", "depth", "ground", "_hash", "_key")

    def __init__(self, functor: str, args=()):
        if not functor:
            raise ValueError("functor name must be nonempty")
        self.functor = functor
        self.args = tuple(args)
        if self.args:
            self.depth = 1 + max(a.depth for a in self.args)
            self.ground = all(a.ground for a in self.args)
        else:
            self.depth = 0
            self.ground = True
        self._hash = hash((functor, self.args))
        self._key = None

    @property
    def arity(self):
        return len(self.args)

    @property
    def indicator(self):
        return (self.functor, len(self.args))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is type(self)
            and other._hash == self._hash
            and other.functor == self.functor
            and other.args == self.args
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({self.functor!r}, {self.args!r})"

    def __str__(self):
        return term_str(self)


class Atom(Struct):
    """An atomic formula; the predicate plays the role of the functor."""

    __slots__ = ()

    @property
    def pred(self):
        return self.functor


Term = Union[Var, Struct]
Substitution = Dict[str, Term]


def const(name: str) -> Struct:
    return Struct(name)


def mklist(items, tail: Optional[Term] = None) -> Term:
    out = tail if tail is not None else Struct(NIL)
    for item in reversed(list(items)):
        out = Struct(CONS, (item, out))
    return out


def numeral(k: int) -> Struct:
    out = Struct("0")
    for _ in range(k):
        out = Struct("s", (out,))
    return out


@dataclass(frozen=True)
class Literal:
    positive: bool
    atom: Atom

    def __str__(self):
        return str(self.atom) if self.positive else f"\\+ {self.atom}"


@dataclass(frozen=True)
class Clause:
    head: Atom
    body: Tuple[Literal, ...] = ()

    @property
    def is_definite(self):
        return all(lit.positive for lit in self.body)

    def variables(self):
        return clause_vars(self)

    def __str__(self):
        if not self.body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(map(str, self.body))}."


@dataclass(frozen=True)
class Program:
    clauses: Tuple[Clause, ...] = ()

    @property
    def kind(self):
        return "definite" if self.is_definite else "normal"

    @property
    def is_definite(self):
        return all(c.is_definite for c in self.clauses)

    def __len__(self):
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    def __str__(self):
        return "\n".join(map(str, self.clauses))


# -- ordering ---------------------------------------------------------------

def term_key(t: Term):
    """Canonical total order: depth, then functor name, arity, then args."""
    if type(t) is Var:
        return (-1, t.name, 0, ())
    key = t._key
    if key is None:
        key = (t.depth, t.functor, len(t.args), tuple(term_key(a) for a in t.args))
        t._key = key
    return key


def atom_key(a: Atom):
    return (a.functor, len(a.args), tuple(term_key(x) for x in a.args))


def clause_key(c: Clause):
    return (atom_key(c.head), tuple((lit.positive, atom_key(lit.atom)) for lit in c.body))


# -- printing ---------------------------------------------------------------

def _name_str(name: str) -> str:
    if _PLAIN_NAME.match(name) or name == "0" or name == NIL:
        return name
    return "'" + name.replace("\\", "\\\\").replace("'", "\\'") + "'"


def term_str(t: Term) -> str:
    if type(t) is Var:
        return t.name
    if t.functor == CONS and len(t.args) == 2:
        items = []
        while type(t) is not Var and t.functor == CONS and len(t.args) == 2:
            items.append(term_str(t.args[0]))
            t = t.args[1]
        body = ",".join(items)
        if type(t) is Struct and t.functor == NIL and not t.args:
            return f"[{body}]"
        return f"[{body}|{term_str(t)}]"
    name = _name_str(t.functor)
    if not t.args:
        return name
    return f"{name}({','.join(term_str(a) for a in t.args)})"


# -- variables ----------------------------------------------------------------

def iter_vars(t) -> Iterator[Var]:
    """Variables of a term/atom in first-occurrence (left-to-right) order, with repeats."""
    stack = [t]
    while stack:
        x = stack.pop()
        if type(x) is Var:
            yield x
        elif not x.ground:
            stack.extend(reversed(x.args))


def term_vars(t):
    seen = {}
    for v in iter_vars(t):
        seen.setdefault(v.name, v)
    return list(seen.values())


def clause_vars(c: Clause):
    seen = {}
    for a in [c.head] + [lit.atom for lit in c.body]:
        for v in iter_vars(a):
            seen.setdefault(v.name, v)
    return list(seen.values())


def is_ground(x) -> bool:
    if isinstance(x, Clause):
        return x.head.ground and all(lit.atom.ground for lit in x.body)
    if isinstance(x, Literal):
        return x.atom.ground
    return x.ground


# -- substitutions ----------------------------------------------------------

def _subst_term(s: Substitution, t: Term) -> Term:
    if type(t) is Var:
        return s.get(t.name, t)
    if t.ground:
        return t
    return type(t)(t.functor, [_subst_term(s, a) for a in t.args])


def apply_subst(s: Substitution, x):
    """Simultaneous replacement of bound variables in a term, atom, literal or clause."""
    if not s:
        return x
    if isinstance(x, Clause):
        return Clause(_subst_term(s, x.head), tuple(apply_subst(s, lit) for lit in x.body))
    if isinstance(x, Literal):
        return Literal(x.positive, _subst_term(s, x.atom))
    if isinstance(x, (tuple, list)):
        return type(x)(apply_subst(s, y) for y in x)
    return _subst_term(s, x)


def _walk(t, bindings):
    while type(t) is Var and t.name in bindings:
        t = bindings[t.name]
    return t


def _occurs(name, t, bindings):
    stack = [t]
    while stack:
        x = _walk(stack.pop(), bindings)
        if type(x) is Var:
            if x.name == name:
                return True
        elif not x.ground:
            stack.extend(x.args)
    return False


def _resolve(t, bindings):
    t = _walk(t, bindings)
    if type(t) is Var or t.ground:
        return t
    return type(t)(t.functor, [_resolve(a, bindings) for a in t.args])


def unify(t1, t2, subst: Optional[Substitution] = None) -> Optional[Substitution]:
    """Most general unifier with occur check, or None.

    The result is idempotent: no bound variable occurs in any bound term.
    Atoms unify like compound terms (predicate and arity must agree).
    """
    bindings = dict(subst) if subst else {}
    stack = [(t1, t2)]
    while stack:
        a, b = stack.pop()
        a = _walk(a, bindings)
        b = _walk(b, bindings)
        if a is b:
            continue
        if type(a) is Var:
            if type(b) is Var and b.name == a.name:
                continue
            if _occurs(a.name, b, bindings):
                return None
            bindings[a.name] = b
        elif type(b) is Var:
            if _occurs(b.name, a, bindings):
                return None
            bindings[b.name] = a
        else:
            if a.functor != b.functor or len(a.args) != len(b.args):
                return None
            if a.ground and b.ground:
                if a != b:
                    return None
                continue
            stack.extend(zip(a.args, b.args))
    return {name: _resolve(t, bindings) for name, t in bindings.items()}


def match(pattern, ground, bindings: Optional[Substitution] = None) -> Optional[Substitution]:
    """One-way matching of ``pattern`` onto a ground term; repeated variables must agree."""
    out = {} if bindings is None else bindings
    stack = [(pattern, ground)]
    while stack:
        p, g = stack.pop()
        if type(p) is Var:
            bound = out.get(p.name)
            if bound is None:
                out[p.name] = g
            elif bound != g:
                return None
        elif p.ground:
            if p != g:
                return None
        else:
            if p.functor != g.functor or len(p.args) != len(g.args):
                return None
            stack.extend(zip(p.args, g.args))
    return out


_rename_counter = [0]


def rename_clause(c: Clause, tag: Optional[int] = None) -> Clause:
    """Standardize a clause apart with fresh variable names that cannot come from source text."""
    if tag is None:
        _rename_counter[0] += 1
        tag = _rename_counter[0]
    suffix = f"#{tag}"
    s = {v.name: Var(v.name + suffix) for v in clause_vars(c)}
    return apply_subst(s, c)
