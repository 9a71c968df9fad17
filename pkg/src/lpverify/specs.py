"""Specification mini-language: decidable interpretations, specification pairs, level mappings.

Spec files contain rules ``pattern := guard.``; an atom belongs to the
interpretation iff some rule's pattern matches it and the guard holds.
Level files contain ``level pattern = natexpr.`` rules (first match wins)
and an optional ``default = natexpr.`` line.
"""
import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from .errors import ParseError
from .parser import Parser, name_anonymous
from .report import VcReport, Violation
from .terms import CONS, NIL, Atom, Struct, Var, apply_subst, iter_vars, match, term_vars


# -- natural-number expressions ---------------------------------------------

def list_length(t) -> int:
    """Cons cells along the tail spine, stopping at the first non-cons tail."""
    n = 0
    while isinstance(t, Struct) and t.functor == CONS and len(t.args) == 2:
        n += 1
        t = t.args[1]
    return n


def nat_value(t) -> int:
    """Number of ``s/1`` applications along the first-argument spine."""
    n = 0
    while isinstance(t, Struct) and t.functor == "s" and len(t.args) == 1:
        n += 1
        t = t.args[0]
    return n


def term_size(t) -> int:
    n = 0
    stack = [t]
    while stack:
        x = stack.pop()
        n += 1
        if isinstance(x, Struct):
            stack.extend(x.args)
    return n


def is_proper_list(t) -> bool:
    while isinstance(t, Struct) and t.functor == CONS and len(t.args) == 2:
        t = t.args[1]
    return isinstance(t, Struct) and t.functor == NIL and not t.args


def is_numeral(t) -> bool:
    while isinstance(t, Struct) and t.functor == "s" and len(t.args) == 1:
        t = t.args[0]
    return isinstance(t, Struct) and t.functor == "0" and not t.args


def concatenates(a, b, c) -> bool:
    """``a`` is a proper list and ``c`` is its elements followed by ``b``."""
    while isinstance(a, Struct) and a.functor == CONS and len(a.args) == 2:
        if not (isinstance(c, Struct) and c.functor == CONS and len(c.args) == 2):
            return False
        if a.args[0] != c.args[0]:
            return False
        a, c = a.args[1], c.args[1]
    if not (isinstance(a, Struct) and a.functor == NIL and not a.args):
        return False
    return b == c


class NatExpr:
    def value(self, s) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class Len(NatExpr):
    term: object

    def value(self, s):
        return list_length(apply_subst(s, self.term))

    def __str__(self):
        return f"len({self.term})"


@dataclass(frozen=True)
class NatVal(NatExpr):
    term: object

    def value(self, s):
        return nat_value(apply_subst(s, self.term))

    def __str__(self):
        return f"natval({self.term})"


@dataclass(frozen=True)
class Size(NatExpr):
    term: object

    def value(self, s):
        return term_size(apply_subst(s, self.term))

    def __str__(self):
        return f"size({self.term})"


@dataclass(frozen=True)
class Const(NatExpr):
    k: int

    def value(self, s):
        return self.k

    def __str__(self):
        return str(self.k)


@dataclass(frozen=True)
class Plus(NatExpr):
    left: NatExpr
    right: NatExpr

    def value(self, s):
        return self.left.value(s) + self.right.value(s)

    def __str__(self):
        return f"{self.left} + {self.right}"


@dataclass(frozen=True)
class Max(NatExpr):
    left: NatExpr
    right: NatExpr

    def value(self, s):
        return max(self.left.value(s), self.right.value(s))

    def __str__(self):
        return f"max({self.left},{self.right})"


# -- guards ------------------------------------------------------------------

class GuardExpr:
    def holds(self, s) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class GTrue(GuardExpr):
    def holds(self, s):
        return True

    def __str__(self):
        return "true"


@dataclass(frozen=True)
class GFalse(GuardExpr):
    def holds(self, s):
        return False

    def __str__(self):
        return "false"


@dataclass(frozen=True)
class Eq(GuardExpr):
    left: object
    right: object

    def holds(self, s):
        return apply_subst(s, self.left) == apply_subst(s, self.right)

    def __str__(self):
        return f"{self.left} == {self.right}"


@dataclass(frozen=True)
class Neq(GuardExpr):
    left: object
    right: object

    def holds(self, s):
        return apply_subst(s, self.left) != apply_subst(s, self.right)

    def __str__(self):
        return f"{self.left} \\== {self.right}"


@dataclass(frozen=True)
class IsList(GuardExpr):
    term: object

    def holds(self, s):
        return is_proper_list(apply_subst(s, self.term))

    def __str__(self):
        return f"islist({self.term})"


@dataclass(frozen=True)
class IsNat(GuardExpr):
    term: object

    def holds(self, s):
        return is_numeral(apply_subst(s, self.term))

    def __str__(self):
        return f"isnat({self.term})"


@dataclass(frozen=True)
class Concat(GuardExpr):
    a: object
    b: object
    c: object

    def holds(self, s):
        return concatenates(apply_subst(s, self.a), apply_subst(s, self.b), apply_subst(s, self.c))

    def __str__(self):
        return f"concat({self.a},{self.b},{self.c})"


_CMP = {
    "==": lambda x, y: x == y,
    "=<": lambda x, y: x <= y,
    "<": lambda x, y: x < y,
    ">": lambda x, y: x > y,
    ">=": lambda x, y: x >= y,
}


@dataclass(frozen=True)
class Cmp(GuardExpr):
    left: NatExpr
    op: str
    right: NatExpr

    def holds(self, s):
        return _CMP[self.op](self.left.value(s), self.right.value(s))

    def __str__(self):
        return f"{self.left} {self.op} {self.right}"


@dataclass(frozen=True)
class And(GuardExpr):
    left: GuardExpr
    right: GuardExpr

    def holds(self, s):
        return self.left.holds(s) and self.right.holds(s)

    def __str__(self):
        return f"{self.left}, {self.right}"


@dataclass(frozen=True)
class Or(GuardExpr):
    left: GuardExpr
    right: GuardExpr

    def holds(self, s):
        return self.left.holds(s) or self.right.holds(s)

    def __str__(self):
        return f"({self.left} ; {self.right})"


@dataclass(frozen=True)
class Not(GuardExpr):
    arg: GuardExpr

    def holds(self, s):
        return not self.arg.holds(s)

    def __str__(self):
        return f"\\+ ({self.arg})"


# -- interpretations ---------------------------------------------------------

@dataclass(frozen=True)
class SpecInterpretation:
    name: str
    rules: Tuple[Tuple[Atom, GuardExpr], ...] = ()

    @cached_property
    def _by_pred(self) -> Dict[tuple, list]:
        out = {}
        for pattern, guard in self.rules:
            out.setdefault(pattern.indicator, []).append((pattern, guard))
        return out

    def __contains__(self, a: Atom) -> bool:
        return eval_spec(self, a)

    @classmethod
    def from_atoms(cls, name, atoms):
        """Extensional interpretation containing exactly the given ground atoms."""
        return cls(name, tuple((a, GTrue()) for a in atoms))


def eval_spec(spec: SpecInterpretation, a: Atom) -> bool:
    for pattern, guard in spec._by_pred.get(a.indicator, ()):
        s = match(pattern, a, {})
        if s is not None and guard.holds(s):
            return True
    return False


class Classification(enum.Enum):
    REQUIRED_TRUE = "RequiredTrue"
    DONT_CARE = "DontCare"
    REQUIRED_FALSE = "RequiredFalse"


@dataclass(frozen=True)
class SpecPair:
    corr: SpecInterpretation
    compl: SpecInterpretation


def classify(pair: SpecPair, a: Atom) -> Classification:
    if eval_spec(pair.compl, a):
        return Classification.REQUIRED_TRUE
    if not eval_spec(pair.corr, a):
        return Classification.REQUIRED_FALSE
    return Classification.DONT_CARE


def check_pair_consistency(pair: SpecPair, slice, limit=None) -> VcReport:
    """Every base atom in S_compl must be in S_corr."""
    report = VcReport("pair-consistency")
    for a in slice.base:
        report.checked_count += 1
        if eval_spec(pair.compl, a) and not eval_spec(pair.corr, a):
            report.add(Violation("PAIR", None, a, "in S_compl but not in S_corr"))
    return report.finalize(limit)


@dataclass(frozen=True)
class LevelMapping:
    rules: Tuple[Tuple[Atom, NatExpr], ...] = ()
    default: NatExpr = Const(0)

    @cached_property
    def _by_pred(self):
        out = {}
        for pattern, expr in self.rules:
            out.setdefault(pattern.indicator, []).append((pattern, expr))
        return out


def eval_level(lm: LevelMapping, a: Atom) -> int:
    for pattern, expr in lm._by_pred.get(a.indicator, ()):
        s = match(pattern, a, {})
        if s is not None:
            return expr.value(s)
    return lm.default.value({})


# -- parsing -----------------------------------------------------------------

_NAT_HEADS = {"len": 1, "natval": 1, "size": 1, "max": 2}
_CMP_OPS = ("==", "\\==", "=<", "<", ">", ">=")


class _SpecParser(Parser):
    def natexpr(self):
        e = self.nat_primary()
        while self.accept("+"):
            e = Plus(e, self.nat_primary())
        return e

    def nat_primary(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return Const(int(t.value))
        if t.kind == "name" and t.value in _NAT_HEADS and self.peek().value == "(":
            self.advance()
            self.expect("(")
            if t.value == "max":
                a = self.natexpr()
                self.expect(",")
                b = self.natexpr()
                self.expect(")")
                return Max(a, b)
            arg = self.term()
            self.expect(")")
            return {"len": Len, "natval": NatVal, "size": Size}[t.value](arg)
        if self.accept("("):
            e = self.natexpr()
            self.expect(")")
            return e
        raise self.error("expected a natural-number expression")

    def _starts_natexpr(self):
        t = self.tok
        if t.kind == "int":
            return True
        return t.kind == "name" and t.value in _NAT_HEADS and self.peek().value == "("

    def guard(self):
        g = self.conj()
        while self.accept(";"):
            g = Or(g, self.conj())
        return g

    def conj(self):
        g = self.unary()
        while self.accept(","):
            g = And(g, self.unary())
        return g

    def unary(self):
        if self.accept("\\+"):
            return Not(self.unary())
        if self.at("("):
            # parenthesised guard, unless it is a parenthesised natexpr operand
            save = self.i
            self.advance()
            try:
                g = self.guard()
                self.expect(")")
                if not (self.tok.kind == "punct" and self.tok.value in _CMP_OPS):
                    return g
            except ParseError:
                pass
            self.i = save
        t = self.tok
        if t.kind == "name" and t.value in ("true", "false"):
            nxt = self.peek()
            if not (nxt.kind == "punct" and (nxt.value == "(" or nxt.value in _CMP_OPS)):
                self.advance()
                return GTrue() if t.value == "true" else GFalse()
        if t.kind == "name" and self.peek().value == "(" and t.value in ("islist", "isnat", "concat"):
            self.advance()
            self.expect("(")
            args = [self.term()]
            while self.accept(","):
                args.append(self.term())
            self.expect(")")
            want = 3 if t.value == "concat" else 1
            if len(args) != want:
                raise ParseError(t.line, t.col, f"{t.value} expects {want} argument(s)")
            if t.value == "islist":
                return IsList(args[0])
            if t.value == "isnat":
                return IsNat(args[0])
            return Concat(*args)
        return self.comparison()

    def _next_is_op(self):
        nxt = self.peek()
        return nxt.kind == "punct" and nxt.value in _CMP_OPS

    def comparison(self):
        if self._starts_natexpr() or self.at("("):
            left = self.natexpr()
            op = self._cmp_op()
            right = self.natexpr()
            return self._numeric(left, op, right)
        left = self.term()
        op = self._cmp_op()
        if op not in ("==", "\\=="):
            raise self.error("terms can only be compared with == or \\==")
        right = self.term()
        return Eq(left, right) if op == "==" else Neq(left, right)

    def _cmp_op(self):
        t = self.tok
        if t.kind == "punct" and t.value in _CMP_OPS:
            self.advance()
            return t.value
        raise self.error("expected a comparison operator")

    @staticmethod
    def _numeric(left, op, right):
        if op == "\\==":
            return Not(Cmp(left, "==", right))
        return Cmp(left, op, right)


def _guard_vars(g, out):
    if isinstance(g, (Eq, Neq)):
        out.extend(term_vars(g.left) + term_vars(g.right))
    elif isinstance(g, (IsList, IsNat)):
        out.extend(term_vars(g.term))
    elif isinstance(g, Concat):
        out.extend(term_vars(g.a) + term_vars(g.b) + term_vars(g.c))
    elif isinstance(g, Cmp):
        _nat_vars(g.left, out)
        _nat_vars(g.right, out)
    elif isinstance(g, (And, Or)):
        _guard_vars(g.left, out)
        _guard_vars(g.right, out)
    elif isinstance(g, Not):
        _guard_vars(g.arg, out)
    return out


def _nat_vars(e, out):
    if isinstance(e, (Len, NatVal, Size)):
        out.extend(term_vars(e.term))
    elif isinstance(e, (Plus, Max)):
        _nat_vars(e.left, out)
        _nat_vars(e.right, out)
    return out


def _check_bound(pattern, names, tok, what):
    bound = {v.name for v in iter_vars(pattern)}
    for v in names:
        if v.name not in bound:
            raise ParseError(tok.line, tok.col, f"variable {v.name} in {what} does not occur in the pattern")


def parse_spec(text: str, name: str = "spec") -> SpecInterpretation:
    p = _SpecParser(text)
    rules = []
    while not p.at_end():
        start = p.tok
        pattern = p.atom()
        p.expect(":=")
        guard = p.guard()
        p.expect(".")
        _check_bound(pattern, _guard_vars(guard, []), start, "guard")
        rules.append((pattern, guard))
    return SpecInterpretation(name, tuple(rules))


def parse_levels(text: str) -> LevelMapping:
    p = _SpecParser(text)
    rules = []
    default = Const(0)
    while not p.at_end():
        start = p.tok
        if p.at("default", "name") and p.peek().value == "=":
            p.advance()
            p.expect("=")
            default = p.natexpr()
            p.expect(".")
            _check_bound(Atom("default"), _nat_vars(default, []), start, "default level")
            continue
        if not p.at("level", "name"):
            raise p.error("expected 'level' or 'default'")
        p.advance()
        pattern = p.atom()
        p.expect("=")
        expr = p.natexpr()
        p.expect(".")
        _check_bound(pattern, _nat_vars(expr, []), start, "level expression")
        rules.append((pattern, expr))
    return LevelMapping(tuple(rules), default)
