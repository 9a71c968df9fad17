"""Signatures, depth-bounded Herbrand slices and clause grounding.

A slice is the finite part of the Herbrand universe/base up to a term depth.
Optionally the slice is *sorted*: ``%! type`` and ``%! pred`` directives
restrict each predicate argument to the terms of a declared sort, e.g.::

    %! type elem ::= a ; b.
    %! type list ::= [] ; [elem|list].
    %! pred append(list, list, list).

Predicates without a ``pred`` declaration range over the unsorted universe
(sort ``any``).
"""
import itertools
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from .errors import ParseError, ResourceExceeded
from .parser import Parser, directives
from .terms import (
    Atom, Clause, Literal, Program, Struct, Var, atom_key, clause_vars, iter_vars,
    match, term_key,
)

DEFAULT_CAP = 200_000
FRESH_CONSTANT = "c0"
ANY = "any"


@dataclass(frozen=True)
class Signature:
    functions: FrozenSet[Tuple[str, int]]
    predicates: FrozenSet[Tuple[str, int]]
    injected: Optional[str] = None  # name of the fresh constant, if one was added

    @property
    def constants(self):
        return sorted(name for name, n in self.functions if n == 0)


@dataclass
class SortDecls:
    types: Dict[str, list] = field(default_factory=dict)
    preds: Dict[Tuple[str, int], Tuple[str, ...]] = field(default_factory=dict)

    def __bool__(self):
        return bool(self.types or self.preds)

    def symbols(self):
        """Function symbols mentioned in sort alternatives; bare sort names are references."""
        out = set()
        for alts in self.types.values():
            stack = list(alts)
            while stack:
                t = stack.pop()
                if t.args or t.functor not in self.types:
                    out.add(t.indicator)
                stack.extend(t.args)
        return out


def parse_sort_decls(text: str) -> SortDecls:
    """Read ``%! type`` / ``%! pred`` directives from a program text."""
    decls = SortDecls()
    for lineno, content in directives(text):
        words = content.split(None, 1)
        if not words or words[0] not in ("type", "pred"):
            continue
        try:
            p = Parser(words[1] if len(words) > 1 else "")
            if words[0] == "type":
                name_tok = p.advance()
                if name_tok.kind != "name":
                    raise p.error("expected a sort name", name_tok)
                p.expect("::=")
                alts = [p.term()]
                while p.accept(";"):
                    alts.append(p.term())
                p.expect(".")
                if any(not t.ground for t in alts):
                    raise p.error("sort alternatives must not contain variables")
                decls.types[name_tok.value] = alts
            else:
                a = p.atom()
                p.expect(".")
                sorts = []
                for arg in a.args:
                    if not isinstance(arg, Struct) or arg.args:
                        raise p.error("pred declaration arguments must be sort names")
                    sorts.append(arg.functor)
                decls.preds[(a.functor, len(a.args))] = tuple(sorts)
        except ParseError as e:
            raise ParseError(lineno, e.column, e.message) from None
    for pred, sorts in decls.preds.items():
        for s in sorts:
            if s != ANY and s not in decls.types:
                raise ParseError(0, 0, f"undeclared sort {s!r} in pred {pred[0]}/{pred[1]}")
    return decls


def _symbols_of(t, functions):
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, Struct):
            functions.add(x.indicator)
            stack.extend(x.args)


def collect_signature(program: Program, extra=(), sorts: Optional[SortDecls] = None,
                      constants=()) -> Signature:
    """All function and predicate symbols of the program, the extra atoms/terms and sort declarations.

    ``constants`` adds named constants (e.g. list elements not mentioned anywhere else).
    A fresh constant ``c0`` is injected when no constant occurs at all.
    """
    functions, predicates = set(), set()
    atoms = []
    for c in program.clauses:
        atoms.append(c.head)
        atoms.extend(lit.atom for lit in c.body)
    for x in extra:
        if isinstance(x, Literal):
            x = x.atom
        if isinstance(x, Atom):
            atoms.append(x)
        else:
            _symbols_of(x, functions)
    for a in atoms:
        predicates.add(a.indicator)
        for arg in a.args:
            _symbols_of(arg, functions)
    if sorts:
        functions |= sorts.symbols()
        predicates |= set(sorts.preds)
    functions |= {(c, 0) for c in constants}
    injected = None
    if not any(n == 0 for _, n in functions):
        functions.add((FRESH_CONSTANT, 0))
        injected = FRESH_CONSTANT
    return Signature(frozenset(functions), frozenset(predicates), injected)


def _count_any(sig: Signature, depth: int) -> List[int]:
    consts = sum(1 for _, n in sig.functions if n == 0)
    counts = [consts]
    for _ in range(depth):
        prev = counts[-1]
        counts.append(consts + sum(prev ** n for _, n in sig.functions if n > 0))
    return counts


def _any_universe(sig: Signature, depth: int, cap: int) -> List[Struct]:
    counts = _count_any(sig, depth)
    if counts[-1] > cap:
        raise ResourceExceeded(f"universe at depth {depth} has {counts[-1]} terms (cap {cap})")
    funcs = sorted(sig.functions)
    level = [Struct(name) for name, n in funcs if n == 0]
    for _ in range(depth):
        nxt = [Struct(name) for name, n in funcs if n == 0]
        for name, n in funcs:
            if n:
                nxt.extend(Struct(name, args) for args in itertools.product(level, repeat=n))
        level = nxt
    return sorted(level, key=term_key)


def _sorted_universes(decls: SortDecls, depth: int, cap: int) -> Dict[str, List[Struct]]:
    names = sorted(decls.types)
    history = []

    def expand(pattern, d):
        if not pattern.args and pattern.functor in decls.types:
            return history[d][pattern.functor]
        if not pattern.args:
            return {pattern}
        if d == 0:
            return set()
        parts = [expand(a, d - 1) for a in pattern.args]
        return {Struct(pattern.functor, args) for args in itertools.product(*parts)}

    for d in range(depth + 1):
        level = {name: set() for name in names}
        history.append(level)
        # sort references at the top of an alternative need an inner fixpoint
        changed = True
        while changed:
            changed = False
            for name in names:
                for alt in decls.types[name]:
                    new = expand(alt, d) - level[name]
                    if new:
                        level[name] |= new
                        changed = True
                if len(level[name]) > cap:
                    raise ResourceExceeded(f"sort {name} at depth {d} exceeds cap {cap}")
    return {name: sorted(terms, key=term_key) for name, terms in history[-1].items()}


class HerbrandSlice:
    """Ground terms up to ``depth`` and the ground atoms built from them.

    ``universe`` is the domain clause variables range over; ``base`` is
    materialized lazily because several checks only need membership tests.
    """

    def __init__(self, signature: Signature, depth: int, cap: int = DEFAULT_CAP,
                 sorts: Optional[SortDecls] = None):
        if depth < 0:
            raise ValueError("depth must be >= 0")
        if cap <= 0:
            raise ValueError("cap must be > 0")
        self.signature = signature
        self.depth = depth
        self.cap = cap
        self.sorts = sorts if sorts else None
        self._pred_sorts = {}
        needs_any = True
        self.sort_universe = {}
        if self.sorts:
            self.sort_universe = _sorted_universes(self.sorts, depth, cap)
            needs_any = any(
                p not in self.sorts.preds or ANY in self.sorts.preds[p] for p in signature.predicates
            )
            for p in signature.predicates:
                self._pred_sorts[p] = self.sorts.preds.get(p, (ANY,) * p[1])
        else:
            for p in signature.predicates:
                self._pred_sorts[p] = (ANY,) * p[1]
        if needs_any:
            self.sort_universe[ANY] = _any_universe(signature, depth, cap)
        union = set()
        for terms in self.sort_universe.values():
            union.update(terms)
        self.universe: Tuple[Struct, ...] = tuple(sorted(union, key=term_key))
        self.universe_set = frozenset(self.universe)
        self._sort_sets = {k: frozenset(v) for k, v in self.sort_universe.items()}
        # prefix boundaries: universe[:_depth_end[k]] holds the terms of depth <= k
        depths = [t.depth for t in self.universe]
        self._depth_end = [bisect_right(depths, k) for k in range(depth + 1)]
        self._base = None
        self._base_by_pred = None
        size = self.base_size()
        if size > cap:
            raise ResourceExceeded(f"Herbrand base at depth {depth} has {size} atoms (cap {cap})")

    def __repr__(self):
        return f"HerbrandSlice(depth={self.depth}, |U|={len(self.universe)}, |B|={self.base_size()})"

    @property
    def predicates(self):
        return sorted(self._pred_sorts)

    def pred_sorts(self, pred):
        return self._pred_sorts[pred]

    def base_size(self) -> int:
        total = 0
        for pred, sorts in self._pred_sorts.items():
            n = 1
            for s in sorts:
                n *= len(self.sort_universe[s])
            total += n
        return total

    def terms_upto(self, depth: int):
        if depth < 0:
            return ()
        return self.universe[: self._depth_end[min(depth, self.depth)]]

    def atoms_of(self, pred) -> Tuple[Atom, ...]:
        if self._base_by_pred is None:
            self._materialize()
        return self._base_by_pred.get(pred, ())

    def _materialize(self):
        by_pred = {}
        out = []
        for pred in self.predicates:
            name, _ = pred
            doms = [self.sort_universe[s] for s in self._pred_sorts[pred]]
            atoms = tuple(Atom(name, args) for args in itertools.product(*doms))
            by_pred[pred] = atoms
            out.extend(atoms)
        self._base_by_pred = by_pred
        self._base = tuple(out)

    @property
    def base(self) -> Tuple[Atom, ...]:
        """All base atoms in canonical order."""
        if self._base is None:
            self._materialize()
        return self._base

    def in_base(self, a: Atom) -> bool:
        sorts = self._pred_sorts.get(a.indicator)
        if sorts is None or not a.ground:
            return False
        for arg, s in zip(a.args, sorts):
            if arg.depth > self.depth or arg not in self._sort_sets[s]:
                return False
        return True

    def __contains__(self, a):
        return self.in_base(a)


def herbrand_slice(sig: Signature, depth: int, cap: int = DEFAULT_CAP,
                   sorts: Optional[SortDecls] = None) -> HerbrandSlice:
    return HerbrandSlice(sig, depth, cap, sorts)


def ground_instances(clause: Clause, slice: HerbrandSlice) -> Iterator[Clause]:
    """Every assignment of the clause's variables to universe terms.

    Variables are taken in first-occurrence order and terms in canonical
    order, so the stream is deterministic. Instances are *not* filtered
    against the base; see :func:`relevant_instances` for that.
    """
    from .terms import apply_subst

    vs = clause_vars(clause)
    total = len(slice.universe) ** len(vs)
    if total > slice.cap:
        raise ResourceExceeded(f"{total} ground instances of clause exceed cap {slice.cap}")
    names = [v.name for v in vs]
    for values in itertools.product(slice.universe, repeat=len(vs)):
        yield apply_subst(dict(zip(names, values)), clause)


def instance_count(clause: Clause, slice: HerbrandSlice) -> int:
    return len(slice.universe) ** len(clause_vars(clause))


def _max_depths(atom: Atom, limit: int, out: Dict[str, int]):
    """Tightest depth bound for each variable of ``atom`` if the atom is to stay in the slice."""
    stack = [(arg, limit) for arg in atom.args]
    while stack:
        t, d = stack.pop()
        if type(t) is Var:
            out[t.name] = min(out.get(t.name, d), d)
        elif not t.ground:
            stack.extend((a, d - 1) for a in t.args)


def _instantiate(atom: Atom, s) -> Atom:
    from .terms import apply_subst
    return apply_subst(s, atom)


def relevant_instances(clause: Clause, slice: HerbrandSlice) -> Iterator[Clause]:
    """Ground instances whose head and body atoms all lie in the slice's base.

    Equivalent to filtering :func:`ground_instances`, but bindings are found
    by matching the head against base atoms and then joining body atoms one
    at a time, whichever of enumerating variables or matching base atoms is
    cheaper for that atom.
    """
    from .terms import apply_subst

    universe_set = slice.universe_set
    head = clause.head
    if head.indicator not in slice._pred_sorts:
        return
    body = [lit.atom for lit in clause.body]
    for a in body:
        if a.indicator not in slice._pred_sorts:
            return

    def join(k, s):
        if k == len(body):
            yield s
            return
        pattern = apply_subst(s, body[k])
        if pattern.ground:
            if slice.in_base(pattern):
                yield from join(k + 1, s)
            return
        free = []
        for v in iter_vars(pattern):
            if v.name not in free:
                free.append(v.name)
        bounds = {}
        _max_depths(pattern, slice.depth, bounds)
        cands = [slice.terms_upto(bounds[n]) for n in free]
        enum_cost = 1
        for c in cands:
            enum_cost *= len(c)
        pool = slice.atoms_of(pattern.indicator)
        if len(pool) < enum_cost:
            for g in pool:
                m = match(pattern, g)
                if m is not None and all(m[n] in universe_set for n in free):
                    s2 = dict(s)
                    s2.update(m)
                    yield from join(k + 1, s2)
        else:
            for values in itertools.product(*cands):
                s2 = dict(s)
                s2.update(zip(free, values))
                if slice.in_base(apply_subst(s2, body[k])):
                    yield from join(k + 1, s2)

    head_vars = {v.name for v in iter_vars(head)}
    for g in slice.atoms_of(head.indicator):
        m = match(head, g)
        if m is None or any(m[n] not in universe_set for n in head_vars):
            continue
        for s in join(0, m):
            yield apply_subst(s, clause)
