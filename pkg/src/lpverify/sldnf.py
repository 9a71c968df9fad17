"""Depth-first LDNF interpreter with a global step budget.

The search is an explicit machine instead of recursion: every subsidiary
tree for a negated atom is pushed as a new frame, so deep or looping
derivations exhaust the step budget rather than the Python stack.
"""
import itertools
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .terms import Literal, Program, Var, apply_subst, rename_clause, term_vars, unify

ANSWERS = "answers"
FLOUNDERED = "floundered"
BOUND_EXCEEDED = "bound_exceeded"

# Resolvents with deeper terms or more literals count as exceeding the bound:
# term operations are recursive, each step rewrites the non-ground part of the
# resolvent, and such derivations do not stay inside any practical slice.
MAX_TERM_DEPTH = 200
MAX_GOALS = 1000


@dataclass
class SolveOutcome:
    status: str
    query: Tuple[Literal, ...]
    variables: Tuple[str, ...] = ()
    answers: List[tuple] = field(default_factory=list)  # one term per query variable
    steps: int = 0
    flounder_state: Optional[Tuple[Literal, ...]] = None
    note: str = ""

    @property
    def succeeded(self):
        return self.status == ANSWERS and bool(self.answers)

    @property
    def failed(self):
        """Finite failure: the whole tree was explored and had no success leaf."""
        return self.status == ANSWERS and not self.answers

    def ground_answers(self, slice):
        """Answers with their remaining variables instantiated over the slice universe."""
        out = set()
        for ans in self.answers:
            names = []
            for t in ans:
                for v in term_vars(t):
                    if v.name not in names:
                        names.append(v.name)
            for values in itertools.product(slice.universe, repeat=len(names)):
                s = dict(zip(names, values))
                out.add(tuple(apply_subst(s, t) for t in ans))
        return out

    def __str__(self):
        if self.status == FLOUNDERED:
            return "floundered at " + ", ".join(map(str, self.flounder_state or ()))
        if self.status == BOUND_EXCEEDED:
            return f"bound exceeded after {self.steps} steps" + (f" ({self.note})" if self.note else "")
        if not self.answers:
            return "no"
        if not self.variables:
            return "yes"
        return "; ".join(
            ", ".join(f"{v} = {t}" for v, t in zip(self.variables, ans)) for ans in self.answers
        )


def _normalize(ans):
    """Rename the free variables of an answer to _1, _2, ... in order of occurrence."""
    s = {}
    for t in ans:
        for v in term_vars(t):
            if v.name not in s:
                s[v.name] = Var(f"_{len(s) + 1}")
    return apply_subst(s, ans)


# Goal lists are linked nodes (literal, next, suffix_is_ground, length). Substitutions
# only rebuild the non-ground prefix; the ground suffix is shared, so a step
# costs the size of the prefix, not of the whole resolvent.

def _push(lits, rest):
    node = rest
    for lit in reversed(lits):
        if node is None:
            node = (lit, None, lit.atom.ground, 1)
        else:
            node = (lit, node, lit.atom.ground and node[2], node[3] + 1)
    return node


def _subst_goals(s, node):
    """Apply ``s`` to a goal list; also returns the largest depth among rebuilt atoms."""
    prefix = []
    while node is not None and not node[2]:
        prefix.append(apply_subst(s, node[0]))
        node = node[1]
    depth = max((lit.atom.depth for lit in prefix), default=0)
    return _push(prefix, node), depth


def _goal_tuple(node):
    out = []
    while node is not None:
        out.append(node[0])
        node = node[1]
    return tuple(out)


class _Tree:
    __slots__ = ("stack", "cont")

    def __init__(self, stack, cont):
        self.stack = stack
        self.cont = cont  # (remaining goals, answer) of the parent branch; None for the main tree


def sldnf_solve(p: Program, query: Sequence[Literal], step_bound: int = 100_000) -> SolveOutcome:
    """Run ``query`` with leftmost selection; negative literals only when ground."""
    if step_bound <= 0:
        raise ValueError("step_bound must be > 0")
    query = tuple(query)
    names = []
    for lit in query:
        for v in term_vars(lit.atom):
            if v.name not in names:
                names.append(v.name)
    answer0 = tuple(Var(n) for n in names)
    by_pred = {}
    for c in p.clauses:
        by_pred.setdefault(c.head.indicator, []).append(c)

    outcome = SolveOutcome(ANSWERS, query, tuple(names))
    seen = set()
    frames = [_Tree([(_push(query, None), answer0)], None)]
    steps = 0
    renames = 0  # local counter: fresh names do not depend on earlier calls
    while frames:
        tree = frames[-1]
        if not tree.stack:
            frames.pop()
            if tree.cont is None:
                break
            # subsidiary tree failed finitely: the negation succeeds
            frames[-1].stack.append(tree.cont)
            continue
        goals, ans = tree.stack.pop()
        steps += 1
        if steps > step_bound:
            outcome.status = BOUND_EXCEEDED
            outcome.answers = []
            break
        if goals is None:
            if tree.cont is None:
                ans = _normalize(ans)
                if ans not in seen:
                    seen.add(ans)
                    outcome.answers.append(ans)
            else:
                # subsidiary tree succeeded: the negation fails on this branch
                frames.pop()
            continue
        lit, rest = goals[0], goals[1]
        if lit.positive:
            children = []
            exceeded = None
            for clause in by_pred.get(lit.atom.indicator, ()):
                renames += 1
                c = rename_clause(clause, renames)
                s = unify(lit.atom, c.head)
                if s is None:
                    continue
                goals2, depth = _subst_goals(s, _push(c.body, rest))
                ans2 = apply_subst(s, ans)
                if depth > MAX_TERM_DEPTH or any(t.depth > MAX_TERM_DEPTH for t in ans2):
                    exceeded = f"term depth above {MAX_TERM_DEPTH}"
                    break
                if goals2 is not None and goals2[3] > MAX_GOALS:
                    exceeded = f"more than {MAX_GOALS} goals"
                    break
                children.append((goals2, ans2))
            if exceeded:
                outcome.status = BOUND_EXCEEDED
                outcome.answers = []
                outcome.note = exceeded
                break
            tree.stack.extend(reversed(children))
        elif lit.atom.ground:
            frames.append(_Tree([(_push((Literal(True, lit.atom),), None), ())], (rest, ans)))
        else:
            outcome.status = FLOUNDERED
            outcome.flounder_state = _goal_tuple(goals)
            outcome.answers = []
            break
    outcome.steps = steps
    return outcome
