"""Seeded random programs, specifications and level mappings for the property suites."""
import random
from typing import Optional

import numpy as np

from . import kernels
from .herbrand import HerbrandSlice, Signature
from .specs import Const, LevelMapping, NatVal, Plus, Size, SpecInterpretation, SpecPair
from .terms import Atom, Clause, Literal, Program, Struct, Var

VAR_NAMES = ("X", "Y", "Z", "W")


def random_signature(rng: random.Random, n_functions=3, n_predicates=3,
                     max_fun_arity=1, max_pred_arity=2) -> Signature:
    """At least one constant; the remaining function symbols get random arities."""
    n_functions = max(1, n_functions)
    functions = {("a", 0)}
    names = iter("bcdefgh")
    fnames = iter("fgh")
    for _ in range(n_functions - 1):
        k = rng.randint(0, max_fun_arity)
        functions.add((next(names), 0) if k == 0 else (next(fnames), k))
    predicates = {(f"p{i}", rng.randint(0, max_pred_arity)) for i in range(max(1, n_predicates))}
    return Signature(frozenset(functions), frozenset(predicates))


def _term(rng, sig_funs, var_pool, depth):
    if var_pool and rng.random() < 0.5:
        return Var(rng.choice(var_pool))
    choices = sig_funs if depth > 0 else [f for f in sig_funs if f[1] == 0]
    name, k = rng.choice(choices)
    return Struct(name, tuple(_term(rng, sig_funs, var_pool, depth - 1) for _ in range(k)))


def _atom(rng, sig_funs, preds, var_pool, depth):
    name, k = rng.choice(preds)
    return Atom(name, tuple(_term(rng, sig_funs, var_pool, depth) for _ in range(k)))


def random_program(seed, sig: Signature, clause_count: int, max_body_len: int,
                   negation_rate: float, max_vars: int = 3, max_term_depth: int = 1) -> Program:
    """Same seed and arguments give the same program. Clauses need not be range-restricted."""
    if not any(k == 0 for _, k in sig.functions):
        raise ValueError("signature needs at least one constant")
    if not sig.predicates:
        raise ValueError("signature needs at least one predicate")
    rng = random.Random(seed)
    funs = sorted(sig.functions)
    preds = sorted(sig.predicates)
    clauses = []
    for _ in range(clause_count):
        pool = list(VAR_NAMES[:rng.randint(0, max_vars)])
        head = _atom(rng, funs, preds, pool, max_term_depth)
        body = []
        for _ in range(rng.randint(0, max_body_len)):
            neg = negation_rate > 0 and rng.random() < negation_rate
            body.append(Literal(not neg, _atom(rng, funs, preds, pool, max_term_depth)))
        clauses.append(Clause(head, tuple(body)))
    return Program(tuple(clauses))


def random_spec(rng: random.Random, slice: HerbrandSlice, density: float = 0.5, name="random") -> SpecInterpretation:
    return SpecInterpretation.from_atoms(name, [a for a in slice.base if rng.random() < density])


def random_pair(rng: random.Random, slice: HerbrandSlice, density: float = 0.6) -> SpecPair:
    """A consistent pair: S_compl is drawn inside S_corr."""
    corr = [a for a in slice.base if rng.random() < density]
    compl = [a for a in corr if rng.random() < 0.5]
    return SpecPair(SpecInterpretation.from_atoms("corr", corr), SpecInterpretation.from_atoms("compl", compl))


def random_levels(rng: random.Random, sig: Signature) -> LevelMapping:
    """Per predicate: size or natval of one argument plus a small constant, or a constant."""
    rules = []
    for name, k in sorted(sig.predicates):
        args = tuple(Var(f"A{i}") for i in range(k))
        pattern = Atom(name, args)
        c = Const(rng.randint(0, 2))
        if k == 0 or rng.random() < 0.2:
            expr = c
        else:
            arg = rng.choice(args)
            expr = Plus(Size(arg) if rng.random() < 0.6 else NatVal(arg), c)
        rules.append((pattern, expr))
    return LevelMapping(tuple(rules))


def extensional_levels(atoms, values, default: int = 0) -> LevelMapping:
    return LevelMapping(tuple((a, Const(int(v))) for a, v in zip(atoms, values)), Const(default))


def phi_stages(gp):
    """Iterate Φ from the empty interpretation; stage[i] is the step at which atom i got decided
    (-1 if it stays undefined)."""
    n = gp.n_atoms
    T = np.zeros(n, dtype=np.uint8)
    F = np.zeros(n, dtype=np.uint8)
    stage = np.full(n, -1, dtype=np.int64)
    k = 0
    while True:
        k += 1
        T2, F2 = kernels.active.phi_step(gp.head_start, gp.bstart, gp.batoms, gp.bneg, T, F)
        T2, F2 = np.asarray(T2), np.asarray(F2)
        new = ((T2 | F2) & ~(T | F)).astype(bool)
        stage[new] = k
        if np.array_equal(T2, T) and np.array_equal(F2, F):
            return T, F, stage
        T, F = T2, F2


def semantic_pair(gp, widen: float = 0.0, rng: Optional[random.Random] = None) -> SpecPair:
    """Pair read off the Φ fixpoint: S_compl = true atoms, S_corr = atoms not false.

    With ``widen`` > 0 some false atoms are added to S_corr, giving an
    approximate pair that still brackets the semantics.
    """
    T, F, _ = gp.phi_masks()
    corr = [a for i, a in enumerate(gp.atoms) if not F[i] or (widen and rng.random() < widen)]
    compl = [a for i, a in enumerate(gp.atoms) if T[i]]
    return SpecPair(SpecInterpretation.from_atoms("corr", corr), SpecInterpretation.from_atoms("compl", compl))


def stage_levels(gp) -> LevelMapping:
    """Levels equal to the Φ stage at which each atom is decided; undecided atoms get 0."""
    _, _, stage = phi_stages(gp)
    return extensional_levels(gp.atoms, np.maximum(stage, 0))
