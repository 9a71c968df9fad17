"""Ground semantics oracles: least Herbrand model and the 3-valued Fitting fixpoint.

Everything is computed over a :class:`GroundProgram`, the restriction of a
program to a Herbrand slice. The bounded fixpoint is an oracle for the
slice, not a claim about the infinite Herbrand base; the stability audit in
:mod:`lpverify.audit` checks that shallow verdicts survive a deeper slice.
"""
from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

import numpy as np

from . import kernels
from .errors import NotDefinite, ResourceExceeded
from .herbrand import HerbrandSlice, instance_count, relevant_instances
from .report import VcReport, Violation
from .specs import SpecPair, eval_spec
from .terms import Atom, Clause, Literal, Program


@dataclass(frozen=True)
class TwoValuedInterp:
    true_atoms: FrozenSet[Atom]


@dataclass(frozen=True)
class ThreeValuedInterp:
    true_atoms: FrozenSet[Atom] = frozenset()
    false_atoms: FrozenSet[Atom] = frozenset()

    def __post_init__(self):
        both = self.true_atoms & self.false_atoms
        if both:
            raise ValueError(f"inconsistent interpretation: {sorted(map(str, both))[:3]} both true and false")

    def value(self, a: Atom) -> str:
        if a in self.true_atoms:
            return "T"
        if a in self.false_atoms:
            return "F"
        return "U"

    def leq(self, other: "ThreeValuedInterp") -> bool:
        """Knowledge order: every decided atom keeps its value in ``other``."""
        return self.true_atoms <= other.true_atoms and self.false_atoms <= other.false_atoms


class GroundProgram:
    """A program grounded over a slice, encoded as integer arrays.

    Atom ids are positions in ``slice.base``. Instances are ordered by head
    id, then source clause, then body, and grouped so that the instances with
    head ``a`` are ``head_start[a]:head_start[a+1]``.
    """

    def __init__(self, program: Program, slice: HerbrandSlice, cap: Optional[int] = None):
        self.program = program
        self.slice = slice
        self.atoms = slice.base
        self.index = {a: i for i, a in enumerate(self.atoms)}
        cap = slice.cap if cap is None else cap
        rows = []
        self.frontier_count = 0
        for ci, clause in enumerate(program.clauses, 1):
            kept = 0
            for inst in relevant_instances(clause, slice):
                kept += 1
                rows.append((
                    self.index[inst.head], ci,
                    tuple((self.index[lit.atom], 0 if lit.positive else 1) for lit in inst.body),
                ))
                if len(rows) > cap:
                    raise ResourceExceeded(f"more than {cap} relevant ground instances")
            self.frontier_count += instance_count(clause, slice) - kept
        rows.sort()
        n = len(rows)
        self.heads = np.fromiter((r[0] for r in rows), dtype=np.int32, count=n)
        self.clause_index = np.fromiter((r[1] for r in rows), dtype=np.int32, count=n)
        lens = [len(r[2]) for r in rows]
        self.bstart = np.zeros(n + 1, dtype=np.int32)
        if n:
            np.cumsum(lens, out=self.bstart[1:])
        m = int(self.bstart[-1])
        self.batoms = np.fromiter((b for r in rows for b, _ in r[2]), dtype=np.int32, count=m)
        self.bneg = np.fromiter((neg for r in rows for _, neg in r[2]), dtype=np.uint8, count=m)
        counts = np.bincount(self.heads, minlength=len(self.atoms)) if n else np.zeros(len(self.atoms), dtype=np.int64)
        self.head_start = np.zeros(len(self.atoms) + 1, dtype=np.int32)
        np.cumsum(counts, out=self.head_start[1:])
        self.is_definite = not bool(self.bneg.any())
        self._lfp = None
        self._phi = None

    def __len__(self):
        return len(self.heads)

    @property
    def n_atoms(self):
        return len(self.atoms)

    def instance(self, i: int) -> Clause:
        lo, hi = self.bstart[i], self.bstart[i + 1]
        body = tuple(
            Literal(not self.bneg[k], self.atoms[self.batoms[k]]) for k in range(lo, hi)
        )
        return Clause(self.atoms[self.heads[i]], body)

    @property
    def clauses(self):
        return [self.instance(i) for i in range(len(self))]

    def mask(self, atoms) -> np.ndarray:
        out = np.zeros(self.n_atoms, dtype=np.uint8)
        for a in atoms:
            i = self.index.get(a)
            if i is not None:
                out[i] = 1
        return out

    def atoms_in(self, mask) -> FrozenSet[Atom]:
        return frozenset(self.atoms[i] for i in np.flatnonzero(mask))

    def spec_mask(self, spec) -> np.ndarray:
        return np.fromiter((eval_spec(spec, a) for a in self.atoms), dtype=np.uint8, count=self.n_atoms)

    def lfp_mask(self):
        if self._lfp is None:
            if not self.is_definite:
                raise NotDefinite("least Herbrand model requested for a normal program")
            self._lfp = kernels.active.tp_lfp(self.heads, self.bstart, self.batoms, self.n_atoms)
        return self._lfp

    def phi_masks(self):
        if self._phi is None:
            T, F, it = kernels.active.phi_fixpoint(self.head_start, self.bstart, self.batoms, self.bneg, self.n_atoms)
            if it > 2 * self.n_atoms:
                raise AssertionError(f"Phi iteration took {it} steps on a base of {self.n_atoms} atoms")
            self._phi = (T, F, it)
        return self._phi


def ground_program(p: Program, slice: HerbrandSlice, cap: Optional[int] = None) -> GroundProgram:
    return GroundProgram(p, slice, cap)


def tp_step(gp: GroundProgram, i: TwoValuedInterp) -> TwoValuedInterp:
    if not gp.is_definite:
        raise NotDefinite("T_P step on a program with negative literals")
    out = kernels.active.tp_step(gp.heads, gp.bstart, gp.batoms, gp.mask(i.true_atoms))
    return TwoValuedInterp(gp.atoms_in(out))


def tp_lfp(gp: GroundProgram) -> Tuple[TwoValuedInterp, int]:
    mask, it = gp.lfp_mask()
    return TwoValuedInterp(gp.atoms_in(mask)), it


def phi_step(gp: GroundProgram, i: ThreeValuedInterp) -> ThreeValuedInterp:
    T, F = kernels.active.phi_step(
        gp.head_start, gp.bstart, gp.batoms, gp.bneg, gp.mask(i.true_atoms), gp.mask(i.false_atoms))
    return ThreeValuedInterp(gp.atoms_in(T), gp.atoms_in(F))


def phi_fixpoint(gp: GroundProgram) -> Tuple[ThreeValuedInterp, int]:
    T, F, it = gp.phi_masks()
    return ThreeValuedInterp(gp.atoms_in(T), gp.atoms_in(F)), it


ORACLE_CONDITIONS = (
    ("compl-true", "S_compl is contained in the true atoms"),
    ("true-corr", "true atoms are contained in S_corr"),
    ("false-compl", "no false atom is in S_compl"),
    ("noncorr-false", "atoms outside S_corr are false"),
)


def oracle_check(pair: SpecPair, sem: ThreeValuedInterp, slice: HerbrandSlice, limit: Optional[int] = 20) -> VcReport:
    """Compare a computed 3-valued semantics with a specification pair, atom by atom."""
    report = VcReport("oracle")
    failures = {name: 0 for name, _ in ORACLE_CONDITIONS}
    for a in slice.base:
        report.checked_count += 1
        corr = eval_spec(pair.corr, a)
        compl = eval_spec(pair.compl, a)
        t = a in sem.true_atoms
        f = a in sem.false_atoms
        bad = []
        if compl and not t:
            bad.append("compl-true")
        if t and not corr:
            bad.append("true-corr")
        if f and compl:
            bad.append("false-compl")
        if not corr and not f:
            bad.append("noncorr-false")
        for name in bad:
            failures[name] += 1
            report.add(Violation("ORACLE", None, a, f"{name}: {dict(ORACLE_CONDITIONS)[name]} (value {sem.value(a)})"))
    for name, text in ORACLE_CONDITIONS:
        report.notes.append(f"{name}: {'pass' if not failures[name] else 'fail'} ({failures[name]} witness(es))")
    return report.finalize(limit)
