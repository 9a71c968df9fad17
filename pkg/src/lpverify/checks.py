"""The proof methods: verification conditions checked over every ground instance of a slice.

Each check grounds the program once, turns the specifications and level
mapping into per-atom arrays, and hands the scan to a kernel. Work can be
split over threads; results are merged in chunk order and sorted, so the
report does not depend on the number of workers.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from . import kernels
from .errors import NotDefinite, PairInconsistent
from .herbrand import HerbrandSlice
from .report import DEFAULT_REPORT_LIMIT, VcReport, Violation
from .semantics import GroundProgram, ground_program
from .specs import LevelMapping, SpecInterpretation, SpecPair, check_pair_consistency, eval_level
from .terms import Program


def _chunks(n, workers):
    workers = max(1, workers)
    size = max(1, -(-n // workers))
    return [(lo, min(n, lo + size)) for lo in range(0, n, size)] or [(0, 0)]


def _run(fn, n, workers, *args):
    ranges = _chunks(n, workers)
    if workers <= 1 or len(ranges) == 1:
        parts = [fn(lo, hi, *args) for lo, hi in ranges]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda r: fn(r[0], r[1], *args), ranges))
    return parts


def _level_array(gp: GroundProgram, lm: LevelMapping):
    return np.fromiter((eval_level(lm, a) for a in gp.atoms), dtype=np.int64, count=gp.n_atoms)


class _Job:
    """Ground program plus the arrays every condition family reads."""

    def __init__(self, program, slice, gp, workers):
        self.gp = gp if gp is not None else ground_program(program, slice)
        self.workers = workers
        self._masks = {}

    def mask(self, spec):
        key = id(spec)
        if key not in self._masks:
            self._masks[key] = (spec, self.gp.spec_mask(spec))
        return self._masks[key][1]

    def premise(self, pos_ok, neg_ok, head_ok):
        gp = self.gp
        parts = _run(kernels.active.premise_violations, len(gp), self.workers,
                     gp.heads, gp.bstart, gp.batoms, gp.bneg, pos_ok, neg_ok, head_ok)
        return np.concatenate(parts)

    def cover(self, need, pos_ok, neg_ok, levels=None):
        gp = self.gp
        use = levels is not None
        lv = levels if use else np.zeros(gp.n_atoms, dtype=np.int64)
        parts = _run(kernels.active.cover_status, gp.n_atoms, self.workers,
                     gp.head_start, gp.bstart, gp.batoms, gp.bneg, need, pos_ok, neg_ok, lv, use)
        return np.concatenate(parts)

    def kill(self, need, pos_kill, neg_kill, levels):
        gp = self.gp
        parts = _run(kernels.active.kill_violations, gp.n_atoms, self.workers,
                     gp.head_start, gp.bstart, gp.batoms, gp.bneg, need, pos_kill, neg_kill, levels)
        return np.concatenate(parts)

    def acceptability(self, pos_ok, neg_ok, levels):
        gp = self.gp
        parts = _run(kernels.active.acceptability_violations, len(gp), self.workers,
                     gp.heads, gp.bstart, gp.batoms, gp.bneg, pos_ok, neg_ok, levels)
        return np.concatenate(parts).reshape(-1, 2)

    def report(self, name):
        return VcReport(name, frontier_count=self.gp.frontier_count)

    def instance_violation(self, kind, i, note):
        gp = self.gp
        return Violation(kind, int(gp.clause_index[i]), gp.instance(int(i)), note)

    def atom_violation(self, kind, a, note):
        return Violation(kind, None, self.gp.atoms[int(a)], note)


def _ones(gp):
    return np.ones(gp.n_atoms, dtype=np.uint8)


def _require_definite(p: Program):
    if not p.is_definite:
        raise NotDefinite("this method applies to definite programs only")


def _require_consistent(pair: SpecPair, slice):
    consistency = check_pair_consistency(pair, slice)
    if not consistency.passed:
        raise PairInconsistent(consistency)


def _correctness_conditions(job, report, corr, compl):
    """C1 (every premise-satisfying instance has its head in S_corr) and C2 (S_compl atoms covered)."""
    gp = job.gp
    for i in job.premise(corr, 1 - compl, corr):
        report.add(job.instance_violation(
            "C1", i, "positive body atoms in S_corr and negated atoms outside S_compl, head not in S_corr"))
    status = job.cover(compl, compl, 1 - corr)
    for a in np.flatnonzero(status):
        report.add(job.atom_violation(
            "C2", a, "in S_compl but no instance has positive atoms in S_compl and negated atoms outside S_corr"))
    report.checked_count += len(gp) + int(compl.sum())


def check_correct_definite(p: Program, s_corr: SpecInterpretation, slice: HerbrandSlice, *,
                           gp: Optional[GroundProgram] = None, workers: int = 1,
                           limit: Optional[int] = DEFAULT_REPORT_LIMIT) -> VcReport:
    """S_corr must be a model of the program: body in S_corr implies head in S_corr."""
    _require_definite(p)
    job = _Job(p, slice, gp, workers)
    corr = job.mask(s_corr)
    report = job.report("check-correct")
    for i in job.premise(corr, _ones(job.gp), corr):
        report.add(job.instance_violation("CORR", i, "body atoms in S_corr, head not in S_corr"))
    report.checked_count = len(job.gp)
    return report.finalize(limit)


def check_semicomplete_definite(p: Program, s_compl: SpecInterpretation, slice: HerbrandSlice, *,
                                gp: Optional[GroundProgram] = None, workers: int = 1,
                                limit: Optional[int] = DEFAULT_REPORT_LIMIT) -> VcReport:
    """Every atom of S_compl heads some instance whose body lies in S_compl."""
    _require_definite(p)
    job = _Job(p, slice, gp, workers)
    compl = job.mask(s_compl)
    report = job.report("check-semicomplete")
    status = job.cover(compl, compl, _ones(job.gp))
    for a in np.flatnonzero(status):
        report.add(job.atom_violation("COV", a, "no instance with this head has its body in S_compl"))
    report.checked_count = int(compl.sum())
    return report.finalize(limit)


def check_complete_definite(p: Program, s_compl: SpecInterpretation, lm: LevelMapping, slice: HerbrandSlice, *,
                            gp: Optional[GroundProgram] = None, workers: int = 1,
                            limit: Optional[int] = DEFAULT_REPORT_LIMIT) -> VcReport:
    """Semi-completeness where one covering instance also has every body atom at a lower level."""
    _require_definite(p)
    job = _Job(p, slice, gp, workers)
    compl = job.mask(s_compl)
    levels = _level_array(job.gp, lm)
    report = job.report("check-complete")
    status = job.cover(compl, compl, _ones(job.gp), levels)
    for a in np.flatnonzero(status):
        if status[a] == 1:
            report.add(job.atom_violation("COV", a, "no instance with this head has its body in S_compl"))
        else:
            report.add(job.atom_violation(
                "LVL", a, f"covered, but no covering instance has all body levels below {levels[a]}"))
    report.checked_count = int(compl.sum())
    return report.finalize(limit)


def check_correct_normal(p: Program, pair: SpecPair, slice: HerbrandSlice, *,
                         gp: Optional[GroundProgram] = None, workers: int = 1,
                         limit: Optional[int] = DEFAULT_REPORT_LIMIT) -> VcReport:
    _require_consistent(pair, slice)
    job = _Job(p, slice, gp, workers)
    corr, compl = job.mask(pair.corr), job.mask(pair.compl)
    report = job.report("check-correct-normal")
    _correctness_conditions(job, report, corr, compl)
    return report.finalize(limit)


def check_complete_normal(p: Program, pair: SpecPair, lm: LevelMapping, slice: HerbrandSlice, *,
                          gp: Optional[GroundProgram] = None, workers: int = 1,
                          limit: Optional[int] = DEFAULT_REPORT_LIMIT) -> VcReport:
    """K1: S_compl atoms have a decreasing covering instance.
    K2: every instance of an atom outside S_corr has a lower-level literal that is false under the pair.
    """
    _require_consistent(pair, slice)
    job = _Job(p, slice, gp, workers)
    gp = job.gp
    corr, compl = job.mask(pair.corr), job.mask(pair.compl)
    levels = _level_array(gp, lm)
    report = job.report("check-complete-normal")
    status = job.cover(compl, compl, 1 - corr, levels)
    for a in np.flatnonzero(status):
        note = ("no instance has positive atoms in S_compl and negated atoms outside S_corr"
                if status[a] == 1 else
                f"covered, but no covering instance has all body levels below {levels[a]}")
        report.add(job.atom_violation("K1", a, note))
    outside = 1 - corr
    for i in job.kill(outside, outside, compl, levels):
        report.add(job.instance_violation(
            "K2", i, f"head outside S_corr, but no body literal below level {levels[gp.heads[i]]} is false under the pair"))
    report.checked_count = int(compl.sum()) + int(outside.sum())
    return report.finalize(limit)


def check_terminate(p: Program, pair: SpecPair, lm: LevelMapping, slice: HerbrandSlice, *,
                    gp: Optional[GroundProgram] = None, workers: int = 1,
                    limit: Optional[int] = DEFAULT_REPORT_LIMIT) -> VcReport:
    """Acceptability under leftmost selection, relative to an approximate specification pair.

    For each instance and body position i: if the literals before i hold under
    the pair, the i-th atom's level is below the head's. The prefix condition
    only means something if the pair over-approximates what can succeed or
    fail, so the correctness conditions C1/C2 are checked alongside.
    """
    _require_consistent(pair, slice)
    job = _Job(p, slice, gp, workers)
    gp = job.gp
    corr, compl = job.mask(pair.corr), job.mask(pair.compl)
    levels = _level_array(gp, lm)
    report = job.report("check-terminate")
    for i, pos in job.acceptability(corr, 1 - compl, levels):
        inst = gp.instance(int(i))
        atom = inst.body[pos].atom
        report.add(Violation(
            "TERM", int(gp.clause_index[i]), inst,
            f"position {pos + 1}: level of {atom} is {levels[job.gp.index[atom]]}, head level {levels[gp.heads[i]]}"))
    _correctness_conditions(job, report, corr, compl)
    return report.finalize(limit)
