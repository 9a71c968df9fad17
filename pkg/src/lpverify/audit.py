"""Check dispatch, depth-stability audit and cross-validation against the oracles."""
from typing import Optional

import numpy as np

from . import checks
from .config import Problem, RunConfig, load_problem
from .report import VcReport, Violation
from .semantics import GroundProgram, ground_program
from .sldnf import sldnf_solve
from .terms import Atom, Literal, Struct

CHECKS = (
    "check-correct",
    "check-semicomplete",
    "check-complete",
    "check-correct-normal",
    "check-complete-normal",
    "check-terminate",
)
DEFINITE_ONLY = {"check-correct", "check-semicomplete", "check-complete"}
NEEDS_LEVELS = {"check-complete", "check-complete-normal", "check-terminate"}


def run_check(problem: Problem, name: str, gp: Optional[GroundProgram] = None,
              workers: int = 1, limit: Optional[int] = 20) -> VcReport:
    p, s = problem.program, problem.slice
    kw = dict(gp=gp, workers=workers, limit=limit)
    if name == "check-correct":
        return checks.check_correct_definite(p, problem.corr, s, **kw)
    if name == "check-semicomplete":
        return checks.check_semicomplete_definite(p, problem.compl, s, **kw)
    if name == "check-complete":
        return checks.check_complete_definite(p, problem.compl, problem.levels, s, **kw)
    if name == "check-correct-normal":
        return checks.check_correct_normal(p, problem.pair, s, **kw)
    if name == "check-complete-normal":
        return checks.check_complete_normal(p, problem.pair, problem.levels, s, **kw)
    if name == "check-terminate":
        return checks.check_terminate(p, problem.pair, problem.levels, s, **kw)
    raise ValueError(f"unknown check {name!r}")


def applicable_checks(problem: Problem):
    names = []
    for name in CHECKS:
        if name in DEFINITE_ONLY and not problem.program.is_definite:
            continue
        if name in NEEDS_LEVELS and not (problem.levels.rules or problem.config.levels):
            continue
        names.append(name)
    return names


def _status(T, F, i):
    return "T" if T[i] else ("F" if F[i] else "U")


def stability_check(config: RunConfig, check: Optional[str] = None) -> VcReport:
    """Compare Φ statuses of the shallow atoms and the check verdict at depth d and d+1."""
    check = check or config.check
    shallow = load_problem(config)
    deep = load_problem(config.at_depth(config.depth + 1))
    gp_s = ground_program(shallow.program, shallow.slice)
    gp_d = ground_program(deep.program, deep.slice)
    report = VcReport(f"stability({check or 'semantics'})", frontier_count=gp_d.frontier_count)
    Ts, Fs, _ = gp_s.phi_masks()
    Td, Fd, _ = gp_d.phi_masks()
    for i, a in enumerate(gp_s.atoms):
        report.checked_count += 1
        before = _status(Ts, Fs, i)
        after = _status(Td, Fd, gp_d.index[a])
        if before != after:
            report.add(Violation("STAB", None, a, f"{before} at depth {config.depth}, {after} at depth {config.depth + 1}"))
    if check:
        r1 = run_check(shallow, check, gp=gp_s)
        r2 = run_check(deep, check, gp=gp_d)
        report.notes.append(f"{check}: {'pass' if r1.passed else 'fail'} at depth {config.depth}, "
                            f"{'pass' if r2.passed else 'fail'} at depth {config.depth + 1}")
        report.notes.append(f"frontier {gp_s.frontier_count} -> {gp_d.frontier_count}")
        if r1.passed != r2.passed:
            report.add(Violation("STAB", None, Atom("verdict", (Struct(check),)),
                                 f"{check} verdict changed between depth {config.depth} and {config.depth + 1}"))
    report.stable = report.violation_count == 0
    return report.finalize(config.limit)


def operational_agreement(problem: Problem, gp: GroundProgram, step_bound: int, report: VcReport):
    """Run every base atom through the interpreter and compare with the Φ fixpoint."""
    T, F, _ = gp.phi_masks()
    stats = {"success": 0, "failure": 0, "floundered": 0, "bound": 0}
    for i, a in enumerate(gp.atoms):
        out = sldnf_solve(problem.program, [Literal(True, a)], step_bound)
        if out.status == "floundered":
            stats["floundered"] += 1
            continue
        if out.status == "bound_exceeded":
            stats["bound"] += 1
            continue
        report.checked_count += 1
        if out.succeeded:
            stats["success"] += 1
            if not T[i]:
                report.add(Violation("OPER", None, a, f"LDNF succeeds but Φ value is {_status(T, F, i)}"))
        else:
            stats["failure"] += 1
            if not F[i]:
                report.add(Violation("OPER", None, a, f"LDNF fails finitely but Φ value is {_status(T, F, i)}"))
    report.notes.append("operational: " + ", ".join(f"{k} {v}" for k, v in stats.items()))
    return stats


def soundness_violations(problem: Problem, name: str, gp: GroundProgram, step_bound: int):
    """Atoms contradicting the oracle-side contract of a passing check."""
    corr = gp.spec_mask(problem.corr).astype(bool)
    compl = gp.spec_mask(problem.compl).astype(bool)
    bad = []
    if name in ("check-correct",):
        lfp = gp.lfp_mask()[0].astype(bool)
        bad += [(i, "least model atom outside S_corr") for i in np.flatnonzero(lfp & ~corr)]
    elif name == "check-complete":
        lfp = gp.lfp_mask()[0].astype(bool)
        bad += [(i, "S_compl atom outside the least model") for i in np.flatnonzero(compl & ~lfp)]
    elif name in ("check-correct-normal",):
        T, F, _ = gp.phi_masks()
        bad += [(i, "Φ-true atom outside S_corr") for i in np.flatnonzero(T.astype(bool) & ~corr)]
        bad += [(i, "Φ-false atom in S_compl") for i in np.flatnonzero(F.astype(bool) & compl)]
    elif name == "check-complete-normal":
        T, F, _ = gp.phi_masks()
        bad += [(i, "S_compl atom not Φ-true") for i in np.flatnonzero(compl & ~T.astype(bool))]
        bad += [(i, "atom outside S_corr not Φ-false") for i in np.flatnonzero(~corr & ~F.astype(bool))]
    elif name == "check-terminate":
        for i, a in enumerate(gp.atoms):
            if sldnf_solve(problem.program, [Literal(True, a)], step_bound).status == "bound_exceeded":
                bad.append((i, "LDNF exceeds the step bound"))
    return [(gp.atoms[i], note) for i, note in bad]


def cross_check(problem: Problem, step_bound: int, workers: int = 1, limit: Optional[int] = 20) -> VcReport:
    """Every passing check must agree with the fixpoint oracles, and LDNF must agree with Φ."""
    from .semantics import oracle_check, phi_fixpoint

    gp = ground_program(problem.program, problem.slice)
    report = VcReport("cross-check", frontier_count=gp.frontier_count)
    for name in applicable_checks(problem):
        r = run_check(problem, name, gp=gp, workers=workers)
        report.notes.append(f"{name}: {'pass' if r.passed else 'fail'}")
        if r.passed:
            for a, note in soundness_violations(problem, name, gp, step_bound):
                report.add(Violation("ORACLE", None, a, f"{name} passed but {note}"))
    sem, _ = phi_fixpoint(gp)
    oc = oracle_check(problem.pair, sem, problem.slice)
    report.notes.extend(f"oracle {n}" for n in oc.notes)
    operational_agreement(problem, gp, step_bound, report)
    return report.finalize(limit)
