"""Verification-condition reports and their rendering."""
from dataclasses import dataclass, field
from typing import List, Optional, Union

from .terms import Atom, Clause, atom_key, clause_key

KINDS = ("CORR", "COV", "LVL", "C1", "C2", "K1", "K2", "TERM", "PAIR", "STAB", "ORACLE", "OPER")

DEFAULT_REPORT_LIMIT = 20


def instance_str(x: Union[Atom, Clause]) -> str:
    if isinstance(x, Clause):
        s = str(x)
        return s[:-1] if s.endswith(".") else s
    return str(x)


@dataclass(frozen=True)
class Violation:
    kind: str
    clause_index: Optional[int]  # 1-based position in the source program
    instance: Union[Atom, Clause]
    note: str = ""

    def sort_key(self):
        if isinstance(self.instance, Clause):
            main = (atom_key(self.instance.head), 1, clause_key(self.instance))
        else:
            main = (atom_key(self.instance), 0, ())
        return (main, self.kind, self.clause_index or 0, self.note)


@dataclass
class VcReport:
    check: str
    checked_count: int = 0
    violations: List[Violation] = field(default_factory=list)
    violation_count: int = 0
    frontier_count: int = 0
    stable: bool = True
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    @property
    def vacuous(self) -> bool:
        return self.checked_count == 0

    def add(self, violation: Violation):
        self.violation_count += 1
        self.violations.append(violation)

    def finalize(self, limit: Optional[int] = DEFAULT_REPORT_LIMIT) -> "VcReport":
        """Sort violations canonically and keep the first ``limit`` (counts stay exact)."""
        self.violations.sort(key=Violation.sort_key)
        if limit is not None:
            del self.violations[limit:]
        return self

    def merge(self, other: "VcReport") -> "VcReport":
        self.checked_count += other.checked_count
        self.violations.extend(other.violations)
        self.violation_count += other.violation_count
        self.frontier_count = max(self.frontier_count, other.frontier_count)
        self.stable = self.stable and other.stable
        for n in other.notes:
            if n not in self.notes:
                self.notes.append(n)
        return self

    def kinds(self):
        return {v.kind for v in self.violations}


def _q(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_report(report: VcReport, format: str = "machine") -> str:
    status = "pass" if report.passed else "fail"
    if format == "machine":
        line = (
            f"RESULT {report.check} {status} checked={report.checked_count} "
            f"violations={report.violation_count} frontier={report.frontier_count}"
        )
        if not report.stable:
            line += " stable=false"
        if report.vacuous:
            line += ' note="vacuous"'
        lines = [line]
        for v in report.violations:
            clause = v.clause_index if v.clause_index is not None else "-"
            lines.append(
                f"VIOLATION kind={v.kind} clause={clause} instance={_q(instance_str(v.instance))} note={_q(v.note)}"
            )
        return "\n".join(lines) + "\n"

    lines = [f"{report.check}: {status.upper()}"]
    lines.append(f"  checked {report.checked_count}, frontier {report.frontier_count}")
    if report.vacuous:
        lines.append("  note: vacuous pass, nothing was checked")
    if not report.stable:
        lines.append("  note: verdict is not stable under a deeper slice")
    for n in report.notes:
        lines.append(f"  note: {n}")
    if report.violation_count:
        lines.append(f"  {report.violation_count} violation(s)")
        for v in report.violations:
            where = f" (clause {v.clause_index})" if v.clause_index is not None else ""
            extra = f": {v.note}" if v.note else ""
            lines.append(f"    [{v.kind}]{where} {instance_str(v.instance)}{extra}")
        hidden = report.violation_count - len(report.violations)
        if hidden > 0:
            lines.append(f"    ... {hidden} more")
    return "\n".join(lines) + "\n"
