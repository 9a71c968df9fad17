"""Run configuration and loading of program/spec/level files into a ready-to-check problem."""
import shlex
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import List, Optional

from .herbrand import DEFAULT_CAP, HerbrandSlice, SortDecls, collect_signature, herbrand_slice, parse_sort_decls
from .parser import directives, parse_program, parse_query
from .specs import LevelMapping, SpecInterpretation, SpecPair, parse_levels, parse_spec
from .terms import Program

DEFAULT_DEPTH = 4
DEFAULT_STEP_BOUND = 100_000


@dataclass
class RunConfig:
    subcommand: str = "check-correct"
    program: Optional[str] = None
    spec: Optional[str] = None          # S_corr for correctness checks, S_compl for definite completeness
    spec_compl: Optional[str] = None
    levels: Optional[str] = None
    depth: int = DEFAULT_DEPTH
    cap: int = DEFAULT_CAP
    step_bound: int = DEFAULT_STEP_BOUND
    format: str = "human"
    seed: int = 0
    constants: List[str] = field(default_factory=list)
    workers: int = 1
    limit: Optional[int] = 20
    query: Optional[str] = None
    check: Optional[str] = None         # check audited by `stability`

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be >= 0")

    def at_depth(self, depth):
        return replace(self, depth=depth)


@dataclass
class Problem:
    config: RunConfig
    program: Program
    sorts: SortDecls
    corr: SpecInterpretation
    compl: SpecInterpretation
    levels: LevelMapping
    slice: HerbrandSlice
    query: Optional[list] = None

    @property
    def pair(self):
        return SpecPair(self.corr, self.compl)


def read_text(path) -> str:
    return Path(path).read_text()


def file_options(program_text: str) -> List[str]:
    """Extra command-line options stored in ``%! options ...`` directives."""
    out = []
    for _, content in directives(program_text):
        if content.startswith("options"):
            out.extend(shlex.split(content[len("options"):]))
    return out


def _spec(path, name):
    if path is None:
        return None
    return parse_spec(read_text(path), name=Path(path).stem)


def load_problem(config: RunConfig) -> Problem:
    """Parse every input and build the slice over the union of their symbols.

    Without ``--spec-compl`` the single spec serves as both S_corr and
    S_compl (an exact specification).
    """
    text = read_text(config.program)
    program = parse_program(text)
    sorts = parse_sort_decls(text)
    spec = _spec(config.spec, "spec") or SpecInterpretation("empty")
    compl = _spec(config.spec_compl, "compl") or spec
    levels = parse_levels(read_text(config.levels)) if config.levels else LevelMapping()
    query = parse_query(config.query) if config.query else None
    extra = [p for p, _ in spec.rules] + [p for p, _ in compl.rules] + list(query or [])
    sig = collect_signature(program, extra, sorts=sorts, constants=config.constants)
    slice = herbrand_slice(sig, config.depth, config.cap, sorts=sorts)
    return Problem(config, program, sorts, spec, compl, levels, slice, query)
