"""Command-line front end: ``lpv <subcommand> PROGRAM [SPEC] [options]``.

Exit codes: 0 all checks pass, 1 violations found, 2 usage, parse or input
error, 3 resource cap exceeded or an unstable verdict.
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

from . import audit
from .config import DEFAULT_DEPTH, DEFAULT_STEP_BOUND, RunConfig, file_options, load_problem, read_text
from .errors import LpvError, NotDefinite, PairInconsistent, ParseError, ResourceExceeded
from .herbrand import DEFAULT_CAP
from .report import render_report
from .semantics import ground_program
from .sldnf import BOUND_EXCEEDED, FLOUNDERED, sldnf_solve

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

CORPUS_DIR = Path(__file__).parent / "corpus"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _add_common(p, spec=True):
    p.add_argument("program", help="program file")
    if spec:
        p.add_argument("spec", nargs="?", help="specification file (S_corr; also S_compl unless --spec-compl)")
    p.add_argument("--spec-compl", help="S_compl file of an approximate pair")
    p.add_argument("--levels", help="level mapping file")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--step-bound", type=int, default=DEFAULT_STEP_BOUND)
    p.add_argument("--format", choices=("human", "machine"), default="human")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--const", action="append", default=[], dest="constants",
                   help="extra constant for the universe (repeatable)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--limit", type=int, default=20, help="violations listed per report (counts stay exact)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lpv", description="Verify logic programs against specifications over a bounded Herbrand base.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    for name in audit.CHECKS:
        _add_common(sub.add_parser(name, help=f"run {name}"))
    _add_common(sub.add_parser("semantics", help="print the 3-valued fixpoint over the slice"))
    p = sub.add_parser("solve", help="run a query with the LDNF interpreter")
    _add_common(p, spec=False)
    p.add_argument("query", help="query, e.g. 'win(X)' or 'p(a), \\+ q(a)'")
    _add_common(sub.add_parser("cross-check", help="compare every applicable check with the fixpoint oracles"))
    p = sub.add_parser("stability", help="compare statuses and a check verdict at depth and depth+1")
    _add_common(p)
    p.add_argument("--check", choices=audit.CHECKS)
    p = sub.add_parser("corpus", help="run the bundled corpus against its expected outputs")
    p.add_argument("names", nargs="*")
    p.add_argument("--dir", default=str(CORPUS_DIR))
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--update-goldens", action="store_true", help="rewrite expected.txt files")
    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(
        subcommand=args.subcommand, program=args.program, spec=getattr(args, "spec", None),
        spec_compl=args.spec_compl, levels=args.levels, depth=args.depth, cap=args.cap,
        step_bound=args.step_bound, format=args.format, seed=args.seed, constants=list(args.constants),
        workers=args.workers, limit=args.limit, query=getattr(args, "query", None),
        check=getattr(args, "check", None),
    )


def _parse(argv: List[str]):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.subcommand == "corpus":
        return args
    # options stored in the program file come first, so the command line wins
    extra = file_options(read_text(args.program))
    if extra:
        args = parser.parse_args([argv[0]] + extra + list(argv[1:]))
    if args.depth < 0 or args.cap <= 0 or args.step_bound <= 0 or args.workers < 1:
        raise _UsageError("lpv: --depth must be >= 0; --cap, --step-bound and --workers must be positive")
    return args


def _semantics(config, out):
    problem = load_problem(config)
    gp = ground_program(problem.program, problem.slice)
    T, F, it = gp.phi_masks()
    if config.format == "human":
        out.write(f"% Phi fixpoint after {it} iteration(s): {int(T.sum())} true, {int(F.sum())} false, "
                  f"{gp.n_atoms - int(T.sum()) - int(F.sum())} undefined of {gp.n_atoms}\n")
    for i, a in enumerate(gp.atoms):
        out.write(f"{'T' if T[i] else 'F' if F[i] else 'U'} {a}\n")
    return EXIT_PASS


def _solve(config, out):
    problem = load_problem(config)
    outcome = sldnf_solve(problem.program, problem.query, config.step_bound)
    if config.format == "machine":
        note = f' note="{outcome.note}"' if outcome.note else ""
        out.write(f"SOLVE {outcome.status} answers={len(outcome.answers)} steps={outcome.steps}{note}\n")
        for ans in outcome.answers:
            out.write("ANSWER " + " ".join(f"{v}={t}" for v, t in zip(outcome.variables, ans)) + "\n")
    else:
        out.write(str(outcome) + "\n")
    if outcome.status == BOUND_EXCEEDED:
        return EXIT_RESOURCE
    return EXIT_FAIL if outcome.status == FLOUNDERED else EXIT_PASS


def run_config(config: RunConfig, out) -> int:
    sub = config.subcommand
    if sub == "semantics":
        return _semantics(config, out)
    if sub == "solve":
        return _solve(config, out)
    if sub == "stability":
        report = audit.stability_check(config)
        out.write(render_report(report, config.format))
        return EXIT_PASS if report.stable else EXIT_RESOURCE
    problem = load_problem(config)
    if sub == "cross-check":
        report = audit.cross_check(problem, config.step_bound, config.workers, config.limit)
    else:
        report = audit.run_check(problem, sub, workers=config.workers, limit=config.limit)
    out.write(render_report(report, config.format))
    return EXIT_PASS if report.passed else EXIT_FAIL


def corpus_entries(root=CORPUS_DIR):
    return sorted(p.name for p in Path(root).iterdir() if (p / "program.pl").exists())


def corpus_config(entry_dir, subcommand, workers=1) -> RunConfig:
    """Config for a corpus entry, including the options stored in its program file."""
    d = Path(entry_dir)
    argv = [subcommand, str(d / "program.pl"), str(d / "corr.spec"),
            "--spec-compl", str(d / "compl.spec"), "--levels", str(d / "levels.lvl"),
            "--format", "machine", "--workers", str(workers)]
    return config_from_args(_parse(argv))


def corpus_output(entry_dir, workers=1) -> str:
    """Machine reports of every check that applies to the entry, in a fixed order."""
    config = corpus_config(entry_dir, "check-correct", workers)
    problem = load_problem(config)
    parts = []
    for name in audit.applicable_checks(problem):
        report = audit.run_check(problem, name, workers=workers, limit=config.limit)
        parts.append(render_report(report, "machine"))
    return "".join(parts)


def _corpus(args, out, err):
    root = Path(args.dir)
    names = args.names or corpus_entries(root)
    drift = 0
    for name in names:
        d = root / name
        if not (d / "program.pl").exists():
            raise FileNotFoundError(f"no corpus entry {name!r} in {root}")
        text = corpus_output(d, args.workers)
        golden = d / "expected.txt"
        if args.update_goldens:
            golden.write_text(text)
            out.write(f"{name}: expected output written\n")
        elif not golden.exists() or golden.read_text() != text:
            drift += 1
            out.write(f"{name}: DRIFT\n")
            err.write(f"--- {name} actual\n{text}")
        else:
            out.write(f"{name}: ok\n")
    return EXIT_FAIL if drift else EXIT_PASS


def run_cli(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _parse(argv)
        if args.subcommand == "corpus":
            return _corpus(args, out, err)
        return run_config(config_from_args(args), out)
    except _UsageError as e:
        err.write(f"{e}\n")
        return EXIT_USAGE
    except (FileNotFoundError, IsADirectoryError, PermissionError) as e:
        err.write(f"lpv: cannot read {getattr(e, 'filename', None) or e}\n")
        return EXIT_USAGE
    except ParseError as e:
        err.write(f"lpv: parse error: {e}\n")
        return EXIT_USAGE
    except PairInconsistent as e:
        err.write("lpv: S_compl is not contained in S_corr\n")
        err.write(render_report(e.report, "machine"))
        return EXIT_USAGE
    except NotDefinite as e:
        err.write(f"lpv: {e}\n")
        return EXIT_USAGE
    except ResourceExceeded as e:
        err.write(f"lpv: resource limit: {e}\n")
        return EXIT_RESOURCE
    except (LpvError, ValueError) as e:
        err.write(f"lpv: {e}\n")
        return EXIT_USAGE


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
