"""Time the compiled and pure-Python kernels on the same ground programs.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import time

import numpy as np

from lpverify import checks, kernels
from lpverify.cli import CORPUS_DIR, corpus_config
from lpverify.config import load_problem
from lpverify.generate import random_program, random_signature
from lpverify.herbrand import herbrand_slice
from lpverify.semantics import ground_program


def workloads():
    for name, depth in (("append", 4), ("reverse", 3)):
        problem = load_problem(corpus_config(CORPUS_DIR / name, "check-correct").at_depth(depth))
        yield f"{name} d={depth}", problem.program, problem.slice
    rng = random.Random(11)
    sig = random_signature(rng, 2, 3, max_pred_arity=2)
    yield "random normal d=2", random_program(11, sig, 12, 3, 0.3), herbrand_slice(sig, 2)


def kernel_calls(mod, gp):
    n = gp.n_atoms
    rng = np.random.default_rng(0)
    a, b, c = (rng.integers(0, 2, n).astype(np.uint8) for _ in range(3))
    lv = rng.integers(0, 5, n).astype(np.int64)
    calls = {
        "phi_fixpoint": lambda: mod.phi_fixpoint(gp.head_start, gp.bstart, gp.batoms, gp.bneg, n),
        "premise": lambda: mod.premise_violations(0, len(gp), gp.heads, gp.bstart, gp.batoms, gp.bneg, a, b, c),
        "cover": lambda: mod.cover_status(0, n, gp.head_start, gp.bstart, gp.batoms, gp.bneg, a, b, c, lv, True),
        "accept": lambda: mod.acceptability_violations(0, len(gp), gp.heads, gp.bstart, gp.batoms, gp.bneg, a, b, lv),
    }
    if gp.is_definite:
        calls["tp_lfp"] = lambda: mod.tp_lfp(gp.heads, gp.bstart, gp.batoms, n)
    return calls


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if kernels.compiled_backend is None:
        print("compiled kernels not built; only the Python backend is timed")
    backends = kernels.available_backends()
    print(f"{'workload':22} {'kernel':14} {'clauses':>8} " + " ".join(f"{m.BACKEND + ' ms':>11}" for m in backends)
          + ("   speedup" if len(backends) == 2 else ""))
    for label, program, sl in workloads():
        gp = ground_program(program, sl)
        for kname in kernel_calls(kernels.python_backend, gp):
            ts = [best_of(kernel_calls(m, gp)[kname], args.repeat) for m in backends]
            row = f"{label:22} {kname:14} {len(gp):>8} " + " ".join(f"{t * 1e3:>11.2f}" for t in ts)
            if len(ts) == 2:
                row += f"   {ts[0] / max(ts[1], 1e-9):7.1f}x"
            print(row)
    # end-to-end check time under each backend
    problem = load_problem(corpus_config(CORPUS_DIR / "append", "check-correct"))
    for m in backends:
        kernels.active = m
        t = best_of(lambda: checks.check_terminate(problem.program, problem.pair, problem.levels, problem.slice),
                    args.repeat)
        print(f"check-terminate on append d=3 with {m.BACKEND}: {t * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
