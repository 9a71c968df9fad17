"""Kernel backend selection.

The compiled extension is used when it was built; otherwise, or when
``LPVERIFY_PURE=1`` is set, the pure-Python implementation is used.
Both expose identical functions.
"""
import os

from . import _pykernels as python_backend

compiled_backend = None
if os.environ.get("LPVERIFY_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = active.BACKEND

tp_step = active.tp_step
tp_lfp = active.tp_lfp
phi_step = active.phi_step
phi_fixpoint = active.phi_fixpoint
premise_violations = active.premise_violations
cover_status = active.cover_status
kill_violations = active.kill_violations
acceptability_violations = active.acceptability_violations


def available_backends():
    out = [python_backend]
    if compiled_backend is not None:
        out.append(compiled_backend)
    return out
