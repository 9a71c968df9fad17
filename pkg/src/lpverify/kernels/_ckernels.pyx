# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as ``_pykernels``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"

ctypedef cnp.int32_t i32
ctypedef cnp.int64_t i64
ctypedef cnp.uint8_t u8
ctypedef cnp.int8_t i8


cdef inline void _tp_step(const i32[::1] heads, const i32[::1] bstart, const i32[::1] batoms,
                          const u8[::1] cur, u8[::1] out) noexcept nogil:
    cdef Py_ssize_t i, k, n = heads.shape[0]
    cdef bint ok
    out[:] = 0
    for i in range(n):
        ok = True
        for k in range(bstart[i], bstart[i + 1]):
            if not cur[batoms[k]]:
                ok = False
                break
        if ok:
            out[heads[i]] = 1


def tp_step(const i32[::1] heads, const i32[::1] bstart, const i32[::1] batoms, const u8[::1] cur):
    out = np.zeros(cur.shape[0], dtype=np.uint8)
    cdef u8[::1] o = out
    with nogil:
        _tp_step(heads, bstart, batoms, cur, o)
    return out


def tp_lfp(const i32[::1] heads, const i32[::1] bstart, const i32[::1] batoms, Py_ssize_t n_atoms):
    cur = np.zeros(n_atoms, dtype=np.uint8)
    nxt = np.zeros(n_atoms, dtype=np.uint8)
    cdef u8[::1] c = cur
    cdef u8[::1] x = nxt
    cdef u8[::1] tmp
    cdef Py_ssize_t a, it = 0
    cdef bint same
    with nogil:
        while True:
            _tp_step(heads, bstart, batoms, c, x)
            same = True
            for a in range(n_atoms):
                if c[a] != x[a]:
                    same = False
                    break
            if same:
                break
            tmp = c
            c = x
            x = tmp
            it += 1
    return np.asarray(c).copy(), it


cdef inline void _phi_step(const i32[::1] head_start, const i32[::1] bstart, const i32[::1] batoms,
                           const u8[::1] bneg, const u8[::1] T, const u8[::1] F,
                           u8[::1] T2, u8[::1] F2) noexcept nogil:
    cdef Py_ssize_t a, i, k, b, n = T.shape[0]
    cdef bint all_false, body_true, body_false, t, f
    for a in range(n):
        all_false = True
        T2[a] = 0
        for i in range(head_start[a], head_start[a + 1]):
            body_true = True
            body_false = False
            for k in range(bstart[i], bstart[i + 1]):
                b = batoms[k]
                if bneg[k]:
                    t = F[b]
                    f = T[b]
                else:
                    t = T[b]
                    f = F[b]
                if f:
                    body_false = True
                    body_true = False
                    break
                if not t:
                    body_true = False
            if body_true:
                T2[a] = 1
            if not body_false:
                all_false = False
        F2[a] = 1 if all_false else 0


def phi_step(const i32[::1] head_start, const i32[::1] bstart, const i32[::1] batoms,
             const u8[::1] bneg, const u8[::1] T, const u8[::1] F):
    T2 = np.zeros(T.shape[0], dtype=np.uint8)
    F2 = np.zeros(T.shape[0], dtype=np.uint8)
    cdef u8[::1] t2 = T2
    cdef u8[::1] f2 = F2
    with nogil:
        _phi_step(head_start, bstart, batoms, bneg, T, F, t2, f2)
    return T2, F2


def phi_fixpoint(const i32[::1] head_start, const i32[::1] bstart, const i32[::1] batoms,
                 const u8[::1] bneg, Py_ssize_t n_atoms):
    Ta = np.zeros(n_atoms, dtype=np.uint8)
    Fa = np.zeros(n_atoms, dtype=np.uint8)
    Tb = np.zeros(n_atoms, dtype=np.uint8)
    Fb = np.zeros(n_atoms, dtype=np.uint8)
    cdef u8[::1] t = Ta
    cdef u8[::1] f = Fa
    cdef u8[::1] t2 = Tb
    cdef u8[::1] f2 = Fb
    cdef u8[::1] tmp
    cdef Py_ssize_t a, it = 0
    cdef bint same
    with nogil:
        while True:
            _phi_step(head_start, bstart, batoms, bneg, t, f, t2, f2)
            same = True
            for a in range(n_atoms):
                if t[a] != t2[a] or f[a] != f2[a]:
                    same = False
                    break
            if same:
                break
            tmp = t
            t = t2
            t2 = tmp
            tmp = f
            f = f2
            f2 = tmp
            it += 1
    return np.asarray(t).copy(), np.asarray(f).copy(), it


def premise_violations(Py_ssize_t lo, Py_ssize_t hi, const i32[::1] heads, const i32[::1] bstart,
                       const i32[::1] batoms, const u8[::1] bneg, const u8[::1] pos_ok,
                       const u8[::1] neg_ok, const u8[::1] head_ok):
    out = np.empty(max(hi - lo, 0), dtype=np.int32)
    cdef i32[::1] o = out
    cdef Py_ssize_t i, k, b, m = 0
    cdef bint ok
    with nogil:
        for i in range(lo, hi):
            if head_ok[heads[i]]:
                continue
            ok = True
            for k in range(bstart[i], bstart[i + 1]):
                b = batoms[k]
                if bneg[k]:
                    if not neg_ok[b]:
                        ok = False
                        break
                elif not pos_ok[b]:
                    ok = False
                    break
            if ok:
                o[m] = i
                m += 1
    return out[:m].copy()


def cover_status(Py_ssize_t lo, Py_ssize_t hi, const i32[::1] head_start, const i32[::1] bstart,
                 const i32[::1] batoms, const u8[::1] bneg, const u8[::1] need, const u8[::1] pos_ok,
                 const u8[::1] neg_ok, const i64[::1] levels, bint use_levels):
    out = np.zeros(max(hi - lo, 0), dtype=np.int8)
    cdef i8[::1] o = out
    cdef Py_ssize_t a, i, k, b
    cdef bint covered, decreasing, ok, dec
    with nogil:
        for a in range(lo, hi):
            if not need[a]:
                continue
            covered = False
            decreasing = False
            for i in range(head_start[a], head_start[a + 1]):
                ok = True
                dec = True
                for k in range(bstart[i], bstart[i + 1]):
                    b = batoms[k]
                    if bneg[k]:
                        if not neg_ok[b]:
                            ok = False
                            break
                    elif not pos_ok[b]:
                        ok = False
                        break
                    if use_levels and not levels[b] < levels[a]:
                        dec = False
                if ok:
                    covered = True
                    if dec:
                        decreasing = True
                        break
            if not covered:
                o[a - lo] = 1
            elif use_levels and not decreasing:
                o[a - lo] = 2
    return out


def kill_violations(Py_ssize_t lo, Py_ssize_t hi, const i32[::1] head_start, const i32[::1] bstart,
                    const i32[::1] batoms, const u8[::1] bneg, const u8[::1] need,
                    const u8[::1] pos_kill, const u8[::1] neg_kill, const i64[::1] levels):
    cdef Py_ssize_t n_inst = 0
    if hi > lo:
        n_inst = head_start[hi] - head_start[lo]
    out = np.empty(n_inst, dtype=np.int32)
    cdef i32[::1] o = out
    cdef Py_ssize_t a, i, k, b, m = 0
    cdef bint killed, kl
    with nogil:
        for a in range(lo, hi):
            if not need[a]:
                continue
            for i in range(head_start[a], head_start[a + 1]):
                killed = False
                for k in range(bstart[i], bstart[i + 1]):
                    b = batoms[k]
                    kl = neg_kill[b] if bneg[k] else pos_kill[b]
                    if kl and levels[b] < levels[a]:
                        killed = True
                        break
                if not killed:
                    o[m] = i
                    m += 1
    return out[:m].copy()


def acceptability_violations(Py_ssize_t lo, Py_ssize_t hi, const i32[::1] heads, const i32[::1] bstart,
                             const i32[::1] batoms, const u8[::1] bneg, const u8[::1] pos_ok,
                             const u8[::1] neg_ok, const i64[::1] levels):
    cdef Py_ssize_t n_lits = 0
    if hi > lo:
        n_lits = bstart[hi] - bstart[lo]
    out = np.empty(2 * n_lits, dtype=np.int32)
    cdef i32[::1] o = out
    cdef Py_ssize_t i, k, b, m = 0
    cdef i64 lh
    cdef bint holds
    with nogil:
        for i in range(lo, hi):
            lh = levels[heads[i]]
            for k in range(bstart[i], bstart[i + 1]):
                b = batoms[k]
                if not levels[b] < lh:
                    o[m] = i
                    o[m + 1] = k - bstart[i]
                    m += 2
                holds = neg_ok[b] if bneg[k] else pos_ok[b]
                if not holds:
                    break
    return out[:m].copy()
