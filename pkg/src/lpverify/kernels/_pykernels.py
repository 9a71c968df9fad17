"""Pure-Python kernels over an integer-encoded ground program.

Encoding shared with the compiled backend: instance ``i`` has head atom
``heads[i]`` and body literals ``batoms[bstart[i]:bstart[i+1]]`` with
``bneg`` marking negative ones. Instances are grouped by head, so the
instances with head ``a`` are ``head_start[a]:head_start[a+1]``. Atom sets
are uint8 arrays indexed by atom id.
"""
import numpy as np

BACKEND = "python"


def _lists(*arrays):
    return [a.tolist() for a in arrays]


def tp_step(heads, bstart, batoms, cur):
    heads, bstart, batoms, cur_l = _lists(heads, bstart, batoms, cur)
    out = [0] * len(cur_l)
    for i, h in enumerate(heads):
        for k in range(bstart[i], bstart[i + 1]):
            if not cur_l[batoms[k]]:
                break
        else:
            out[h] = 1
    return np.array(out, dtype=np.uint8)


def tp_lfp(heads, bstart, batoms, n_atoms):
    cur = np.zeros(n_atoms, dtype=np.uint8)
    it = 0
    while True:
        nxt = tp_step(heads, bstart, batoms, cur)
        if np.array_equal(nxt, cur):
            return cur, it
        cur = nxt
        it += 1


def phi_step(head_start, bstart, batoms, bneg, T, F):
    head_start, bstart, batoms, bneg, T_l, F_l = _lists(head_start, bstart, batoms, bneg, T, F)
    n = len(T_l)
    T2 = [0] * n
    F2 = [0] * n
    for a in range(n):
        all_false = True
        for i in range(head_start[a], head_start[a + 1]):
            body_true = True
            body_false = False
            for k in range(bstart[i], bstart[i + 1]):
                b = batoms[k]
                if bneg[k]:
                    t, f = F_l[b], T_l[b]
                else:
                    t, f = T_l[b], F_l[b]
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
        if all_false:
            F2[a] = 1
    return np.array(T2, dtype=np.uint8), np.array(F2, dtype=np.uint8)


def phi_fixpoint(head_start, bstart, batoms, bneg, n_atoms):
    T = np.zeros(n_atoms, dtype=np.uint8)
    F = np.zeros(n_atoms, dtype=np.uint8)
    it = 0
    while True:
        T2, F2 = phi_step(head_start, bstart, batoms, bneg, T, F)
        if np.array_equal(T2, T) and np.array_equal(F2, F):
            return T, F, it
        T, F = T2, F2
        it += 1


def premise_violations(lo, hi, heads, bstart, batoms, bneg, pos_ok, neg_ok, head_ok):
    """Instances whose body literals all hold (pos_ok / neg_ok) but whose head fails head_ok."""
    heads, bstart, batoms, bneg, pos_ok, neg_ok, head_ok = _lists(
        heads, bstart, batoms, bneg, pos_ok, neg_ok, head_ok)
    out = []
    for i in range(lo, hi):
        if head_ok[heads[i]]:
            continue
        for k in range(bstart[i], bstart[i + 1]):
            b = batoms[k]
            if not (neg_ok[b] if bneg[k] else pos_ok[b]):
                break
        else:
            out.append(i)
    return np.array(out, dtype=np.int32)


def cover_status(lo, hi, head_start, bstart, batoms, bneg, need, pos_ok, neg_ok, levels, use_levels):
    """Per atom in [lo, hi): 0 fine or not needed, 1 no covering instance, 2 covered but never decreasing."""
    head_start, bstart, batoms, bneg, need, pos_ok, neg_ok, levels = _lists(
        head_start, bstart, batoms, bneg, need, pos_ok, neg_ok, levels)
    out = [0] * (hi - lo)
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
                if not (neg_ok[b] if bneg[k] else pos_ok[b]):
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
            out[a - lo] = 1
        elif use_levels and not decreasing:
            out[a - lo] = 2
    return np.array(out, dtype=np.int8)


def kill_violations(lo, hi, head_start, bstart, batoms, bneg, need, pos_kill, neg_kill, levels):
    """Instances with a needed head in [lo, hi) that have no lower-level killing literal."""
    head_start, bstart, batoms, bneg, need, pos_kill, neg_kill, levels = _lists(
        head_start, bstart, batoms, bneg, need, pos_kill, neg_kill, levels)
    out = []
    for a in range(lo, hi):
        if not need[a]:
            continue
        for i in range(head_start[a], head_start[a + 1]):
            for k in range(bstart[i], bstart[i + 1]):
                b = batoms[k]
                if (neg_kill[b] if bneg[k] else pos_kill[b]) and levels[b] < levels[a]:
                    break
            else:
                out.append(i)
    return np.array(out, dtype=np.int32)


def acceptability_violations(lo, hi, heads, bstart, batoms, bneg, pos_ok, neg_ok, levels):
    """(instance, position) pairs, flattened, where the prefix holds but the level does not drop."""
    heads, bstart, batoms, bneg, pos_ok, neg_ok, levels = _lists(
        heads, bstart, batoms, bneg, pos_ok, neg_ok, levels)
    out = []
    for i in range(lo, hi):
        lh = levels[heads[i]]
        for k in range(bstart[i], bstart[i + 1]):
            b = batoms[k]
            if not levels[b] < lh:
                out.append(i)
                out.append(k - bstart[i])
            if not (neg_ok[b] if bneg[k] else pos_ok[b]):
                break
    return np.array(out, dtype=np.int32)
