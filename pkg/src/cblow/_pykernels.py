"""Pure-Python/numpy implementations of the hot kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when
the extension is not built.
"""
import numpy as np


def transitive_closure(adj):
    """Reflexive-transitive closure of a square 0/1 matrix (Warshall)."""
    r = np.array(adj, dtype=bool, copy=True)
    n = r.shape[0]
    np.fill_diagonal(r, True)
    for k in range(n):
        col = r[:, k]
        if col.any():
            r |= np.outer(col, r[k, :])
    return r.astype(np.uint8)


def meet_join_tables(leq):
    """Meet and join tables of a poset given by its order matrix.

    Entries are -1 where the greatest lower (least upper) bound is missing.
    """
    leq = np.asarray(leq, dtype=bool)
    n = leq.shape[0]
    downsize = leq.sum(axis=0)
    upsize = leq.sum(axis=1)
    meet = np.full((n, n), -1, dtype=np.int32)
    join = np.full((n, n), -1, dtype=np.int32)
    if n == 0:
        return meet, join
    for x in range(n):
        # column y of lb: common lower bounds of x and y
        lb = leq[:, x][:, None] & leq
        cnt = lb.sum(axis=0)
        score = np.where(lb, downsize[:, None], -1)
        cand = score.argmax(axis=0)
        ok = (cnt > 0) & (downsize[cand] == cnt)
        meet[x] = np.where(ok, cand, -1)

        ub = leq[x, :][:, None] & leq.T
        cnt = ub.sum(axis=0)
        score = np.where(ub, upsize[:, None], -1)
        cand = score.argmax(axis=0)
        ok = (cnt > 0) & (upsize[cand] == cnt)
        join[x] = np.where(ok, cand, -1)
    return meet, join


def join_map_is_iso(meet, join, factors, tops, target_size):
    """Decide whether (t_1, ..., t_k) -> t_1 v ... v t_k is an isomorphism.

    ``factors[j]`` lists the members of the lower interval below ``tops[j]``
    and ``target_size`` is the size of the interval the map should hit. The
    map is an order isomorphism iff the sizes match and meeting the image
    with each top recovers the coordinate.
    """
    k = len(factors)
    size = 1
    for f in factors:
        size *= len(f)
    if size != target_size:
        return False
    if k == 0:
        return True
    meet = meet.tolist() if hasattr(meet, "tolist") else meet
    join = join.tolist() if hasattr(join, "tolist") else join
    factors = [list(f) for f in factors]
    tops = list(tops)
    idx = [0] * k
    while True:
        w = factors[0][idx[0]]
        for j in range(1, k):
            w = join[w][factors[j][idx[j]]]
            if w < 0:
                return False
        mw = meet[w]
        for j in range(k):
            if mw[tops[j]] != factors[j][idx[j]]:
                return False
        j = k - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < len(factors[j]):
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            return True


def find_isomorphism(leq_a, leq_b, order, cand):
    """First order isomorphism a -> b in the canonical backtracking order.

    Elements of ``a`` are assigned in the sequence ``order``; element p may
    only map to q where ``cand[p, q]`` is set. Candidates are tried in
    increasing id. Returns an int32 array ``m`` with ``m[p]`` the image of
    p, or None.
    """
    a = np.asarray(leq_a, dtype=bool).tolist()
    b = np.asarray(leq_b, dtype=bool).tolist()
    n = len(a)
    if n != len(b):
        return None
    if n == 0:
        return np.zeros(0, dtype=np.int32)
    order = [int(p) for p in order]
    cand_lists = [np.flatnonzero(np.asarray(cand[p])).tolist() for p in range(n)]
    mapping = [-1] * n
    used = [False] * n
    nxt = [0] * (n + 1)
    pos = 0
    while pos >= 0:
        if pos == n:
            return np.array(mapping, dtype=np.int32)
        p = order[pos]
        ap = a[p]
        cl = cand_lists[p]
        placed = False
        i = nxt[pos]
        while i < len(cl):
            q = cl[i]
            i += 1
            if used[q]:
                continue
            bq = b[q]
            ok = True
            for s in range(pos):
                p2 = order[s]
                q2 = mapping[p2]
                if ap[p2] != bq[q2] or a[p2][p] != b[q2][q]:
                    ok = False
                    break
            if ok:
                mapping[p] = q
                used[q] = True
                nxt[pos] = i
                pos += 1
                nxt[pos] = 0
                placed = True
                break
        if not placed:
            nxt[pos] = 0
            pos -= 1
            if pos >= 0:
                p = order[pos]
                used[mapping[p]] = False
                mapping[p] = -1
    return None
