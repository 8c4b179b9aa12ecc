# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled retrograde solver kernel.

Same algorithm as _reference.solve_kernel, loop for loop: two passes build
a reverse CSR of the forward move graph (counting, then scattering), then
a FIFO retrograde sweep labels pursuer wins with minimax ply counts.
Outputs are bit-identical to the reference backend.
"""

import numpy as np

from .indexing import multiset_count


def solve_kernel(int n, int k, adj, dist, int variant, long long budget):
    cdef long long M = multiset_count(n, k)
    cdef long long S = M * n * 2
    if S > budget:
        return None

    # adjacency CSR
    cdef int m2 = 0
    cdef int u, w, j
    for u in range(n):
        m2 += len(adj[u])
    aptr_np = np.zeros(n + 1, dtype=np.int32)
    aidx_np = np.zeros(max(m2, 1), dtype=np.int32)
    cdef int[:] aptr = aptr_np
    cdef int[:] aidx = aidx_np
    cdef int pos = 0
    for u in range(n):
        aptr[u] = pos
        for w in adj[u]:
            aidx[pos] = w
            pos += 1
    aptr[n] = pos

    dist_np = np.ascontiguousarray(dist, dtype=np.int32)
    cdef int[:, :] D = dist_np

    # binomials up to C(n + k, k + 1)
    binom_np = np.zeros((n + k + 1, k + 2), dtype=np.int64)
    cdef long long[:, :] binom = binom_np
    cdef int a, b
    for a in range(n + k + 1):
        binom[a, 0] = 1
        for b in range(1, min(a, k + 1) + 1):
            binom[a, b] = binom[a - 1, b - 1] + (binom[a - 1, b] if a - 1 >= b else 0)

    # per-evader legal destination lists, rebuilt for each e
    legal_flat_np = np.zeros(m2 + n, dtype=np.int32)
    legal_ptr_np = np.zeros(n + 1, dtype=np.int32)
    cdef int[:] legal_flat = legal_flat_np
    cdef int[:] legal_ptr = legal_ptr_np

    rev_indptr_np = np.zeros(S + 1, dtype=np.int64)
    cdef long long[:] rev_indptr = rev_indptr_np
    counter_np = np.zeros(M * n, dtype=np.int32)
    cdef int[:] counter = counter_np

    p_np = np.zeros(k, dtype=np.int32)
    idx_np = np.zeros(k, dtype=np.int32)
    cbuf_np = np.zeros(k, dtype=np.int32)
    slot_base_np = np.zeros(k, dtype=np.int32)
    slot_len_np = np.zeros(k, dtype=np.int32)
    cdef int[:] p = p_np
    cdef int[:] idx = idx_np
    cdef int[:] cbuf = cbuf_np
    cdef int[:] slot_base = slot_base_np
    cdef int[:] slot_len = slot_len_np

    cdef long long edges = 0, r, s_or, s_and, dest, rank, fills
    cdef int e, i, t, de, v, cap, deg1, terminal, pass_id
    cdef long long[:] fill = None
    rev_idx_np = None
    cdef int[:] rev_idx = None

    for pass_id in range(2):
        if pass_id == 1:
            # prefix-sum the counts into offsets, allocate, reset fill pointers
            fills = 0
            for r in range(1, S + 1):
                rev_indptr[r] += rev_indptr[r - 1]
            rev_idx_np = np.zeros(max(edges, 1), dtype=np.int32)
            rev_idx = rev_idx_np
            fill_np = np.zeros(S, dtype=np.int64)
            fill = fill_np
            for r in range(S):
                fill[r] = rev_indptr[r]
        for e in range(n):
            # legal lists for this evader position
            pos = 0
            for u in range(n):
                legal_ptr[u] = pos
                if variant == 0:
                    t = 0
                    for j in range(aptr[u], aptr[u + 1]):
                        w = aidx[j]
                        if t == 0 and u < w:
                            legal_flat[pos] = u
                            pos += 1
                            t = 1
                        legal_flat[pos] = w
                        pos += 1
                    if t == 0:
                        legal_flat[pos] = u
                        pos += 1
                else:
                    de = D[u, e]
                    t = 0
                    for j in range(aptr[u], aptr[u + 1]):
                        w = aidx[j]
                        if D[w, e] == de - 1:
                            if variant == 2 and t == 0 and u < w:
                                legal_flat[pos] = u
                                pos += 1
                                t = 1
                            legal_flat[pos] = w
                            pos += 1
                    if variant == 2 and t == 0:
                        legal_flat[pos] = u
                        pos += 1
            legal_ptr[n] = pos

            deg1 = aptr[e + 1] - aptr[e] + 1
            for i in range(k):
                p[i] = 0
            for r in range(M):
                terminal = 0
                for i in range(k):
                    if p[i] == e:
                        terminal = 1
                        break
                if not terminal:
                    s_or = (r * n + e) * 2
                    s_and = s_or + 1
                    if pass_id == 0:
                        counter[r * n + e] = deg1
                    # joint pursuer moves: odometer, later co-located slots
                    # never pick an earlier index than their twin
                    for i in range(k):
                        slot_base[i] = legal_ptr[p[i]]
                        slot_len[i] = legal_ptr[p[i] + 1] - legal_ptr[p[i]]
                        idx[i] = 0
                    while True:
                        for i in range(k):
                            cbuf[i] = legal_flat[slot_base[i] + idx[i]]
                        # insertion sort
                        for i in range(1, k):
                            v = cbuf[i]
                            j = i - 1
                            while j >= 0 and cbuf[j] > v:
                                cbuf[j + 1] = cbuf[j]
                                j -= 1
                            cbuf[j + 1] = v
                        rank = 0
                        for i in range(k):
                            rank += binom[cbuf[i] + i, i + 1]
                        dest = (rank * n + e) * 2 + 1
                        if pass_id == 0:
                            edges += 1
                            rev_indptr[dest + 1] += 1
                        else:
                            rev_idx[fill[dest]] = <int> s_or
                            fill[dest] += 1
                        # advance odometer
                        t = k - 1
                        while t >= 0:
                            idx[t] += 1
                            if idx[t] < slot_len[t]:
                                for i in range(t + 1, k):
                                    idx[i] = idx[i - 1] if p[i] == p[i - 1] else 0
                                break
                            t -= 1
                        if t < 0:
                            break
                    # evader moves
                    if pass_id == 0:
                        edges += deg1
                        if S + edges > budget:
                            return None
                        for j in range(aptr[e], aptr[e + 1]):
                            rev_indptr[(r * n + aidx[j]) * 2 + 1] += 1
                        rev_indptr[s_or + 1] += 1
                    else:
                        for j in range(aptr[e], aptr[e + 1]):
                            dest = (r * n + aidx[j]) * 2
                            rev_idx[fill[dest]] = <int> s_and
                            fill[dest] += 1
                        rev_idx[fill[s_or]] = <int> s_and
                        fill[s_or] += 1
                # colex successor of the multiset
                for i in range(k):
                    cap = p[i + 1] if i + 1 < k else n - 1
                    if p[i] < cap:
                        p[i] += 1
                        for j in range(i):
                            p[j] = 0
                        break

    status_np = np.zeros(S, dtype=np.uint8)
    times_np = np.full(S, -1, dtype=np.int32)
    queue_np = np.zeros(S, dtype=np.int64)
    cdef unsigned char[:] status = status_np
    cdef int[:] times = times_np
    cdef long long[:] queue = queue_np
    cdef long long head = 0, tail = 0, s, vv, ci
    cdef int prev, t1

    # seed terminal states in index order
    for i in range(k):
        p[i] = 0
    for r in range(M):
        prev = -1
        for i in range(k):
            e = p[i]
            if e == prev:
                continue
            prev = e
            s = (r * n + e) * 2
            status[s] = 1
            times[s] = 0
            queue[tail] = s
            tail += 1
            status[s + 1] = 1
            times[s + 1] = 0
            queue[tail] = s + 1
            tail += 1
        for i in range(k):
            cap = p[i + 1] if i + 1 < k else n - 1
            if p[i] < cap:
                p[i] += 1
                for j in range(i):
                    p[j] = 0
                break

    while head < tail:
        vv = queue[head]
        head += 1
        t1 = times[vv] + 1
        for s in range(rev_indptr[vv], rev_indptr[vv + 1]):
            dest = rev_idx[s]
            if status[dest]:
                continue
            if dest & 1 == 0:
                status[dest] = 1
                times[dest] = t1
                queue[tail] = dest
                tail += 1
            else:
                ci = dest >> 1
                counter[ci] -= 1
                if counter[ci] == 0:
                    status[dest] = 1
                    times[dest] = t1
                    queue[tail] = dest
                    tail += 1

    return status_np, times_np, edges
