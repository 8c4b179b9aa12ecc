"""Pure-Python retrograde solver kernel.

Reference implementation of the backward least-fixed-point labeling; the
compiled kernel mirrors this loop for loop. States are AND-OR nodes:
pursuer-turn states need one winning joint move, evader-turn states need
every evader move to lose, tracked with out-degree counters. Unlabeled
states at convergence are survivor wins.

Joint pursuer moves are enumerated by an odometer over per-slot legal
lists; when two slots hold the same vertex the later slot's choice index
may not drop below the earlier one's, so each destination multiset of a
co-located group appears once. Slots at distinct vertices can still
produce a repeated destination multiset; that is harmless because the
destinations are OR fan-in only (first label wins) while evader-turn
counters count evader moves, which are always distinct.
"""

from __future__ import annotations

from .indexing import binomial_table, multiset_count

COPS, ZOMBIES, LAZY = 0, 1, 2


def _legal_lists(n, adj, dist_row_to, e, variant):
    """Sorted legal destination lists for every pursuer vertex, evader at e."""
    legal = []
    for u in range(n):
        if variant == COPS:
            lst = sorted(adj[u] + (u,))
        else:
            de = dist_row_to[u]
            lst = [w for w in adj[u] if dist_row_to[w] == de - 1]
            if variant == LAZY:
                lst = sorted(lst + [u])
        legal.append(lst)
    return legal


def solve_kernel(n, k, adj, dist, variant, budget):
    """Label all states; returns (status, times, edges) or None on budget abort.

    adj: per-vertex sorted neighbour tuples. dist: n x n nested sequence.
    status[i] is 1 for pursuer win; times[i] is the minimax ply count, -1
    for survivor wins.
    """
    M = multiset_count(n, k)
    S = M * n * 2
    if S > budget:
        return None
    binom = binomial_table(n + k, k + 1)
    D = [[int(x) for x in row] for row in dist]

    rev_cnt = [0] * (S + 1)  # shifted by one for the prefix sum
    counter = [0] * (M * n)
    edges = 0

    # pass A: count reverse fan-in per destination, within budget
    for e in range(n):
        legal = _legal_lists(n, adj, D[e], e, variant)
        deg1 = len(adj[e]) + 1
        p = [0] * k
        for r in range(M):
            if e not in p:
                counter[r * n + e] = deg1
                edges += _or_edge_count(p, legal) + deg1
                if S + edges > budget:
                    return None
                _count_or_edges(p, legal, e, n, k, binom, rev_cnt)
                for w in adj[e]:
                    rev_cnt[(r * n + w) * 2 + 1] += 1
                rev_cnt[(r * n + e) * 2 + 1] += 1
            _advance(p, n, k)

    rev_indptr = rev_cnt
    for i in range(1, S + 1):
        rev_indptr[i] += rev_indptr[i - 1]
    rev_idx = [0] * edges
    fill = list(rev_indptr[:S])

    # pass B: scatter forward sources into the reverse lists
    for e in range(n):
        legal = _legal_lists(n, adj, D[e], e, variant)
        p = [0] * k
        for r in range(M):
            if e not in p:
                s_or = (r * n + e) * 2
                s_and = s_or + 1
                _fill_or_edges(p, legal, e, n, k, binom, rev_idx, fill, s_or)
                for w in adj[e]:
                    dest = (r * n + w) * 2
                    rev_idx[fill[dest]] = s_and
                    fill[dest] += 1
                rev_idx[fill[s_or]] = s_and  # evader stays
                fill[s_or] += 1
            _advance(p, n, k)

    status = [0] * S
    times = [-1] * S
    queue = [0] * S
    tail = 0

    # seed terminal states in index order
    p = [0] * k
    for r in range(M):
        prev = -1
        for e in p:
            if e == prev:
                continue
            prev = e
            base = (r * n + e) * 2
            for s in (base, base + 1):
                status[s] = 1
                times[s] = 0
                queue[tail] = s
                tail += 1
        _advance(p, n, k)

    head = 0
    while head < tail:
        v = queue[head]
        head += 1
        t1 = times[v] + 1
        for j in range(rev_indptr[v], rev_indptr[v + 1]):
            u = rev_idx[j]
            if status[u]:
                continue
            if u & 1 == 0:
                status[u] = 1
                times[u] = t1
                queue[tail] = u
                tail += 1
            else:
                ci = u >> 1
                counter[ci] -= 1
                if counter[ci] == 0:
                    status[u] = 1
                    times[u] = t1
                    queue[tail] = u
                    tail += 1
    return status, times, edges


def _advance(p, n, k):
    for i in range(k):
        cap = p[i + 1] if i + 1 < k else n - 1
        if p[i] < cap:
            p[i] += 1
            for j in range(i):
                p[j] = 0
            return


def _or_edge_count(p, legal):
    """Joint-move count: product over co-location groups of multichoose."""
    total = 1
    i = 0
    k = len(p)
    while i < k:
        j = i
        while j < k and p[j] == p[i]:
            j += 1
        c, g = len(legal[p[i]]), j - i
        # C(c + g - 1, g) without importing comb in the hot path
        num, den = 1, 1
        for t in range(g):
            num *= c + g - 1 - t
            den *= t + 1
        total *= num // den
        i = j
    return total


def _count_or_edges(p, legal, e, n, k, binom, rev_cnt):
    Ls = [legal[v] for v in p]
    idx = [0] * k
    while True:
        c = sorted(Ls[i][idx[i]] for i in range(k))
        rank = 0
        for i, v in enumerate(c):
            rank += binom[v + i][i + 1]
        rev_cnt[(rank * n + e) * 2 + 1 + 1] += 1
        if not _advance_odometer(idx, Ls, p, k):
            return


def _fill_or_edges(p, legal, e, n, k, binom, rev_idx, fill, s_or):
    Ls = [legal[v] for v in p]
    idx = [0] * k
    while True:
        c = sorted(Ls[i][idx[i]] for i in range(k))
        rank = 0
        for i, v in enumerate(c):
            rank += binom[v + i][i + 1]
        dest = (rank * n + e) * 2 + 1
        rev_idx[fill[dest]] = s_or
        fill[dest] += 1
        if not _advance_odometer(idx, Ls, p, k):
            return


def _advance_odometer(idx, Ls, p, k):
    j = k - 1
    while j >= 0:
        idx[j] += 1
        if idx[j] < len(Ls[j]):
            for j2 in range(j + 1, k):
                idx[j2] = idx[j2 - 1] if p[j2] == p[j2 - 1] else 0
            return True
        j -= 1
    return False
