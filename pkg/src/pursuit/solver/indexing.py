"""Dense state indexing shared by the solver backends.

A pursuer configuration is a sorted multiset of k vertices. Multisets are
ranked in colexicographic order; with the multiset stored ascending as
c[0] <= ... <= c[k-1] the rank is sum_i C(c[i] + i, i + 1). Ranks are
contiguous in [0, C(n+k-1, k)), and the colex successor is obtained by
bumping the leftmost slot that can grow and zeroing everything before it,
so kernels can walk all multisets without unranking.

A full game state packs as ((rank * n) + evader) * 2 + turn with turn 0
for the pursuers' move and 1 for the evader's.
"""

from __future__ import annotations

from math import comb


def multiset_count(n: int, k: int) -> int:
    """Number of k-multisets over n vertices."""
    return comb(n + k - 1, k)


def binomial_table(a_max: int, b_max: int) -> list[list[int]]:
    """C(a, b) for 0 <= a <= a_max, 0 <= b <= b_max, as nested lists."""
    t = [[0] * (b_max + 1) for _ in range(a_max + 1)]
    for a in range(a_max + 1):
        t[a][0] = 1
        for b in range(1, min(a, b_max) + 1):
            t[a][b] = t[a - 1][b - 1] + (t[a - 1][b] if a - 1 >= b else 0)
    return t


def multiset_rank(ms) -> int:
    """Colex rank of an ascending-sorted multiset."""
    r = 0
    for i, v in enumerate(ms):
        r += comb(v + i, i + 1)
    return r


def multiset_unrank(rank: int, k: int) -> tuple[int, ...]:
    """Inverse of multiset_rank (n-independent)."""
    out = [0] * k
    rem = rank
    for i in range(k - 1, -1, -1):
        v = 0  # largest v with C(v + i, i + 1) <= rem; C(i, i + 1) = 0 always fits
        while comb(v + 1 + i, i + 1) <= rem:
            v += 1
        out[i] = v
        rem -= comb(v + i, i + 1)
    if rem:
        raise ValueError(f"rank {rank} out of range for k={k}")
    return tuple(out)


def state_index(rank: int, evader: int, turn: int, n: int) -> int:
    return (rank * n + evader) * 2 + turn


def state_count(n: int, k: int) -> int:
    return multiset_count(n, k) * n * 2


def advance_multiset(p: list[int], n: int) -> bool:
    """In-place colex successor; False when p was the last multiset."""
    k = len(p)
    for i in range(k):
        cap = p[i + 1] if i + 1 < k else n - 1
        if p[i] < cap:
            p[i] += 1
            for j in range(i):
                p[j] = 0
            return True
    return False
