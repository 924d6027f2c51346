"""Numba-compiled kernels. Signatures mirror :mod:`._numpy` exactly."""

import numpy as np
from numba import njit


@njit(cache=True)
def bfs_all_pairs(indptr, indices):
    n = indptr.shape[0] - 1
    dist = np.full((n, n), -1, dtype=np.int32)
    count = np.zeros((n, n), dtype=np.int64)
    queue = np.empty(n, dtype=np.int32)
    for s in range(n):
        d = dist[s]
        c = count[s]
        d[s] = 0
        c[s] = 1
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            u = queue[head]
            head += 1
            du = d[u]
            for p in range(indptr[u], indptr[u + 1]):
                w = indices[p]
                if d[w] < 0:
                    d[w] = du + 1
                    queue[tail] = w
                    tail += 1
                if d[w] == du + 1:
                    c[w] += c[u]
    return dist, count


@njit(cache=True)
def rainbow_reach_table(indptr, indices, colors, k, source):
    n = indptr.shape[0] - 1
    size = 1 << k
    table = np.zeros((size, n), dtype=np.uint8)
    alive = np.zeros(size, dtype=np.uint8)
    table[0, source] = 1
    alive[0] = 1
    # S | bit > S, so ascending order is a topological order of the state space
    for s in range(size):
        if alive[s] == 0:
            continue
        row = table[s]
        for u in range(n):
            if row[u] == 0:
                continue
            for p in range(indptr[u], indptr[u + 1]):
                c = colors[p]
                if (s >> c) & 1:
                    continue
                t = s | (1 << c)
                table[t, indices[p]] = 1
                alive[t] = 1
    return table


@njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit(cache=True)
def components_without_each_color(n, eu, ev, ec, k):
    labels = np.empty((k, n), dtype=np.int32)
    parent = np.empty(n, dtype=np.int32)
    for c in range(k):
        for i in range(n):
            parent[i] = i
        for e in range(eu.shape[0]):
            if ec[e] == c:
                continue
            a = _find(parent, eu[e])
            b = _find(parent, ev[e])
            if a < b:
                parent[b] = a
            elif b < a:
                parent[a] = b
        for i in range(n):
            labels[c, i] = _find(parent, i)
    return labels
