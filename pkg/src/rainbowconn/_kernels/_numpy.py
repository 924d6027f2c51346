"""Pure-numpy kernels, used when numba is unavailable or disabled."""

import numpy as np

_CHUNK = 4096


def bfs_all_pairs(indptr, indices):
    n = indptr.shape[0] - 1
    adj = np.zeros((n, n), dtype=np.float64)
    rows = np.repeat(np.arange(n), np.diff(indptr))
    adj[rows, indices] = 1.0
    dist = np.full((n, n), -1, dtype=np.int32)
    np.fill_diagonal(dist, 0)
    count = np.eye(n, dtype=np.float64)
    frontier = count.copy()
    level = 0
    # all sources advance one BFS layer per matrix product
    while True:
        reach = frontier @ adj
        new = (reach > 0) & (dist < 0)
        if not new.any():
            break
        level += 1
        dist[new] = level
        count[new] = reach[new]
        frontier = np.where(new, reach, 0.0)
    return dist, count.astype(np.int64)


def rainbow_reach_table(indptr, indices, colors, k, source):
    n = indptr.shape[0] - 1
    table = np.zeros((1 << k, n), dtype=np.uint8)
    table[0, source] = 1
    src = np.repeat(np.arange(n), np.diff(indptr))
    dst = np.asarray(indices, dtype=np.int64)
    bit = np.left_shift(1, np.asarray(colors, dtype=np.int64))
    layer = np.zeros(1, dtype=np.int64)
    # every transition adds exactly one color, so layers are popcount classes
    while layer.size:
        produced = []
        for lo in range(0, layer.size, _CHUNK):
            block = layer[lo:lo + _CHUNK]
            ok = table[block][:, src].astype(bool) & ((block[:, None] & bit[None, :]) == 0)
            li, ai = np.nonzero(ok)
            masks = block[li] | bit[ai]
            table[masks, dst[ai]] = 1
            produced.append(masks)
        layer = np.unique(np.concatenate(produced)) if produced else layer[:0]
    return table


def components_without_each_color(n, eu, ev, ec, k):
    labels = np.tile(np.arange(n, dtype=np.int64), (k, 1))
    if eu.shape[0] == 0 or k == 0:
        return labels.astype(np.int32)
    keep = np.arange(k)[:, None] != np.asarray(ec)[None, :]
    ci, ei = np.nonzero(keep)
    a, b = np.asarray(eu)[ei], np.asarray(ev)[ei]
    while True:
        low = np.minimum(labels[ci, a], labels[ci, b])
        before = labels.copy()
        np.minimum.at(labels, (ci, a), low)
        np.minimum.at(labels, (ci, b), low)
        # pointer jumping collapses long label chains
        while True:
            jumped = np.take_along_axis(labels, labels, axis=1)
            if np.array_equal(jumped, labels):
                break
            labels = jumped
        if np.array_equal(before, labels):
            return labels.astype(np.int32)
