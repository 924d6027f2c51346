"""Time the numba and numpy kernel backends on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Both backends are imported directly, so the env flag does not matter here.
The numba functions are called once before timing to exclude compilation.
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

import numpy as np

from rainbowconn._kernels import numba_impl, numpy_impl
from rainbowconn.reductions import build
from rainbowconn.sat import random_formula


def _random_graph_arrays(rng: random.Random, n: int, p: float, k: int):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    eu = np.array([e[0] for e in edges], dtype=np.int32)
    ev = np.array([e[1] for e in edges], dtype=np.int32)
    ec = np.array([rng.randrange(k) for _ in edges], dtype=np.int32)
    return n, eu, ev, ec


def _csr(n, eu, ev, ec):
    src = np.concatenate([eu, ev])
    dst = np.concatenate([ev, eu])
    col = np.concatenate([ec, ec])
    order = np.lexsort((dst, src))
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    return np.cumsum(indptr), dst[order].astype(np.int32), col[order].astype(np.int32)


def _time(fn, repeat):
    runs = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t)
    return statistics.median(runs)


def cases(seed: int):
    rng = random.Random(seed)
    red = build("cubic", random_formula(rng, 6, 6))
    g = red.graph
    yield "bfs_all_pairs cubic reduction", lambda impl: impl.bfs_all_pairs(*g.csr[:2])
    n, eu, ev, ec = _random_graph_arrays(rng, 300, 0.05, 12)
    indptr, indices, colors = _csr(n, eu, ev, ec)
    yield "bfs_all_pairs n=300", lambda impl: impl.bfs_all_pairs(indptr, indices)
    yield "components_without_each_color n=300 k=12", lambda impl: impl.components_without_each_color(n, eu, ev, ec, 12)
    n2, eu2, ev2, ec2 = _random_graph_arrays(rng, 30, 0.2, 12)
    ip2, ix2, co2 = _csr(n2, eu2, ev2, ec2)
    yield "rainbow_reach_table n=30 k=12", lambda impl: impl.rainbow_reach_table(ip2, ix2, co2, 12, 0)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    if numba_impl is None:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':45s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for name, call in cases(args.seed):
        call(numba_impl)  # compile
        a, b = call(numpy_impl), call(numba_impl)
        for x, y in zip(a if isinstance(a, tuple) else (a,), b if isinstance(b, tuple) else (b,)):
            assert np.array_equal(x, y), f"backends disagree on {name}"
        t_np = _time(lambda: call(numpy_impl), args.repeat)
        t_nb = _time(lambda: call(numba_impl), args.repeat)
        print(f"{name:45s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
