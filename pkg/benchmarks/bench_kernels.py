#!/usr/bin/env python3
"""Time the numba kernels against their numpy/Python fallbacks.

Runs each hot kernel on both paths, checks the results agree, and prints a
table.  The fallback path is what ``RESSPACE_NO_NUMBA=1`` selects at import
time; here both implementations are driven directly so one process can
compare them.
"""

import random
import time

import numpy as np

from resspace import accel
from resspace.graphs import bit_reversal_graph
from resspace.logic import Clause, all_clauses_over, _as_rows
from resspace.minimal import _clause_mask, _var_mask


def timed(fn, *args, repeat=3):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0) if best else time.perf_counter() - t0
    return best, result


def bench_implication(nvars=18, seed=1):
    rng = random.Random(seed)
    clauses = []
    for _ in range(nvars * 4):
        vs = rng.sample(range(1, nvars + 1), 3)
        clauses.append(Clause([v * rng.choice((1, -1)) for v in vs]))
    goal = Clause([1, 2])
    var_bit = {v: v - 1 for v in range(1, nvars + 1)}
    prem = accel._flatten_side([_as_rows(c, var_bit) for c in clauses])
    conc = accel._flatten_side([_as_rows(goal, var_bit)])
    t_nb = t_np = None
    if accel.USING_NUMBA:
        accel._cx_kernel(2, *accel._flatten_side([_as_rows(Clause([1]), var_bit)]), *conc)
        t_nb, r_nb = timed(lambda: int(accel._cx_kernel(nvars, *prem, *conc)))
    t_np, r_np = timed(lambda: accel._cx_numpy(nvars, *prem, *conc))
    if t_nb is not None:
        assert r_nb == r_np
    return f"implication sweep ({nvars} vars)", t_nb, t_np


def bench_pebbling_bfs(p=3, space=4):
    dag = bit_reversal_graph(p)
    preds = [0] * dag.n
    for v in range(1, dag.n + 1):
        for u in dag.predecessors(v):
            preds[v - 1] |= 1 << (u - 1)
    target = 1 << (dag.sink - 1)
    args = (dag.n, preds, target, space, 4_000_000)
    t_nb = None
    if accel.USING_NUMBA:
        accel._black_bfs_kernel(dag.n, np.asarray(preds, dtype=np.int64), np.int64(target), space, 1000)
        t_nb, r_nb = timed(
            lambda: accel._black_bfs_kernel(
                dag.n, np.asarray(preds, dtype=np.int64), np.int64(target), space, 4_000_000
            )
        )
    t_np, r_np = timed(
        lambda: accel._black_bfs_numpy(
            dag.n, np.asarray(preds, dtype=np.int64), np.int64(target), space, 4_000_000
        )
    )
    if t_nb is not None:
        assert r_nb[0] == r_np[0] and r_nb[4] == r_np[4]
        assert np.array_equal(r_nb[1], r_np[1])
    return f"pebbling BFS (bit_reversal:{p}, space {space})", t_nb, t_np


def bench_cover_enumeration(max_vars=3, max_cubes=8):
    universe = all_clauses_over(range(1, max_vars + 1))
    masks = [_clause_mask(c, max_vars) for c in universe]
    var_masks = [_var_mask(c) for c in universe]
    npoints = 1 << max_vars
    t_nb = None
    if accel.USING_NUMBA:
        accel.cover_scan(masks[:4], var_masks[:4], npoints, 2)
        t_nb, r_nb = timed(lambda: accel.cover_scan(masks, var_masks, npoints, max_cubes))
    point_sets = [[i for i, m in enumerate(masks) if (m >> p) & 1] for p in range(npoints)]
    full = (1 << npoints) - 1
    t_np, r_np = timed(
        lambda: accel._cover_scan_python(masks, var_masks, point_sets, full, max_cubes)
    )
    if t_nb is not None:
        assert tuple(r_nb[:2]) == tuple(r_np[:2])
    return f"min-unsat cover scan ({max_vars} vars)", t_nb, t_np


def main():
    print(f"numba available: {accel.USING_NUMBA}")
    rows = [bench_implication(), bench_pebbling_bfs(), bench_cover_enumeration()]
    width = max(len(r[0]) for r in rows) + 2
    print(f"{'kernel'.ljust(width)}{'numba':>12}{'fallback':>12}{'speedup':>10}")
    for name, t_nb, t_np in rows:
        nb = f"{t_nb * 1e3:.1f} ms" if t_nb is not None else "-"
        ratio = f"{t_np / t_nb:.1f}x" if t_nb else "-"
        print(f"{name.ljust(width)}{nb:>12}{t_np * 1e3:>9.1f} ms{ratio:>10}")


if __name__ == "__main__":
    main()
