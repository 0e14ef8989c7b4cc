"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Each workload rebuilds its inputs inside the timed region so cached tables
do not leak between backends.
"""
import argparse
import time

import numpy as np

from cblow import kernels
from cblow.blowup import blowup_sequence
from cblow.building import check_building_def, maximal_building_set
from cblow.generators import boolean_lattice, divisor_lattice, partition_lattice
from cblow.poset import SemiLattice, irreducibles, is_isomorphic


def random_dag(n, p, seed):
    rng = np.random.default_rng(seed)
    adj = np.triu(rng.random((n, n)) < p, k=1)
    return adj.astype(np.uint8)


def w_closure():
    kernels.transitive_closure(random_dag(300, 0.02, 1))


def w_tables():
    L = partition_lattice(5)
    kernels.meet_join_tables(L.leq.astype(np.uint8))


def w_irreducibles():
    L = partition_lattice(5)
    fresh = SemiLattice(L.labels, L.leq, checked=True)
    irreducibles(fresh)
    D = divisor_lattice(720)
    irreducibles(SemiLattice(D.labels, D.leq, checked=True))


def w_building_def():
    L = boolean_lattice(6)
    check_building_def(L, maximal_building_set(L).mask)


def w_isomorphism():
    L = boolean_lattice(3)
    G = maximal_building_set(L)
    a = blowup_sequence(L, G)
    b = blowup_sequence(L, G, sorted(G, key=lambda g: (-L.down[g].bit_count(), -g)))
    assert is_isomorphic(a, b) is not None


WORKLOADS = {
    "transitive_closure n=300": w_closure,
    "meet_join_tables Pi_5": w_tables,
    "irreducibles Pi_5 + D_720": w_irreducibles,
    "building def check B_6": w_building_def,
    "isomorphism of blowups B_3": w_isomorphism,
}


def bench(repeat):
    backends = [b for b in ("python", "cython") if b in kernels.BACKENDS]
    rows = []
    for name, fn in WORKLOADS.items():
        times = {}
        for b in backends:
            with kernels.using_backend(b):
                best = float("inf")
                for _ in range(repeat):
                    t = time.perf_counter()
                    fn()
                    best = min(best, time.perf_counter() - t)
                times[b] = best
        rows.append((name, times))
    return backends, rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends, rows = bench(args.repeat)
    head = f"{'workload':32s}" + "".join(f"{b:>12s}" for b in backends)
    if len(backends) == 2:
        head += f"{'speedup':>10s}"
    print(head)
    for name, t in rows:
        line = f"{name:32s}" + "".join(f"{t[b] * 1e3:10.1f}ms" for b in backends)
        if len(backends) == 2:
            line += f"{t['python'] / t['cython']:9.1f}x"
        print(line)
    if len(backends) == 1:
        print("compiled backend unavailable; only the fallback was timed")


if __name__ == "__main__":
    main()
