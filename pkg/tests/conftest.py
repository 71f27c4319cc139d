"""Shared corpora: exhaustive small stable graphs for brute-force checks.

The generators enumerate every connected stable dual graph inside explicit
budgets (per-pair and total node counts, per-vertex genus and self-node caps),
deduplicated up to vertex relabeling.  The tiered defaults keep every blow-up
expansion at 9 vertices or fewer, so full subcurve scans over the whole corpus
finish in seconds rather than minutes.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import pytest

from spinpicard import DualGraph


def _connected(n: int, pair_idx, mult) -> bool:
    if n == 1:
        return True
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, j), m in zip(pair_idx, mult):
        if m:
            parent[find(i)] = find(j)
    root = find(0)
    return all(find(i) == root for i in range(n))


def _canonical_key(n: int, pa, selfn, pair_idx, mult):
    full = [[0] * n for _ in range(n)]
    for (i, j), m in zip(pair_idx, mult):
        full[i][j] = full[j][i] = m
    best = None
    for perm in itertools.permutations(range(n)):
        key = (
            tuple((pa[p], selfn[p]) for p in perm),
            tuple(
                full[perm[i]][perm[j]]
                for i in range(n)
                for j in range(i + 1, n)
            ),
        )
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def small_stable_graphs(
    n_values: tuple[int, ...],
    max_pa: int = 2,
    max_k: int = 4,
    max_self: int = 2,
    pair_budget: int = 5,
    self_budget: int = 2,
    min_genus: int = 2,
) -> tuple[DualGraph, ...]:
    graphs = []
    seen = set()
    for n in n_values:
        pair_idx = list(itertools.combinations(range(n), 2))
        for mult in itertools.product(range(max_k + 1), repeat=len(pair_idx)):
            if sum(mult) > pair_budget:
                continue
            if not _connected(n, pair_idx, mult):
                continue
            contact = [0] * n
            for (i, j), m in zip(pair_idx, mult):
                contact[i] += m
                contact[j] += m
            for pa in itertools.product(range(max_pa + 1), repeat=n):
                if any(2 * pa[i] - 2 + contact[i] <= 0 for i in range(n)):
                    continue
                genus = sum(pa) + sum(mult) - n + 1
                if genus < min_genus:
                    continue
                self_ranges = [range(min(pa[i], max_self) + 1) for i in range(n)]
                for selfn in itertools.product(*self_ranges):
                    if sum(selfn) > self_budget:
                        continue
                    key = _canonical_key(n, pa, selfn, pair_idx, mult)
                    if key in seen:
                        continue
                    seen.add(key)
                    graphs.append(
                        DualGraph(
                            [(f"v{i}", pa[i], selfn[i]) for i in range(n)],
                            {
                                (f"v{i}", f"v{j}"): m
                                for (i, j), m in zip(pair_idx, mult)
                                if m
                            },
                        )
                    )
    return tuple(graphs)


def quasistable_graphs() -> tuple[DualGraph, ...]:
    """Tiered corpus for blow-up scans: n <= 4, k <= 4 per pair, genus >= 2.

    Larger vertex counts get tighter node budgets so that n + blown nodes
    never exceeds 9.
    """
    return (
        small_stable_graphs((1, 2), max_pa=2, max_k=4, max_self=2,
                            pair_budget=4, self_budget=2, min_genus=2)
        + small_stable_graphs((3,), max_pa=2, max_k=4, max_self=1,
                              pair_budget=5, self_budget=1, min_genus=2)
        + small_stable_graphs((4,), max_pa=1, max_k=2, max_self=1,
                              pair_budget=4, self_budget=1, min_genus=2)
    )


def spin_graphs() -> tuple[DualGraph, ...]:
    """Corpus for spin-locus enumeration: n <= 3, genus >= 3, stable."""
    return small_stable_graphs(
        (1, 2, 3), max_pa=2, max_k=4, max_self=1,
        pair_budget=5, self_budget=1, min_genus=3,
    )


@pytest.fixture(scope="session")
def quasistable_corpus() -> tuple[DualGraph, ...]:
    return quasistable_graphs()


@pytest.fixture(scope="session")
def spin_corpus() -> tuple[DualGraph, ...]:
    return spin_graphs()
