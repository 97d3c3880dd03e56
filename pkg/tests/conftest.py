"""Shared helpers: seeded random graph builders used across the suite."""

from __future__ import annotations

import random

from dicut.core import Digraph, UnderlyingGraph


def random_undirected(rng: random.Random, n: int, p: float) -> UnderlyingGraph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return UnderlyingGraph(n, edges)


def random_digraph(rng: random.Random, n: int, p: float) -> Digraph:
    pairs = [
        (u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p
    ]
    return Digraph(n, pairs)


def triangle_graph() -> UnderlyingGraph:
    return UnderlyingGraph(3, [(0, 1), (1, 2), (0, 2)])
