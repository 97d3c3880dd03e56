"""Exhaustive ground-truth computations on small instances.

Kept separate from the pipeline so production code can never accidentally
depend on an exponential routine.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .core import Bipartition, Digraph, UnderlyingGraph

MAX_ORACLE_N = 24
MAX_GAP_A = 15
MAX_MATCH_N = 12
MAX_PM_N = 10


@dataclass(frozen=True)
class OracleResult:
    """Exhaustive max over bipartitions of the smaller directional cut."""

    optimum: int
    witness: Bipartition
    evaluated: int


def exact_judicious(digraph: Digraph) -> OracleResult:
    """Exhaustive maximum of min(e12, e21), with an optimal witness.

    Gray-code enumeration: one vertex flips per step and the two directional
    counts are updated from per-vertex neighbor masks.  Vertex 0 is pinned to
    side 1, which halves the space by label-swap symmetry; ties prefer the
    numerically smallest side-2 bitmask.
    """
    n = digraph.n
    if n > MAX_ORACLE_N:
        raise ValueError(f"exact_judicious is capped at n <= {MAX_ORACLE_N}, got {n}")
    if n == 0:
        return OracleResult(0, Bipartition(()), 1)
    out_mask = [0] * n
    in_mask = [0] * n
    for u, v in digraph.edges:
        out_mask[u] |= 1 << v
        in_mask[v] |= 1 << u
    outdeg = [digraph.out_degree(v) for v in range(n)]
    indeg = [digraph.in_degree(v) for v in range(n)]

    side2 = 0  # bit v set <=> vertex v on side 2
    e12 = e21 = 0
    best = min(e12, e21)
    best_mask = side2
    free = list(range(1, n))
    steps = 1 << (n - 1)
    for code in range(1, steps):
        v = free[(code & -code).bit_length() - 1]
        bit = 1 << v
        o2 = (out_mask[v] & side2).bit_count()
        i2 = (in_mask[v] & side2).bit_count()
        o1 = outdeg[v] - o2
        i1 = indeg[v] - i2
        if side2 & bit:  # side 2 -> side 1
            e12 += o2 - i1
            e21 += i2 - o1
            side2 &= ~bit
        else:  # side 1 -> side 2
            e12 += i1 - o2
            e21 += o1 - i2
            side2 |= bit
        value = e12 if e12 < e21 else e21
        if value > best or (value == best and side2 < best_mask):
            best = value
            best_mask = side2
    witness = Bipartition(tuple(2 if best_mask >> v & 1 else 1 for v in range(n)))
    return OracleResult(best, witness, steps)


def exact_min_gap(surpluses: Sequence[int]) -> int:
    """Exhaustive minimum of |sum(chosen) - sum(rest)| over sign choices."""
    if len(surpluses) > MAX_GAP_A:
        raise ValueError(f"exact_min_gap is capped at {MAX_GAP_A} values")
    values = [abs(s) for s in surpluses]
    best = sum(values)

    def rec(i: int, cur: int) -> None:
        nonlocal best
        if i == len(values):
            best = min(best, abs(cur))
            return
        rec(i + 1, cur + values[i])
        rec(i + 1, cur - values[i])

    rec(0, 0)
    return best


def _adj_masks(graph: UnderlyingGraph) -> list[int]:
    masks = [0] * graph.n
    for u, v in graph.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def exact_max_matching(graph: UnderlyingGraph) -> int:
    """Exhaustive maximum matching size (bitmask recursion with memo)."""
    if graph.n > MAX_MATCH_N:
        raise ValueError(f"exact_max_matching is capped at n <= {MAX_MATCH_N}")
    masks = _adj_masks(graph)

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if mask == 0:
            return 0
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        out = best(rest)  # leave v unmatched
        avail = masks[v] & rest
        while avail:
            u = (avail & -avail).bit_length() - 1
            avail &= avail - 1
            out = max(out, 1 + best(rest & ~(1 << u)))
        return out

    return best((1 << graph.n) - 1)


def enumerate_perfect_matchings(
    graph: UnderlyingGraph,
) -> Iterator[tuple[tuple[int, int], ...]]:
    """Yield every perfect matching as a sorted tuple of (u, v) edges."""
    if graph.n > MAX_PM_N:
        raise ValueError(f"enumerate_perfect_matchings is capped at n <= {MAX_PM_N}")
    masks = _adj_masks(graph)

    def rec(mask: int, acc: list[tuple[int, int]]) -> Iterator[tuple[tuple[int, int], ...]]:
        if mask == 0:
            yield tuple(acc)
            return
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        avail = masks[v] & rest
        while avail:
            u = (avail & -avail).bit_length() - 1
            avail &= avail - 1
            acc.append((v, u) if v < u else (u, v))
            yield from rec(rest & ~(1 << u), acc)
            acc.pop()

    if graph.n % 2 == 0:
        yield from rec((1 << graph.n) - 1, [])


def max_free_over_max_matchings(graph: UnderlyingGraph) -> int:
    """Exhaustive maximum of the free-vertex count over all maximum matchings.

    A vertex w outside the matching is free when some neighbor's matching
    edge has its other endpoint non-adjacent to w.  Test oracle only.
    """
    if graph.n > MAX_MATCH_N:
        raise ValueError(f"capped at n <= {MAX_MATCH_N}")
    masks = _adj_masks(graph)
    target = exact_max_matching(graph)
    full = (1 << graph.n) - 1
    best_free = -1

    def free_count(pairs: list[tuple[int, int]], unmatched: int) -> int:
        count = 0
        rem = unmatched
        while rem:
            w = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            for u, v in pairs:
                wu = masks[w] >> u & 1
                wv = masks[w] >> v & 1
                if wu != wv:
                    count += 1
                    break
        return count

    def rec(mask: int, acc: list[tuple[int, int]], size: int) -> None:
        nonlocal best_free
        # prune: even matching every remaining vertex cannot reach target
        if size + mask.bit_count() // 2 < target:
            return
        if size == target:
            matched = 0
            for u, v in acc:
                matched |= (1 << u) | (1 << v)
            best_free = max(best_free, free_count(acc, full & ~matched))
            return
        if mask == 0:
            return
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        avail = masks[v] & rest
        while avail:
            u = (avail & -avail).bit_length() - 1
            avail &= avail - 1
            acc.append((v, u))
            rec(rest & ~(1 << u), acc, size + 1)
            acc.pop()
        rec(rest, acc, size)  # v stays unmatched

    rec((1 << graph.n) - 1, [], 0)
    return best_free
