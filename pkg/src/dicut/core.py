"""Directed-graph data model: degree accounting, directional cuts, and the
projection to the underlying undirected simple graph."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class GraphInputError(ValueError):
    """Malformed graph input: loops, duplicate directed edges, bad vertex ids."""


class Digraph:
    """Loop-free directed graph on dense vertex ids 0..n-1.

    The antiparallel pair (u, v), (v, u) may coexist; a duplicate directed
    edge is a hard input error, never silently repaired.  Instances are
    immutable after construction and safe to share read-only across threads.
    """

    __slots__ = ("n", "edges", "_edge_set", "_out", "_in", "orig_ids")

    def __init__(
        self,
        n: int,
        pairs: Iterable[tuple[int, int]],
        orig_ids: tuple[int, ...] | None = None,
    ) -> None:
        if n < 0:
            raise GraphInputError(f"vertex count must be nonnegative, got {n}")
        out: list[list[int]] = [[] for _ in range(n)]
        in_: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for pos, (u, v) in enumerate(pairs):
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(
                    f"edge #{pos} ({u},{v}): vertex id out of range [0,{n})"
                )
            if u == v:
                raise GraphInputError(f"edge #{pos} ({u},{v}): loops are not allowed")
            if (u, v) in seen:
                raise GraphInputError(f"edge #{pos} ({u},{v}): duplicate directed edge")
            seen.add((u, v))
            out[u].append(v)
            in_[v].append(u)
        for adj in out:
            adj.sort()
        for adj in in_:
            adj.sort()
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        self._edge_set = seen
        self._out = tuple(tuple(a) for a in out)
        self._in = tuple(tuple(a) for a in in_)
        self.orig_ids = orig_ids

    @classmethod
    def from_edge_list(
        cls, pairs: Sequence[tuple[int, int]], n: int | None = None
    ) -> "Digraph":
        """Build a Digraph from (u, v) pairs; n defaults to max id + 1."""
        if n is None:
            n = max((max(u, v) for u, v in pairs), default=-1) + 1
        return cls(n, pairs)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edge_set

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def in_degree(self, v: int) -> int:
        return len(self._in[v])

    def degree(self, v: int) -> int:
        """Total degree d(v) = d+(v) + d-(v); at most 2(n-1)."""
        return len(self._out[v]) + len(self._in[v])

    def degrees(self, v: int) -> tuple[int, int, int]:
        """(d+, d-, d) for one vertex."""
        self._check_vertex(v)
        return len(self._out[v]), len(self._in[v]), self.degree(v)

    def min_out_degree(self) -> int:
        if self.n == 0:
            return 0
        return min(len(a) for a in self._out)

    def argmin_out_degree(self) -> int:
        """Smallest-id vertex realizing the minimum outdegree."""
        return min(range(self.n), key=lambda v: (len(self._out[v]), v))

    def antiparallel_pairs(self) -> int:
        """Number of unordered pairs {u,v} with both (u,v) and (v,u) present."""
        return sum(1 for (u, v) in self.edges if u < v and (v, u) in self._edge_set)

    def underlying(self) -> "UnderlyingGraph":
        """Forget orientation; antiparallel pairs collapse to one edge."""
        und = {(u, v) if u < v else (v, u) for (u, v) in self.edges}
        return UnderlyingGraph(self.n, und, orig_ids=self.orig_ids)

    def induced(self, vertices: Iterable[int]) -> "Digraph":
        """Induced subgraph with dense relabeled ids; orig_ids records the map."""
        keep = sorted(set(vertices))
        for v in keep:
            self._check_vertex(v)
        index = {v: i for i, v in enumerate(keep)}
        pairs = [
            (index[u], index[v])
            for (u, v) in self.edges
            if u in index and v in index
        ]
        return Digraph(len(keep), pairs, orig_ids=tuple(keep))

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise GraphInputError(f"unknown vertex id {v} (n={self.n})")

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"


class UnderlyingGraph:
    """Simple undirected graph (no loops, no parallel edges) on ids 0..n-1."""

    __slots__ = ("n", "edges", "_adj", "_edge_set", "orig_ids")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        orig_ids: tuple[int, ...] | None = None,
    ) -> None:
        norm: set[tuple[int, int]] = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphInputError(f"loop edge ({u},{v}) in undirected graph")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u},{v}): vertex id out of range")
            e = (u, v) if u < v else (v, u)
            if e in norm:
                continue
            norm.add(e)
            adj[e[0]].append(e[1])
            adj[e[1]].append(e[0])
        for a in adj:
            a.sort()
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(norm))
        self._adj = tuple(tuple(a) for a in adj)
        self._edge_set = norm
        self.orig_ids = orig_ids

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_set

    def components(self) -> list[tuple[int, ...]]:
        """Connected components as sorted vertex tuples, ordered by min vertex."""
        seen = [False] * self.n
        comps: list[tuple[int, ...]] = []
        for start in range(self.n):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self._adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(tuple(sorted(comp)))
        return comps

    def odd_components(self) -> int:
        """Number of connected components of odd order."""
        return sum(1 for c in self.components() if len(c) % 2 == 1)

    def induced(self, vertices: Iterable[int]) -> "UnderlyingGraph":
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [
            (index[u], index[v]) for (u, v) in self.edges if u in index and v in index
        ]
        return UnderlyingGraph(len(keep), edges, orig_ids=tuple(keep))

    def __repr__(self) -> str:
        return f"UnderlyingGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Bipartition:
    """Two-coloring of vertices; side labels are 1 and 2."""

    side: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(s not in (1, 2) for s in self.side):
            raise ValueError("side labels must be 1 or 2")

    @classmethod
    def from_side1(cls, n: int, side1: Iterable[int]) -> "Bipartition":
        ones = set(side1)
        return cls(tuple(1 if v in ones else 2 for v in range(n)))

    def __len__(self) -> int:
        return len(self.side)

    def side_of(self, v: int) -> int:
        return self.side[v]

    def side1(self) -> frozenset[int]:
        return frozenset(v for v, s in enumerate(self.side) if s == 1)

    def side2(self) -> frozenset[int]:
        return frozenset(v for v, s in enumerate(self.side) if s == 2)

    def swapped(self) -> "Bipartition":
        return Bipartition(tuple(3 - s for s in self.side))


@dataclass(frozen=True)
class CutStats:
    """Directional cut sizes of a bipartition."""

    e12: int
    e21: int

    @property
    def min_cut(self) -> int:
        return min(self.e12, self.e21)

    @property
    def total(self) -> int:
        return self.e12 + self.e21


def cut_stats(digraph: Digraph, partition: Bipartition) -> CutStats:
    """Exact directional counts by a single pass over the edges."""
    if len(partition) != digraph.n:
        raise ValueError(
            f"partition covers {len(partition)} vertices, digraph has {digraph.n}"
        )
    side = partition.side
    e12 = e21 = 0
    for u, v in digraph.edges:
        su, sv = side[u], side[v]
        if su == 1 and sv == 2:
            e12 += 1
        elif su == 2 and sv == 1:
            e21 += 1
    return CutStats(e12, e21)


# ---------------------------------------------------------------------------
# Edge-list interchange format: first line "n m", then m lines "u v",
# 0-indexed, whitespace-separated; lines starting with '#' are comments.
# ---------------------------------------------------------------------------


def parse_edge_list(text: str) -> Digraph:
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise GraphInputError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphInputError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphInputError(f"header must be 'n m', got {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != m:
        raise GraphInputError(f"header promises {m} edges, found {len(body)}")
    pairs = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphInputError(f"bad edge line {ln!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise GraphInputError(f"bad edge line {ln!r}") from exc
    return Digraph(n, pairs)


def format_edge_list(digraph: Digraph, comments: Sequence[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"{digraph.n} {digraph.m}")
    out.extend(f"{u} {v}" for u, v in digraph.edges)
    return "\n".join(out) + "\n"


def read_edge_list(path: str) -> Digraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(digraph: Digraph, path: str, comments: Sequence[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(digraph, comments))


# Partition file format: one line per vertex, "vertexid side".


def parse_partition(text: str, n: int) -> Bipartition:
    side = [0] * n
    filled = 0
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise GraphInputError(f"bad partition line {ln!r}")
        v, s = int(parts[0]), int(parts[1])
        if not 0 <= v < n:
            raise GraphInputError(f"partition line {ln!r}: vertex id out of range")
        if s not in (1, 2):
            raise GraphInputError(f"partition line {ln!r}: side must be 1 or 2")
        if side[v] != 0:
            raise GraphInputError(f"partition line {ln!r}: duplicate vertex")
        side[v] = s
        filled += 1
    if filled != n:
        raise GraphInputError(f"partition covers {filled} of {n} vertices")
    return Bipartition(tuple(side))


def format_partition(partition: Bipartition) -> str:
    return "\n".join(f"{v} {s}" for v, s in enumerate(partition.side)) + "\n"


def read_partition(path: str, n: int) -> Bipartition:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_partition(fh.read(), n)


def write_partition(partition: Bipartition, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_partition(partition))


def all_bipartitions(n: int, fixed_side1: int | None = 0) -> Iterator[Bipartition]:
    """Yield every bipartition, optionally with one vertex pinned to side 1.

    Pinning exploits label-swap symmetry and halves the enumeration.
    """
    free = [v for v in range(n) if v != fixed_side1]
    for mask in range(1 << len(free)):
        side = [1] * n
        for i, v in enumerate(free):
            if mask >> i & 1:
                side[v] = 2
        yield Bipartition(tuple(side))
