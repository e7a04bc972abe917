"""Finite simple graphs: construction, named families, serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Any, Iterable, Sequence

from baryspec.errors import GraphError

Edge = tuple[int, int]


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected graph on vertices ``0..n-1``.

    ``edges`` is a sorted tuple of pairs ``(u, v)`` with ``u < v``. Use
    :func:`make_graph` to build one from unnormalized input; the constructor
    only validates.
    """

    n: int
    edges: tuple[Edge, ...]
    labels: tuple[Any, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        prev = None
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge {e} is not a normalized pair in [0, {self.n})")
            if prev is not None and e <= prev:
                raise GraphError("edges must be sorted and unique")
            prev = e
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("labels must have one entry per vertex")

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    def adj(self, u: int, v: int) -> bool:
        return v in self.neighbors[u]

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def induced(self, vertices: Iterable[int]) -> SimpleGraph:
        """Induced subgraph, relabelled to ``0..k-1`` in ascending vertex order."""
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        edges = [(pos[u], pos[w]) for u in vs for w in self.neighbors[u] if w in pos and u < w]
        return SimpleGraph(len(vs), tuple(sorted(edges)))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for w in self.neighbors[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


def make_graph(n: int, edges: Iterable[Sequence[int]], labels: Sequence[Any] | None = None) -> SimpleGraph:
    """Build a graph from pairs in any order, possibly duplicated."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    norm = set()
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"edge {e!r} is not a pair")
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        norm.add((u, v) if u < v else (v, u))
    return SimpleGraph(n, tuple(sorted(norm)), None if labels is None else tuple(labels))


# ---------------------------------------------------------------------------
# named families

FAMILIES = ("complete", "cycle", "wheel", "octahedron", "house", "torus")

HOUSE_EDGES = [(0, 1), (0, 3), (1, 2), (1, 4), (2, 3), (2, 4)]


def complete_graph(k: int) -> SimpleGraph:
    if k < 1:
        raise ValueError(f"complete graph needs k >= 1, got {k}")
    return make_graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def cycle_graph(n: int) -> SimpleGraph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def wheel_graph(n: int) -> SimpleGraph:
    """Cycle on ``0..n-1`` joined with hub vertex ``n``."""
    if n < 3:
        raise ValueError(f"wheel needs n >= 3, got {n}")
    rim = [(i, (i + 1) % n) for i in range(n)]
    return make_graph(n + 1, rim + [(i, n) for i in range(n)])


def octahedron_graph() -> SimpleGraph:
    # K_{2,2,2}: antipodal pairs (0,1), (2,3), (4,5) are the only non-edges
    return make_graph(6, [(i, j) for i in range(6) for j in range(i + 1, 6) if j != i + 1 or i % 2])


def house_graph() -> SimpleGraph:
    return make_graph(5, HOUSE_EDGES)


def torus_graph(p: int, q: int) -> SimpleGraph:
    """Triangulated p-by-q grid with wrap-around and one diagonal per square.

    Every vertex has degree 6. The clique complex is a 2-torus only for
    ``p, q >= 4``; at 3 the wrapped rows and columns close extra triangles.
    """
    if p < 3 or q < 3:
        raise ValueError(f"torus needs p, q >= 3, got {p}x{q}")

    def idx(i, j):
        return (i % p) * q + (j % q)

    edges = []
    for i in range(p):
        for j in range(q):
            edges += [(idx(i, j), idx(i + 1, j)), (idx(i, j), idx(i, j + 1)), (idx(i, j), idx(i + 1, j + 1))]
    return make_graph(p * q, edges)


def generate(family: str, **params: int) -> SimpleGraph:
    """Named graph: ``complete(k)``, ``cycle(n)``, ``wheel(n)``, ``octahedron``,
    ``house`` or ``torus(p, q)``."""
    try:
        if family == "complete":
            return complete_graph(params["k"])
        if family == "cycle":
            return cycle_graph(params["n"])
        if family == "wheel":
            return wheel_graph(params["n"])
        if family == "torus":
            return torus_graph(params["p"], params["q"])
    except KeyError as exc:
        raise ValueError(f"family {family!r} needs parameter {exc.args[0]!r}") from None
    if family == "octahedron":
        return octahedron_graph()
    if family == "house":
        return house_graph()
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


# ---------------------------------------------------------------------------
# invariants

def degree_sequence(g: SimpleGraph) -> list[int]:
    return sorted(len(a) for a in g.neighbors)


def inductive_dimension(g: SimpleGraph) -> Fraction:
    """1 + mean inductive dimension of the unit spheres; -1 for the empty graph."""
    memo: dict[frozenset[int], Fraction] = {}
    nbrs = g.neighbors

    def dim(vs: frozenset[int]) -> Fraction:
        if not vs:
            return Fraction(-1)
        if vs in memo:
            return memo[vs]
        total = sum((dim(nbrs[x] & vs) for x in vs), Fraction(0))
        out = 1 + total / len(vs)
        memo[vs] = out
        return out

    return dim(frozenset(range(g.n)))


# ---------------------------------------------------------------------------
# serialization

def to_json_dict(g: SimpleGraph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def from_json_dict(data: dict) -> SimpleGraph:
    try:
        return make_graph(int(data["n"]), data["edges"])
    except (KeyError, TypeError) as exc:
        raise GraphError(f"graph JSON needs 'n' and 'edges': {exc}") from None


def dumps(g: SimpleGraph) -> str:
    return json.dumps(to_json_dict(g), separators=(",", ":")) + "\n"


def to_edge_list(g: SimpleGraph) -> str:
    lines = [f"# n={g.n}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> SimpleGraph:
    """One ``u v`` pair per line; ``#`` starts a comment. n = max index + 1."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {line!r}") from None
    n = 1 + max((max(e) for e in edges), default=-1)
    return make_graph(n, edges)


def loads(text: str) -> SimpleGraph:
    """Parse either Graph JSON or a plain edge list."""
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid graph JSON: {exc}") from None
        return from_json_dict(data)
    return parse_edge_list(text)


def load(path: str | Path) -> SimpleGraph:
    return loads(Path(path).read_text())
