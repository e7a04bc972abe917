"""Barycentric refinement G -> G_1 and its iterates."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from baryspec import counting
from baryspec.complex import DEFAULT_MAX_SIMPLICES, CliqueComplex, Simplex, build_complex
from baryspec.errors import CapacityError
from baryspec.graph import SimpleGraph, make_graph, to_json_dict


@dataclass(frozen=True)
class RefinedGraph:
    """Refinement of depth ``level``.

    Vertex i of ``graph`` is the i-th simplex (canonical order) of the
    previous level's clique complex; ``parents[i]`` is that simplex, given in
    the previous level's vertex indices. ``parents`` is None at level 0.
    """

    graph: SimpleGraph
    parents: tuple[Simplex, ...] | None
    level: int


def refine_complex(c: CliqueComplex) -> RefinedGraph:
    index = c.index
    edges = []
    for i, s in enumerate(c.simplices):
        for size in range(1, len(s)):
            for face in combinations(s, size):
                edges.append((index[face], i))
    g = SimpleGraph(len(c.simplices), tuple(sorted(edges)), labels=c.simplices)
    return RefinedGraph(g, c.simplices, 1)


def refine(g: SimpleGraph, max_simplices: int = DEFAULT_MAX_SIMPLICES) -> RefinedGraph:
    if g.n == 0:
        raise ValueError("cannot refine the empty graph")
    return refine_complex(build_complex(g, max_simplices))


def projected_fvectors(g: SimpleGraph, m: int, max_simplices: int = DEFAULT_MAX_SIMPLICES) -> list[tuple[int, ...]]:
    """f-vectors of G_0..G_m predicted from the f-vector of g alone."""
    return counting.trajectory(build_complex(g, max_simplices).f_vector, m)


def refine_iter(g: SimpleGraph, m: int, max_simplices: int = DEFAULT_MAX_SIMPLICES) -> RefinedGraph:
    """m-fold refinement. Fails before building anything if some intermediate
    complex would exceed ``max_simplices`` (the complex of G_j has as many
    simplices as G_{j+1} has vertices)."""
    if m < 0:
        raise ValueError("depth must be >= 0")
    if m == 0:
        return RefinedGraph(g, None, 0)
    if g.n == 0:
        raise ValueError("cannot refine the empty graph")
    base = build_complex(g, max_simplices)
    sizes = [fv[0] for fv in counting.trajectory(base.f_vector, m)]
    for level, size in enumerate(sizes[1:], 1):
        if size > max_simplices:
            raise CapacityError(f"projected vertex count of level {level}", size, max_simplices)
    r = refine_complex(base)
    for level in range(2, m + 1):
        r = refine_complex(build_complex(r.graph, max_simplices))
    return RefinedGraph(r.graph, r.parents, m)


def dimension_coloring(r: RefinedGraph) -> list[int]:
    """Color each vertex by the dimension of its parent simplex; checked proper."""
    if r.parents is None:
        raise ValueError("level-0 graph has no parent simplices")
    colors = [len(s) - 1 for s in r.parents]
    for u, v in r.graph.edges:
        if colors[u] == colors[v]:
            raise AssertionError(f"edge ({u}, {v}) is monochromatic")
    return colors


def to_json_dict_refined(r: RefinedGraph) -> dict:
    out = to_json_dict(r.graph)
    if r.parents is not None:
        out["parents"] = [list(s) for s in r.parents]
    out["level"] = r.level
    return out


def dumps(r: RefinedGraph) -> str:
    return json.dumps(to_json_dict_refined(r), separators=(",", ":")) + "\n"


def loads(text: str) -> RefinedGraph:
    data = json.loads(text)
    g = make_graph(int(data["n"]), data["edges"])
    parents = tuple(tuple(s) for s in data["parents"]) if "parents" in data else None
    return RefinedGraph(g, parents, int(data.get("level", 0)))
