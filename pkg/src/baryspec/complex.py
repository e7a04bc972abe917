"""Whitney (clique) complexes and the local counting data built on them."""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from baryspec.errors import CapacityError
from baryspec.graph import SimpleGraph

Simplex = tuple[int, ...]

DEFAULT_MAX_SIMPLICES = 5_000_000


def simplex_key(s: Simplex) -> tuple[int, Simplex]:
    """Canonical order: cardinality first, then lexicographic."""
    return (len(s), s)


@dataclass(frozen=True)
class CliqueComplex:
    """All complete subgraphs of ``host``, each as an ascending vertex tuple,
    listed in canonical order."""

    host: SimpleGraph
    simplices: tuple[Simplex, ...]

    @cached_property
    def index(self) -> dict[Simplex, int]:
        return {s: i for i, s in enumerate(self.simplices)}

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dim + 1)
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return tuple(counts)

    @property
    def dim(self) -> int:
        return len(self.simplices[-1]) - 1 if self.simplices else -1

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        """``offsets[k]`` is the ordinal of the first k-simplex; one extra trailing entry."""
        out = [0]
        for v in self.f_vector:
            out.append(out[-1] + v)
        return tuple(out)

    def of_dim(self, k: int) -> tuple[Simplex, ...]:
        if k < 0 or k > self.dim:
            return ()
        return self.simplices[self.offsets[k]:self.offsets[k + 1]]

    def __len__(self):
        return len(self.simplices)


def degeneracy_order(g: SimpleGraph) -> list[int]:
    """Repeatedly remove a vertex of minimum remaining degree."""
    deg = [len(a) for a in g.neighbors]
    buckets: dict[int, set[int]] = {}
    for v, d in enumerate(deg):
        buckets.setdefault(d, set()).add(v)
    removed = [False] * g.n
    order = []
    d = 0
    for _ in range(g.n):
        d = max(d - 1, 0)
        while not buckets.get(d):
            d += 1
        v = min(buckets[d])
        buckets[d].discard(v)
        removed[v] = True
        order.append(v)
        for w in g.neighbors[v]:
            if not removed[w]:
                buckets[deg[w]].discard(w)
                deg[w] -= 1
                buckets.setdefault(deg[w], set()).add(w)
    return order


def maximal_cliques(g: SimpleGraph) -> list[Simplex]:
    """Bron-Kerbosch with Tomita pivoting, outer loop in degeneracy order."""
    nbrs = g.neighbors
    out: list[Simplex] = []

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: len(p & nbrs[u]))
        for v in sorted(p - nbrs[pivot]):
            expand(r + [v], p & nbrs[v], x & nbrs[v])
            p.discard(v)
            x.add(v)

    order = degeneracy_order(g)
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = {w for w in nbrs[v] if pos[w] > pos[v]}
        earlier = set(nbrs[v]) - later
        expand([v], later, earlier)
    return out


def build_complex(g: SimpleGraph, max_simplices: int = DEFAULT_MAX_SIMPLICES) -> CliqueComplex:
    """Enumerate every complete subgraph of ``g`` exactly once."""
    seen: set[Simplex] = set()
    for clique in maximal_cliques(g):
        for size in range(len(clique), 0, -1):
            seen.update(combinations(clique, size))
            if len(seen) > max_simplices:
                raise CapacityError("clique complex simplex count", len(seen), max_simplices)
    return CliqueComplex(g, tuple(sorted(seen, key=simplex_key)))


def euler_characteristic(c: CliqueComplex) -> int:
    return sum((-1) ** k * v for k, v in enumerate(c.f_vector))


# ---------------------------------------------------------------------------
# unit-sphere data

def sphere_count_table(c: CliqueComplex) -> list[list[int]]:
    """Row x holds ``V_0(x), ..., V_{d-1}(x)``: a (k+1)-clique in the unit sphere
    of x is the same thing as a (k+2)-simplex containing x."""
    d = max(c.dim, 0)
    table = [[0] * d for _ in range(c.host.n)]
    for s in c.simplices:
        if len(s) >= 2:
            for x in s:
                table[x][len(s) - 2] += 1
    return table


def sphere_counts(c: CliqueComplex, x: int) -> list[int]:
    if not 0 <= x < c.host.n:
        raise ValueError(f"vertex {x} out of range [0, {c.host.n})")
    counts = [0] * max(c.dim, 0)
    for s in c.simplices:
        if len(s) >= 2 and x in s:
            counts[len(s) - 2] += 1
    return counts


def _curvature_from_counts(counts: list[int]) -> Fraction:
    # V_{-1} = 1 contributes the leading 1
    k = Fraction(1)
    for j, v in enumerate(counts):
        k += Fraction((-1) ** (j + 1) * v, j + 2)
    return k


def curvature(c: CliqueComplex, x: int) -> Fraction:
    """``1 - V_0/2 + V_1/3 - V_2/4 + ...`` at vertex x."""
    return _curvature_from_counts(sphere_counts(c, x))


def curvatures(c: CliqueComplex) -> list[Fraction]:
    return [_curvature_from_counts(row) for row in sphere_count_table(c)]


def check_gauss_bonnet(c: CliqueComplex) -> dict:
    total = sum(curvatures(c), Fraction(0))
    chi = euler_characteristic(c)
    return {"sum": total, "chi": chi, "ok": total == chi}


def check_handshake(c: CliqueComplex, k: int) -> dict:
    """Sum over x of V_k(x) against (k+2) v_{k+1}."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    f = c.f_vector
    lhs = sum(row[k] for row in sphere_count_table(c)) if k < c.dim else 0
    rhs = (k + 2) * f[k + 1] if k + 1 < len(f) else 0
    return {"k": k, "lhs": lhs, "rhs": rhs, "ok": lhs == rhs}


def curvature_csv(c: CliqueComplex) -> str:
    d = max(c.dim, 0)
    buf = io.StringIO()
    buf.write(",".join(["vertex"] + [f"V{k}" for k in range(d)] + ["curvature_num", "curvature_den"]) + "\n")
    for x, row in enumerate(sphere_count_table(c)):
        kx = _curvature_from_counts(row)
        buf.write(",".join(map(str, [x, *row, kx.numerator, kx.denominator])) + "\n")
    return buf.getvalue()


def f_vector_csv(c: CliqueComplex) -> str:
    f = c.f_vector
    return "k,v\n" + "".join(f"{k},{v}\n" for k, v in enumerate(f))
