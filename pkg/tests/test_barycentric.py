from itertools import permutations

import numpy as np
import pytest

from baryspec import barycentric
from baryspec.barycentric import dimension_coloring, refine, refine_iter
from baryspec.complex import build_complex, euler_characteristic
from baryspec.counting import evolve
from baryspec.errors import CapacityError
from baryspec.graph import complete_graph, cycle_graph, degree_sequence, inductive_dimension
from baryspec.operators import scalar_laplacian

# L(G_1) for G = K_3, vertex 3 being the central triangle
REFERENCE_L_G1 = np.array([
    [3, -1, 0, -1, -1, 0, 0],
    [-1, 3, -1, -1, 0, 0, 0],
    [0, -1, 3, -1, 0, 0, -1],
    [-1, -1, -1, 6, -1, -1, -1],
    [-1, 0, 0, -1, 3, -1, 0],
    [0, 0, 0, -1, -1, 3, -1],
    [0, 0, -1, -1, 0, -1, 3],
])


def containment_edges(simplices):
    """All-pairs strict containment, the brute-force adjacency oracle."""
    sets = [set(s) for s in simplices]
    return {(i, j) for i in range(len(sets)) for j in range(i + 1, len(sets))
            if sets[i] < sets[j] or sets[j] < sets[i]}


def test_refine_adjacency_matches_containment(corpus_graph):
    r = refine(corpus_graph)
    c = build_complex(corpus_graph)
    assert r.parents == c.simplices
    assert set(r.graph.edges) == containment_edges(c.simplices)


def test_refine_k2_is_path():
    r = refine(complete_graph(2))
    assert r.graph.n == 3 and r.graph.edges == ((0, 2), (1, 2))


def test_refine_k3_is_wheel():
    g = refine(complete_graph(3)).graph
    assert (g.n, g.num_edges) == (7, 12)
    assert build_complex(g).f_vector == (7, 12, 6)
    assert degree_sequence(g) == [3] * 6 + [6]


def test_refine_k3_laplacian_matches_reference_matrix_up_to_relabeling():
    lap = scalar_laplacian(refine(complete_graph(3)).graph).toarray()
    found = any(np.array_equal(lap[np.ix_(p, p)], REFERENCE_L_G1) for p in map(list, permutations(range(7))))
    assert found


@pytest.mark.parametrize("n", [4, 5, 9])
def test_refine_cycle_doubles(n):
    g = refine(cycle_graph(n)).graph
    assert g.n == 2 * n and degree_sequence(g) == [2] * (2 * n) and g.is_connected()


def test_refine_iter_levels():
    for m in range(6):
        r = refine_iter(complete_graph(2), m)
        assert (r.graph.n, r.graph.num_edges, r.level) == (2 ** m + 1, 2 ** m, m)
    assert refine_iter(complete_graph(3), 2).graph.n == 25
    assert build_complex(refine_iter(complete_graph(4), 2).graph).f_vector == (149, 796, 1224, 576)


def test_refine_iter_level_zero_is_identity():
    g = cycle_graph(5)
    r = refine_iter(g, 0)
    assert r.graph is g and r.parents is None and r.level == 0


def test_refine_iter_capacity_fails_before_building():
    with pytest.raises(CapacityError, match="level 4"):
        refine_iter(complete_graph(4), 4, max_simplices=10_000)


def test_invariants_under_refinement(corpus_graph):
    g = corpus_graph
    c = build_complex(g)
    r = refine(g)
    c1 = build_complex(r.graph)
    assert euler_characteristic(c1) == euler_characteristic(c)
    assert c1.f_vector == evolve(c.f_vector, 1)
    d = len(c.f_vector) - 1
    assert c1.f_vector[d] == c.f_vector[d] * [1, 2, 6, 24, 120, 720][d]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_inductive_dimension_does_not_drop(k):
    g = complete_graph(k)
    assert inductive_dimension(refine(g).graph) >= inductive_dimension(g)


def test_inductive_dimension_does_not_drop_corpus(corpus_graph):
    if corpus_graph.n > 6:
        pytest.skip("recursive dimension is slow on the larger refinements")
    assert inductive_dimension(refine(corpus_graph).graph) >= inductive_dimension(corpus_graph)


def test_dimension_coloring():
    assert dimension_coloring(refine(complete_graph(3))) == [0, 0, 0, 1, 1, 1, 2]
    assert dimension_coloring(refine(cycle_graph(4))) == [0, 0, 0, 0, 1, 1, 1, 1]
    colors = dimension_coloring(refine_iter(complete_graph(4), 1))
    assert [colors.count(k) for k in range(4)] == [4, 6, 4, 1]
    colors = dimension_coloring(refine_iter(complete_graph(3), 3))
    assert len(set(colors)) == 3
    with pytest.raises(ValueError):
        dimension_coloring(refine_iter(complete_graph(3), 0))


def test_refined_json_round_trip():
    r = refine_iter(complete_graph(3), 2)
    back = barycentric.loads(barycentric.dumps(r))
    assert back.graph.edges == r.graph.edges and back.parents == r.parents and back.level == 2
