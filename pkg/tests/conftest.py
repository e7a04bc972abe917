import pytest

from baryspec.graph import complete_graph, cycle_graph, house_graph, octahedron_graph, torus_graph, wheel_graph

CORPUS = {
    "K2": complete_graph(2),
    "K3": complete_graph(3),
    "K4": complete_graph(4),
    "K5": complete_graph(5),
    "C4": cycle_graph(4),
    "house": house_graph(),
    "wheel6": wheel_graph(6),
    "octahedron": octahedron_graph(),
    "torus4x4": torus_graph(4, 4),
}


@pytest.fixture(params=sorted(CORPUS))
def corpus_graph(request):
    return CORPUS[request.param]
