from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from baryspec.barycentric import refine, refine_iter
from baryspec.complex import build_complex, euler_characteristic
from baryspec.graph import complete_graph, cycle_graph, house_graph, octahedron_graph, torus_graph
from baryspec.operators import eigenvalues, hodge_spectra, scalar_laplacian
from baryspec.spectral import (
    ConvergenceReport,
    arcsin_cdf,
    check_dirac_spectrum,
    check_renormalization_d1,
    check_schur_grone,
    check_supersymmetry,
    convergence_experiment,
    degree_profile,
    density_of_states,
    l1_distance,
    l1_norm,
    lidskii_bound,
    limit_curve_d1,
    mckean_singer,
    mean_eigenvalue_k3,
    pairwise_sup_distances,
    profile,
    profile_csv,
    quadratic_map,
    sup_distance_on,
    sup_distance_to_curve,
)

REFERENCE_TK_C8 = np.array([
    [2, 0, -1, 0, 0, 0, -1, 0],
    [0, 2, 0, -1, 0, 0, 0, -1],
    [-1, 0, 2, 0, -1, 0, 0, 0],
    [0, -1, 0, 2, 0, -1, 0, 0],
    [0, 0, -1, 0, 2, 0, -1, 0],
    [0, 0, 0, -1, 0, 2, 0, -1],
    [-1, 0, 0, 0, -1, 0, 2, 0],
    [0, -1, 0, 0, 0, -1, 0, 2],
])

values = st.lists(st.floats(min_value=-50, max_value=50, allow_nan=False), min_size=1, max_size=12)


def brute_l1(p, q, samples=200_000):
    # midpoint rule on a grid fine enough to resolve every step of small profiles
    x = (np.arange(samples) + 0.5) / samples
    return float(np.mean(np.abs(p(x) - q(x))))


def test_profile_k3():
    p = profile(eigenvalues(scalar_laplacian(complete_graph(3))))
    assert p(1 / 3) == pytest.approx(0, abs=1e-12)
    assert p(2 / 3) == pytest.approx(3)
    assert p(1) == pytest.approx(3)
    assert p(0) == p(1e-9) == p.values[0]


def test_profile_house_degrees_and_constant():
    h = degree_profile(house_graph())
    assert list(h.values) == [2, 2, 2, 3, 3]
    assert h(0.6) == 2 and h(0.61) == 3
    c = profile([5])
    assert c(0) == c(0.3) == c(1) == 5


def test_profile_errors():
    with pytest.raises(ValueError):
        profile([])
    with pytest.raises(ValueError):
        profile([1.0])(1.5)


@given(values)
def test_profile_monotone(v):
    p = profile(v)
    ys = p(np.linspace(0, 1, 101))
    assert np.all(np.diff(ys) >= 0)


@pytest.mark.parametrize("n", [3, 4, 5, 8, 17])
def test_l1_norm_cycle(n):
    assert l1_norm(profile(eigenvalues(scalar_laplacian(cycle_graph(n))))) == pytest.approx(2, abs=1e-10)


@pytest.mark.parametrize("m", range(4))
def test_l1_norm_k3_formula(m):
    g = refine_iter(complete_graph(3), m).graph
    got = l1_norm(profile(eigenvalues(scalar_laplacian(g))))
    assert abs(got - float(mean_eigenvalue_k3(m))) <= 1e-8
    assert mean_eigenvalue_k3(m) == Fraction(2 * g.num_edges, g.n)


def test_l1_norm_trace_identity(corpus_graph):
    g = corpus_graph
    assert abs(l1_norm(profile(eigenvalues(scalar_laplacian(g)))) - 2 * g.num_edges / g.n) <= 1e-8


def test_l1_distance_examples():
    assert l1_distance(profile([0, 2]), profile([1, 1])) == 1
    assert l1_distance(profile([3, 3, 3]), profile([1.5])) == 1.5
    p = profile([0, 1, 5])
    assert l1_distance(p, p) == 0


@settings(max_examples=60)
@given(values, values)
def test_l1_distance_matches_sampling(a, b):
    p, q = profile(a), profile(b)
    assert l1_distance(p, q) == pytest.approx(brute_l1(p, q), abs=1e-3 * (1 + max(map(abs, a + b))))


@given(values, values, values)
def test_l1_distance_metric(a, b, c):
    p, q, r = profile(a), profile(b), profile(c)
    assert l1_distance(p, q) == l1_distance(q, p)
    assert l1_distance(p, r) <= l1_distance(p, q) + l1_distance(q, r) + 1e-12
    assert l1_distance(p, p) == 0


@given(values)
def test_l1_distance_zero_iff_same_multiset(a):
    # repeating every value keeps the step function
    assert l1_distance(profile(a), profile(a + a)) == 0
    shifted = list(a)
    shifted[0] += 1
    assert l1_distance(profile(a), profile(shifted)) > 0


def test_sup_distance_examples():
    p = profile([0, 1, 2])
    assert sup_distance_on(p, p) == 0
    assert sup_distance_on(profile([2.0]), profile([3.5, 3.5])) == 1.5
    # the only cell meeting [0.6, 0.9] is (1/2, 1]
    assert sup_distance_on(profile([0, 2]), profile([1, 1]), 0.6, 0.9) == 1
    with pytest.raises(ValueError):
        sup_distance_on(p, p, 0.5, 0.5)
    with pytest.raises(ValueError):
        sup_distance_on(p, p, 0.0, 0.5)


@given(values, values)
def test_sup_distance_matches_sampling(a, b):
    p, q = profile(a), profile(b)
    x = np.linspace(0.05, 0.95, 2001)
    assert sup_distance_on(p, q) >= np.max(np.abs(p(x) - q(x))) - 1e-12


def test_c8_against_limit():
    p = profile(eigenvalues(scalar_laplacian(cycle_graph(8))))
    got = sup_distance_to_curve(p, limit_curve_d1, 0.1, 0.9)
    # independent estimate: explicit eigenvalues and a dense grid
    lam = np.sort(4 * np.sin(np.pi * np.arange(8) / 8) ** 2)
    x = np.linspace(0.1, 0.9, 400_001)
    idx = np.clip(np.ceil(np.round(8 * x, 9)).astype(int), 1, 8) - 1
    brute = np.max(np.abs(lam[idx] - 4 * np.sin(np.pi * x / 2) ** 2))
    assert got == pytest.approx(brute, abs=1e-4)
    assert got == pytest.approx(0.765367, abs=1e-6)


def test_limit_curve_values():
    assert limit_curve_d1(0) == 0
    assert limit_curve_d1(1) == pytest.approx(4)
    assert limit_curve_d1(0.5) == pytest.approx(2)
    with pytest.raises(ValueError):
        limit_curve_d1(1.2)


def test_arcsin_cdf():
    assert arcsin_cdf(0) == 0
    assert arcsin_cdf(4) == pytest.approx(1)
    assert arcsin_cdf(2) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(ValueError):
        arcsin_cdf(-0.1)
    xs = np.linspace(0, 1, 11)
    assert np.max(np.abs(arcsin_cdf(limit_curve_d1(xs)) - xs)) <= 1e-12


def test_renormalization_reference_matrix():
    k = scalar_laplacian(cycle_graph(8)).toarray()
    assert np.array_equal(4 * k - k @ k, REFERENCE_TK_C8)
    assert check_renormalization_d1(4)["ok"]


@pytest.mark.parametrize("n", [3, 5, 8, 13, 32, 64])
def test_renormalization(n):
    r = check_renormalization_d1(n)
    assert r["decoupled"] and r["even_block_ok"] and r["odd_block_ok"]
    assert r["spectral_error"] <= 1e-8


def test_renormalization_trig_n3():
    k = np.arange(6)
    assert np.allclose(np.sort(quadratic_map(4 * np.sin(np.pi * k / 6) ** 2)),
                       np.sort(4 * np.sin(np.pi * k / 3) ** 2), atol=1e-12)
    assert quadratic_map(0) == 0
    with pytest.raises(ValueError):
        check_renormalization_d1(2)


def test_lidskii_examples():
    a = scalar_laplacian(cycle_graph(4)).toarray()
    r = lidskii_bound(a, a)
    assert r["lhs"] == pytest.approx(0, abs=1e-12) and r["rhs"] == 0 and r["ok"]
    r = lidskii_bound(a, a + np.eye(4, dtype=a.dtype))
    assert r["lhs"] == pytest.approx(4) and r["rhs"] == 4 and r["ok"]
    with pytest.raises(ValueError):
        lidskii_bound(np.eye(2), np.eye(3))


@pytest.mark.parametrize("n", [4, 6, 8, 12])
def test_lidskii_random(n):
    rng = np.random.default_rng(n)
    for _ in range(100):
        a = rng.normal(size=(n, n))
        b = rng.normal(size=(n, n))
        assert lidskii_bound(a + a.T, b + b.T)["ok"]


def test_schur_grone_k3():
    r = check_schur_grone(complete_graph(3))
    assert r["ok"] and r["grone_ok"]
    lam = np.cumsum(eigenvalues(scalar_laplacian(complete_graph(3))).values)
    assert np.allclose(lam, [0, 3, 6]) and list(np.cumsum([2, 2, 2])) == [2, 4, 6]


def test_schur_grone_corpus(corpus_graph):
    for g in (corpus_graph, refine(corpus_graph).graph):
        r = check_schur_grone(g)
        assert r["schur_ok"] and r["grone_ok"] and r["ok"]
        assert r["trace_gap"] <= 1e-8 * g.n


def test_schur_house_and_disconnected():
    assert check_schur_grone(house_graph())["ok"]
    from baryspec.graph import make_graph
    r = check_schur_grone(make_graph(4, [(0, 1), (2, 3)]))
    assert r["schur_ok"] and r["grone_ok"] is None and r["ok"]


def test_mckean_singer_t0_and_large():
    c = build_complex(complete_graph(3))
    r = mckean_singer(c, [0, 50])
    assert r["ok"] and r["chi"] == 1
    assert r["values"][0.0] == pytest.approx(3 - 3 + 1)
    with pytest.raises(ValueError):
        mckean_singer(c, [-1])


def test_mckean_singer_octahedron():
    r = mckean_singer(build_complex(octahedron_graph()), [0, 0.5, 1, 5])
    assert r["chi"] == 2
    assert abs(r["values"][1.0] - 2) <= 1e-6 and r["ok"]


def test_mckean_singer_corpus(corpus_graph):
    c = build_complex(refine(corpus_graph).graph)
    assert mckean_singer(c, [0, 0.5, 1, 5])["ok"]


def test_supersymmetry_and_dirac_spectrum(corpus_graph):
    c = build_complex(corpus_graph)
    spectra = hodge_spectra(c)
    assert check_supersymmetry(spectra)["ok"]
    assert check_dirac_spectrum(c, spectra)["ok"]


def test_supersymmetry_detects_mismatch():
    s = hodge_spectra(build_complex(cycle_graph(5)))
    assert not check_supersymmetry([s[0]])["ok"]


def test_density_of_states():
    counts, edges = density_of_states(profile([0, 3, 3]), bins=3)
    assert list(counts) == [1, 0, 2] and edges[0] == 0 and edges[-1] == 3


def test_profile_csv():
    assert profile_csv(profile([0, 2])) == "x,F(x)\n0,0\n0.5,0\n1,2\n"


def test_convergence_c4():
    rep = convergence_experiment(cycle_graph(4), 4, limit=limit_curve_d1)
    assert not rep.partial and [s.v0 for s in rep.levels] == [4, 8, 16, 32, 64]
    assert all(abs(s.l1norm - 2) < 1e-10 for s in rep.levels)
    assert rep.levels[-1].l1dist_next is None
    d = [s.l1dist_next for s in rep.levels[:-1]]
    assert all(x > y for x, y in zip(d, d[1:]))
    lim = [s.supdist_limit for s in rep.levels]
    assert lim[-1] < lim[1]


def test_convergence_k3_formula():
    rep = convergence_experiment(complete_graph(3), 3)
    assert rep.dim == 2
    for s in rep.levels:
        assert abs(s.l1norm - float(mean_eigenvalue_k3(s.level))) <= 1e-8
    assert rep.to_csv().splitlines()[0] == "level,v0,v1,l1norm,l1dist_next,supdist_next,lambda1,maxdeg"
    assert rep.to_csv().splitlines()[1].startswith("0,3,3,2,")
    assert '"partial": false' in rep.to_json()


def test_convergence_partial():
    rep = convergence_experiment(complete_graph(3), 6, max_eig=1000)
    assert rep.partial and [s.v0 for s in rep.levels] == [3, 7, 25, 121, 673]
    assert isinstance(rep, ConvergenceReport)


def test_lambda1_decreases_degrees_increase():
    rep = convergence_experiment(complete_graph(3), 3)
    lam = [s.lambda1 for s in rep.levels]
    deg = [s.maxdeg for s in rep.levels]
    assert all(x > y for x, y in zip(lam, lam[1:]))
    assert all(x < y for x, y in zip(deg, deg[1:]))


def test_pairwise_sup_distances():
    ps = {"a": profile([0, 1]), "b": profile([0, 2]), "c": profile([0, 1])}
    d = pairwise_sup_distances(ps)
    assert d == {"a|b": 1.0, "a|c": 0.0, "b|c": 1.0}


def test_torus_is_six_regular():
    assert set(degree_profile(torus_graph(4, 4)).values) == {6}
    assert euler_characteristic(build_complex(torus_graph(4, 4))) == 0


def test_k5_first_refinement_raises_spectral_gap():
    # exact: the refined Laplacian has the factor x^2 - 21x + 86
    lam = [convergence_experiment(complete_graph(5), 1).levels[m].lambda1 for m in (0, 1)]
    assert lam[0] == pytest.approx(5)
    assert lam[1] == pytest.approx((21 - np.sqrt(97)) / 2, abs=1e-10)
    assert lam[1] > lam[0]
