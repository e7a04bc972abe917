"""Spectral and degree distribution functions, their distances, and the
identity checks that relate spectra to the combinatorics of the graph.

A profile of ascending values ``v_1 <= ... <= v_n`` is the step function
``F(x) = v_ceil(n x)`` on ``(0, 1]`` with ``F(0) = v_1``: constant on each
``((k-1)/n, k/n]``. Its integral is the mean of the values, so for a graph
Laplacian it is the average degree.
"""

from __future__ import annotations

import io
import json
import math
from fractions import Fraction
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from baryspec.barycentric import refine_complex
from baryspec.complex import DEFAULT_MAX_SIMPLICES, CliqueComplex, build_complex, euler_characteristic
from baryspec.counting import trajectory
from baryspec.errors import CapacityError
from baryspec.graph import SimpleGraph, cycle_graph, degree_sequence
from baryspec.operators import (
    DEFAULT_MAX_EIG,
    DEFAULT_ZERO_TOL,
    Spectrum,
    _as_dense,
    dirac,
    eigenvalues,
    format_float,
    hodge_spectra,
    kernel_threshold,
    scalar_laplacian,
)


@dataclass(frozen=True)
class SpectrumProfile:
    values: np.ndarray

    @property
    def n(self) -> int:
        return len(self.values)

    def index(self, x) -> np.ndarray:
        """0-based index of the step containing x."""
        x = np.asarray(x, dtype=np.float64)
        if np.any((x < 0) | (x > 1)):
            raise ValueError("profile is defined on [0, 1]")
        # rounding absorbs representation error at breakpoints k/n
        k = np.ceil(np.round(self.n * x, 9)).astype(np.int64)
        return np.clip(k, 1, self.n) - 1

    def __call__(self, x):
        out = self.values[self.index(x)]
        return float(out) if np.ndim(out) == 0 else out


def profile(values: Iterable[float] | Spectrum) -> SpectrumProfile:
    if isinstance(values, Spectrum):
        values = values.values
    arr = np.sort(np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=np.float64))
    if arr.size == 0:
        raise ValueError("profile needs at least one value")
    arr.setflags(write=False)
    return SpectrumProfile(arr)


def degree_profile(g: SimpleGraph) -> SpectrumProfile:
    return profile(degree_sequence(g))


def l1_norm(p: SpectrumProfile) -> float:
    return float(np.mean(p.values))


def _common_grid(p: SpectrumProfile, q: SpectrumProfile):
    """Breakpoints of both step grids as integers over ``L = n_p * n_q``,
    plus the step index of each profile on every cell ``(t[s-1], t[s]]``."""
    np_, nq = p.n, q.n
    big = np_ * nq
    t = np.union1d(np.arange(np_ + 1, dtype=np.int64) * nq, np.arange(nq + 1, dtype=np.int64) * np_)
    right = t[1:]
    ip = -(-right // nq) - 1
    iq = -(-right // np_) - 1
    return t, big, ip, iq


def l1_distance(p: SpectrumProfile, q: SpectrumProfile) -> float:
    """Exact integral of ``|F_p - F_q|`` over [0, 1]."""
    t, big, ip, iq = _common_grid(p, q)
    widths = np.diff(t)
    return float(np.sum(np.abs(p.values[ip] - q.values[iq]) * widths) / big)


def _check_interval(a: float, b: float) -> None:
    if not (0 < a < b < 1):
        raise ValueError(f"need 0 < a < b < 1, got [{a}, {b}]")


def sup_distance_on(p: SpectrumProfile, q: SpectrumProfile, a: float = 0.05, b: float = 0.95) -> float:
    """Max of ``|F_p - F_q|`` over cells of the common grid meeting [a, b]."""
    _check_interval(a, b)
    t, big, ip, iq = _common_grid(p, q)
    left, right = t[:-1] / big, t[1:] / big
    hit = (left < b) & (right >= a)
    return float(np.max(np.abs(p.values[ip[hit]] - q.values[iq[hit]])))


def sup_distance_to_curve(p: SpectrumProfile, f: Callable[[np.ndarray], np.ndarray],
                          a: float = 0.05, b: float = 0.95) -> float:
    """Sup of ``|F_p - f|`` on [a, b] for a continuous monotone curve f.

    On each step F_p is constant and f is monotone, so the sup over the
    step (clipped to [a, b]) is attained at its two ends.
    """
    _check_interval(a, b)
    n = p.n
    k = np.arange(1, n + 1)
    left = np.maximum((k - 1) / n, a)
    right = np.minimum(k / n, b)
    hit = left < right
    if not np.any(hit):
        return 0.0
    v = p.values[hit]
    return float(max(np.max(np.abs(v - f(left[hit]))), np.max(np.abs(v - f(right[hit])))))


def density_of_states(p: SpectrumProfile, bins: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Histogram of the values: counts and bin edges."""
    return np.histogram(p.values, bins=bins)


def profile_csv(p: SpectrumProfile) -> str:
    buf = io.StringIO()
    buf.write("x,F(x)\n")
    n = p.n
    for k in range(n + 1):
        v = p.values[max(k, 1) - 1]
        buf.write(f"{format_float(k / n)},{format_float(v)}\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# the triangle-free case

def limit_curve_d1(x):
    """Limit of the spectral functions of triangle-free refinements."""
    x = np.asarray(x, dtype=np.float64)
    if np.any((x < 0) | (x > 1)):
        raise ValueError("limit curve is defined on [0, 1]")
    out = 4.0 * np.sin(np.pi * x / 2.0) ** 2
    return float(out) if out.ndim == 0 else out


def arcsin_cdf(x):
    """CDF of the arcsine law on [0, 4]; inverse of :func:`limit_curve_d1`."""
    x = np.asarray(x, dtype=np.float64)
    if np.any((x < 0) | (x > 4)):
        raise ValueError("arcsin_cdf is defined on [0, 4]")
    out = (2.0 / np.pi) * np.arcsin(np.sqrt(x) / 2.0)
    return float(out) if out.ndim == 0 else out


def quadratic_map(x):
    return 4 * x - x * x


def check_renormalization_d1(n: int, tol: float = 1e-8) -> dict:
    """``T(K) = 4K - K^2`` for K = L(C_2n) splits into two copies of L(C_n).

    Graph distance on C_2n has the parity of the index difference, so
    "odd distance" means odd ``i - j``; the copies live on even and odd indices.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    k = scalar_laplacian(cycle_graph(2 * n)).toarray()
    tk = 4 * k - k @ k
    parity = (np.arange(2 * n)[:, None] - np.arange(2 * n)[None, :]) % 2 == 1
    decoupled = bool(np.all(tk[parity] == 0))
    small = scalar_laplacian(cycle_graph(n)).toarray()
    even = np.arange(0, 2 * n, 2)
    odd = even + 1
    even_ok = bool(np.array_equal(tk[np.ix_(even, even)], small))
    odd_ok = bool(np.array_equal(tk[np.ix_(odd, odd)], small))
    mapped = np.sort(quadratic_map(eigenvalues(k).values))
    target = np.sort(np.repeat(eigenvalues(small).values, 2))
    spec_err = float(np.max(np.abs(mapped - target)))
    return {
        "n": n,
        "decoupled": decoupled,
        "even_block_ok": even_ok,
        "odd_block_ok": odd_ok,
        "spectral_error": spec_err,
        "ok": decoupled and even_ok and odd_ok and spec_err <= tol,
    }


# ---------------------------------------------------------------------------
# inequalities and identities

def lidskii_bound(a, b, tol: float = 1e-8) -> dict:
    """``sum_j |alpha_j - beta_j| <= sum_ij |A - B|_ij`` for ascending spectra."""
    da, db = _as_dense(a), _as_dense(b)
    if da.shape != db.shape:
        raise ValueError(f"size mismatch {da.shape} vs {db.shape}")
    alpha = eigenvalues(da).values
    beta = eigenvalues(db).values
    lhs = float(np.sum(np.abs(alpha - beta)))
    rhs = float(np.sum(np.abs(da - db)))
    return {"lhs": lhs, "rhs": rhs, "ok": lhs <= rhs + tol}


def check_schur_grone(g: SimpleGraph, spectrum: Spectrum | None = None, tol: float = 1e-8) -> dict:
    """Ascending partial sums of eigenvalues are dominated by those of the
    degrees (equal at t = n); for connected g, descending degree partial sums
    are dominated by descending eigenvalue partial sums up to k = n-1."""
    if spectrum is None:
        spectrum = eigenvalues(scalar_laplacian(g))
    lam = spectrum.values
    deg = np.asarray(degree_sequence(g), dtype=np.float64)
    slack = tol * max(1.0, float(deg.sum()))
    lam_cum = np.cumsum(lam)
    deg_cum = np.cumsum(deg)
    schur_margin = float(np.min(deg_cum - lam_cum)) if g.n else 0.0
    trace_gap = float(abs(deg_cum[-1] - lam_cum[-1])) if g.n else 0.0
    schur_ok = schur_margin >= -slack and trace_gap <= slack
    report = {"schur_ok": schur_ok, "schur_margin": schur_margin, "trace_gap": trace_gap,
              "grone_ok": None, "grone_margin": None}
    if g.n >= 2 and g.is_connected():
        mu_desc = np.cumsum(lam[::-1])[:-1]
        d_desc = np.cumsum(deg[::-1])[:-1]
        margin = float(np.min(mu_desc - d_desc))
        report["grone_margin"] = margin
        report["grone_ok"] = margin >= -slack
    report["ok"] = schur_ok and report["grone_ok"] is not False
    return report


def supertrace_heat(spectra: Sequence[Spectrum], t: float) -> float:
    return float(sum((-1) ** k * np.sum(np.exp(-t * s.values)) for k, s in enumerate(spectra)))


def mckean_singer(c: CliqueComplex, t_values: Sequence[float], tol: float = 1e-6,
                  spectra: Sequence[Spectrum] | None = None, max_size: int = DEFAULT_MAX_EIG) -> dict:
    """``str(exp(-t L)) = chi`` for every t."""
    if any(t < 0 for t in t_values):
        raise ValueError("t must be >= 0")
    if spectra is None:
        spectra = hodge_spectra(c, max_size)
    chi = euler_characteristic(c)
    values = {float(t): supertrace_heat(spectra, t) for t in t_values}
    err = max((abs(v - chi) for v in values.values()), default=0.0)
    return {"chi": chi, "values": values, "max_error": err, "ok": err <= tol}


def _match(x: np.ndarray, y: np.ndarray, tol: float) -> tuple[bool, float]:
    if len(x) != len(y):
        return False, math.inf
    if len(x) == 0:
        return True, 0.0
    err = float(np.max(np.abs(np.sort(x) - np.sort(y))))
    return err <= tol, err


def check_supersymmetry(spectra: Sequence[Spectrum], tol: float = 1e-8,
                        zero_tol: float = DEFAULT_ZERO_TOL) -> dict:
    """Nonzero spectra of the even-form and odd-form Laplacians agree."""
    top = max((float(s.values[-1]) for s in spectra if len(s)), default=0.0)
    cut = zero_tol * max(1.0, top)
    even = np.concatenate([s.values[s.values >= cut] for s in spectra[0::2]] or [np.zeros(0)])
    odd = np.concatenate([s.values[s.values >= cut] for s in spectra[1::2]] or [np.zeros(0)])
    ok, err = _match(even, odd, tol)
    return {"ok": ok, "even_count": len(even), "odd_count": len(odd), "max_error": err}


def check_dirac_spectrum(c: CliqueComplex, spectra: Sequence[Spectrum] | None = None,
                         tol: float = 1e-8, max_size: int = DEFAULT_MAX_EIG) -> dict:
    """spec(D^2) equals the union of spec(L_k) as multisets."""
    if spectra is None:
        spectra = hodge_spectra(c, max_size)
    d = dirac(c).matrix
    d2 = eigenvalues(d @ d, max_size).values
    union = np.concatenate([s.values for s in spectra])
    ok, err = _match(d2, union, tol)
    return {"ok": ok, "max_error": err, "size": len(d2)}


# ---------------------------------------------------------------------------
# convergence across refinement levels

@dataclass
class LevelStats:
    level: int
    v0: int
    v1: int
    l1norm: float
    l1dist_next: float | None = None
    supdist_next: float | None = None
    lambda1: float | None = None
    maxdeg: int = 0
    supdist_limit: float | None = None


CSV_COLUMNS = ("level", "v0", "v1", "l1norm", "l1dist_next", "supdist_next", "lambda1", "maxdeg")


@dataclass
class ConvergenceReport:
    levels: list[LevelStats]
    interval: tuple[float, float]
    dim: int
    partial: bool = False
    profiles: list[SpectrumProfile] = field(default_factory=list, repr=False)
    degree_profiles: list[SpectrumProfile] = field(default_factory=list, repr=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(CSV_COLUMNS) + "\n")
        for s in self.levels:
            row = []
            for col in CSV_COLUMNS:
                v = getattr(s, col)
                row.append("" if v is None else format_float(v) if isinstance(v, float) else str(v))
            buf.write(",".join(row) + "\n")
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "interval": list(self.interval),
            "partial": self.partial,
            "levels": [asdict(s) for s in self.levels],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def smallest_nonzero(s: Spectrum, zero_tol: float = DEFAULT_ZERO_TOL) -> float | None:
    nz = s.values[s.values >= kernel_threshold(s, zero_tol)]
    return float(nz[0]) if len(nz) else None


def convergence_experiment(g0: SimpleGraph, depth: int, interval: tuple[float, float] = (0.05, 0.95),
                           max_simplices: int = DEFAULT_MAX_SIMPLICES, max_eig: int = DEFAULT_MAX_EIG,
                           limit: Callable | None = None) -> ConvergenceReport:
    """Spectral statistics of G_0..G_depth.

    Levels whose vertex count (predicted exactly beforehand) exceeds either
    cap are dropped and the report is flagged partial. If ``limit`` is given
    each level also records its sup distance to that curve on the interval.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    a, b = interval
    _check_interval(a, b)
    if g0.n > max_eig:
        raise CapacityError("dense eigensolve dimension", g0.n, max_eig)
    c = build_complex(g0, max_simplices)
    dim0 = c.dim
    predicted = trajectory(c.f_vector, depth)
    reachable = 0
    for m in range(1, depth + 1):
        if predicted[m][0] > min(max_eig, max_simplices):
            break
        reachable = m

    levels: list[LevelStats] = []
    profiles: list[SpectrumProfile] = []
    degrees: list[SpectrumProfile] = []
    g = g0
    for m in range(reachable + 1):
        if m > 0:
            g = refine_complex(c).graph
            c = build_complex(g, max_simplices)
        spec = eigenvalues(scalar_laplacian(g), max_eig)
        p = profile(spec)
        deg = degree_sequence(g)
        stats = LevelStats(level=m, v0=g.n, v1=g.num_edges, l1norm=l1_norm(p),
                           lambda1=smallest_nonzero(spec), maxdeg=max(deg) if deg else 0)
        trace_mean = 2 * g.num_edges / g.n
        if abs(stats.l1norm - trace_mean) > 1e-8:
            raise AssertionError(f"level {m}: mean eigenvalue {stats.l1norm} != 2 v1 / v0 = {trace_mean}")
        if limit is not None:
            stats.supdist_limit = sup_distance_to_curve(p, limit, a, b)
        if profiles:
            levels[-1].l1dist_next = l1_distance(profiles[-1], p)
            levels[-1].supdist_next = sup_distance_on(profiles[-1], p, a, b)
        levels.append(stats)
        profiles.append(p)
        degrees.append(profile(deg))
    return ConvergenceReport(levels, (a, b), dim0, partial=reachable < depth, profiles=profiles, degree_profiles=degrees)


def pairwise_sup_distances(profiles: dict[str, SpectrumProfile], a: float = 0.1, b: float = 0.9) -> dict:
    names = sorted(profiles)
    return {f"{x}|{y}": sup_distance_on(profiles[x], profiles[y], a, b)
            for i, x in enumerate(names) for y in names[i + 1:]}


def mean_eigenvalue_k3(m: int) -> Fraction:
    """Closed form for the mean Laplacian eigenvalue of the m-th refinement of K_3."""
    return Fraction(3 * 2 ** (m + 1) * (3 ** m + 1), 3 * 2 ** m + 6 ** m + 2)
