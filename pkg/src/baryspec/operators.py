"""Scalar, Hodge and Dirac operators on clique complexes, and the eigensolver.

Assembly is exact integer arithmetic (scipy sparse, int64). Orientation of a
simplex is its ascending vertex order; the face obtained by deleting the i-th
vertex enters the exterior derivative with sign (-1)**i.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from baryspec.complex import CliqueComplex, Simplex, euler_characteristic
from baryspec.errors import CapacityError, NumericError
from baryspec.graph import SimpleGraph

DEFAULT_MAX_EIG = 6000
DEFAULT_ZERO_TOL = 1e-8
ACCURACY = 1e-9


@dataclass(frozen=True)
class OperatorMatrix:
    """Integer sparse matrix with a name for reports."""

    matrix: sp.csr_array
    name: str = ""
    symmetric: bool = False

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def triplets(self) -> list[tuple[int, int, int]]:
        """Nonzero entries as 0-based ``(row, col, value)``, row-major."""
        coo = self.matrix.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return [(int(coo.row[i]), int(coo.col[i]), int(coo.data[i])) for i in order if coo.data[i] != 0]

    def equals(self, other: OperatorMatrix | sp.sparray | np.ndarray) -> bool:
        b = other.matrix if isinstance(other, OperatorMatrix) else other
        if self.shape != b.shape:
            return False
        diff = sp.csr_array(self.matrix - sp.csr_array(b))
        diff.eliminate_zeros()
        return diff.nnz == 0


def _op(m, name: str, symmetric: bool) -> OperatorMatrix:
    m = sp.csr_array(m, dtype=np.int64)
    m.sum_duplicates()
    m.eliminate_zeros()
    return OperatorMatrix(m, name, symmetric)


def _is_exactly_symmetric(m: sp.sparray) -> bool:
    diff = sp.csr_array(m - m.T)
    diff.eliminate_zeros()
    return diff.nnz == 0


def scalar_laplacian(g: SimpleGraph) -> OperatorMatrix:
    """``L = B - A`` with B the degree matrix and A the adjacency matrix."""
    n = g.n
    if g.edges:
        e = np.asarray(g.edges, dtype=np.int64)
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
    else:
        rows = cols = np.zeros(0, dtype=np.int64)
    adj = sp.coo_array((np.ones(len(rows), dtype=np.int64), (rows, cols)), shape=(n, n))
    deg = np.asarray([len(a) for a in g.neighbors], dtype=np.int64)
    return _op(sp.diags_array(deg, format="csr", dtype=np.int64) - adj.tocsr(), "L", True)


def chain_basis(c: CliqueComplex) -> list[tuple[Simplex, ...]]:
    """Oriented k-simplices per dimension, in canonical order."""
    return [c.of_dim(k) for k in range(c.dim + 1)]


def _derivative(c: CliqueComplex, k: int) -> sp.csr_array:
    """d_k as a ``v_{k+1} x v_k`` matrix; empty-shaped outside ``0 <= k < dim``."""
    f = c.f_vector
    rows_n = f[k + 1] if 0 <= k + 1 < len(f) else 0
    cols_n = f[k] if 0 <= k < len(f) else 0
    if rows_n == 0 or cols_n == 0:
        return sp.csr_array((rows_n, cols_n), dtype=np.int64)
    index = c.index
    base = c.offsets[k]
    rows, cols, vals = [], [], []
    for r, s in enumerate(c.of_dim(k + 1)):
        for i in range(len(s)):
            rows.append(r)
            cols.append(index[s[:i] + s[i + 1:]] - base)
            vals.append(1 if i % 2 == 0 else -1)
    return sp.csr_array((np.asarray(vals, dtype=np.int64), (rows, cols)), shape=(rows_n, cols_n))


def exterior_derivative(c: CliqueComplex, k: int) -> OperatorMatrix:
    if not 0 <= k < c.dim:
        raise ValueError(f"exterior derivative d_{k} undefined for a complex of dimension {c.dim}")
    return _op(_derivative(c, k), f"d{k}", False)


def hodge_laplacian(c: CliqueComplex, k: int) -> OperatorMatrix:
    """``L_k = d_k^T d_k + d_{k-1} d_{k-1}^T`` on k-forms."""
    if not 0 <= k <= c.dim:
        raise ValueError(f"no {k}-forms on a complex of dimension {c.dim}")
    up = _derivative(c, k)
    down = _derivative(c, k - 1)
    lk = sp.csr_array((c.f_vector[k], c.f_vector[k]), dtype=np.int64)
    if up.shape[0]:
        lk = lk + up.T @ up
    if down.shape[1]:
        lk = lk + down @ down.T
    return _op(lk, f"L{k}", True)


def dirac(c: CliqueComplex) -> OperatorMatrix:
    """``D = d + d^*`` on the direct sum of all form spaces."""
    n = len(c)
    off = c.offsets
    rows, cols, vals = [], [], []
    for k in range(c.dim):
        coo = _derivative(c, k).tocoo()
        rows.append(coo.row + off[k + 1])
        cols.append(coo.col + off[k])
        vals.append(coo.data)
    if rows:
        r, q, v = np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)
    else:
        r = q = v = np.zeros(0, dtype=np.int64)
    d = sp.coo_array((v, (r, q)), shape=(n, n)).tocsr()
    return _op(d + d.T, "D", True)


def check_dirac_blocks(c: CliqueComplex) -> dict:
    """D^2 must equal block_diag(L_0, ..., L_d) entry for entry."""
    d = dirac(c).matrix
    blocks = [hodge_laplacian(c, k).matrix for k in range(c.dim + 1)]
    expected = sp.block_diag(blocks, format="csr") if blocks else sp.csr_array((0, 0))
    ok = OperatorMatrix(sp.csr_array(d @ d)).equals(expected)
    return {"ok": ok, "size": len(c)}


def check_dd_zero(c: CliqueComplex) -> dict:
    worst = 0
    for k in range(c.dim - 1):
        prod = sp.csr_array(_derivative(c, k + 1) @ _derivative(c, k))
        prod.eliminate_zeros()
        if prod.nnz:
            worst = max(worst, int(abs(prod.data).max()))
    return {"ok": worst == 0, "max_abs_entry": worst}


# ---------------------------------------------------------------------------
# eigensolver

@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues; ``tol`` is the per-eigenvalue accuracy bound."""

    values: np.ndarray
    tol: float

    def __len__(self):
        return len(self.values)

    def nonzero(self, zero_tol: float = DEFAULT_ZERO_TOL) -> np.ndarray:
        return self.values[self.values >= kernel_threshold(self, zero_tol)]

    def kernel_dim(self, zero_tol: float = DEFAULT_ZERO_TOL) -> int:
        return int(np.count_nonzero(self.values < kernel_threshold(self, zero_tol)))


def kernel_threshold(s: Spectrum, zero_tol: float = DEFAULT_ZERO_TOL) -> float:
    top = float(s.values[-1]) if len(s.values) else 0.0
    return zero_tol * max(1.0, top)


def _as_dense(m) -> np.ndarray:
    if isinstance(m, OperatorMatrix):
        m = m.matrix
    if sp.issparse(m):
        return m.toarray().astype(np.float64)
    return np.asarray(m, dtype=np.float64)


def eigenvalues(m, max_size: int = DEFAULT_MAX_EIG) -> Spectrum:
    """All eigenvalues of a symmetric matrix, ascending.

    Householder tridiagonalisation followed by implicit QL/QR (LAPACK
    ``?syev``). Refuses matrices above ``max_size`` instead of returning a
    partial spectrum.
    """
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError(f"matrix must be square, got {m.shape}")
    if n > max_size:
        raise CapacityError("dense eigensolve dimension", n, max_size)
    a = _as_dense(m)
    if not np.array_equal(a, a.T):
        raise ValueError("eigenvalues() needs a symmetric matrix")
    scale = max(1.0, float(np.abs(a).sum(axis=1).max())) if n else 1.0
    if n == 0:
        return Spectrum(np.zeros(0), ACCURACY)
    try:
        w = scipy.linalg.eigh(a, eigvals_only=True, driver="ev", check_finite=True)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"symmetric eigensolver did not converge: {exc}") from None
    w = np.sort(w)
    w.setflags(write=False)
    return Spectrum(w, ACCURACY * scale)


def hodge_spectra(c: CliqueComplex, max_size: int = DEFAULT_MAX_EIG) -> list[Spectrum]:
    for k, v in enumerate(c.f_vector):
        if v > max_size:
            raise CapacityError(f"dimension of L{k}", v, max_size)
    return [eigenvalues(hodge_laplacian(c, k), max_size) for k in range(c.dim + 1)]


def betti_numbers(c: CliqueComplex, zero_tol: float = DEFAULT_ZERO_TOL,
                  max_size: int = DEFAULT_MAX_EIG, spectra: list[Spectrum] | None = None) -> list[int]:
    """Kernel dimensions of the Hodge Laplacians; checked against Euler-Poincare."""
    if spectra is None:
        spectra = hodge_spectra(c, max_size)
    b = [s.kernel_dim(zero_tol) for s in spectra]
    chi = euler_characteristic(c)
    alt = sum((-1) ** k * bk for k, bk in enumerate(b))
    if alt != chi:
        raise NumericError(f"Euler-Poincare violated: alternating Betti sum {alt} != chi {chi}")
    return b


# ---------------------------------------------------------------------------
# export

def matrix_market(op: OperatorMatrix) -> str:
    trip = op.triplets()
    buf = io.StringIO()
    buf.write("%%MatrixMarket matrix coordinate integer general\n")
    buf.write(f"{op.shape[0]} {op.shape[1]} {len(trip)}\n")
    for i, j, v in trip:
        buf.write(f"{i + 1} {j + 1} {v}\n")
    return buf.getvalue()


def format_float(x: float) -> str:
    return f"{float(x):.15g}"


def spectrum_csv(s: Spectrum | np.ndarray) -> str:
    values = s.values if isinstance(s, Spectrum) else s
    return "index,eigenvalue\n" + "".join(f"{i},{format_float(v)}\n" for i, v in enumerate(values))
