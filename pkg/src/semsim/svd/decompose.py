"""Dense (one-sided Jacobi) and truncated (subspace iteration) SVD.

Sign convention: in every returned factorization, each left singular
vector's largest-magnitude entry is positive (lowest row index on ties),
and the matching right vector is flipped with it.  Singular values at or
below ``sigma_1 * 1e-12`` are reported as exactly 0 with zero columns in
both ``u`` and ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..errors import NoConvergence, RankTooLarge
from .matrix import DenseMatrix, SparseMatrix

RANK_RTOL = 1e-12
_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True, eq=False)
class SvdFactors:
    """``M ~= u @ diag(s) @ v.T`` with ``s`` non-increasing."""

    u: np.ndarray
    s: np.ndarray
    v: np.ndarray

    @property
    def k(self) -> int:
        return len(self.s)

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.s))

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.s) @ self.v.T


def _as_array(m) -> np.ndarray:
    if isinstance(m, DenseMatrix):
        return m.data
    if isinstance(m, SparseMatrix):
        return m.to_dense()
    return DenseMatrix(m).data


def _finish(u, s, v):
    """Sort, zero out sub-rank columns and apply the sign convention."""
    order = np.argsort(-s, kind="stable")
    u, s, v = u[:, order], s[order].copy(), v[:, order]
    cutoff = s[0] * RANK_RTOL if len(s) else 0.0
    small = s <= cutoff
    s[small] = 0.0
    u[:, small] = 0.0
    v[:, small] = 0.0
    for j in np.flatnonzero(~small):
        if u[np.argmax(np.abs(u[:, j])), j] < 0:
            u[:, j] = -u[:, j]
            v[:, j] = -v[:, j]
    return SvdFactors(u, s, v)


def dense_svd(m, tol: float = 1e-10, max_sweeps: int = 100, backend=None) -> SvdFactors:
    """Full SVD by one-sided (Hestenes) Jacobi rotations.

    Parameters
    ----------
    m : DenseMatrix, SparseMatrix or array-like
    tol : float
        Sweeps stop once no column pair has normalized inner product
        above ``tol``; the reconstruction error is then of order
        ``tol * ||M||_F`` or better.
    max_sweeps : int
        Raises :class:`NoConvergence` if exceeded.
    backend : str, optional
        Force the "cython" or "python" kernel; default is the one chosen
        at import.

    Returns
    -------
    SvdFactors with ``k = min(rows, cols)``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = _as_array(m)
    sweep = kernels.jacobi_sweep if backend is None else kernels.get_backend(backend).jacobi_sweep
    transposed = a.shape[0] < a.shape[1]
    work = a.T if transposed else a
    nrow, ncol = work.shape
    at = np.ascontiguousarray(work.T, dtype=np.float64).copy()
    vt = np.eye(ncol)
    rot_tol = _EPS * nrow
    for _ in range(max_sweeps):
        worst = sweep(at, vt, rot_tol)
        if worst <= tol:
            break
    else:
        raise NoConvergence(f"Jacobi SVD did not converge in {max_sweeps} sweeps (off={worst:.3e})")

    s = np.sqrt(np.einsum("ij,ij->i", at, at))
    safe = np.where(s > 0, s, 1.0)
    uw = (at / safe[:, None]).T
    vw = vt.T
    if transposed:
        return _finish(vw.copy(), s, np.ascontiguousarray(uw))
    return _finish(np.ascontiguousarray(uw), s, vw.copy())


def _orthonormalize(y: np.ndarray, rng) -> np.ndarray:
    """Classical Gram-Schmidt with reorthogonalization; rank-deficient
    columns are replaced by fresh random directions."""
    n, l = y.shape
    q = np.zeros((n, l))
    for j in range(l):
        v = y[:, j].copy()
        for attempt in range(4):
            ref = np.linalg.norm(v)
            for _ in range(2):
                v -= q[:, :j] @ (q[:, :j].T @ v)
            nv = np.linalg.norm(v)
            if nv > 1e-10 * ref and nv > 0:
                break
            v = rng.standard_normal(n)
        q[:, j] = v / nv
    return q


def truncated_svd(
    m,
    k: int,
    tol: float = 1e-8,
    max_iter: int = 300,
    seed: int = 42,
    oversample: int | None = None,
) -> SvdFactors:
    """Top-``k`` singular triplets by randomized subspace iteration.

    Each iteration projects the matrix onto the current left subspace,
    takes a Jacobi SVD of the small projection and checks the residuals
    ``||A v_i - s_i u_i||``; it stops once all ``k`` are below
    ``tol * s_1``.  The random start comes from ``seed``, so results are
    reproducible bit for bit.
    """
    if not isinstance(m, SparseMatrix):
        m = SparseMatrix.from_dense(_as_array(m))
    p = min(m.rows, m.cols)
    if not 1 <= k <= p:
        raise RankTooLarge(f"k={k} outside 1..{p} for a {m.rows}x{m.cols} matrix")
    if tol <= 0 or max_iter < 1:
        raise ValueError("tol must be positive and max_iter >= 1")
    extra = max(10, k) if oversample is None else oversample
    l = min(p, k + extra)
    rng = np.random.default_rng(seed)

    q = _orthonormalize(m.matmat(rng.standard_normal((m.cols, l))), rng)
    res = np.inf
    for _ in range(max_iter):
        z = m.rmatmat(q)
        small = dense_svd(z.T, tol=min(1e-12, tol))
        u = q @ small.u[:, :k]
        s = small.s[:k]
        v = small.v[:, :k]
        scale = s[0] if s[0] > 0 else 1.0
        resid = m.matmat(v) - u * s
        res = float(np.max(np.linalg.norm(resid, axis=0)))
        if res <= tol * scale:
            return _finish(u, s.copy(), v.copy())
        q = _orthonormalize(m.matmat(_orthonormalize(z, rng)), rng)
    raise NoConvergence(f"truncated SVD residual {res:.3e} above tolerance after {max_iter} iterations")
