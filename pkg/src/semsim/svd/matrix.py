"""Dense and sparse real matrices plus their fixture file formats.

Sparse fixtures use MatrixMarket coordinate format, dense fixtures CSV.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .. import kernels
from ..errors import MatrixFormatError


@dataclass(frozen=True, eq=False)
class DenseMatrix:
    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.float64, order="C")
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise MatrixFormatError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise MatrixFormatError("matrix contains non-finite entries")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def to_numpy(self) -> np.ndarray:
        return self.data.copy()

    def to_sparse(self) -> "SparseMatrix":
        r, c = np.nonzero(self.data)
        return SparseMatrix(self.rows, self.cols, r, c, self.data[r, c])


class SparseMatrix:
    """Coordinate-list real matrix, row-major sorted, no explicit zeros.

    CSR arrays for the matrix and its transpose are built once so block
    products in the truncated SVD stay cheap.
    """

    def __init__(self, rows, cols, row_idx, col_idx, values, *, sum_duplicates=False):
        rows, cols = int(rows), int(cols)
        if rows < 1 or cols < 1:
            raise MatrixFormatError(f"bad shape {rows}x{cols}")
        r = np.asarray(row_idx, dtype=np.int64).ravel()
        c = np.asarray(col_idx, dtype=np.int64).ravel()
        v = np.asarray(values, dtype=np.float64).ravel()
        if not (len(r) == len(c) == len(v)):
            raise MatrixFormatError("index/value arrays differ in length")
        if len(r) and (r.min() < 0 or r.max() >= rows or c.min() < 0 or c.max() >= cols):
            raise MatrixFormatError("entry index out of range")
        if not np.all(np.isfinite(v)):
            raise MatrixFormatError("matrix contains non-finite entries")
        order = np.lexsort((c, r))
        r, c, v = r[order], c[order], v[order]
        if len(r) > 1:
            dup = (np.diff(r) == 0) & (np.diff(c) == 0)
            if dup.any():
                if not sum_duplicates:
                    i = int(np.flatnonzero(dup)[0])
                    raise MatrixFormatError(f"duplicate entry at ({r[i]}, {c[i]})")
                keys = r * cols + c
                uniq, start = np.unique(keys, return_index=True)
                v = np.add.reduceat(v, start)
                r, c = uniq // cols, uniq % cols
        keep = v != 0.0
        self.rows, self.cols = rows, cols
        self.row_idx, self.col_idx, self.values = r[keep], c[keep], v[keep]
        for a in (self.row_idx, self.col_idx, self.values):
            a.setflags(write=False)
        self._csr = _to_csr(rows, self.row_idx, self.col_idx, self.values)
        self._csr_t = _to_csr(cols, self.col_idx, self.row_idx, self.values)

    @classmethod
    def from_dense(cls, dense) -> "SparseMatrix":
        if isinstance(dense, DenseMatrix):
            return dense.to_sparse()
        return DenseMatrix(dense).to_sparse()

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return len(self.values)

    def entries(self):
        return list(zip(self.row_idx.tolist(), self.col_idx.tolist(), self.values.tolist()))

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols))
        out[self.row_idx, self.col_idx] = self.values
        return out

    def matmat(self, x: np.ndarray) -> np.ndarray:
        """``A @ x`` for a dense block ``x`` of shape (cols, l)."""
        return _apply(self._csr, self.rows, x)

    def rmatmat(self, x: np.ndarray) -> np.ndarray:
        """``A.T @ x`` for a dense block ``x`` of shape (rows, l)."""
        return _apply(self._csr_t, self.cols, x)

    def frobenius_norm(self) -> float:
        return float(np.sqrt(np.sum(self.values**2)))

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.row_idx, other.row_idx)
            and np.array_equal(self.col_idx, other.col_idx)
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def _to_csr(nrows, r, c, v):
    order = np.lexsort((c, r))
    indptr = np.zeros(nrows + 1, dtype=np.int64)
    np.cumsum(np.bincount(r, minlength=nrows), out=indptr[1:])
    return (indptr, np.ascontiguousarray(c[order], dtype=np.int64), np.ascontiguousarray(v[order]))


def _apply(csr, nrows, x):
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.ndim == 1:
        return _apply(csr, nrows, x[:, None])[:, 0]
    out = np.empty((nrows, x.shape[1]))
    kernels.csr_matmat(csr[0], csr[1], csr[2], x, out)
    return out


# ---------------------------------------------------------------- file formats

def read_matrix_market(path) -> SparseMatrix:
    """Parse a MatrixMarket ``coordinate`` file (real/integer/pattern,
    general/symmetric/skew-symmetric)."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_matrix_market(text, source=str(path))


def parse_matrix_market(text: str, source="<string>") -> SparseMatrix:
    lines = text.splitlines()
    if not lines or not lines[0].lower().startswith("%%matrixmarket"):
        raise MatrixFormatError(f"{source}: missing %%MatrixMarket banner")
    banner = lines[0].split()
    if len(banner) != 5:
        raise MatrixFormatError(f"{source}:1: malformed banner")
    obj, fmt, field, symmetry = (b.lower() for b in banner[1:])
    if obj != "matrix" or fmt != "coordinate":
        raise MatrixFormatError(f"{source}:1: only 'matrix coordinate' is supported")
    if field not in ("real", "integer", "pattern", "double"):
        raise MatrixFormatError(f"{source}:1: unsupported field {field!r}")
    if symmetry not in ("general", "symmetric", "skew-symmetric"):
        raise MatrixFormatError(f"{source}:1: unsupported symmetry {symmetry!r}")

    body = [(i + 1, ln) for i, ln in enumerate(lines) if i > 0 and ln.strip() and not ln.lstrip().startswith("%")]
    if not body:
        raise MatrixFormatError(f"{source}: missing size line")
    lineno, size = body[0]
    try:
        nrows, ncols, nnz = (int(tok) for tok in size.split())
    except ValueError:
        raise MatrixFormatError(f"{source}:{lineno}: bad size line {size!r}") from None
    if len(body) - 1 != nnz:
        raise MatrixFormatError(f"{source}: declared {nnz} entries, found {len(body) - 1}")

    rows, cols, vals = [], [], []
    for lineno, ln in body[1:]:
        toks = ln.split()
        want = 2 if field == "pattern" else 3
        if len(toks) != want:
            raise MatrixFormatError(f"{source}:{lineno}: expected {want} fields")
        try:
            i, j = int(toks[0]) - 1, int(toks[1]) - 1
            v = 1.0 if field == "pattern" else float(toks[2])
        except ValueError:
            raise MatrixFormatError(f"{source}:{lineno}: bad entry {ln!r}") from None
        if not (0 <= i < nrows and 0 <= j < ncols):
            raise MatrixFormatError(f"{source}:{lineno}: index out of range")
        rows.append(i)
        cols.append(j)
        vals.append(v)
        if symmetry != "general" and i != j:
            rows.append(j)
            cols.append(i)
            vals.append(-v if symmetry == "skew-symmetric" else v)
    return SparseMatrix(nrows, ncols, rows, cols, vals)


def write_matrix_market(m: SparseMatrix, path=None) -> str:
    buf = io.StringIO()
    buf.write("%%MatrixMarket matrix coordinate real general\n")
    buf.write(f"{m.rows} {m.cols} {m.nnz}\n")
    for i, j, v in m.entries():
        buf.write(f"{i + 1} {j + 1} {v!r}\n")
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def read_dense_csv(path) -> DenseMatrix:
    with open(path, newline="", encoding="utf-8") as fh:
        return parse_dense_csv(fh.read(), source=str(path))


def parse_dense_csv(text: str, source="<string>") -> DenseMatrix:
    rows = []
    for lineno, rec in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not rec or all(not f.strip() for f in rec) or rec[0].lstrip().startswith("#"):
            continue
        try:
            rows.append([float(f) for f in rec])
        except ValueError:
            raise MatrixFormatError(f"{source}:{lineno}: non-numeric field") from None
        if len(rows[-1]) != len(rows[0]):
            raise MatrixFormatError(f"{source}:{lineno}: ragged row")
    if not rows:
        raise MatrixFormatError(f"{source}: empty matrix")
    return DenseMatrix(np.array(rows))


def write_dense_csv(m, path=None) -> str:
    arr = m.data if isinstance(m, DenseMatrix) else np.asarray(m)
    text = "".join(",".join(repr(float(x)) for x in row) + "\n" for row in arr)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
