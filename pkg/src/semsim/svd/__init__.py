"""Numerical core: matrix types, dense Jacobi SVD and truncated SVD."""

from .decompose import SvdFactors, dense_svd, truncated_svd
from .matrix import (
    DenseMatrix,
    SparseMatrix,
    parse_dense_csv,
    parse_matrix_market,
    read_dense_csv,
    read_matrix_market,
    write_dense_csv,
    write_matrix_market,
)

__all__ = [
    "DenseMatrix",
    "SparseMatrix",
    "SvdFactors",
    "dense_svd",
    "truncated_svd",
    "read_matrix_market",
    "parse_matrix_market",
    "write_matrix_market",
    "read_dense_csv",
    "parse_dense_csv",
    "write_dense_csv",
]
