"""Compare the compiled and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times the Jacobi SVD, the CSR block product and a truncated SVD on seeded
random inputs, and checks that both backends agree.
"""

import argparse
import timeit
from contextlib import contextmanager

import numpy as np

from semsim import kernels
from semsim.svd import SparseMatrix, dense_svd, truncated_svd


@contextmanager
def csr_backend(name):
    saved = kernels.csr_matmat
    kernels.csr_matmat = kernels.get_backend(name).csr_matmat
    try:
        yield
    finally:
        kernels.csr_matmat = saved


def sparse_block(rng, rows, cols, density):
    mask = rng.random((rows, cols)) < density
    return np.where(mask, rng.random((rows, cols)), 0.0)


def cases(rng):
    dense = rng.standard_normal((120, 80))
    a = sparse_block(rng, 2000, 400, 0.02)
    sparse = SparseMatrix.from_dense(a)
    block = rng.standard_normal((400, 60))
    big = SparseMatrix.from_dense(sparse_block(rng, 1500, 300, 0.03))

    def csr(name):
        out = np.zeros((2000, 60))
        kernels.get_backend(name).csr_matmat(*sparse._csr, block, out)
        return out

    def trunc(name):
        with csr_backend(name):
            return truncated_svd(big, 20, seed=42).s

    return [
        ("dense_svd 120x80", lambda name: dense_svd(dense, backend=name).s),
        ("csr_matmat 2000x400 @ 400x60", csr),
        ("truncated_svd 1500x300 k=20", trunc),
    ]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    names = ["python"]
    try:
        kernels.get_backend("cython")
        names.insert(0, "cython")
    except ImportError:
        print("compiled backend not built; timing the numpy fallback only")

    rng = np.random.default_rng(0)
    print(f"{'case':<32}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, fn in cases(rng):
        results = {n: fn(n) for n in names}
        if len(names) == 2:
            np.testing.assert_allclose(results["cython"], results["python"], rtol=1e-9, atol=1e-9)
        times = {n: min(timeit.repeat(lambda: fn(n), number=1, repeat=args.repeat)) for n in names}
        line = f"{label:<32}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in names)
        if len(names) == 2:
            line += f"{times['python'] / times['cython']:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
