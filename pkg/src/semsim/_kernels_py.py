"""Pure-numpy fallback for the compiled kernels in ``_kernels.pyx``."""

import math

import numpy as np


def jacobi_sweep(at, vt, rot_tol):
    n = at.shape[0]
    worst = 0.0
    for i in range(n - 1):
        ai = at[i]
        for j in range(i + 1, n):
            aj = at[j]
            alpha = float(ai @ ai)
            beta = float(aj @ aj)
            gamma = float(ai @ aj)
            if gamma == 0.0 or alpha == 0.0 or beta == 0.0:
                continue
            ratio = abs(gamma) / math.sqrt(alpha * beta)
            worst = max(worst, ratio)
            if ratio <= rot_tol:
                continue
            zeta = (beta - alpha) / (2.0 * gamma)
            if zeta >= 0.0:
                t = 1.0 / (zeta + math.sqrt(1.0 + zeta * zeta))
            else:
                t = -1.0 / (-zeta + math.sqrt(1.0 + zeta * zeta))
            c = 1.0 / math.sqrt(1.0 + t * t)
            s = c * t
            at[i], at[j] = c * ai - s * aj, s * ai + c * aj
            vi, vj = vt[i].copy(), vt[j]
            vt[i], vt[j] = c * vi - s * vj, s * vi + c * vj
            ai = at[i]
    return worst


def csr_matmat(indptr, indices, data, x, out):
    out[...] = 0.0
    rows = np.repeat(np.arange(len(indptr) - 1), np.diff(indptr))
    np.add.at(out, rows, data[:, None] * x[indices])
