import math

import numpy as np
import pytest

SEED = 0xC0FFEE
INV_SQRT2 = 1 / math.sqrt(2)


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def brute_partial_trace(rho, dims, keep):
    """Reduced matrix by explicit summation over every index tuple."""
    dims = list(dims)
    n = len(dims)
    keep = sorted(keep)
    drop = [i for i in range(n) if i not in keep]
    kshape = [dims[i] for i in keep]
    dshape = [dims[i] for i in drop]
    dk = int(np.prod(kshape))
    out = np.zeros((dk, dk), dtype=complex)

    def flat(idx):
        f = 0
        for i, d in zip(idx, dims):
            f = f * d + i
        return f

    for ki in np.ndindex(*kshape):
        for kj in np.ndindex(*kshape):
            acc = 0j
            for t in np.ndindex(*dshape):
                row = [0] * n
                col = [0] * n
                for pos, f in enumerate(keep):
                    row[f] = ki[pos]
                    col[f] = kj[pos]
                for pos, f in enumerate(drop):
                    row[f] = t[pos]
                    col[f] = t[pos]
                acc += rho[flat(row), flat(col)]
            out[np.ravel_multi_index(ki, kshape), np.ravel_multi_index(kj, kshape)] = acc
    return out
