"""Pure-Python (numpy) beam-splitter Fock kernels, used when the extension is not built."""

import numpy as np


def bs_blocks(w, cutoff):
    w = np.asarray(w, dtype=complex)
    z = np.zeros((cutoff + 1, cutoff + 1, cutoff + 1), dtype=complex)
    sq = np.sqrt(np.arange(cutoff + 2, dtype=float))
    z[0, 0, 0] = 1.0
    for big_n in range(cutoff):
        m = np.arange(big_n + 2)
        n = big_n + 1 - m
        prev = z[big_n, : big_n + 1, : big_n + 1]
        # a^dag raises row m-1, b^dag keeps row m; zero padding at the ends
        from_a = np.zeros((big_n + 2, big_n + 1), dtype=complex)
        from_b = np.zeros((big_n + 2, big_n + 1), dtype=complex)
        from_a[1:] = prev * sq[m[1:], None]
        from_b[:-1] = prev * sq[n[:-1], None]
        # column p from input column p-1 (a route) and column p (b route)
        route_a = w[0, 0] * from_a + w[0, 1] * from_b
        route_b = w[1, 0] * from_a + w[1, 1] * from_b
        p = np.arange(big_n + 2)
        new = np.zeros((big_n + 2, big_n + 2), dtype=complex)
        new[:, 1:] += sq[p[1:]] * route_a
        new[:, :-1] += sq[big_n + 1 - p[:-1]] * route_b
        z[big_n + 1, : big_n + 2, : big_n + 2] = new / (big_n + 1)
    return z


def bs_apply(psi, z):
    psi = np.asarray(psi, dtype=complex)
    da, db = psi.shape
    top = da + db - 2
    if z.shape[0] <= top:
        raise ValueError("beam-splitter blocks too small for this input")
    out = np.zeros((top + 1, top + 1), dtype=complex)
    for big_n in range(top + 1):
        p = np.arange(max(0, big_n - (db - 1)), min(big_n, da - 1) + 1)
        col = z[big_n][: big_n + 1][:, p] @ psi[p, big_n - p]
        m = np.arange(big_n + 1)
        out[m, big_n - m] = col
    return out
