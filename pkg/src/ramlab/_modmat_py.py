"""Pure-Python modular matrix kernels (fallback for the compiled ``_modmat``)."""
import numpy as np


def matmul_mod(A, B, m):
    a = np.asarray(A, dtype=np.int64).tolist()
    bt = list(zip(*np.asarray(B, dtype=np.int64).tolist()))
    out = [[sum(x * y for x, y in zip(row, col)) % m for col in bt] for row in a]
    return np.array(out, dtype=np.int64).reshape(len(a), len(bt))


def rank_mod_prime(A, p):
    rows = [[x % p for x in r] for r in np.asarray(A, dtype=np.int64).tolist()]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        prow = [(x * inv) % p for x in rows[rank]]
        rows[rank] = prow
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def inv_mod(A, ell, m):
    """Inverse over Z/m with m a power of the prime ``ell``; pivots must be units."""
    a = [[x % m for x in r] for r in np.asarray(A, dtype=np.int64).tolist()]
    n = len(a)
    aug = [row + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] % ell), None)
        if piv is None:
            raise ValueError("matrix is not invertible modulo %d" % m)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, m)
        prow = [(x * inv) % m for x in aug[c]]
        aug[c] = prow
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(x - f * y) % m for x, y in zip(aug[r], prow)]
    return np.array([row[n:] for row in aug], dtype=np.int64).reshape(n, n)
