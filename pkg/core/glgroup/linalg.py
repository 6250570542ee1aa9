"""
Row reduction over F_p on numpy arrays
"""

from typing import List, Tuple

import numpy as np


def _swap_rows(a: np.ndarray, i: int, j: int) -> None:
    row = a[i, :].copy()
    a[i, :] = a[j, :]
    a[j, :] = row


def rref_mod_p(a, p: int) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row-echelon form over F_p

    Args:
        a: 2-d integer array-like
        p: prime modulus

    Returns:
        (reduced matrix, pivot columns)
    """
    a = np.array(a, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {a.shape}")
    rows, cols = a.shape
    pivots: List[int] = []
    i = 0
    for j in range(cols):
        if i >= rows:
            break
        nonzero = np.nonzero(a[i:, j])[0]
        if nonzero.size == 0:
            continue
        pivot = i + int(nonzero[0])
        if pivot != i:
            _swap_rows(a, i, pivot)
        a[i, :] = (a[i, :] * pow(int(a[i, j]), -1, p)) % p
        for r in range(rows):
            if r != i and a[r, j]:
                a[r, :] = (a[r, :] - a[r, j] * a[i, :]) % p
        pivots.append(j)
        i += 1
    return a, pivots


def rank_mod_p(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref_mod_p(a, p)[1])


def nullspace_mod_p(a, p: int) -> np.ndarray:
    """Basis of {v : a v = 0} over F_p, one vector per row"""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.identity(cols, dtype=np.int64)
    reduced, pivots = rref_mod_p(a, p)
    free = [j for j in range(cols) if j not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for row, j in enumerate(pivots):
            v[j] = (-reduced[row, f]) % p
        basis.append(v)
    if not basis:
        return np.zeros((0, cols), dtype=np.int64)
    return np.array(basis, dtype=np.int64)


def as_square(entries, k: int) -> np.ndarray:
    return np.array(entries, dtype=np.int64).reshape(k, k)
