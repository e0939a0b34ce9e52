"""Dense linear algebra over GF(p).

Vectors are rows; a subspace is stored as a matrix whose rows form a basis,
canonicalised by reduced row echelon form.  Everything works on int64 numpy
arrays with entries reduced mod p.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np


def mod_p(a: np.ndarray, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def zeros(shape, dtype=np.int64) -> np.ndarray:
    return np.zeros(shape, dtype=dtype)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def inv_scalar(a: int, p: int) -> int:
    return pow(int(a) % p, p - 2, p)


def rref(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over GF(p); returns (matrix, pivot columns)."""
    m = mod_p(np.array(a, dtype=np.int64, copy=True), p)
    rows, cols = m.shape
    piv_cols: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = None
        for i in range(r, rows):
            if m[i, c] % p:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        m[r] = (m[r] * inv_scalar(m[r, c], p)) % p
        for i in range(rows):
            if i != r and m[i, c] % p:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        piv_cols.append(c)
        r += 1
    return m, piv_cols


def row_space(a: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (RREF rows, zero rows dropped) of the row space."""
    a = np.atleast_2d(np.asarray(a, dtype=np.int64))
    if a.size == 0:
        return zeros((0, a.shape[1] if a.ndim == 2 else 0))
    r, piv = rref(a, p)
    return r[: len(piv)]


def rank(a: np.ndarray, p: int) -> int:
    a = np.atleast_2d(np.asarray(a, dtype=np.int64))
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows) of {x : a @ x = 0} over GF(p)."""
    a = np.atleast_2d(np.asarray(a, dtype=np.int64))
    m, n = a.shape
    if n == 0:
        return zeros((0, 0))
    r, piv = rref(a, p)
    piv_set = set(piv)
    free = [j for j in range(n) if j not in piv_set]
    basis = zeros((len(free), n))
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(piv):
            basis[k, c] = (-r[i, f]) % p
    return row_space(basis, p)


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of a @ x = b over GF(p), or None if inconsistent."""
    a = np.atleast_2d(np.asarray(a, dtype=np.int64))
    b = mod_p(np.asarray(b).reshape(-1), p)
    m, n = a.shape
    aug = np.concatenate([mod_p(a, p), b.reshape(-1, 1)], axis=1)
    r, piv = rref(aug, p)
    if n in piv:
        return None
    x = zeros(n)
    for i, c in enumerate(piv):
        x[c] = r[i, n]
    return x


def in_row_space(v: np.ndarray, basis: np.ndarray, p: int) -> bool:
    basis = np.atleast_2d(np.asarray(basis, dtype=np.int64))
    v = mod_p(np.asarray(v).reshape(-1), p)
    if not v.any():
        return True
    if basis.shape[0] == 0:
        return False
    return solve(basis.T, v, p) is not None


def sum_spaces(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a = np.atleast_2d(np.asarray(a, dtype=np.int64))
    b = np.atleast_2d(np.asarray(b, dtype=np.int64))
    if a.shape[0] == 0:
        return row_space(b, p)
    if b.shape[0] == 0:
        return row_space(a, p)
    return row_space(np.concatenate([a, b], axis=0), p)


def intersect_spaces(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Basis of the intersection of two row spaces (Zassenhaus style)."""
    a = row_space(a, p)
    b = row_space(b, p)
    n = a.shape[1] if a.size else b.shape[1]
    if a.shape[0] == 0 or b.shape[0] == 0:
        return zeros((0, n))
    # x in both spaces: x = u @ a = v @ b; solve [a^T | -b^T] stacked kernel.
    stacked = np.concatenate([a, (-b) % p], axis=0)
    ker = nullspace(stacked.T, p)
    if ker.shape[0] == 0:
        return zeros((0, n))
    combo = mod_p(ker[:, : a.shape[0]] @ a, p)
    return row_space(combo, p)


def is_subspace(a: np.ndarray, b: np.ndarray, p: int) -> bool:
    """True iff row space of a is contained in row space of b."""
    a = np.atleast_2d(np.asarray(a, dtype=np.int64))
    return all(in_row_space(v, b, p) for v in a)
