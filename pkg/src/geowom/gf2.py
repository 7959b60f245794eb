"""Small GF(2) linear algebra helpers.

Vectors are either Python ints used as bitsets (bit ``j`` = column ``j``) or
0/1 numpy arrays. Matrices are 2-D uint8 arrays.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence

import numpy as np


def popcount(x: int) -> int:
    return bin(x).count("1")


def xor_all(values: Iterable[int]) -> int:
    acc = 0
    for v in values:
        acc ^= v
    return acc


def reduce_basis(vectors: Iterable[int]) -> List[int]:
    """Return an echelon basis (distinct leading bits) for the span of ``vectors``."""
    basis: List[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def rank_int(vectors: Iterable[int]) -> int:
    return len(reduce_basis(vectors))


def in_span(v: int, basis: Sequence[int]) -> bool:
    for b in basis:
        v = min(v, v ^ b)
    return v == 0


def span(basis: Sequence[int]) -> List[int]:
    """All GF(2) combinations of ``basis``; element ``i`` uses the bits of ``i``."""
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return out


def as_matrix(rows: Sequence[Sequence[int]]) -> np.ndarray:
    return np.asarray(rows, dtype=np.uint8) % 2


def rref(mat: np.ndarray) -> tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over GF(2). Returns (matrix, pivot columns)."""
    a = np.array(mat, dtype=np.uint8) % 2
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        hit = np.nonzero(a[:, c])[0]
        hit = hit[hit != r]
        a[hit] ^= a[r]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(mat: np.ndarray) -> int:
    return len(rref(mat)[1])


def nullspace(mat: np.ndarray) -> np.ndarray:
    """Basis (as rows) of {x : mat @ x = 0} over GF(2)."""
    mat = np.atleast_2d(np.asarray(mat, dtype=np.uint8))
    n = mat.shape[1]
    red, pivots = rref(mat)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, p in enumerate(pivots):
            basis[i, p] = red[row, f]
    return basis


def bits_to_int(bits: Sequence[int]) -> int:
    """Pack a 0/1 sequence; position ``j`` becomes bit ``j``."""
    out = 0
    for j, b in enumerate(bits):
        if b:
            out |= 1 << j
    return out


def int_to_bits(x: int, n: int) -> tuple:
    return tuple((x >> j) & 1 for j in range(n))
