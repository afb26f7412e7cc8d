"""Dense GF(2) linear algebra and plain F2 chain complexes."""

from __future__ import annotations

import numpy as np


def gf2_row_echelon(M, n_pivot_cols=None):
    """Row-reduce a binary matrix over GF(2) with XOR row operations.

    Returns (R, pivot_cols) where pivot_cols has length equal to the rank.
    """
    R = (np.asarray(M, dtype=np.uint8) % 2).copy()
    if R.ndim != 2:
        R = R.reshape(1, -1)
    m, n = R.shape
    if n_pivot_cols is None:
        n_pivot_cols = n
    pivot_cols = []
    pivot_row = 0
    for col in range(n_pivot_cols):
        found = -1
        for row in range(pivot_row, m):
            if R[row, col]:
                found = row
                break
        if found == -1:
            continue
        if found != pivot_row:
            R[[pivot_row, found]] = R[[found, pivot_row]]
        for row in range(m):
            if row != pivot_row and R[row, col]:
                R[row] ^= R[pivot_row]
        pivot_cols.append(col)
        pivot_row += 1
    return R, pivot_cols


def gf2_rank(M) -> int:
    M = np.asarray(M, dtype=np.uint8)
    if M.size == 0:
        return 0
    return len(gf2_row_echelon(M)[1])


def gf2_kernel_basis(M) -> list[np.ndarray]:
    """Basis of the right kernel, deterministic via lexicographic pivots."""
    M = np.asarray(M, dtype=np.uint8)
    if M.size == 0:
        n = M.shape[1] if M.ndim == 2 else 0
        return [np.eye(n, dtype=np.uint8)[i] for i in range(n)]
    R, pivots = gf2_row_echelon(M)
    m, n = R.shape
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = np.zeros(n, dtype=np.uint8)
        v[free] = 1
        for r, pc in enumerate(pivots):
            if R[r, free]:
                v[pc] = 1
        basis.append(v)
    return basis


class NotAComplex(ValueError):
    pass


class F2ChainComplex:
    """Chain complex of F2 vector spaces given by generators and arrows."""

    def __init__(self, generators, entries, check=True):
        self.generators = list(generators)
        self.index = {g: i for i, g in enumerate(self.generators)}
        if len(self.index) != len(self.generators):
            raise ValueError("repeated generator names")
        acc: set = set()
        for s, t in entries:
            acc ^= {(s, t)}  # arrows are F2 coefficients: duplicates cancel
        self.entries = frozenset(acc)
        for s, t in self.entries:
            if s not in self.index or t not in self.index:
                raise ValueError(f"entry ({s},{t}) uses unknown generator")
        if check:
            self.validate()

    def matrix(self) -> np.ndarray:
        """D[i, j] = 1 iff generator j maps onto generator i."""
        n = len(self.generators)
        D = np.zeros((n, n), dtype=np.uint8)
        for s, t in self.entries:
            D[self.index[t], self.index[s]] ^= 1
        return D

    def validate(self):
        D = self.matrix()
        if D.size and ((D @ D) % 2).any():
            raise NotAComplex("differential does not square to zero")

    def homology_rank(self) -> int:
        n = len(self.generators)
        if n == 0:
            return 0
        r = gf2_rank(self.matrix())
        return n - 2 * r

    def homology_representatives(self) -> list[dict]:
        """Deterministic cycle representatives of a homology basis."""
        D = self.matrix()
        n = len(self.generators)
        if n == 0:
            return []
        kernel = gf2_kernel_basis(D)
        span = [D[:, j] for j in range(n) if D[:, j].any()]
        rank = gf2_rank(np.array(span, dtype=np.uint8)) if span else 0
        reps = []
        for v in kernel:
            stacked = np.array(span + [v], dtype=np.uint8)
            new_rank = gf2_rank(stacked)
            if new_rank > rank:
                span.append(v)
                rank = new_rank
                reps.append({self.generators[i]: 1 for i in range(n) if v[i]})
        return reps

    def __repr__(self):
        return f"F2ChainComplex({len(self.generators)} generators, {len(self.entries)} arrows)"
