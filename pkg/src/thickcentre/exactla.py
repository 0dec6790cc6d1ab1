"""Exact dense linear algebra over the prime field Z/p.

Matrices are plain ``numpy.int64`` arrays with entries reduced into
``[0, p)``. Vectors of a basis are stored as the *columns* of a 2-D array,
so a basis of a subspace of k^n has shape ``(n, dim)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import rref_inplace

MAX_PRIME = 32749


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The prime field of characteristic ``p``."""

    p: int = 101

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not is_prime(int(self.p)):
            raise ValueError(f"field characteristic must be prime, got {self.p!r}")
        if self.p > MAX_PRIME:
            # keeps every int64 dot product below overflow
            raise ValueError(f"prime {self.p} exceeds supported bound {MAX_PRIME}")


def as_mat(x, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    a = np.asarray(x, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    return np.mod(a, p)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.size == 0 or b.size == 0:
        return zeros(a.shape[0], b.shape[1])
    return np.mod(a @ b, p)


def rref_pivots(m: np.ndarray, p: int) -> tuple[np.ndarray, int, np.ndarray]:
    a = np.array(np.mod(m, p), dtype=np.int64, order="C")
    if a.size == 0:
        return a, 0, np.zeros(0, dtype=np.int64)
    r, piv = rref_inplace(a, p)
    return a, int(r), piv


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, int]:
    """Reduced row echelon form and rank."""
    a, r, _ = rref_pivots(m, p)
    return a, r


def rank(m: np.ndarray, p: int) -> int:
    return rref_pivots(m, p)[1]


def kernel_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the null space of ``a`` as columns, shape ``(cols, nullity)``."""
    a = np.asarray(a, dtype=np.int64)
    rows, cols = a.shape
    r_mat, r, piv = rref_pivots(a, p)
    pivset = set(int(c) for c in piv)
    free = [c for c in range(cols) if c not in pivset]
    basis = zeros(cols, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, pc in enumerate(piv):
            basis[pc, k] = (-r_mat[i, f]) % p
    return basis


def column_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Independent columns spanning the column space (canonical: rref of the transpose)."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.size == 0:
        return zeros(n, 0)
    rt, r, _ = rref_pivots(a.T, p)
    return np.ascontiguousarray(rt[:r].T)


def subspace_sum(*bases: np.ndarray, p: int, dim: int | None = None) -> np.ndarray:
    mats = [np.asarray(b, dtype=np.int64) for b in bases if b is not None]
    if not mats:
        if dim is None:
            raise ValueError("cannot infer ambient dimension of an empty sum")
        return zeros(dim, 0)
    n = mats[0].shape[0] if dim is None else dim
    for b in mats:
        if b.shape[0] != n:
            raise ValueError("subspaces live in different ambient spaces")
    return column_basis(np.hstack(mats) if mats else zeros(n, 0), p)


def subspace_equal(b1: np.ndarray, b2: np.ndarray, p: int) -> bool:
    if b1.shape[0] != b2.shape[0]:
        raise ValueError("subspaces live in different ambient spaces")
    return np.array_equal(column_basis(b1, p), column_basis(b2, p))


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.hstack([np.mod(a, p), identity(n)])
    red, r, piv = rref_pivots(aug, p)
    if n and (r < n or piv[n - 1] != n - 1):
        raise ZeroDivisionError("matrix is singular")
    return red[:, n:].copy()


class Solver:
    """Repeated solves of ``A x = b`` against a fixed ``A``.

    Stores an invertible ``E`` with ``E A`` in reduced row echelon form, so each
    right-hand side costs one matrix product.
    """

    def __init__(self, a: np.ndarray, p: int):
        a = np.asarray(a, dtype=np.int64)
        self.p = p
        self.shape = a.shape
        m, n = a.shape
        aug = np.hstack([np.mod(a, p), identity(m)])
        red, _, piv = rref_pivots(aug, p)
        self.pivots = np.array([c for c in piv if c < n], dtype=np.int64)
        self.rank = len(self.pivots)
        self.transform = red[:, n:].copy()

    def solve(self, b: np.ndarray) -> np.ndarray | None:
        """A solution (free variables zero) or ``None`` if some column is inconsistent."""
        b = np.asarray(b, dtype=np.int64)
        vec = b.ndim == 1
        if vec:
            b = b.reshape(-1, 1)
        if b.shape[0] != self.shape[0]:
            raise ValueError(f"rhs has {b.shape[0]} rows, expected {self.shape[0]}")
        y = matmul(self.transform, b, self.p)
        if np.any(y[self.rank:]):
            return None
        x = zeros(self.shape[1], b.shape[1])
        x[self.pivots] = y[: self.rank]
        return x[:, 0] if vec else x

    def consistent(self, b: np.ndarray) -> bool:
        b = np.asarray(b, dtype=np.int64).reshape(self.shape[0], -1)
        y = matmul(self.transform, b, self.p)
        return not np.any(y[self.rank:])


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Some ``x`` with ``a @ x == b (mod p)``, or ``None`` when inconsistent."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"dimension mismatch: A has {a.shape[0]} rows, b has {b.shape[0]}")
    return Solver(a, p).solve(b)
