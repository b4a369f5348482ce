"""Exact linear algebra over prime fields F_p.

Everything downstream (weight slices, Cech differentials, Cartier solves)
reduces to the primitives here: rank, kernel basis, linear solve, column-space
basis.  Matrices are dense numpy int64 arrays with entries kept as canonical
residues in [0, p).  p is capped at 251 so every scalar fits in a byte; the
checks in this package only ever use p in {2, 3, 5}.

Row reduction uses deterministic pivoting (first nonzero entry, scanning
columns left to right and rows top to bottom), so echelon forms and kernel
bases are bit-reproducible across runs.  Golden-file tests rely on this.
"""

from __future__ import annotations

import numpy as np

_SMALL_PRIMES = {2, 3, 5, 7, 11, 13}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n in _SMALL_PRIMES:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The field F_p, 2 <= p <= 251.  Elements are canonical residues."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p) or p > 251:
            raise ValueError(f"p must be a prime <= 251, got {p!r}")
        self.p = p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class FpMatrix:
    """Dense matrix over F_p.  Immutable by convention: operations return new
    matrices and never mutate `array` in place after construction."""

    def __init__(self, p: int, entries):
        self.field = p if isinstance(p, PrimeField) else PrimeField(p)
        a = np.array(entries, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {a.shape}")
        self.array = a % self.field.p

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def from_columns(cls, p: int, columns, nrows: int) -> "FpMatrix":
        """Stack vectors as columns; `columns` may be empty (gives nrows x 0)."""
        cols = list(columns)
        if not cols:
            return cls.zeros(p, nrows, 0)
        a = np.stack([np.asarray(c, dtype=np.int64) for c in cols], axis=1)
        if a.shape[0] != nrows:
            raise ValueError(f"column length {a.shape[0]} != nrows {nrows}")
        return cls(p, a)

    def column(self, j: int) -> np.ndarray:
        return self.array[:, j].copy()

    def hstack(self, other: "FpMatrix") -> "FpMatrix":
        if other.p != self.p or other.rows != self.rows:
            raise ValueError("hstack shape/field mismatch")
        return FpMatrix(self.p, np.hstack([self.array, other.array]))

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self.p, self.array.T)

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if other.p != self.p or self.cols != other.rows:
            raise ValueError("matmul shape/field mismatch")
        return FpMatrix(self.p, (self.array @ other.array) % self.p)

    def apply(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        return (self.array @ v) % self.p

    def is_zero(self) -> bool:
        return bool(np.all(self.array == 0))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpMatrix)
            and other.p == self.p
            and other.array.shape == self.array.shape
            and bool(np.array_equal(other.array, self.array))
        )

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, {self.rows}x{self.cols})"

    # -- elimination ------------------------------------------------------

    def rref(self) -> tuple["FpMatrix", list[int]]:
        """Reduced row echelon form and the list of pivot columns."""
        p = self.p
        a = self.array.copy()
        rows, cols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                a[[r, i]] = a[[i, r]]
            inv = pow(int(a[r, c]), p - 2, p)
            a[r] = (a[r] * inv) % p
            for k in np.nonzero(a[:, c])[0]:
                if k != r:
                    a[k] = (a[k] - a[k, c] * a[r]) % p
            pivots.append(c)
            r += 1
        return FpMatrix(p, a), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullity(self) -> int:
        return self.cols - self.rank()

    def cokernel_dim(self) -> int:
        return self.rows - self.rank()

    def kernel_basis(self) -> list[np.ndarray]:
        """Basis of ker(M), deterministic; len == cols - rank."""
        red, pivots = self.rref()
        p = self.p
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for f in free:
            v = np.zeros(self.cols, dtype=np.int64)
            v[f] = 1
            for i, c in enumerate(pivots):
                v[c] = (-red.array[i, f]) % p
            basis.append(v)
        return basis

    def solve(self, b) -> np.ndarray | None:
        """Some x with M x = b, or None if b is outside the column space."""
        b = np.asarray(b, dtype=np.int64) % self.p
        if b.shape != (self.rows,):
            raise ValueError(f"rhs length {b.shape} != rows {self.rows}")
        aug = FpMatrix(self.p, np.hstack([self.array, b.reshape(-1, 1)]))
        red, pivots = aug.rref()
        if pivots and pivots[-1] == self.cols:
            return None
        x = np.zeros(self.cols, dtype=np.int64)
        for i, c in enumerate(pivots):
            x[c] = red.array[i, self.cols]
        return x

    def column_space_pivots(self) -> list[int]:
        """Indices of a deterministic subset of columns forming an image basis."""
        return self.rref()[1]

    def contains_columns(self, other: "FpMatrix") -> bool:
        """True iff every column of `other` lies in the column space of self."""
        if other.rows != self.rows:
            raise ValueError("row count mismatch")
        return self.hstack(other).rank() == self.rank()

    def same_column_space(self, other: "FpMatrix") -> bool:
        return self.contains_columns(other) and other.contains_columns(self)
