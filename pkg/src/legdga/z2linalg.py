"""Exact linear algebra over GF(2) with rows packed into Python ints."""

from __future__ import annotations

from dataclasses import dataclass


class LinalgError(ValueError):
    pass


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits_of(x: int):
    """Indices of set bits, lowest first."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def rank_of_rows(rows) -> int:
    """Rank of a list of int bitsets.  Pivots on the lowest set bit."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            low = (r & -r).bit_length() - 1
            if low not in basis:
                basis[low] = r
                break
            r ^= basis[low]
    return len(basis)


@dataclass(frozen=True)
class Z2Matrix:
    """``rows[j]`` has bit ``i`` set iff entry (j, i) is 1."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise LinalgError(f"expected {self.nrows} rows, got {len(self.rows)}")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise LinalgError("row has bits beyond the column count")

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> Z2Matrix:
        ncols = nrows if ncols is None else ncols
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> Z2Matrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_lists(cls, entries) -> Z2Matrix:
        entries = [list(r) for r in entries]
        ncols = len(entries[0]) if entries else 0
        rows = tuple(sum((b & 1) << i for i, b in enumerate(r)) for r in entries)
        return cls(len(entries), ncols, rows)

    @classmethod
    def from_columns(cls, columns, nrows: int) -> Z2Matrix:
        rows = [0] * nrows
        for i, col in enumerate(columns):
            for j in bits_of(col):
                rows[j] |= 1 << i
        return cls(nrows, len(columns), tuple(rows))

    def __getitem__(self, idx: tuple[int, int]) -> int:
        j, i = idx
        return (self.rows[j] >> i) & 1

    def columns(self) -> list[int]:
        cols = [0] * self.ncols
        for j, r in enumerate(self.rows):
            for i in bits_of(r):
                cols[i] |= 1 << j
        return cols

    def to_lists(self) -> list[list[int]]:
        return [[(r >> i) & 1 for i in range(self.ncols)] for r in self.rows]

    def transpose(self) -> Z2Matrix:
        return Z2Matrix(self.ncols, self.nrows, tuple(self.columns()))

    def __matmul__(self, other: Z2Matrix) -> Z2Matrix:
        if self.ncols != other.nrows:
            raise LinalgError("dimension mismatch in product")
        out = []
        for r in self.rows:
            acc = 0
            for t in bits_of(r):
                acc ^= other.rows[t]
            out.append(acc)
        return Z2Matrix(self.nrows, other.ncols, tuple(out))

    def __add__(self, other: Z2Matrix) -> Z2Matrix:
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise LinalgError("dimension mismatch in sum")
        return Z2Matrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def is_zero(self) -> bool:
        return not any(self.rows)

    def submatrix(self, row_idx, col_idx) -> Z2Matrix:
        row_idx, col_idx = list(row_idx), list(col_idx)
        rows = []
        for j in row_idx:
            r = self.rows[j]
            rows.append(sum(((r >> i) & 1) << t for t, i in enumerate(col_idx)))
        return Z2Matrix(len(row_idx), len(col_idx), tuple(rows))


def rank(m: Z2Matrix) -> int:
    return rank_of_rows(m.rows)


def inverse(m: Z2Matrix) -> Z2Matrix:
    """Gauss-Jordan inverse; raises ``LinalgError`` on a singular matrix."""
    n = m.nrows
    if m.ncols != n:
        raise LinalgError("only square matrices are invertible")
    aug = [r | (1 << (n + j)) for j, r in enumerate(m.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if (aug[r] >> col) & 1), None)
        if piv is None:
            raise LinalgError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(n):
            if r != col and (aug[r] >> col) & 1:
                aug[r] ^= aug[col]
    return Z2Matrix(n, n, tuple(r >> n for r in aug))


def elementary(n: int, k: int, l: int) -> Z2Matrix:
    """Matrix of the handleslide map e_k -> e_k + e_l (0-based indices)."""
    rows = [1 << i for i in range(n)]
    rows[l] |= 1 << k
    return Z2Matrix(n, n, tuple(rows))


@dataclass(frozen=True)
class ChainComplexZ2:
    """Graded Z2 complex.  ``d[j, i]`` is the coefficient of e_j in d e_i."""

    labels: tuple[str, ...]
    degrees: tuple[int, ...]
    d: Z2Matrix

    def __post_init__(self):
        n = len(self.degrees)
        if len(self.labels) != n or self.d.nrows != n or self.d.ncols != n:
            raise LinalgError("basis and differential sizes disagree")

    @classmethod
    def from_columns(cls, degrees, columns, labels=None) -> ChainComplexZ2:
        degrees = tuple(degrees)
        if labels is None:
            labels = tuple(f"e{i + 1}" for i in range(len(degrees)))
        return cls(tuple(labels), degrees, Z2Matrix.from_columns(list(columns), len(degrees)))

    @property
    def size(self) -> int:
        return len(self.degrees)

    def coeff(self, i: int, j: int) -> int:
        """<d e_i, e_j> with 0-based indices."""
        return self.d[j, i]

    def is_square_zero(self) -> bool:
        return (self.d @ self.d).is_zero()

    def has_degree_minus_one(self) -> bool:
        return all(self.degrees[i] == self.degrees[j] + 1
                   for j, r in enumerate(self.d.rows) for i in bits_of(r))

    def is_strictly_lower_triangular(self) -> bool:
        return all(i < j for j, r in enumerate(self.d.rows) for i in bits_of(r))

    def graded_ranks(self) -> dict[int, int]:
        """Degree k -> rank of d restricted to the degree-k generators."""
        out = {}
        for deg in sorted(set(self.degrees)):
            cols = [i for i, g in enumerate(self.degrees) if g == deg]
            out[deg] = rank(self.d.submatrix(range(self.size), cols))
        return out


def homology_dims(c: ChainComplexZ2) -> dict[int, int]:
    """dim H_k = dim ker(d on degree k) - rank(d from degree k+1), for every degree present."""
    if not c.is_square_zero():
        raise LinalgError("d^2 != 0; homology is undefined")
    ranks = c.graded_ranks()
    out = {}
    for deg in sorted(set(c.degrees)):
        dim = c.degrees.count(deg)
        out[deg] = dim - ranks.get(deg, 0) - ranks.get(deg + 1, 0)
    return out


def conjugate(c: ChainComplexZ2, h: Z2Matrix) -> ChainComplexZ2:
    """Differential h d h^{-1} on the same graded basis."""
    hinv = inverse(h)
    for j, r in enumerate(h.rows):
        for i in bits_of(r):
            if c.degrees[i] != c.degrees[j]:
                raise LinalgError("conjugating map does not preserve degree")
    return ChainComplexZ2(c.labels, c.degrees, h @ c.d @ hinv)
