"""Exact dense linear algebra over a prime field or the rationals.

Everything downstream (multiplication-map matrices, cohomology tables,
stabilizer systems) reduces to ranks and kernels computed here, so this
module is deliberately small and deterministic.  Prime-field matrices are
stored as int64 numpy arrays with entries reduced to [0, p); the rationals
path keeps Fraction entries in object arrays and exists for small
prime-independent spot checks, not for speed.

Row reduction always produces the reduced row echelon form.  RREF is unique
for a fixed column order, so ranks and kernel bases are reproducible
bit-for-bit across platforms regardless of pivot search details.

The random stream is SplitMix64, fixed here by its three 64-bit constants.
A (seed, counter) pair determines every draw, so any sampled object can be
reconstructed from the numbers recorded in a report.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

DEFAULT_PRIME = 32003

# SplitMix64: draw k (counting from 1) mixes seed + k * gamma.
_SM_GAMMA = 0x9E3779B97F4A7C15
_SM_MIX1 = 0xBF58476D1CE4E5B9
_SM_MIX2 = 0x94D049BB133111EB
_U64 = (1 << 64) - 1

# pivot inversion uses pow(x, p - 2, p); row updates form products < p**2,
# which must stay inside int64
_MAX_PRIME = 1 << 31

# uniform sampling below this modulus is rejected: genericity arguments need
# the field to be large enough that random matrices miss the bad locus
_MIN_SAMPLING_PRIME = 101


class SamplingError(ValueError):
    """Uniform sampling requested over a field that does not support it."""


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: a prime field F_p or the rationals.

    kind is "prime" or "rationals"; p holds the modulus in the prime case
    and None otherwise.
    """

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "prime":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"modulus {self.p!r} is not prime")
            if self.p >= _MAX_PRIME:
                raise ValueError(f"modulus {self.p} too large for int64 arithmetic")
        elif self.kind == "rationals":
            if self.p is not None:
                raise ValueError("rationals take no modulus")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @staticmethod
    def prime(p: int = DEFAULT_PRIME) -> "FieldSpec":
        return FieldSpec("prime", p)

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("rationals")

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    def element(self, value) -> int | Fraction:
        """Canonical representative of a scalar in this field."""
        if self.is_prime:
            return int(value) % self.p
        return Fraction(value)


class SeededRng:
    """Deterministic 64-bit stream, SplitMix64 with an explicit counter.

    Draw number k (1-based) returns mix64(seed + k * 0x9E3779B97F4A7C15)
    where mix64 is the standard SplitMix64 finalizer.  The counter equals
    the number of draws made, so (seed, counter) fully describes the state.
    """

    def __init__(self, seed: int, counter: int = 0):
        self.seed = seed & _U64
        self.counter = counter

    def next_u64(self) -> int:
        self.counter += 1
        z = (self.seed + self.counter * _SM_GAMMA) & _U64
        z = ((z ^ (z >> 30)) * _SM_MIX1) & _U64
        z = ((z ^ (z >> 27)) * _SM_MIX2) & _U64
        return z ^ (z >> 31)

    def state(self) -> tuple[int, int]:
        return (self.seed, self.counter)

    def __repr__(self):
        return f"SeededRng(seed={self.seed}, counter={self.counter})"


def random_field_element(rng: SeededRng, field: FieldSpec) -> int:
    """Uniform element of F_p; advances the counter by exactly one draw.

    The value is next_u64() mod p.  The modulo bias is below p / 2**64 and
    is irrelevant for genericity sampling.  Rationals and small primes are
    refused: sampling-based genericity arguments need p >= 101.
    """
    if not field.is_prime:
        raise SamplingError("uniform sampling is only defined over prime fields")
    if field.p < _MIN_SAMPLING_PRIME:
        raise SamplingError(
            f"sampling needs a prime >= {_MIN_SAMPLING_PRIME}, got {field.p}"
        )
    return rng.next_u64() % field.p


class DenseMatrix:
    """Dense matrix with exact entries over a FieldSpec.

    data is a 2-D numpy array: int64 with entries in [0, p) over a prime
    field, object dtype holding Fractions over the rationals.
    """

    __slots__ = ("rows", "cols", "field", "data")

    def __init__(self, rows: int, cols: int, field: FieldSpec, data: np.ndarray):
        if data.shape != (rows, cols):
            raise ValueError(f"shape mismatch: {data.shape} vs ({rows}, {cols})")
        self.rows = rows
        self.cols = cols
        self.field = field
        self.data = data

    @staticmethod
    def zeros(rows: int, cols: int, field: FieldSpec) -> "DenseMatrix":
        if field.is_prime:
            data = np.zeros((rows, cols), dtype=np.int64)
        else:
            data = np.full((rows, cols), Fraction(0), dtype=object)
        return DenseMatrix(rows, cols, field, data)

    @staticmethod
    def identity(size: int, field: FieldSpec) -> "DenseMatrix":
        m = DenseMatrix.zeros(size, size, field)
        one = 1 if field.is_prime else Fraction(1)
        for i in range(size):
            m.data[i, i] = one
        return m

    @staticmethod
    def from_rows(entries, field: FieldSpec) -> "DenseMatrix":
        """Build from a nested sequence of scalars, reducing to canonical form."""
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        m = DenseMatrix.zeros(rows, cols, field)
        for i, row in enumerate(entries):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                m.data[i, j] = field.element(v)
        return m

    @property
    def entries(self) -> list:
        """Entries in row-major order (canonical representatives)."""
        return [self.data[i, j] for i in range(self.rows) for j in range(self.cols)]

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.field == other.field
            and bool(np.array_equal(self.data, other.data))
        )

    def __repr__(self):
        return f"DenseMatrix({self.rows}x{self.cols} over {self.field.kind})"


def transpose(m: DenseMatrix) -> DenseMatrix:
    return DenseMatrix(m.cols, m.rows, m.field, m.data.T.copy())


def matmul(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    if a.cols != b.rows or a.field != b.field:
        raise ValueError("incompatible matmul operands")
    prod = a.data @ b.data if a.cols else DenseMatrix.zeros(a.rows, b.cols, a.field).data
    if a.field.is_prime:
        prod = prod % a.field.p
    return DenseMatrix(a.rows, b.cols, a.field, prod)


def _rank_mod(a: np.ndarray, p: int) -> int:
    """Rank via forward elimination mod p; destroys its copy of a."""
    a = a % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        pivot_row = (a[r, c:] * inv) % p
        below = np.nonzero(a[r + 1 :, c])[0]
        if below.size:
            idx = below + r + 1
            a[idx, c:] = (a[idx, c:] - np.outer(a[idx, c], pivot_row)) % p
        r += 1
    return r


def _rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p with pivot column list."""
    a = a % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def _rref_frac(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """RREF over the rationals; same pivot discipline as the mod-p path."""
    a = a.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = None
        for i in range(r, rows):
            if a[i, c] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: DenseMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.field.is_prime:
        return _rank_mod(m.data, m.field.p)
    return len(_rref_frac(m.data)[1])


def rref(m: DenseMatrix) -> tuple[DenseMatrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns.

    The result is canonical: it depends only on the row space and the
    column order, never on pivot search details.
    """
    if m.rows == 0 or m.cols == 0:
        return DenseMatrix(m.rows, m.cols, m.field, m.data.copy()), ()
    if m.field.is_prime:
        red, piv = _rref_mod(m.data, m.field.p)
    else:
        red, piv = _rref_frac(m.data)
    return DenseMatrix(m.rows, m.cols, m.field, red), tuple(piv)


def kernel_basis(m: DenseMatrix) -> DenseMatrix:
    """Canonical basis of the right kernel, one column per free column.

    Basis vector for free column f has a 1 in position f and -RREF[r, f]
    in the position of the r-th pivot column.  Returned as a cols x nullity
    matrix whose columns are ordered by increasing free column index.
    """
    red, piv = rref(m)
    pivset = set(piv)
    free = [c for c in range(m.cols) if c not in pivset]
    k = DenseMatrix.zeros(m.cols, len(free), m.field)
    one = 1 if m.field.is_prime else Fraction(1)
    for j, f in enumerate(free):
        k.data[f, j] = one
        for r, c in enumerate(piv):
            v = red.data[r, f]
            if m.field.is_prime:
                k.data[c, j] = (-int(v)) % m.field.p
            else:
                k.data[c, j] = -v
    return k


def nullity(m: DenseMatrix) -> int:
    return m.cols - rank(m)
