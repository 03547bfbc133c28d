"""Graded pieces of polynomial rings and their multiplication maps.

Monomial bases of R_d = K[x_0..x_n]_d are enumerated once, in graded
reverse lexicographic order with x_0 > x_1 > ... > x_n, and that order is
fixed forever: matrix columns, kernel bases and serialized reports all
refer to it.  A matrix of linear forms phi induces, in each degree m, a
linear map H^0(O(m))^b -> H^0(O(m+1))^a whose matrix mult_map assembles
from shift tables.

Hilbert functions of quotient rings come from graded Betti data: for a
complete intersection the twists are the Koszul sums of sub-multisets of
the degrees.  Normal forms modulo an ideal are computed degree by degree
from a reduced row echelon basis of the ideal's graded piece; monomials
outside the pivot set represent the quotient, so no Groebner machinery is
needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import TYPE_CHECKING

import numpy as np

from .exactfield import DenseMatrix, FieldSpec, rref

if TYPE_CHECKING:  # pragma: no cover - annotations only
    from .presentation import LinearFormMatrix
    from .restriction import ACMVarietyDescriptor


def binom(m: int, k: int) -> int:
    """Binomial coefficient, zero outside the combinatorial range."""
    if k < 0 or m < k:
        return 0
    return math.comb(m, k)


def chi_binom(n: int, k: int) -> int:
    """Polynomial extension of C(n + k, n): (k+1)(k+2)...(k+n) / n!.

    Agrees with binom(n + k, n) for k >= 0, vanishes for -n <= k <= -1,
    and equals (-1)^n * C(-k-1, n) for k <= -n - 1.  Always an integer.
    """
    num = 1
    for i in range(1, n + 1):
        num *= k + i
    return num // math.factorial(n)


def basis_dim(n: int, d: int) -> int:
    """dim R_d for n + 1 variables; zero in negative degrees."""
    return binom(n + d, n)


@lru_cache(maxsize=None)
def _monomials(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    # grevlex-descending: group by ascending exponent of the last variable
    if d < 0:
        return ()
    if n == 0:
        return ((d,),)
    out: list[tuple[int, ...]] = []
    for k in range(d + 1):
        for m in _monomials(n - 1, d - k):
            out.append(m + (k,))
    return tuple(out)


@lru_cache(maxsize=None)
def _monomial_index(n: int, d: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(_monomials(n, d))}


@dataclass(frozen=True)
class MonomialBasis:
    """Ordered monomial basis of R_d, exponent vectors of length n + 1."""

    n: int
    d: int
    monomials: tuple[tuple[int, ...], ...]

    def index(self, exponent: tuple[int, ...]) -> int:
        return _monomial_index(self.n, self.d)[exponent]

    def __len__(self):
        return len(self.monomials)


def monomial_basis(n: int, d: int) -> MonomialBasis:
    if n < 1:
        raise ValueError(f"need at least two variables, got n = {n}")
    return MonomialBasis(n, d, _monomials(n, d))


@lru_cache(maxsize=None)
def _shift_table(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """shift[k][q] = index of (q-th degree-d monomial) * x_k in degree d+1."""
    src = _monomials(n, d)
    tgt_index = _monomial_index(n, d + 1)
    table = []
    for k in range(n + 1):
        row = []
        for mono in src:
            bumped = list(mono)
            bumped[k] += 1
            row.append(tgt_index[tuple(bumped)])
        table.append(tuple(row))
    return tuple(table)


def mult_map(phi: "LinearFormMatrix", m: int) -> DenseMatrix:
    """Matrix of H^0(O(m))^b_src -> H^0(O(m+1))^a_tgt induced by phi.

    Block (i, j) is multiplication by the linear form phi[i][j].  Rows and
    columns follow the fixed monomial order within each block; blocks are
    stacked row-major.  m < 0 gives a matrix with zero columns.
    """
    n = phi.n
    nsrc = basis_dim(n, m)
    ntgt = basis_dim(n, m + 1)
    out = DenseMatrix.zeros(phi.a_tgt * ntgt, phi.b_src * nsrc, phi.field)
    if nsrc == 0 or ntgt == 0:
        return out
    shifts = _shift_table(n, m)
    rows_idx = [np.asarray(s, dtype=np.intp) for s in shifts]
    cols_idx = np.arange(nsrc, dtype=np.intp)
    for i in range(phi.a_tgt):
        for j in range(phi.b_src):
            block = out.data[i * ntgt : (i + 1) * ntgt, j * nsrc : (j + 1) * nsrc]
            for k in range(n + 1):
                c = phi.coeffs[i, j, k]
                if c == 0:
                    continue
                block[rows_idx[k], cols_idx] += c
    if phi.field.is_prime:
        out.data %= phi.field.p
    return out


@dataclass(frozen=True)
class ResolutionDegreeData:
    """Twists of a graded free resolution of a quotient ring R/I.

    betti[i - 1] lists the twists n_j^i of the i-th free module F_i, with
    multiplicity, sorted ascending.  F_0 = R is implicit.
    """

    n: int
    betti: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for twists in self.betti:
            for t in twists:
                if t < 1:
                    raise ValueError(f"resolution twist {t} < 1")
            if tuple(sorted(twists)) != twists:
                raise ValueError("twists must be sorted ascending")

    @property
    def c(self) -> int:
        """Length of the resolution (codimension for a complete intersection)."""
        return len(self.betti)


def koszul_degree_data(n: int, degrees: tuple[int, ...]) -> ResolutionDegreeData:
    """Koszul resolution twists for a complete intersection of the given degrees.

    The i-th free module has one twist for every i-element sub-multiset:
    the sum of the chosen degrees.
    """
    degrees = tuple(degrees)
    for e in degrees:
        if e < 1:
            raise ValueError(f"complete intersection degree {e} < 1")
    betti = []
    for i in range(1, len(degrees) + 1):
        twists = sorted(sum(sub) for sub in combinations(degrees, i))
        betti.append(tuple(twists))
    return ResolutionDegreeData(n, tuple(betti))


def hilbert_function(res: ResolutionDegreeData, k: int) -> int:
    """dim (R/I)_k from resolution degree data, truncated binomials.

    Alternating sum C(n+k, n) - sum_i (-1)^(i+1) sum_j C(n+k-n_j^i, n)
    with C(m, n) = 0 for m < n.
    """
    n = res.n
    total = binom(n + k, n)
    for i, twists in enumerate(res.betti, start=1):
        sign = -1 if i % 2 == 1 else 1
        for t in twists:
            total += sign * binom(n + k - t, n)
    return total


def hilbert_polynomial(res: ResolutionDegreeData, k: int) -> int:
    """Hilbert polynomial value at k: same sum with signed binomials.

    For an arithmetically Cohen-Macaulay quotient this equals the sheaf
    Euler characteristic chi(O_X(k)) at every integer k.
    """
    n = res.n
    total = chi_binom(n, k)
    for i, twists in enumerate(res.betti, start=1):
        sign = -1 if i % 2 == 1 else 1
        for t in twists:
            total += sign * chi_binom(n, k - t)
    return total


class RegularityError(RuntimeError):
    """Quotient ring dimensions disagree with the resolution degree data."""


@dataclass(frozen=True)
class QuotientPiece:
    """Degree-k piece of R/I: surviving monomials and the reduction matrix.

    monomial_indices are the non-pivot columns of the RREF of I_k; they
    index monomials of R_k that represent a basis of (R/I)_k.  nf maps a
    coefficient vector in R_k to its normal-form coordinates.
    """

    k: int
    monomial_indices: tuple[int, ...]
    nf: DenseMatrix


def _quotient_piece(x: "ACMVarietyDescriptor", k: int) -> QuotientPiece:
    n = x.n
    field = x.field
    nk = basis_dim(n, k)
    span_rows = []
    for e_deg, coeff in zip(x.degrees, x.forms):
        shift = k - e_deg
        if shift < 0:
            continue
        form_basis = _monomials(n, e_deg)
        tgt_index = _monomial_index(n, k)
        for u in _monomials(n, shift):
            row = np.zeros(nk, dtype=coeff.dtype)
            for w, c in zip(form_basis, coeff):
                if c == 0:
                    continue
                prod = tuple(a + b for a, b in zip(w, u))
                row[tgt_index[prod]] += c
            span_rows.append(row)
    if span_rows:
        data = np.vstack(span_rows)
        if field.is_prime:
            data %= field.p
        span = DenseMatrix(len(span_rows), nk, field, data)
        red, piv = rref(span)
    else:
        red, piv = None, ()
    pivset = set(piv)
    free = tuple(c for c in range(nk) if c not in pivset)
    expected = hilbert_function(x.res, k)
    if len(free) != expected:
        raise RegularityError(
            f"degree {k}: quotient dimension {len(free)} != {expected} predicted "
            "by the resolution data; the chosen forms are not a regular sequence"
        )
    nf = DenseMatrix.zeros(len(free), nk, field)
    one = 1 if field.is_prime else Fraction(1)
    for r, c in enumerate(free):
        nf.data[r, c] = one
    # pivot monomial reduces to minus the free part of its echelon row
    for r, c in enumerate(piv):
        for q, f in enumerate(free):
            v = red.data[r, f]
            if field.is_prime:
                nf.data[q, c] = (-int(v)) % field.p
            else:
                nf.data[q, c] = -v
    return QuotientPiece(k, free, nf)


def quotient_piece(x: "ACMVarietyDescriptor", k: int) -> QuotientPiece:
    """Cached degree-k normal-form data for a variety with explicit forms."""
    cache = x._nf_cache
    if k not in cache:
        cache[k] = _quotient_piece(x, k)
    return cache[k]


def mult_map_on_X(phi: "LinearFormMatrix", m: int, x: "ACMVarietyDescriptor") -> DenseMatrix:
    """Matrix of (R_X)_m^b_src -> (R_X)_(m+1)^a_tgt in normal-form bases.

    The basis of (R_X)_k is the set of monomials outside the echelon basis
    of (I_X)_k, included into R_k as themselves.  Each block multiplies by
    a linear form on the ambient space and reduces to normal form.
    """
    if x.forms is None:
        from .restriction import ExactModeError

        raise ExactModeError("variety has no explicit forms; exact mode unavailable")
    if phi.n != x.n or phi.field != x.field:
        raise ValueError("phi and variety live over different ambient data")
    src = quotient_piece(x, m) if m >= 0 else None
    tgt = quotient_piece(x, m + 1) if m + 1 >= 0 else None
    ncols = len(src.monomial_indices) if src else 0
    nrows = len(tgt.monomial_indices) if tgt else 0
    out = DenseMatrix.zeros(phi.a_tgt * nrows, phi.b_src * ncols, phi.field)
    if ncols == 0 or nrows == 0:
        return out
    n = phi.n
    shifts = _shift_table(n, m)
    src_cols = np.asarray(src.monomial_indices, dtype=np.intp)
    ntgt_full = basis_dim(n, m + 1)
    for i in range(phi.a_tgt):
        for j in range(phi.b_src):
            full = np.zeros((ntgt_full, ncols), dtype=out.data.dtype)
            for k in range(n + 1):
                c = phi.coeffs[i, j, k]
                if c == 0:
                    continue
                rows_idx = np.asarray(shifts[k], dtype=np.intp)[src_cols]
                full[rows_idx, np.arange(ncols)] += c
            block = tgt.nf.data @ full
            if phi.field.is_prime:
                block %= phi.field.p
            out.data[i * nrows : (i + 1) * nrows, j * ncols : (j + 1) * ncols] = block
    return out
