"""Restriction of kernel bundles to complete intersections.

A complete intersection X in P^n cut by c forms (c <= n - 2, so X has
dimension d = n - c >= 2) is arithmetically Cohen-Macaulay, and sections
of O_X(k) are exactly the degree-k piece of its coordinate ring.  The
restricted presentation 0 -> E|_X(t) -> O_X(1+t)^b -> O_X(2+t)^a -> 0
stays exact, so h^0 and h^1 on X are again the nullity and corank of one
multiplication-map matrix, now in normal-form monomial bases.

Middle rows 2..d-1 vanish for every twist.  The proof tensors the Koszul
resolution of O_X with E and chases: each consulted ambient group is
H^(i+k)(P^n, E(t - n_j^k)) with index between 1 and n - 1, and such a
group vanishes for every twist when the index is >= 2, and for every
twist outside {-1, -2} when the index is 1.  The chase is recorded as a
symbolic trace, valid for all t simultaneously, with the finitely many
exceptional twists listed explicitly.

The bundle is ACM with respect to O_X(s) when rows 1..d-1 vanish at all
multiples of s; for s >= 3 the multiples never hit -1 or -2, which is the
whole point of re-embedding.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .exactfield import DenseMatrix, FieldSpec, SeededRng, rank, random_field_element
from .cohomology import (
    PROV_CERTIFIED,
    PROV_CLOSED,
    PROV_EXACT,
    PROV_EULER,
    CohomologyTable,
    closed_form_cohomology,
    cohomology_table_exact,
    h_line,
)
from .polyspace import (
    ResolutionDegreeData,
    basis_dim,
    hilbert_function,
    hilbert_polynomial,
    koszul_degree_data,
    monomial_basis,
    mult_map_on_X,
)
from .presentation import KernelBundlePresentation


class DimensionError(ValueError):
    """Variety dimension too small for the restriction theory."""


class ExactModeError(RuntimeError):
    """Operation needs explicit forms but the variety has only degree data."""


@dataclass(frozen=True)
class ACMVarietyDescriptor:
    """A complete intersection in P^n, or bare resolution degree data.

    mode "complete_intersection" carries the degrees and, when sampled or
    supplied, explicit forms as coefficient vectors over the fixed
    monomial bases; exact computations need those.  mode "degree_data"
    carries only the resolution twists and supports the combinatorial
    operations (Hilbert functions, vanishing certificates).
    """

    n: int
    mode: str
    res: ResolutionDegreeData
    degrees: tuple[int, ...] = ()
    forms: tuple[np.ndarray, ...] | None = None
    field: FieldSpec | None = None
    _nf_cache: dict = dataclass_field(
        default_factory=dict, repr=False, compare=False, hash=False
    )

    @property
    def codim(self) -> int:
        return self.res.c

    @property
    def d(self) -> int:
        """Dimension of the variety."""
        return self.n - self.res.c

    @property
    def exact_mode(self) -> bool:
        return self.forms is not None


def make_ci_variety(
    n: int,
    degrees: tuple[int, ...] | list[int],
    rng: SeededRng | None = None,
    field: FieldSpec | None = None,
) -> ACMVarietyDescriptor:
    """Complete intersection of the given degrees, generic when rng given.

    Requires d = n - len(degrees) >= 2.  With an rng, each form gets
    uniform coefficients; regularity of the resulting sequence is not
    assumed but verified against the Koszul Hilbert function the first
    time each graded piece is reduced.  Empty degrees give X = P^n, which
    always supports exact mode.
    """
    degrees = tuple(int(e) for e in degrees)
    if n < 2:
        raise DimensionError(f"ambient dimension n = {n} < 2")
    d = n - len(degrees)
    if d < 2:
        raise DimensionError(
            f"codimension {len(degrees)} leaves dimension {d} < 2 in P^{n}"
        )
    res = koszul_degree_data(n, degrees)
    if not degrees:
        return ACMVarietyDescriptor(
            n, "complete_intersection", res, (), (), field or FieldSpec.prime()
        )
    if rng is None:
        return ACMVarietyDescriptor(n, "complete_intersection", res, degrees, None, field)
    if field is None:
        field = FieldSpec.prime()
    forms = []
    for e in degrees:
        size = basis_dim(n, e)
        coeff = np.zeros(size, dtype=np.int64)
        for q in range(size):
            coeff[q] = random_field_element(rng, field)
        forms.append(coeff)
    return ACMVarietyDescriptor(
        n, "complete_intersection", res, degrees, tuple(forms), field
    )


def degree_data_variety(n: int, res: ResolutionDegreeData) -> ACMVarietyDescriptor:
    """Wrap bare resolution degree data; combinatorial operations only."""
    if n - res.c < 2:
        raise DimensionError(f"resolution leaves dimension {n - res.c} < 2")
    return ACMVarietyDescriptor(n, "degree_data", res)


@dataclass(frozen=True)
class ChaseCell:
    """One ambient cohomology group consulted by the vanishing chase.

    Stands for H^index(P^n, E(t + offset)) for every j, where offset runs
    over the listed twist offsets (0 for the initial cell, -n_j^k for the
    k-th resolution step).  justification is "index-1" (vanishes for
    t + offset outside {-1, -2}) or "middle" (vanishes identically).
    """

    index: int
    offsets: tuple[int, ...]
    justification: str


@dataclass(frozen=True)
class VanishingChaseTrace:
    """Symbolic certificate that H^target(X, E|_X(t)) = 0.

    Valid for every integer t not excluded; excluded_twists lists the
    finitely many exceptions (only the target row 1 has any).
    """

    target_index: int
    excluded_twists: tuple[int, ...]
    chain: tuple[ChaseCell, ...]
    verified: bool
    failures: tuple[tuple[int, int], ...] = ()


_VERIFY_SPAN = 12  # symbolic cells are spot-checked on t in [-span, span]


def _verify_chain(n: int, a: int, chain, excluded) -> tuple[bool, tuple]:
    failures = []
    for cell in chain:
        for off in cell.offsets:
            for t in range(-_VERIFY_SPAN, _VERIFY_SPAN + 1):
                if cell.justification == "index-1" and (t + off) in (-1, -2):
                    if t not in excluded:
                        failures.append((cell.index, t))
                    continue
                if closed_form_cohomology(n, a, cell.index, t + off) != 0:
                    failures.append((cell.index, t))
    return (not failures), tuple(failures)


def vanishing_certificate(
    x: ACMVarietyDescriptor, n: int, a: int
) -> tuple[VanishingChaseTrace, ...]:
    """Symbolic vanishing traces for rows 1..d-1 of the restricted table.

    Tensoring the resolution of O_X with E and splitting into short exact
    sequences, H^i(X, E(t)) injects into a chain of ambient groups:
    H^i(P^n, E(t)) and H^(i+k)(P^n, E(t - n_j^k)) for k = 1..c.  Every
    index lies in [1, n-1]; indices >= 2 vanish identically and index 1
    vanishes off twists {-1, -2}.  With c = 0 the chain degenerates to
    the single ambient cell.

    Purely combinatorial in the resolution twists, so degree-data
    varieties are fully supported.  Each trace is spot-verified against
    the closed forms; an unverified trace signals a bug, and is returned
    with its failures for diagnosis rather than raised.
    """
    if x.n != n:
        raise ValueError(f"variety lives in P^{x.n}, not P^{n}")
    d = x.d
    if d < 2:
        raise DimensionError(f"variety dimension {d} < 2")
    traces = []
    for i in range(1, d):
        chain = []
        excluded = (-1, -2) if i == 1 else ()
        just0 = "index-1" if i == 1 else "middle"
        chain.append(ChaseCell(i, (0,), just0))
        for k, twists in enumerate(x.res.betti, start=1):
            # index i + k is within 2..n-1: i <= d-1 and k <= c
            chain.append(ChaseCell(i + k, tuple(-t for t in twists), "middle"))
        ok, failures = _verify_chain(n, a, chain, excluded)
        traces.append(
            VanishingChaseTrace(i, excluded, tuple(chain), ok, failures)
        )
    return tuple(traces)


def line_cohomology_on_ci(x: ACMVarietyDescriptor, i: int, k: int) -> int:
    """Exact h^i(X, O_X(k)) for middle indices 1 <= i <= d - 1.

    Chases the Koszul resolution of O_X on P^n: every consulted group is
    line-bundle cohomology with index in [i, i + c] inside [1, n - 1],
    and all of those vanish, for any twist.  The function evaluates each
    one rather than trusting the range argument.
    """
    d = x.d
    if not 1 <= i <= d - 1:
        raise ValueError(f"index {i} outside the middle range 1..{d - 1}")
    total = h_line(x.n, i, k)
    for step, twists in enumerate(x.res.betti, start=1):
        for t in twists:
            total += h_line(x.n, i + step, k - t)
    return total


def structure_table(
    x: ACMVarietyDescriptor, t_range: tuple[int, int] | None = None
) -> CohomologyTable:
    """Cohomology table of O_X itself from the resolution degree data.

    h^0 is the Hilbert function, middle rows vanish (ACM), and the top
    row is forced by the Hilbert polynomial.  Works in degree-data mode.
    """
    d = x.d
    if t_range is None:
        t_range = (-d - 4, 4)
    t_min, t_max = t_range
    cells = {}
    prov = {}
    for t in range(t_min, t_max + 1):
        h0 = hilbert_function(x.res, t) if t >= 0 else 0
        cells[(0, t)] = h0
        prov[(0, t)] = PROV_CLOSED
        for i in range(1, d):
            assert line_cohomology_on_ci(x, i, t) == 0
            cells[(i, t)] = 0
            prov[(i, t)] = PROV_CERTIFIED
        forced = hilbert_polynomial(x.res, t) - h0
        if d % 2 == 1:
            forced = -forced
        cells[(d, t)] = forced
        prov[(d, t)] = PROV_EULER
    return CohomologyTable(d, t_min, t_max, cells, prov)


def restricted_euler_characteristic(
    x: ACMVarietyDescriptor, a: int, t: int
) -> int:
    """chi(E|_X(t)) = (n+2)a P_X(1+t) - 2a P_X(2+t)."""
    n = x.n
    return (n + 2) * a * hilbert_polynomial(x.res, 1 + t) - 2 * a * hilbert_polynomial(
        x.res, 2 + t
    )


def restricted_cohomology_table(
    kb: KernelBundlePresentation,
    x: ACMVarietyDescriptor,
    t_range: tuple[int, int] | None = None,
    audit_vanishing: bool = False,
) -> CohomologyTable:
    """Exact table of E|_X(t), rows 0..d, over a twist window.

    h^0 and h^1 come from the normal-form multiplication map; middle rows
    carry the certified vanishing; the top row h^d is forced by the Euler
    characteristic on X.  With c = 0 this is exactly the ambient table.
    Needs exact mode (explicit forms).
    """
    if kb.n != x.n:
        raise ValueError(f"bundle on P^{kb.n} but variety in P^{x.n}")
    if not x.exact_mode:
        raise ExactModeError("restricted table needs explicit forms")
    if x.codim == 0:
        return cohomology_table_exact(kb, t_range, audit_vanishing=audit_vanishing)
    d = x.d
    if t_range is None:
        t_range = (-d - 4, 4)
    t_min, t_max = t_range
    cells = {}
    prov = {}
    for t in range(t_min, t_max + 1):
        m = mult_map_on_X(kb.phi, 1 + t, x)
        r = rank(m)
        cells[(0, t)] = m.cols - r
        prov[(0, t)] = PROV_EXACT
        cells[(1, t)] = m.rows - r
        prov[(1, t)] = PROV_EXACT
        for i in range(2, d):
            if audit_vanishing:
                squeeze = kb.a_tgt * line_cohomology_on_ci(x, i - 1, 2 + t) + (
                    kb.b_src
                ) * line_cohomology_on_ci(x, i, 1 + t)
                if squeeze != 0:
                    raise AssertionError(
                        f"restricted vanishing broken at (i, t) = ({i}, {t})"
                    )
            cells[(i, t)] = 0
            prov[(i, t)] = PROV_CERTIFIED
        forced = restricted_euler_characteristic(x, kb.a, t)
        for i in range(d):
            v = cells[(i, t)]
            forced -= v if i % 2 == 0 else -v
        if d % 2 == 1:
            forced = -forced
        cells[(d, t)] = forced
        prov[(d, t)] = PROV_EULER
    return CohomologyTable(d, t_min, t_max, cells, prov)


@dataclass(frozen=True)
class AcmVerdict:
    """Outcome of the ACM-with-respect-to-O_X(s) check on a table.

    is_acm is None when the verdict is inconclusive: some multiple of s
    among the exceptional twists {-1, -2} falls outside the window, so
    the symbolic extension cannot take over.  witnesses lists nonzero
    cells (i, t) found in the window; checked_twists the multiples
    examined.
    """

    s: int
    dim: int
    is_acm: bool | None
    witnesses: tuple[tuple[int, int], ...]
    checked_twists: tuple[int, ...]
    missing_twists: tuple[int, ...]


def acm_with_respect_to_s(table: CohomologyTable, s: int, d: int) -> AcmVerdict:
    """Decide vanishing of rows 1..d-1 at all multiples of s.

    Multiples inside the window are read off the table.  Outside the
    window the symbolic certificate covers every cell except row 1 at
    twists -1 and -2, so the verdict extends to all of Z as long as the
    reachable exceptional twists (-1 needs s = 1, -2 needs s <= 2) lie
    inside the window; otherwise the verdict is inconclusive.
    """
    if s < 1:
        raise ValueError(f"re-embedding degree s = {s} < 1")
    if d != table.dim:
        raise ValueError(f"table has dimension {table.dim}, expected {d}")
    checked = [t for t in table.twists() if t % s == 0]
    witnesses = []
    for t in checked:
        for i in range(1, d):
            if table.cell(i, t) != 0:
                witnesses.append((i, t))
    missing = [
        t for t in (-1, -2) if t % s == 0 and not table.t_min <= t <= table.t_max
    ]
    if witnesses:
        verdict: bool | None = False
    elif missing:
        verdict = None
    else:
        verdict = True
    return AcmVerdict(
        s, d, verdict, tuple(witnesses), tuple(checked), tuple(missing)
    )
