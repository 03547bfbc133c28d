"""Cohomology tables of kernel bundles on P^n, exact and closed-form.

Twisting the presentation 0 -> E(t) -> O(1+t)^b -> O(2+t)^a -> 0 and
taking sections turns h^0 and h^1 into the nullity and corank of one
multiplication-map matrix.  Rows 2..n-1 vanish because both line-bundle
neighbors in the long exact sequence vanish; those cells are certified
rather than computed.  The top row comes from the rank of the Serre-dual
map (multiplication by the transpose of phi in complementary degrees),
cross-checked against the value the Euler characteristic forces.

For a sheaf-surjective phi the two top-row paths agree everywhere.  For a
degenerate phi the presentation is not exact on the right and the dual
rank can overshoot; the table then stores the Euler-consistent value and
marks the cell "euler-forced", keeping the alternating-sum identity true
for arbitrary input.

The closed forms: h^0(E(t)) = a((n+2) C(n+t+1, n) - 2 C(n+t+2, n)) for
t > 0 and 0 otherwise; h^1 is an at t = -1, 2a at t = -2, else 0; middle
rows vanish identically; the top row vanishes for t >= -n-1 and follows
the Euler characteristic below that.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

from .exactfield import rank
from .polyspace import basis_dim, binom, chi_binom, mult_map
from .presentation import KernelBundlePresentation

PROV_EXACT = "exact-rank"
PROV_CERTIFIED = "certified-vanishing"
PROV_CLOSED = "closed-form"
PROV_EULER = "euler-forced"


def h_line(n: int, i: int, t: int) -> int:
    """h^i(P^n, O(t)): binomial at the ends, zero in the middle."""
    if not 0 <= i <= n:
        raise ValueError(f"cohomological index {i} outside 0..{n}")
    if i == 0:
        return binom(n + t, n)
    if i == n:
        return binom(-t - 1, n)
    return 0


def euler_characteristic(n: int, a: int, t: int) -> int:
    """chi(E(t)) for the rank-na kernel bundle, via additivity.

    (n+2)a * chi(O(1+t)) - 2a * chi(O(2+t)) with the signed polynomial
    binomials, so the value is correct at every integer twist.
    """
    return (n + 2) * a * chi_binom(n, 1 + t) - 2 * a * chi_binom(n, 2 + t)


def closed_form_cohomology(n: int, a: int, i: int, t: int) -> int:
    """Closed-form h^i(E(t)) for a generic kernel bundle on P^n."""
    if n < 2 or a < 1:
        raise ValueError(f"no kernel bundle for n = {n}, a = {a}")
    if not 0 <= i <= n:
        raise ValueError(f"cohomological index {i} outside 0..{n}")
    if i == 0:
        if t <= 0:
            return 0
        return a * ((n + 2) * binom(n + t + 1, n) - 2 * binom(n + t + 2, n))
    if i == n:
        if t >= -n - 1:
            return 0
        # below the vanishing range every lower row is zero, so the Euler
        # characteristic lands entirely in the top row
        value = euler_characteristic(n, a, t)
        if n % 2 == 1:
            value = -value
        return value
    if i == 1:
        if t == -1:
            return a * n
        if t == -2:
            return 2 * a
        return 0
    return 0


@dataclass(frozen=True)
class CohomologyTable:
    """Integer table h^i, i = 0..dim, over a twist window [t_min, t_max].

    cells maps (i, t) to a dimension; provenance records how each cell
    was obtained: "exact-rank", "certified-vanishing", "closed-form" or
    "euler-forced".
    """

    dim: int
    t_min: int
    t_max: int
    cells: dict[tuple[int, int], int] = dataclass_field(repr=False, default_factory=dict)
    provenance: dict[tuple[int, int], str] = dataclass_field(repr=False, default_factory=dict)

    def cell(self, i: int, t: int) -> int:
        return self.cells[(i, t)]

    def twists(self) -> range:
        return range(self.t_min, self.t_max + 1)

    def alternating_sum(self, t: int) -> int:
        total = 0
        for i in range(self.dim + 1):
            v = self.cells[(i, t)]
            total += v if i % 2 == 0 else -v
        return total

    def as_rows(self) -> list[list[int]]:
        """cells as nested lists rows[i][t - t_min]; empty when no twists."""
        if self.t_min > self.t_max:
            return []
        return [
            [self.cells[(i, t)] for t in self.twists()] for i in range(self.dim + 1)
        ]

    def provenance_rows(self) -> list[list[str]]:
        if self.t_min > self.t_max:
            return []
        return [
            [self.provenance[(i, t)] for t in self.twists()]
            for i in range(self.dim + 1)
        ]


def default_window(dim: int) -> tuple[int, int]:
    """Default twist window [-dim - 4, 4]: covers every nonzero closed-form
    feature plus two zero columns on each side."""
    return (-dim - 4, 4)


def cohomology_table_exact(
    kb: KernelBundlePresentation,
    t_range: tuple[int, int] | None = None,
    audit_vanishing: bool = False,
) -> CohomologyTable:
    """Exact cohomology table of E(t) over a twist window.

    Each column needs two ranks: the degree-(1+t) multiplication map for
    h^0 and h^1, and the Serre-dual transpose map for h^n.  Middle rows
    are certified zero; with audit_vanishing the vanishing of both
    line-bundle neighbors is re-derived per cell instead of trusted.

    Columns are independent; the computation is a pure function of
    (kb, t_range), so callers may parallelize over t if they wish.
    """
    n, a, phi = kb.n, kb.a, kb.phi
    b = kb.b_src
    if t_range is None:
        t_range = default_window(n)
    t_min, t_max = t_range
    cells: dict[tuple[int, int], int] = {}
    prov: dict[tuple[int, int], str] = {}
    phi_t = phi.transpose()
    for t in range(t_min, t_max + 1):
        m = mult_map(phi, 1 + t)
        r = rank(m)
        cells[(0, t)] = m.cols - r
        prov[(0, t)] = PROV_EXACT
        cells[(1, t)] = m.rows - r
        prov[(1, t)] = PROV_EXACT
        for i in range(2, n):
            if audit_vanishing:
                squeeze = kb.a_tgt * h_line(n, i - 1, 2 + t) + b * h_line(n, i, 1 + t)
                if squeeze != 0:
                    raise AssertionError(
                        f"vanishing certificate broken at (i, t) = ({i}, {t})"
                    )
            cells[(i, t)] = 0
            prov[(i, t)] = PROV_CERTIFIED
        if n >= 2:
            dual = mult_map(phi_t, -t - n - 3)
            h_top_dual = b * h_line(n, n, 1 + t) - rank(dual)
            forced = euler_characteristic(n, a, t) - (cells[(0, t)] - cells[(1, t)])
            if n % 2 == 1:
                forced = -forced
            if h_top_dual == forced:
                cells[(n, t)] = h_top_dual
                prov[(n, t)] = PROV_EXACT
            else:
                # phi is not sheaf-surjective; keep the table consistent
                # with the Euler characteristic of the two-term complex
                cells[(n, t)] = forced
                prov[(n, t)] = PROV_EULER
    return CohomologyTable(n, t_min, t_max, cells, prov)


def closed_form_table(
    n: int, a: int, t_range: tuple[int, int] | None = None
) -> CohomologyTable:
    """Table filled from closed_form_cohomology, for cross-checking."""
    if t_range is None:
        t_range = default_window(n)
    t_min, t_max = t_range
    cells = {}
    prov = {}
    for t in range(t_min, t_max + 1):
        for i in range(n + 1):
            cells[(i, t)] = closed_form_cohomology(n, a, i, t)
            prov[(i, t)] = PROV_CLOSED
    return CohomologyTable(n, t_min, t_max, cells, prov)
