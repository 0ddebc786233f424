"""GF(2) linear algebra over the point set: characteristic vectors, ranks,
the codes C (W(q)-lines) and D (dual grids), the radical-codimension
witness, and T-orbit sums.

Bit vectors are Python ints (bit i = point i); dense bitsets beat any
sparse representation at these sizes (|P| <= 4369 for q <= 16).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import EmptyMatrix, IndexOutOfRange, LengthMismatch
from .fibration import SingerContext
from .projspace import GeometryTables, Line
from .symplectic import SymplecticForm, enumerate_dual_grids, isotropic_lines


def char_vector(s, g: GeometryTables) -> int:
    """Characteristic bit vector of a point set."""
    acc = 0
    for p in s:
        if not 0 <= p < g.n_points:
            raise IndexOutOfRange(f"point index {p} out of range")
        acc |= 1 << p
    return acc


class BitMat:
    """Row span over GF(2) with a cached echelon form and rank.

    Appending rows invalidates the cache; the echelon uses highest-bit
    pivots so reduction is a simple left-to-right sweep.
    """

    def __init__(self, rows=(), width: int = 0):
        self.width = width
        self.rows: list[int] = []
        self._echelon: list[tuple[int, int]] | None = None
        for r in rows:
            self.append(r)

    def append(self, row: int) -> None:
        if row.bit_length() > self.width:
            raise LengthMismatch(
                f"row of {row.bit_length()} bits in a width-{self.width} matrix")
        self.rows.append(row)
        self._echelon = None

    def _build_echelon(self) -> list[tuple[int, int]]:
        if self._echelon is None:
            ech: list[tuple[int, int]] = []
            for r in self.rows:
                for piv, val in ech:
                    if (r >> piv) & 1:
                        r ^= val
                if r:
                    ech.append((r.bit_length() - 1, r))
                    ech.sort(key=lambda t: -t[0])
            self._echelon = ech
        return self._echelon

    @property
    def rank(self) -> int:
        return len(self._build_echelon())

    def reduce(self, v: int) -> int:
        for piv, val in self._build_echelon():
            if (v >> piv) & 1:
                v ^= val
        return v

    def contains(self, v: int) -> bool:
        if v.bit_length() > self.width:
            raise LengthMismatch("vector wider than the matrix")
        return self.reduce(v) == 0


def span_rank(m: BitMat) -> int:
    return m.rank


def in_span(v: int, m: BitMat) -> bool:
    return m.contains(v)


def code_C(f: SymplecticForm, g: GeometryTables) -> BitMat:
    """Generators of C: characteristic vectors of all W(q)-lines."""
    return BitMat((g.lines[li].mask for li in isotropic_lines(f, g)),
                  width=g.n_points)


def code_D(f: SymplecticForm, g: GeometryTables) -> BitMat:
    """Generators of D: characteristic vectors of all dual grids."""
    return BitMat((dg.point_mask(g) for dg in enumerate_dual_grids(f, g)),
                  width=g.n_points)


@dataclass(frozen=True)
class CodeSummary:
    dim_C: int
    dim_C_perp: int
    dim_D: int
    dim_pairwise_sum_span: int
    radical_codim: int

    def to_dict(self) -> dict:
        return {
            "dim_C": self.dim_C,
            "dim_C_perp": self.dim_C_perp,
            "dim_D": self.dim_D,
            "dim_pairwise_sum_span": self.dim_pairwise_sum_span,
            "radical_codim": self.radical_codim,
        }


def radical_codim_check(d: BitMat) -> tuple[int, int, int]:
    """(dim D, dim of the pairwise-sum span, codimension).

    The span of {row0 + rowi} equals the span of all pairwise sums, so a
    codimension of 1 witnesses that the sum of any two dual grids lies in
    the radical while no single dual grid does.
    """
    if not d.rows:
        raise EmptyMatrix("code_D matrix has no rows")
    dim_d = d.rank
    first = d.rows[0]
    sums = BitMat((first ^ r for r in d.rows[1:]), width=d.width)
    dim_sum = sums.rank
    return dim_d, dim_sum, dim_d - dim_sum


@lru_cache(maxsize=8)
def point_orbit_sums(sc: SingerContext) -> tuple[int, ...]:
    """For each point p, the GF(2) sum over k < q^2+1 of t^k(p)."""
    g = sc.geometry
    order = g.q * g.q + 1
    out = []
    t_perm = sc.t_perm
    for p in range(g.n_points):
        par = {}
        cur = p
        for _ in range(order):
            par[cur] = par.get(cur, 0) ^ 1
            cur = t_perm[cur]
        acc = 0
        for pt, bit in par.items():
            if bit:
                acc |= 1 << pt
        out.append(acc)
    return tuple(out)


def t_orbit_sum(l: Line, sc: SingerContext) -> int:
    """GF(2) sum of the q^2+1 images of the line's characteristic vector
    under powers of the T generator."""
    sums = point_orbit_sums(sc)
    acc = 0
    for p in l.pts:
        acc ^= sums[p]
    return acc
