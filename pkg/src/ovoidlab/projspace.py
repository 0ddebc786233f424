"""Points, lines and planes of PG(3,q) with full incidence tables.

Points are enumerated in lexicographic order of their normalized
coordinate 4-tuples (first nonzero coordinate scaled to 1, field elements
ordered by bitmask value).  Every downstream index inherits this order, so
reports and caches are reproducible for a fixed modulus table.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import DuplicatePoint, NotSkew, SamePoint, SizeGuard
from .gfield import FieldCtx

# Table sizes grow as q^4; anything past n = 8 is an accident.
SIZE_GUARD_N = 8


@dataclass(frozen=True)
class Point:
    index: int
    coords: tuple[int, int, int, int]


@dataclass(frozen=True)
class Line:
    index: int
    gens: tuple[int, int]          # lexicographically least generating pair
    pts: tuple[int, ...]           # sorted, length q+1
    mask: int                      # characteristic bitmask over point indices


@dataclass(frozen=True)
class Plane:
    index: int
    normal: tuple[int, int, int, int]
    pts: tuple[int, ...]           # sorted, length q^2+q+1
    mask: int


class GeometryTables:
    """Immutable indexed tables for one PG(3,q); all queries are pure."""

    def __init__(self, ctx: FieldCtx, points, lines, planes,
                 point_index, pair_to_line, point_to_lines):
        self.ctx = ctx
        self.q = ctx.size
        self.points = points
        self.lines = lines
        self.planes = planes
        self.point_index = point_index
        self.pair_to_line = pair_to_line
        self.point_to_lines = point_to_lines
        self.n_points = len(points)
        self.all_one = (1 << self.n_points) - 1

    # -- coordinate helpers ----------------------------------------------

    def normalize(self, vec) -> tuple[int, int, int, int]:
        for c in vec:
            if c:
                if c == 1:
                    return tuple(vec)
                s = self.ctx.inv(c)
                return tuple(self.ctx.mul(s, v) for v in vec)
        raise ValueError("zero vector has no projective point")

    def index_of(self, vec) -> int:
        return self.point_index[self.normalize(vec)]

    # -- incidence queries -------------------------------------------------

    def line_through(self, p1: int, p2: int) -> Line:
        if p1 == p2:
            raise SamePoint(f"point {p1} repeated")
        key = (p1, p2) if p1 < p2 else (p2, p1)
        return self.lines[self.pair_to_line[key]]

    def is_collinear(self, p1: int, p2: int, p3: int) -> bool:
        if len({p1, p2, p3}) != 3:
            raise DuplicatePoint("three distinct points required")
        return bool(self.line_through(p1, p2).mask >> p3 & 1)

    def _check_skew(self, l1: int, l2: int, l3: int) -> None:
        a, b, c = self.lines[l1], self.lines[l2], self.lines[l3]
        if a.mask & b.mask or a.mask & c.mask or b.mask & c.mask:
            raise NotSkew(f"lines {l1}, {l2}, {l3} are not pairwise skew")

    def _transversal_through(self, p: int, l2: Line, mask3: int) -> int | None:
        """Index of the line through p meeting l2 and the mask3 line, if any."""
        for x in l2.pts:
            li = self.pair_to_line[(p, x) if p < x else (x, p)]
            if self.lines[li].mask & mask3:
                return li
        return None

    def transversals(self, l1: int, l2: int, l3: int) -> list[int]:
        """The q+1 lines meeting each of three pairwise skew lines."""
        self._check_skew(l1, l2, l3)
        a, b, c = self.lines[l1], self.lines[l2], self.lines[l3]
        out = []
        for p in a.pts:
            t = self._transversal_through(p, b, c.mask)
            if t is not None:
                out.append(t)
        return sorted(set(out))

    def regulus(self, l1: int, l2: int, l3: int):
        """(R, R_opp): the unique regulus through the three lines and its
        opposite (their transversal set)."""
        opp = self.transversals(l1, l2, l3)
        reg = self.transversals(opp[0], opp[1], opp[2])
        return tuple(reg), tuple(opp)


def build_geometry(n: int, *, force: bool = False,
                   ctx: FieldCtx | None = None) -> GeometryTables:
    """Construct the complete PG(3,q) tables for q = 2^n."""
    if n < 1:
        raise SizeGuard("n must be >= 1")
    if n > SIZE_GUARD_N and not force:
        raise SizeGuard(f"n={n} exceeds the desk-scale guard ({SIZE_GUARD_N})")
    if ctx is None:
        ctx = FieldCtx(n)
    q = ctx.size

    # points in lex order of normalized coords
    points: list[Point] = []
    point_index: dict[tuple[int, int, int, int], int] = {}
    for vec in product(range(q), repeat=4):
        nz = next((c for c in vec if c), None)
        if nz != 1:
            continue
        idx = len(points)
        points.append(Point(idx, vec))
        point_index[vec] = idx
    npts = len(points)

    # lines: first unseen pair (i, j) is the lexicographically least
    # generating pair of its line
    mul = ctx.mul
    inv = ctx.inv
    lines: list[Line] = []
    pair_to_line: dict[tuple[int, int], int] = {}
    nonzero = range(1, q)
    for i in range(npts):
        u = points[i].coords
        for j in range(i + 1, npts):
            if (i, j) in pair_to_line:
                continue
            v = points[j].coords
            pts = [i, j]
            for c in nonzero:
                w = tuple(a ^ mul(c, b) for a, b in zip(u, v))
                # normalize in place
                f = next(x for x in w if x)
                if f != 1:
                    s = inv(f)
                    w = tuple(mul(s, x) for x in w)
                pts.append(point_index[w])
            pts.sort()
            li = len(lines)
            mask = 0
            for p in pts:
                mask |= 1 << p
            lines.append(Line(li, (pts[0], pts[1]), tuple(pts), mask))
            for a in range(q + 1):
                pa = pts[a]
                for b in range(a + 1, q + 1):
                    pair_to_line[(pa, pts[b])] = li

    point_to_lines: list[list[int]] = [[] for _ in range(npts)]
    for ln in lines:
        for p in ln.pts:
            point_to_lines[p].append(ln.index)
    point_to_lines = [sorted(ls) for ls in point_to_lines]

    # planes: normalized normals in lex order; points = zero set of the form
    mt = [[mul(a, b) for b in range(q)] for a in range(q)]
    planes: list[Plane] = []
    coords_list = [p.coords for p in points]
    for nvec in product(range(q), repeat=4):
        nz = next((c for c in nvec if c), None)
        if nz != 1:
            continue
        m0, m1, m2, m3 = (mt[c] for c in nvec)
        pts = []
        mask = 0
        for idx, (x0, x1, x2, x3) in enumerate(coords_list):
            if m0[x0] ^ m1[x1] ^ m2[x2] ^ m3[x3] == 0:
                pts.append(idx)
                mask |= 1 << idx
        planes.append(Plane(len(planes), nvec, tuple(pts), mask))

    return GeometryTables(ctx, points, lines, planes,
                          point_index, pair_to_line, point_to_lines)
