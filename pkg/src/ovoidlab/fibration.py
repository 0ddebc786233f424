"""Singer group machinery: the cyclic generator from GF(q^4) multiplication,
its subgroups T (order q^2+1) and K (order q+1), T-orbit fibrations,
common-tangent spreads, regularity checks, K-stabilizers and K-orbit
fibrations, plus a budgeted search for regular spreads inside a complex."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (NotAFibration, NotASpread, NotRegular,
                     SpreadNotTangent)
from .gfield import (ExtFieldCtx, FieldCtx, mat_det, mat_identity, mat_mul,
                     mat_pow, mult_matrix, nullspace)
from .ovoids import Ovoid, is_ovoid, tangent_lines
from .projspace import GeometryTables


def point_permutation(g: GeometryTables, m) -> list[int]:
    """Permutation of point indices induced by an invertible matrix."""
    mul = g.ctx.mul
    perm = []
    for p in g.points:
        x = p.coords
        w = tuple(mul(row[0], x[0]) ^ mul(row[1], x[1])
                  ^ mul(row[2], x[2]) ^ mul(row[3], x[3]) for row in m)
        perm.append(g.index_of(w))
    return perm


def _perm_order_transitive(perm: list[int]) -> int:
    """Cycle length of point 0; equals the order when the orbit is full."""
    k, cur = 1, perm[0]
    while cur != 0:
        cur = perm[cur]
        k += 1
    return k


@dataclass(frozen=True)
class SingerContext:
    geometry: GeometryTables
    ext: ExtFieldCtx
    gen: tuple                    # Singer generator matrix over GF(q)
    t_gen: tuple                  # gen^(q+1), projective order q^2+1
    k_gen: tuple                  # gen^(q^2+1), projective order q+1
    gen_perm: tuple[int, ...]
    t_perm: tuple[int, ...]
    k_perm: tuple[int, ...]


@dataclass(frozen=True)
class Fibration:
    """q+1 pairwise disjoint ovoids covering every point, labeled by
    least contained point index."""

    members: tuple[Ovoid, ...]

    def member_of(self, point: int) -> int:
        for i, ov in enumerate(self.members):
            if (ov.mask >> point) & 1:
                return i
        raise NotAFibration(f"point {point} is uncovered")


@dataclass(frozen=True)
class Spread:
    lines: tuple[int, ...]        # sorted, size q^2+1, pairwise skew


def singer_context(g: GeometryTables, ext: ExtFieldCtx) -> SingerContext:
    q = g.q
    gen = mult_matrix(ext.omega, ext)
    gen_perm = point_permutation(g, gen)
    order = _perm_order_transitive(gen_perm)
    if order != (q * q + 1) * (q + 1):
        raise AssertionError(
            f"Singer generator has projective order {order}, "
            f"expected {(q * q + 1) * (q + 1)}")
    ctx = g.ctx
    t_gen = mat_pow(ctx, gen, q + 1)
    k_gen = mat_pow(ctx, gen, q * q + 1)
    t_perm = point_permutation(g, t_gen)
    k_perm = point_permutation(g, k_gen)
    if _perm_order_transitive_cycle(t_perm, 0) != q * q + 1:
        raise AssertionError("T generator has wrong projective order")
    if _perm_order_transitive_cycle(k_perm, 0) != q + 1:
        raise AssertionError("K generator has wrong projective order")
    return SingerContext(g, ext, gen, t_gen, k_gen,
                         tuple(gen_perm), tuple(t_perm), tuple(k_perm))


def _perm_order_transitive_cycle(perm, start) -> int:
    k, cur = 1, perm[start]
    while cur != start:
        cur = perm[cur]
        k += 1
    return k


def t_orbit_fibration(sc: SingerContext) -> Fibration:
    """The point T-orbits, each an elliptic ovoid, as a fibration."""
    g = sc.geometry
    q = g.q
    seen = [False] * g.n_points
    orbits = []
    for start in range(g.n_points):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        cur = sc.t_perm[start]
        while cur != start:
            seen[cur] = True
            orbit.append(cur)
            cur = sc.t_perm[cur]
        orbits.append(orbit)
    if len(orbits) != q + 1 or any(len(o) != q * q + 1 for o in orbits):
        raise NotAFibration("T-orbits do not split as q+1 sets of q^2+1")
    members = [Ovoid.from_points(o, "orbit") for o in orbits]
    members.sort(key=lambda ov: ov.pts[0])
    for ov in members:
        if not is_ovoid(ov.pts, g):
            raise NotAFibration("a T-orbit failed the ovoid check")
    return Fibration(tuple(members))


def tangency_profile(line_mask: int, f: Fibration) -> tuple[int, int, int]:
    """(tangent, secant, external) counts of one line over the members."""
    tan = sec = ext = 0
    for ov in f.members:
        meet = (line_mask & ov.mask).bit_count()
        if meet == 1:
            tan += 1
        elif meet == 2:
            sec += 1
        elif meet == 0:
            ext += 1
        else:
            tan = -1  # impossible for genuine ovoids; flags corruption
    return tan, sec, ext


def tangent_member(line_mask: int, f: Fibration) -> int | None:
    """Label of the unique member tangent to the line, None if not unique."""
    found = None
    for i, ov in enumerate(f.members):
        if (line_mask & ov.mask).bit_count() == 1:
            if found is not None:
                return None
            found = i
    return found


def common_tangent_spread(f: Fibration, g: GeometryTables) -> Spread:
    """Lines tangent to every member; must be q^2+1 pairwise skew lines."""
    q = g.q
    out = []
    for ln in g.lines:
        if all((ln.mask & ov.mask).bit_count() == 1 for ov in f.members):
            out.append(ln.index)
    if len(out) != q * q + 1:
        raise NotAFibration(
            f"common tangent set has {len(out)} lines, expected {q * q + 1}")
    acc = 0
    for li in out:
        m = g.lines[li].mask
        if acc & m:
            raise NotAFibration("common tangent lines are not pairwise skew")
        acc |= m
    return Spread(tuple(sorted(out)))


def _is_spread(lines, g: GeometryTables) -> bool:
    if len(set(lines)) != g.q * g.q + 1:
        return False
    acc = 0
    for li in lines:
        m = g.lines[li].mask
        if acc & m:
            return False
        acc |= m
    return acc == g.all_one


def is_regular_spread(s: Spread, g: GeometryTables, *,
                      sample: int | None = None, seed: int = 0) -> bool:
    """True iff the regulus of every line triple stays inside the spread.

    sample=N checks N random triples instead of all of them.
    """
    if not _is_spread(s.lines, g):
        raise NotASpread("input is not a spread")
    members = set(s.lines)
    lines = s.lines
    k = len(lines)
    if sample is None:
        triples = ((a, b, c) for a in range(k) for b in range(a + 1, k)
                   for c in range(b + 1, k))
    else:
        import random
        rng = random.Random(seed)
        triples = (tuple(sorted(rng.sample(range(k), 3)))
                   for _ in range(sample))
    pair_to_line = g.pair_to_line
    glines = g.lines
    for a, b, c in triples:
        l1, l2, l3 = glines[lines[a]], glines[lines[b]], glines[lines[c]]
        # opposite regulus: the unique transversal through each point of l1
        opp = []
        for p in l1.pts:
            for x in l2.pts:
                li = pair_to_line[(p, x) if p < x else (x, p)]
                if glines[li].mask & l3.mask:
                    opp.append(li)
                    break
        # the regulus itself: transversals of three opposite lines
        o1, o2, o3 = glines[opp[0]], glines[opp[1]], glines[opp[2]]
        for p in o1.pts:
            for x in o2.pts:
                li = pair_to_line[(p, x) if p < x else (x, p)]
                if glines[li].mask & o3.mask:
                    if li not in members:
                        return False
                    break
    return True


def _line_forms(g: GeometryTables, li: int):
    """Two independent linear forms vanishing on the line."""
    ln = g.lines[li]
    u = g.points[ln.gens[0]].coords
    v = g.points[ln.gens[1]].coords
    return nullspace(g.ctx, [u, v], 4)


def k_stabilizer(s: Spread, g: GeometryTables) -> list[tuple]:
    """All projective collineations fixing every spread line setwise.

    Solves the homogeneous conditions "M maps the line's generators into
    the line's span" over the 16 matrix entries; for a regular spread the
    solution algebra is a field of order q^2, giving a cyclic group of
    order q+1 in PGL(4,q).
    """
    ctx = g.ctx
    mul = ctx.mul
    rows = []
    for li in s.lines:
        ln = g.lines[li]
        forms = _line_forms(g, li)
        for gen_pt in ln.gens:
            u = g.points[gen_pt].coords
            for w in forms:
                # coefficient of M[i][j] in w . (M u) is w_i * u_j
                rows.append(tuple(mul(w[i], u[j])
                                  for i in range(4) for j in range(4)))
    basis = nullspace(ctx, rows, 16)
    if len(basis) != 2:
        raise NotRegular(
            f"line-fixing solution space has dimension {len(basis)}, want 2")

    def to_mat(vec):
        return tuple(tuple(vec[4 * i + j] for j in range(4)) for i in range(4))

    cands = [to_mat(basis[1])]
    for a in range(ctx.size):
        vec = [x ^ mul(a, y) for x, y in zip(basis[0], basis[1])]
        cands.append(to_mat(vec))
    mats = [m for m in cands if mat_det(ctx, m) != 0]
    if len(mats) != g.q + 1:
        raise NotRegular(f"fixing group has order {len(mats)}, want {g.q + 1}")
    # closure check up to scalars, via the induced point permutations
    perms = {tuple(point_permutation(g, m)) for m in mats}
    if len(perms) != g.q + 1:
        raise NotRegular("solutions are not projectively distinct")
    some = list(perms)
    for p1 in some:
        for p2 in some:
            if tuple(p2[i] for i in p1) not in perms:
                raise NotRegular("fixing set is not closed under composition")
    return mats


def fibrate_ovoid(theta: Ovoid, s: Spread, g: GeometryTables) -> Fibration:
    """K-orbit of theta under the group fixing each spread line."""
    tset = set(tangent_lines(theta, g))
    missing = [li for li in s.lines if li not in tset]
    if missing:
        raise SpreadNotTangent(
            f"{len(missing)} spread lines are not tangent to the ovoid")
    if not is_regular_spread(s, g):
        raise NotRegular("spread fails the regulus-closure check")
    mats = k_stabilizer(s, g)
    images = set()
    for m in mats:
        perm = point_permutation(g, m)
        images.add(tuple(sorted(perm[p] for p in theta.pts)))
    if len(images) != g.q + 1:
        raise NotAFibration(
            f"K-orbit of the ovoid has size {len(images)}, want {g.q + 1}")
    members = [Ovoid.from_points(pts, theta.kind) for pts in sorted(images)]
    members.sort(key=lambda ov: ov.pts[0])
    acc = 0
    for ov in members:
        if acc & ov.mask:
            raise NotAFibration("K-orbit members overlap")
        acc |= ov.mask
    if acc != g.all_one:
        raise NotAFibration("K-orbit members do not cover every point")
    for ov in members:
        if not is_ovoid(ov.pts, g):
            raise NotAFibration("a K-orbit member is not an ovoid")
    return Fibration(tuple(members))


def find_regular_spread_in_complex(tl, g: GeometryTables, *,
                                   budget: int = 10 ** 6,
                                   progress=None):
    """Best-effort backtracking search for a regular spread inside the
    line set tl (JSON-friendly result; NotFound is not a disproof).

    Extends partial spreads by the line through the least uncovered point,
    propagating regulus closure; returns (spread_lines | None, nodes).
    """
    tlset = set(tl)
    q = g.q
    target = q * q + 1
    glines = g.lines
    pair_to_line = g.pair_to_line
    lines_by_point: dict[int, list[int]] = {}
    for li in sorted(tlset):
        for p in glines[li].pts:
            lines_by_point.setdefault(p, []).append(li)
    nodes = 0

    def closure(chosen: list[int], covered: int, new: int):
        """Add new plus all regulus-forced lines; None on conflict."""
        chosen = list(chosen)
        covered_local = covered
        queue = [new]
        while queue:
            li = queue.pop()
            m = glines[li].mask
            if covered_local & m:
                return None, None
            if li not in tlset:
                return None, None
            covered_local |= m
            chosen.append(li)
            if len(chosen) > target:
                return None, None
            # reguli through pairs of existing lines and the new line
            lnew = glines[li]
            for a in range(len(chosen) - 1):
                for b in range(a + 1, len(chosen) - 1):
                    la, lb = glines[chosen[a]], glines[chosen[b]]
                    opp = []
                    for p in la.pts:
                        for x in lb.pts:
                            t = pair_to_line[(p, x) if p < x else (x, p)]
                            if glines[t].mask & lnew.mask:
                                opp.append(t)
                                break
                    if len(opp) < 3:
                        return None, None
                    o1, o2, o3 = (glines[opp[0]], glines[opp[1]],
                                  glines[opp[2]])
                    for p in o1.pts:
                        for x in o2.pts:
                            t = pair_to_line[(p, x) if p < x else (x, p)]
                            if glines[t].mask & o3.mask:
                                if t not in tlset:
                                    return None, None
                                if t not in chosen and t not in queue:
                                    tm = glines[t].mask
                                    if covered_local & tm:
                                        return None, None
                                    queue.append(t)
                                break
        return chosen, covered_local

    def search(chosen: list[int], covered: int):
        nonlocal nodes
        if len(chosen) == target:
            sp = Spread(tuple(sorted(chosen)))
            if _is_spread(sp.lines, g) and is_regular_spread(sp, g):
                return sp.lines
            return None
        if nodes >= budget:
            return None
        uncovered = g.all_one & ~covered
        p = (uncovered & -uncovered).bit_length() - 1
        for li in lines_by_point.get(p, ()):
            if glines[li].mask & covered:
                continue
            nodes += 1
            if nodes >= budget:
                return None
            if progress and nodes % 100000 == 0:
                progress(nodes)
            ext_chosen, ext_covered = closure(chosen, covered, li)
            if ext_chosen is None:
                continue
            res = search(ext_chosen, ext_covered)
            if res is not None:
                return res
        return None

    result = search([], 0)
    return result, nodes
