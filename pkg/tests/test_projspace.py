from itertools import combinations, product

import pytest

from ovoidlab.errors import DuplicatePoint, NotSkew, SamePoint, SizeGuard
from ovoidlab.gfield import FieldCtx
from ovoidlab.projspace import build_geometry


def enumerate_subspace_counts(n):
    """Independent oracle: count 1- and 2-dim subspaces of GF(q)^4 by
    direct enumeration of vectors and spans."""
    ctx = FieldCtx(n)
    q = ctx.size
    vecs = [v for v in product(range(q), repeat=4) if any(v)]

    def span2(u, v):
        pts = set()
        for a in range(q):
            for b in range(q):
                w = tuple(ctx.mul(a, x) ^ ctx.mul(b, y) for x, y in zip(u, v))
                if any(w):
                    pts.add(w)
        return frozenset(pts)

    points = set()
    for v in vecs:
        points.add(frozenset(span2(v, (0, 0, 0, 0))))
    lines = set()
    for u, v in combinations(vecs, 2):
        s = span2(u, v)
        if len(s) == q * q - 1:
            lines.add(s)
    return len(points), len(lines)


@pytest.mark.parametrize("n,pts,lns", [(1, 15, 35), (2, 85, 357)])
def test_counts_against_enumeration_oracle(n, pts, lns):
    assert enumerate_subspace_counts(n) == (pts, lns)
    g = build_geometry(n)
    assert (len(g.points), len(g.lines)) == (pts, lns)
    assert len(g.planes) == pts


def test_counts_q8_formulas(geo3):
    q = 8
    assert len(geo3.points) == (q * q + 1) * (q + 1) == 585
    assert len(geo3.lines) == (q * q + 1) * (q * q + q + 1) == 4745
    assert len(geo3.planes) == 585


def test_point_normalization_unique(geo2):
    seen = set()
    for p in geo2.points:
        nz = next(c for c in p.coords if c)
        assert nz == 1
        assert p.coords not in seen
        seen.add(p.coords)


@pytest.mark.parametrize("fix", ["geo1", "geo2", "geo3"])
def test_steiner_property_every_pair_one_line(fix, request):
    g = request.getfixturevalue(fix)
    n_pts = len(g.points)
    assert len(g.pair_to_line) == n_pts * (n_pts - 1) // 2
    for ln in g.lines:
        assert len(ln.pts) == g.q + 1
        for a, b in combinations(ln.pts, 2):
            assert g.pair_to_line[(a, b)] == ln.index


def test_double_count(geo2):
    q = geo2.q
    assert len(geo2.lines) * (q + 1) == len(geo2.points) * (q * q + q + 1)
    for lst in geo2.point_to_lines:
        assert len(lst) == q * q + q + 1


def test_plane_meets_line_in_1_or_all(geo2):
    q = geo2.q
    for pl in geo2.planes[:20]:
        for ln in geo2.lines:
            meet = (pl.mask & ln.mask).bit_count()
            assert meet in (1, q + 1)


def test_line_through(geo1):
    ln = geo1.line_through(0, 1)
    assert 0 in ln.pts and 1 in ln.pts
    assert ln is geo1.line_through(1, 0)
    assert len(ln.pts) == 3
    with pytest.raises(SamePoint):
        geo1.line_through(2, 2)


def test_is_collinear(geo2):
    ln = geo2.lines[0]
    a, b, c = ln.pts[:3]
    assert geo2.is_collinear(a, b, c)
    off = next(p.index for p in geo2.points if not (ln.mask >> p.index) & 1)
    assert not geo2.is_collinear(a, b, off)
    with pytest.raises(DuplicatePoint):
        geo2.is_collinear(a, a, b)


def _three_skew_lines(g):
    l1 = g.lines[0]
    l2 = next(l for l in g.lines if not l.mask & l1.mask)
    l3 = next(l for l in g.lines
              if not l.mask & l1.mask and not l.mask & l2.mask)
    return l1.index, l2.index, l3.index


def test_transversals_count_and_skewness(geo2):
    l1, l2, l3 = _three_skew_lines(geo2)
    trans = geo2.transversals(l1, l2, l3)
    assert len(trans) == geo2.q + 1
    for a, b in combinations(trans, 2):
        assert not geo2.lines[a].mask & geo2.lines[b].mask


def test_transversals_not_skew_raises(geo2):
    l1 = geo2.lines[0]
    l2 = geo2.point_to_lines[l1.pts[0]][1]  # meets l1
    l3 = _three_skew_lines(geo2)[2]
    with pytest.raises(NotSkew):
        geo2.transversals(l1.index, l2, l3)


def test_regulus_contains_inputs_and_is_unique(geo2):
    l1, l2, l3 = _three_skew_lines(geo2)
    reg, opp = geo2.regulus(l1, l2, l3)
    assert len(reg) == len(opp) == geo2.q + 1
    assert {l1, l2, l3} <= set(reg)
    # transversals of the transversals of a regulus give it back
    for triple in combinations(reg, 3):
        reg2, _ = geo2.regulus(*triple)
        assert reg2 == reg
    # opposite of the opposite
    reg3, opp3 = geo2.regulus(*opp[:3])
    assert set(reg3) == set(opp)
    assert set(opp3) == set(reg)


def test_size_guard():
    with pytest.raises(SizeGuard):
        build_geometry(0)
    with pytest.raises(SizeGuard):
        build_geometry(9)


def test_deterministic_rebuild(geo1):
    g2 = build_geometry(1)
    assert [p.coords for p in g2.points] == [p.coords for p in geo1.points]
    assert [l.pts for l in g2.lines] == [l.pts for l in geo1.lines]
    assert [pl.normal for pl in g2.planes] == [pl.normal for pl in geo1.planes]
