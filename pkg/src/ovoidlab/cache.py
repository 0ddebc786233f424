"""Geometry cache: versioned binary file plus a mirroring JSON export.

Layout (all integers little-endian, fixed width):
  magic        4 bytes  b"OVGE"
  version      u32
  n            u32
  modulus      u64
  generator    u64
  n_points     u32, n_lines u32, n_planes u32
  point coords n_points * 4 * u32
  line pts     n_lines * (q+1) * u32
  plane normal n_planes * 4 * u32

Caches are optional acceleration: every consumer succeeds cold, and a
loaded geometry is bit-identical to a fresh build for the same (version,
n, modulus).
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

from .gfield import FieldCtx
from .projspace import GeometryTables, build_geometry

MAGIC = b"OVGE"
VERSION = 1


def cache_filename(n: int, modulus: int) -> str:
    return f"ovoidlab-geo-v{VERSION}-n{n}-{modulus:x}.bin"


def serialize_geometry(g: GeometryTables) -> bytes:
    q = g.q
    out = [MAGIC,
           struct.pack("<IIQQ", VERSION, g.ctx.n, g.ctx.modulus,
                       g.ctx.generator),
           struct.pack("<III", len(g.points), len(g.lines), len(g.planes))]
    for p in g.points:
        out.append(struct.pack("<4I", *p.coords))
    for ln in g.lines:
        out.append(struct.pack(f"<{q + 1}I", *ln.pts))
    for pl in g.planes:
        out.append(struct.pack("<4I", *pl.normal))
    return b"".join(out)


def save_geometry(g: GeometryTables, cache_dir: Path) -> Path:
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = cache_dir / cache_filename(g.ctx.n, g.ctx.modulus)
    path.write_bytes(serialize_geometry(g))
    return path


def load_geometry(path: Path) -> GeometryTables:
    """Reconstruct tables from a cache file; derived incidence maps are
    recomputed from the stored arrays."""
    from .projspace import Line, Plane, Point

    data = Path(path).read_bytes()
    if data[:4] != MAGIC:
        raise ValueError(f"{path}: not an ovoidlab geometry cache")
    version, n, modulus, generator = struct.unpack_from("<IIQQ", data, 4)
    if version != VERSION:
        raise ValueError(f"{path}: cache version {version}, expected {VERSION}")
    ctx = FieldCtx(n, modulus)
    if ctx.generator != generator:
        raise ValueError(f"{path}: generator mismatch")
    q = ctx.size
    off = 4 + struct.calcsize("<IIQQ")
    n_points, n_lines, n_planes = struct.unpack_from("<III", data, off)
    off += struct.calcsize("<III")

    expect = (n_points + n_planes) * 4 + n_lines * (q + 1)
    if len(data) != off + 4 * expect:
        raise ValueError(f"{path}: truncated or padded cache")

    points = []
    point_index = {}
    for i in range(n_points):
        coords = struct.unpack_from("<4I", data, off)
        off += 16
        points.append(Point(i, coords))
        point_index[coords] = i

    lines = []
    pair_to_line = {}
    for i in range(n_lines):
        pts = struct.unpack_from(f"<{q + 1}I", data, off)
        off += 4 * (q + 1)
        mask = 0
        for p in pts:
            mask |= 1 << p
        lines.append(Line(i, (pts[0], pts[1]), pts, mask))
        for a in range(q + 1):
            for b in range(a + 1, q + 1):
                pair_to_line[(pts[a], pts[b])] = i

    point_to_lines = [[] for _ in range(n_points)]
    for ln in lines:
        for p in ln.pts:
            point_to_lines[p].append(ln.index)
    point_to_lines = [sorted(ls) for ls in point_to_lines]

    mt = [[ctx.mul(a, b) for b in range(q)] for a in range(q)]
    planes = []
    for i in range(n_planes):
        nvec = struct.unpack_from("<4I", data, off)
        off += 16
        m0, m1, m2, m3 = (mt[c] for c in nvec)
        pts = []
        mask = 0
        for idx, p in enumerate(points):
            x0, x1, x2, x3 = p.coords
            if m0[x0] ^ m1[x1] ^ m2[x2] ^ m3[x3] == 0:
                pts.append(idx)
                mask |= 1 << idx
        planes.append(Plane(i, nvec, tuple(pts), mask))

    return GeometryTables(ctx, points, lines, planes,
                          point_index, pair_to_line, point_to_lines)


def load_or_build(n: int, cache_dir: Path | None, *,
                  force: bool = False) -> GeometryTables:
    if cache_dir is None:
        return build_geometry(n, force=force)
    path = Path(cache_dir) / cache_filename(n, FieldCtx(n).modulus)
    if path.exists():
        try:
            return load_geometry(path)
        except (ValueError, OSError):
            pass  # fall through to a clean rebuild
    g = build_geometry(n, force=force)
    try:
        save_geometry(g, Path(cache_dir))
    except OSError:
        pass  # cache is best-effort
    return g


def export_geometry_json(g: GeometryTables) -> str:
    """Human-readable mirror of the binary cache."""
    doc = {
        "format_version": VERSION,
        "n": g.ctx.n,
        "q": g.q,
        "modulus": g.ctx.modulus,
        "generator": g.ctx.generator,
        "points": [list(p.coords) for p in g.points],
        "lines": [list(ln.pts) for ln in g.lines],
        "planes": [list(pl.normal) for pl in g.planes],
    }
    return json.dumps(doc, indent=None, separators=(",", ":"))
