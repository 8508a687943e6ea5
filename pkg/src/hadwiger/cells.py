"""Cells of a central hyperplane arrangement on the unit sphere.

A cell is a nonempty set of unit directions with a fixed sign vector against a
list of normals. Representatives are exact (integer where the construction
allows), so the sign vector is always recomputed from the representative
rather than stored separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Optional, Sequence

from .exact import (
    Feasible,
    LinearSystem,
    as_point,
    canonical_direction,
    nullspace,
    primitive,
    rank,
    solve_feasibility,
)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_vector(normals: Sequence[Sequence], x: Sequence) -> tuple[int, ...]:
    return tuple(_sign(sum(a * b for a, b in zip(n, x))) for n in normals)


@dataclass(eq=False)
class DirectionCell:
    representative: tuple
    dim: int
    normals: tuple = field(repr=False)
    _signs: Optional[tuple] = field(default=None, repr=False)

    @property
    def signs(self) -> tuple[int, ...]:
        if self._signs is None:
            self._signs = sign_vector(self.normals, self.representative)
        return self._signs

    @property
    def key(self) -> tuple:
        """Identifies the cell; the all-zero sign vector may name two antipodal points."""
        if any(self.signs) or self.dim > 0:
            return self.signs
        return self.signs + primitive(self.representative)

    def antipodal_key(self) -> tuple:
        if any(self.signs) or self.dim > 0:
            return tuple(-s for s in self.signs)
        return self.signs + tuple(-c for c in primitive(self.representative))

    @property
    def zeros(self) -> tuple[int, ...]:
        """Indices of the normals the cell lies on."""
        return tuple(i for i, s in enumerate(self.signs) if s == 0)


@dataclass
class Arrangement:
    """Cells with ``faces[i]`` = ids of all cells in the boundary of cell i."""

    d: int
    normals: tuple
    cells: list
    faces: list
    antipode: list

    def __len__(self):
        return len(self.cells)

    def boundary_pairs(self):
        for s, fs in enumerate(self.faces):
            for t in fs:
                yield t, s


def dedupe_normals(vectors: Sequence[Sequence]) -> tuple[tuple[int, ...], ...]:
    """Canonical primitive normals, duplicates up to scaling removed, sorted."""
    return tuple(sorted({canonical_direction(as_point(v)) for v in vectors if any(v)}))


def _check_normals(normals, d):
    out = []
    for n in normals:
        n = tuple(n)
        if len(n) != d:
            raise ValueError(f"normal {n} does not live in R^{d}")
        if not any(n):
            raise ValueError("zero normal")
        out.append(n)
    if len({canonical_direction(as_point(n)) for n in out}) != len(out):
        raise ValueError("normals must be distinct up to scaling")
    return tuple(out)


def arrangement(normals: Sequence[Sequence], d: int, method: str = "auto") -> Arrangement:
    """All cells (every dimension) of the arrangement of ``normals``-perp on S^{d-1}.

    ``method`` is "sweep" (d=2), "circles" (d=3), "lp" (any d) or "auto".
    """
    normals = _check_normals(normals, d)
    if method == "auto":
        method = {1: "lp", 2: "sweep", 3: "circles"}.get(d, "lp")
    if method == "sweep":
        if d != 2:
            raise ValueError("the angular sweep needs d = 2")
        return _sweep2(normals)
    if method == "circles":
        if d != 3:
            raise ValueError("the great-circle construction needs d = 3")
        return _circles3(normals)
    if method == "lp":
        return _lp_cells(normals, d)
    raise ValueError(f"unknown method {method!r}")


def enumerate_direction_cells(normals: Sequence[Sequence], d: int,
                              method: str = "auto") -> list[DirectionCell]:
    return arrangement(normals, d, method).cells


# -- d = 2 -------------------------------------------------------------------


def _half(p) -> int:
    return 0 if p[1] > 0 or (p[1] == 0 and p[0] > 0) else 1


def _angle_cmp(u, v) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    c = u[0] * v[1] - u[1] * v[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _circle_cells(points, rot90, add_vec, make):
    """Points sorted by angle on a circle -> interleaved point/arc cells.

    ``points`` are 2D angle keys paired with the ambient representative.
    Returns (cells, faces) with point i at id 2i and the arc after it at 2i+1.
    """
    cells, faces = [], []
    m = len(points)
    for i, (key, rep) in enumerate(points):
        nkey, nrep = points[(i + 1) % m]
        cells.append(make(rep, 0))
        faces.append(())
        if key[0] * nkey[1] - key[1] * nkey[0] > 0:
            arc = add_vec(rep, nrep)
        else:
            arc = rot90(rep)  # only two antipodal points on this circle
        cells.append(make(arc, 1))
        faces.append((2 * i, 2 * ((i + 1) % m)))
    return cells, faces


def _sweep2(normals) -> Arrangement:
    n = len(normals)
    if n == 0:
        cell = DirectionCell((1, 0), 1, normals)
        return Arrangement(2, normals, [cell], [()], [0])
    pts = []
    for a, b in normals:
        pts.append((-b, a))
        pts.append((b, -a))
    pts.sort(key=cmp_to_key(_angle_cmp))
    cells, faces = _circle_cells(
        [(p, p) for p in pts],
        rot90=lambda p: (-p[1], p[0]),
        add_vec=lambda p, q: (p[0] + q[0], p[1] + q[1]),
        make=lambda rep, dim: DirectionCell(rep, dim, normals),
    )
    # Exactly one of each antipodal pair of points lies in any half-open half turn.
    total = 4 * n
    antipode = [(i + 2 * n) % total for i in range(total)]
    return Arrangement(2, normals, cells, faces, antipode)


# -- d = 3 -------------------------------------------------------------------


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _idot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _iprimitive(v):
    return primitive([Fraction(c) for c in v])


def _plane_basis(n):
    axis = min(range(3), key=lambda i: abs(n[i]))
    e = [0, 0, 0]
    e[axis] = 1
    e1 = _cross(n, tuple(e))
    return e1, _cross(n, e1)


def _circles3(normals) -> Arrangement:
    n = len(normals)
    if n == 0:
        cell = DirectionCell((1, 0, 0), 2, normals)
        return Arrangement(3, normals, [cell], [()], [0])
    normals = tuple(tuple(int(c) for c in v) for v in normals)
    cells: list[DirectionCell] = []
    faces: list[set] = []
    index: dict[tuple, int] = {}

    def add(rep, dim):
        cell = DirectionCell(rep, dim, normals)
        key = cell.key
        if key in index:
            return index[key]
        index[key] = len(cells)
        cells.append(cell)
        faces.append(set())
        return index[key]

    on_circle: list[set] = [set() for _ in range(n)]
    for i, j in combinations(range(n), 2):
        c = _iprimitive(_cross(normals[i], normals[j]))
        for v in (c, tuple(-x for x in c)):
            on_circle[i].add(v)
            on_circle[j].add(v)

    arcs_of_circle: list[list[int]] = []
    for i, ni in enumerate(normals):
        e1, e2 = _plane_basis(ni)
        if on_circle[i]:
            pts = [((_idot(v, e1), _idot(v, e2)), v) for v in on_circle[i]]
            pts.sort(key=cmp_to_key(lambda a, b: _angle_cmp(a[0], b[0])))
            m = len(pts)
            vids = [add(v, 0) for _, v in pts]
            arcs = []
            for t in range(m):
                (k1, v1), (k2, v2) = pts[t], pts[(t + 1) % m]
                if k1[0] * k2[1] - k1[1] * k2[0] > 0:
                    rep = _iprimitive(tuple(a + b for a, b in zip(v1, v2)))
                else:
                    rep = _iprimitive(_cross(ni, v1))
                aid = add(rep, 1)
                faces[aid].update((vids[t], vids[(t + 1) % m]))
                arcs.append(aid)
        else:
            # The only great circle: no vertices, one closed 1-cell.
            arcs = [add(_iprimitive(e1), 1)]
        arcs_of_circle.append(arcs)

    for i, ni in enumerate(normals):
        for aid in arcs_of_circle[i]:
            m = cells[aid].representative
            K = 1
            for j, nj in enumerate(normals):
                if j == i:
                    continue
                s = abs(_idot(nj, m))
                K = max(K, abs(_idot(nj, ni)) // s + 1)
            for sgn in (1, -1):
                rep = _iprimitive(tuple(K * a + sgn * b for a, b in zip(m, ni)))
                fid = add(rep, 2)
                faces[fid].add(aid)
                faces[fid].update(faces[aid])

    antipode = [index[c.antipodal_key()] for c in cells]
    return _finish(3, normals, cells, faces, antipode)


def _finish(d, normals, cells, faces, antipode) -> Arrangement:
    # Renumber by (dimension, sign vector) so ids do not depend on scan order.
    order = sorted(range(len(cells)), key=lambda i: (cells[i].dim, cells[i].key))
    new_id = {old: new for new, old in enumerate(order)}
    return Arrangement(
        d, normals,
        [cells[i] for i in order],
        [tuple(sorted(new_id[t] for t in faces[i])) for i in order],
        [new_id[antipode[i]] for i in order],
    )


# -- general d -----------------------------------------------------------------


def _cone_point(normals, signs, d):
    eqs, ineqs = [], []
    for nv, s in zip(normals, signs):
        if s == 0:
            eqs.append((nv, 0))
        elif s > 0:
            ineqs.append((tuple(-c for c in nv), -1))
        else:
            ineqs.append((nv, -1))
    res = solve_feasibility(LinearSystem(d, eqs, ineqs))
    return res.point if isinstance(res, Feasible) else None


def _lp_cells(normals, d) -> Arrangement:
    """Depth-first over sign choices, pruning infeasible prefixes by LP."""
    n = len(normals)
    full_rank = rank(normals) == d if normals else d == 0
    found: list[tuple[tuple, tuple]] = []

    def rec(prefix, point):
        j = len(prefix)
        if j == n:
            if any(prefix):
                found.append((prefix, point))
            elif not full_rank:
                basis = nullspace(normals, d) if normals else [
                    tuple(Fraction(int(i == j)) for i in range(d)) for j in range(d)]
                found.append((prefix, basis[0]))
                if len(basis) == 1:
                    # A line of common zeros meets the sphere in two points.
                    found.append((prefix, tuple(-c for c in basis[0])))
            return
        for s in (1, 0, -1):
            signs = prefix + (s,)
            if not any(signs):
                rec(signs, None)
                continue
            p = _cone_point(normals[:j + 1], signs, d)
            if p is not None:
                rec(signs, p)

    rec((), None)
    cells = []
    for signs, point in found:
        rep = primitive(point) if point is not None else None
        zero_rows = [nv for nv, s in zip(normals, signs) if s == 0]
        dim = d - 1 - (rank(zero_rows) if zero_rows else 0)
        cells.append(DirectionCell(rep, dim, normals, signs))
    ids = {c.key: i for i, c in enumerate(cells)}
    faces = []
    for c in cells:
        faces.append({
            ids[t.key] for t in cells
            if t.signs != c.signs and all(a == 0 or a == b for a, b in zip(t.signs, c.signs))
        })
    antipode = [ids[c.antipodal_key()] for c in cells]
    return _finish(d, normals, cells, faces, antipode)
