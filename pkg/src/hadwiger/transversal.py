"""Polytope families and exact hyperplane-transversal decisions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import lcm
from typing import Iterable, Mapping, Optional, Sequence, Union

from .exact import (
    OrientedHyperplane,
    affine_rank,
    as_point,
    canonical_direction,
    dot,
    int_normal,
    nullspace,
    sub,
)
from .radon import Coloring


@dataclass(frozen=True)
class Polytope:
    """A convex polytope given by its vertices (deduplicated, lexicographically sorted)."""

    vertices: tuple

    def __post_init__(self):
        verts = sorted(set(as_point(v) for v in self.vertices))
        if not verts:
            raise ValueError("a polytope needs at least one vertex")
        d = len(verts[0])
        if any(len(v) != d for v in verts):
            raise ValueError("vertices of mixed dimension")
        object.__setattr__(self, "vertices", tuple(verts))

    @property
    def d(self) -> int:
        return len(self.vertices[0])


@dataclass(frozen=True, eq=False)
class ColoredFamily:
    """Members id -> Polytope in a common R^d, with an r-coloring of the ids."""

    members: Mapping[str, Polytope]
    coloring: Coloring

    def __post_init__(self):
        members = {str(k): v if isinstance(v, Polytope) else Polytope(v)
                   for k, v in dict(self.members).items()}
        if not members:
            raise ValueError("empty family")
        dims = {p.d for p in members.values()}
        if len(dims) != 1:
            raise ValueError(f"members of mixed dimension {sorted(dims)}")
        if set(members) != set(self.coloring.labels):
            raise ValueError("coloring does not cover exactly the member ids")
        object.__setattr__(self, "members", dict(sorted(members.items())))

    @classmethod
    def from_sets(cls, sets: Iterable[tuple], r: Optional[int] = None) -> "ColoredFamily":
        """Build from (id, color, vertices) triples; r defaults to the largest color."""
        sets = list(sets)
        labels = {str(i): int(c) for i, c, _ in sets}
        if r is None:
            r = max(labels.values())
        return cls({str(i): Polytope(v) for i, _, v in sets}, Coloring(labels, r))

    @property
    def d(self) -> int:
        return next(iter(self.members.values())).d

    @property
    def r(self) -> int:
        return self.coloring.r

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(self.members)

    def color_class(self, color: int) -> tuple[str, ...]:
        return self.coloring.classes()[color]

    def polytopes(self, ids: Optional[Iterable[str]] = None) -> list[Polytope]:
        ids = self.ids if ids is None else ids
        return [self.members[i] for i in ids]

    def vertices(self) -> list[tuple]:
        return sorted({v for p in self.members.values() for v in p.vertices})

    def __eq__(self, other):
        return (isinstance(other, ColoredFamily) and self.members == other.members
                and self.coloring == other.coloring)

    __hash__ = None

    @cached_property
    def integer_frame(self) -> tuple[int, dict[str, list[tuple[int, ...]]]]:
        """(L, id -> vertices scaled by L to integers) for fast exact arithmetic."""
        L = 1
        for p in self.members.values():
            for v in p.vertices:
                for c in v:
                    L = lcm(L, c.denominator)
        return L, {m: [tuple(int(c * L) for c in v) for v in p.vertices]
                   for m, p in self.members.items()}


FamilyLike = Union[ColoredFamily, Sequence[Polytope]]


def _as_polytopes(F: FamilyLike) -> list[Polytope]:
    if isinstance(F, ColoredFamily):
        return F.polytopes()
    return [p if isinstance(p, Polytope) else Polytope(p) for p in F]


@dataclass(frozen=True)
class Projection:
    min: Fraction
    max: Fraction
    argmin: tuple
    argmax: tuple


def _check_direction(x: Sequence) -> tuple:
    x = as_point(x)
    if not any(x):
        raise ValueError("direction must be nonzero")
    return x


def projection_interval(K: Polytope, x: Sequence) -> Projection:
    """Range of v.x over K; ties go to the lexicographically first vertex."""
    x = _check_direction(x)
    lo = hi = None
    for v in K.vertices:
        s = dot(v, x)
        if lo is None or s < lo[0]:
            lo = (s, v)
        if hi is None or s > hi[0]:
            hi = (s, v)
    return Projection(lo[0], hi[0], lo[1], hi[1])


def transversal_in_direction(F: FamilyLike, x: Sequence):
    """The offsets t for which {v : v.x = t} meets every member, or None."""
    x = _check_direction(x)
    polys = _as_polytopes(F)
    if not polys:
        return None
    projs = [projection_interval(K, x) for K in polys]
    lo = max(p.min for p in projs)
    hi = min(p.max for p in projs)
    return (lo, hi) if lo <= hi else None


def meets(H: OrientedHyperplane, K: Polytope) -> bool:
    sides = {H.side(v) for v in K.vertices}
    return 0 in sides or sides == {-1, 1}


def is_transversal(H: OrientedHyperplane, F: FamilyLike) -> bool:
    return all(meets(H, K) for K in _as_polytopes(F))


def _int_frame(polys: Sequence[Polytope]):
    L = 1
    for p in polys:
        for v in p.vertices:
            for c in v:
                L = lcm(L, c.denominator)
    return L, [[tuple(int(c * L) for c in v) for v in p.vertices] for p in polys]


def _complement_pair(diffs, d):
    """Integer basis of the orthogonal complement of d-2 independent vectors, else None."""
    if not diffs:
        return [tuple(int(i == j) for i in range(d)) for j in range(d)]
    # Cross products with the coordinate axes span the complement.
    found = []
    for j in range(d):
        axis = tuple(int(i == j) for i in range(d))
        w = int_normal(list(diffs) + [axis])
        if not any(w):
            continue
        if not found:
            found.append(w)
        elif any(found[0][a] * w[b] != found[0][b] * w[a]
                 for a in range(d) for b in range(a + 1, d)):
            return [found[0], w]
    return None


def _by_vertex_hyperplanes(polys: Sequence[Polytope]) -> Optional[OrientedHyperplane]:
    # A transversal exists iff the vertices lie in a hyperplane or some
    # hyperplane spanned by d affinely independent vertices is one: a nonzero
    # point of the cone {(x, t) : a.x <= t <= b.x} for a fixed choice of
    # support vertices can be pushed to an extreme ray, where d independent
    # vertex incidences are tight.
    d = polys[0].d
    L, ipolys = _int_frame(polys)
    V = sorted({v for verts in ipolys for v in verts})
    if len(V) < d + 1 or affine_rank(V) < d:
        basis = nullspace([v + (-1,) for v in V], d + 1)
        vec = next(b for b in basis if any(b[:d]))
        return OrientedHyperplane(vec[:d], vec[d] / L).normalized()
    if d == 1:
        for (v,) in V:
            if all(verts[0][0] <= v <= verts[-1][0] for verts in ipolys):
                return OrientedHyperplane((1,), Fraction(v, L))
        return None
    index = {v: i for i, v in enumerate(V)}
    members = [[index[v] for v in verts] for verts in ipolys]
    n = len(V)
    # Hyperplanes through d - 1 fixed vertices form a pencil whose normals
    # span a plane; each further vertex picks one normal from it.
    for prefix in combinations(range(n), d - 1):
        base = V[prefix[0]]
        pair = _complement_pair([tuple(a - b for a, b in zip(V[i], base)) for i in prefix[1:]], d)
        if pair is None:
            continue
        b1, b2 = pair
        P1 = [sum(a * c for a, c in zip(b1, v)) for v in V]
        P2 = [sum(a * c for a, c in zip(b2, v)) for v in V]
        o1, o2 = P1[prefix[0]], P2[prefix[0]]
        for q in range(prefix[-1] + 1, n):
            a, b = P2[q] - o2, o1 - P1[q]
            if not a and not b:
                continue
            t = a * o1 + b * o2
            for idx in members:
                below = above = False
                for i in idx:
                    s = a * P1[i] + b * P2[i]
                    if s <= t:
                        below = True
                    if s >= t:
                        above = True
                if not (below and above):
                    break
            else:
                normal = tuple(a * x + b * y for x, y in zip(b1, b2))
                return OrientedHyperplane(normal, Fraction(t, L)).normalized()
    return None


def _by_direction_cells(polys: Sequence[Polytope]) -> Optional[OrientedHyperplane]:
    from .cells import arrangement

    d = polys[0].d
    V = sorted({v for p in polys for v in p.vertices})
    normals = sorted({canonical_direction(sub(u, v)) for u, v in combinations(V, 2)})
    arr = arrangement(normals, d)
    for cell in arr.cells:
        hit = transversal_in_direction(polys, cell.representative)
        if hit is not None:
            return OrientedHyperplane(cell.representative, hit[0])
    return None


def find_hyperplane_transversal(F: FamilyLike, method: str = "vertices") -> Optional[OrientedHyperplane]:
    """An exact hyperplane meeting every member, or None if none exists.

    ``method="vertices"`` scans hyperplanes spanned by vertices; ``"cells"``
    tries one direction from every cell of the arrangement of vertex
    differences. Both are exhaustive.
    """
    polys = tuple(_as_polytopes(F))
    if not polys:
        return None
    if method not in ("vertices", "cells"):
        raise ValueError(f"unknown method {method!r}")
    return _search(polys, method)


@lru_cache(maxsize=4096)
def _search(polys: tuple, method: str) -> Optional[OrientedHyperplane]:
    # Hard-mode generation and verification query the same color classes.
    if method == "vertices":
        H = _by_vertex_hyperplanes(polys)
    else:
        H = _by_direction_cells(polys)
    if H is not None and not is_transversal(H, polys):
        raise AssertionError("transversal witness failed re-verification")
    return H


def find_monochromatic_transversal(F: ColoredFamily, method: str = "vertices"):
    """(color, hyperplane) for the smallest color class with a transversal, or None."""
    for color, ids in sorted(F.coloring.classes().items()):
        H = find_hyperplane_transversal(F.polytopes(ids), method)
        if H is not None:
            return color, H
    return None
