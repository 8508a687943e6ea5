"""The antipodal sphere complex of a colored family and its central hyperplanes.

For a direction x the two sweep hyperplanes are found from per-member
projection extremes: H1 is the lowest level whose closed negative side
contains whole members of ceil(r/2) colors, H2 the highest level whose
closed positive side does. The central hyperplane sits halfway between.
All per-direction work runs in an integer frame (vertices scaled by the lcm
of their denominators, directions scaled to primitive integer vectors).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .cells import Arrangement, arrangement
from .exact import OrientedHyperplane, as_point, midpoints, primitive
from .transversal import ColoredFamily, find_hyperplane_transversal, meets


class UnsupportedDimension(ValueError):
    pass


class ClaimFailure(AssertionError):
    pass


def _ceil_half(r: int) -> int:
    return (r + 1) // 2


@dataclass
class SphereComplex:
    d: int
    normals: tuple
    arrangement: Arrangement
    vertices: tuple
    midpoints: tuple

    @property
    def cells(self):
        return self.arrangement.cells

    @property
    def faces(self):
        return self.arrangement.faces

    @property
    def antipode(self):
        return self.arrangement.antipode

    def __len__(self):
        return len(self.arrangement)

    def cofaces(self) -> list[tuple[int, ...]]:
        """For each cell, the cells whose boundary contains it."""
        out: list[list[int]] = [[] for _ in self.cells]
        for s, fs in enumerate(self.faces):
            for t in fs:
                out[t].append(s)
        return [tuple(x) for x in out]


def _canonical_int(v):
    g = 0
    for c in v:
        g = gcd(g, c)
    v = tuple(c // g for c in v)
    for c in v:
        if c:
            return v if c > 0 else tuple(-a for a in v)


def complex_normals(F: ColoredFamily) -> tuple:
    """Canonical normals (u - v) over distinct u, v in V and midp(V)."""
    L, frame = F.integer_frame
    verts = sorted({v for vs in frame.values() for v in vs})
    # Scale by 2 so that midpoints are integral too.
    pts = {tuple(2 * c for c in v) for v in verts}
    for i, u in enumerate(verts):
        for w in verts[i + 1:]:
            pts.add(tuple(a + b for a, b in zip(u, w)))
    pts = sorted(pts)
    normals = set()
    for i, u in enumerate(pts):
        for w in pts[i + 1:]:
            normals.add(_canonical_int(tuple(a - b for a, b in zip(u, w))))
    return tuple(sorted(normals))


def build_complex(F: ColoredFamily, method: str = "auto") -> SphereComplex:
    """The cell complex cut out on S^{d-1} by all (u - v)-perp, u, v in V and midp(V)."""
    if F.d not in (2, 3):
        raise UnsupportedDimension(f"sphere complex is built only for d in (2, 3), got d={F.d}")
    normals = complex_normals(F)
    V = tuple(F.vertices())
    return SphereComplex(F.d, normals, arrangement(normals, F.d, method), V, tuple(midpoints(V)))


# -- sweeps -----------------------------------------------------------------


@dataclass(frozen=True)
class Sweep:
    """Sweep levels in direction ``x`` with the vertices that attain them."""

    x: tuple
    t1: Fraction
    t2: Fraction
    vertex1: tuple
    vertex2: tuple
    minus: frozenset
    plus: frozenset

    @property
    def H1(self) -> OrientedHyperplane:
        return OrientedHyperplane(self.x, self.t1)

    @property
    def H2(self) -> OrientedHyperplane:
        return OrientedHyperplane(self.x, self.t2)

    @property
    def H(self) -> OrientedHyperplane:
        return OrientedHyperplane(self.x, (self.t1 + self.t2) / 2)

    @property
    def collapsed(self) -> bool:
        return self.t1 >= self.t2


class _Frame:
    """Family data prepared for repeated integer sweeps.

    The vertex attaining t1 is the argmax vertex of the first member (by id)
    whose maximum equals t1; likewise for t2. Argmax ties go to the first
    vertex in lexicographic order.
    """

    def __init__(self, F: ColoredFamily, r: Optional[int] = None):
        self.r = F.r if r is None else r
        self.h = _ceil_half(self.r)
        self.L, frame = F.integer_frame
        self.ids = F.ids
        self.verts = [frame[m] for m in self.ids]
        self.colors = [F.coloring[m] for m in self.ids]
        if len(set(self.colors)) < self.h:
            raise ValueError(f"family uses fewer than {self.h} colors")
        self._sets: dict = {}
        self._np = None

    def _members(self, flags) -> frozenset:
        key = tuple(flags)
        out = self._sets.get(key)
        if out is None:
            out = self._sets[key] = frozenset(m for m, f in zip(self.ids, key) if f)
        return out

    def sweep_int(self, x):
        """(t1, t2, v1, v2, minus, plus) for an integer direction, in frame units."""
        mins, maxs, amin, amax = [], [], [], []
        for vs in self.verts:
            lo_v = hi_v = vs[0]
            lo = hi = sum(a * b for a, b in zip(vs[0], x))
            for v in vs[1:]:
                s = sum(a * b for a, b in zip(v, x))
                if s < lo:
                    lo, lo_v = s, v
                elif s > hi:
                    hi, hi_v = s, v
            mins.append(lo)
            maxs.append(hi)
            amin.append(lo_v)
            amax.append(hi_v)
        best_max: dict[int, int] = {}
        best_min: dict[int, int] = {}
        for lo, hi, c in zip(mins, maxs, self.colors):
            best_max[c] = min(best_max.get(c, hi), hi)
            best_min[c] = max(best_min.get(c, lo), lo)
        t1 = sorted(best_max.values())[self.h - 1]
        t2 = sorted(best_min.values(), reverse=True)[self.h - 1]
        v1 = amax[maxs.index(t1)]
        v2 = amin[mins.index(t2)]
        T = t1 + t2
        minus = self._members(2 * hi < T for hi in maxs)
        plus = self._members(2 * lo > T for lo in mins)
        return t1, t2, v1, v2, minus, plus

    def _arrays(self):
        if self._np is None:
            import numpy as np

            flat = [v for vs in self.verts for v in vs]
            starts, pos = [], 0
            for vs in self.verts:
                starts.append(pos)
                pos += len(vs)
            vmax = max(abs(int(c)) for v in flat for c in v)
            by_color: dict[int, list[int]] = {}
            for j, c in enumerate(self.colors):
                by_color.setdefault(c, []).append(j)
            self._np = (np, np.array(flat, dtype=np.int64 if vmax < 2 ** 40 else object),
                        flat, starts, vmax, [by_color[c] for c in sorted(by_color)])
        return self._np

    def _as_int64(self, X):
        """X as an int64 array, or None when products could overflow."""
        np, V, _, _, vmax, _ = self._arrays()
        if V.dtype != np.int64:
            return None
        try:
            Xa = np.asarray(X, dtype=np.int64)
        except OverflowError:
            return None
        xmax = int(np.abs(Xa).max()) if Xa.size else 0
        # |x.v| <= d * xmax * vmax, and sums of two such values are formed below.
        if 4 * V.shape[1] * xmax * max(vmax, 1) >= 2 ** 62:
            return None
        return Xa

    def _extremes(self, Xa, with_args: bool):
        np, V, _, starts, _, groups = self._arrays()
        P = Xa @ V.T
        maxs = np.maximum.reduceat(P, starts, axis=1)
        mins = np.minimum.reduceat(P, starts, axis=1)
        amax = amin = None
        if with_args:
            bounds = starts + [P.shape[1]]
            amax = np.empty_like(maxs)
            amin = np.empty_like(maxs)
            for j in range(len(starts)):
                block = P[:, bounds[j]:bounds[j + 1]]
                amax[:, j] = block.argmax(axis=1) + bounds[j]
                amin[:, j] = block.argmin(axis=1) + bounds[j]
        best_max = np.stack([maxs[:, g].min(axis=1) for g in groups], axis=1)
        best_min = np.stack([mins[:, g].max(axis=1) for g in groups], axis=1)
        t1 = np.sort(best_max, axis=1)[:, self.h - 1]
        t2 = -np.sort(-best_min, axis=1)[:, self.h - 1]
        T = (t1 + t2)[:, None]
        return t1, t2, maxs, mins, amax, amin, 2 * maxs < T, 2 * mins > T

    def side_masks(self, X):
        """Boolean (len(X), members) arrays of strict membership in F^- and F^+."""
        np = self._arrays()[0]
        Xa = self._as_int64(X)
        if Xa is None:
            rows = [self.sweep_int(tuple(int(c) for c in x)) for x in X]
            return (np.array([[m in r[4] for m in self.ids] for r in rows], dtype=bool),
                    np.array([[m in r[5] for m in self.ids] for r in rows], dtype=bool))
        *_, minus, plus = self._extremes(Xa, False)
        return minus, plus

    def sweep_many(self, X: Sequence[Sequence[int]]) -> list:
        """sweep_int over many directions, vectorized when int64 cannot overflow."""
        if not len(X):
            return []
        Xa = self._as_int64(X)
        if Xa is None:
            return [self.sweep_int(tuple(int(c) for c in x)) for x in X]
        np, _, flat, _, _, _ = self._arrays()
        t1, t2, maxs, mins, amax, amin, minus, plus = self._extremes(Xa, True)
        rows = np.arange(len(X))
        v1 = amax[rows, np.argmax(maxs == t1[:, None], axis=1)].tolist()
        v2 = amin[rows, np.argmax(mins == t2[:, None], axis=1)].tolist()
        t1, t2 = t1.tolist(), t2.tolist()
        minus, plus = minus.tolist(), plus.tolist()
        mem = self._members
        return [(t1[i], t2[i], flat[v1[i]], flat[v2[i]], mem(minus[i]), mem(plus[i]))
                for i in range(len(X))]

    def sweep(self, x) -> Sweep:
        x = as_point(x)
        if not any(x):
            raise ValueError("direction must be nonzero")
        xi = primitive(x)
        j = next(i for i, c in enumerate(x) if c)
        c = Fraction(xi[j]) / x[j]  # xi = c * x with c > 0
        t1, t2, v1, v2, minus, plus = self.sweep_int(xi)
        s = self.L * c
        return Sweep(x, Fraction(t1) / s, Fraction(t2) / s,
                     tuple(Fraction(a, self.L) for a in v1),
                     tuple(Fraction(a, self.L) for a in v2), minus, plus)


def sweep(F: ColoredFamily, x: Sequence, r: Optional[int] = None) -> Sweep:
    return _Frame(F, r).sweep(x)


def sweep_pair(F: ColoredFamily, x: Sequence, r: Optional[int] = None):
    """(H1, H2) in direction x."""
    s = sweep(F, x, r)
    return s.H1, s.H2


def central_hyperplane(F: ColoredFamily, x: Sequence, r: Optional[int] = None) -> OrientedHyperplane:
    return sweep(F, x, r).H


def separated_subfamilies(F: ColoredFamily, H: OrientedHyperplane):
    """(members strictly negative of H, members strictly positive of H)."""
    minus, plus = set(), set()
    for m, K in F.members.items():
        sides = {H.side(v) for v in K.vertices}
        if sides == {-1}:
            minus.add(m)
        elif sides == {1}:
            plus.add(m)
    return frozenset(minus), frozenset(plus)


def collapse_certificate(F: ColoredFamily, x: Sequence, r: Optional[int] = None):
    """When H2 does not lie strictly above H1, the colors whose members all meet H1.

    Returns None if the sweep is strictly ordered. Otherwise the returned
    color classes are nonempty and H1 is a transversal of each of them.
    """
    s = sweep(F, x, r)
    if not s.collapsed:
        return None
    H1 = s.H1
    below, above = separated_subfamilies(F, H1)
    shown = F.coloring.colors_of(below | above)
    colors = tuple(sorted(set(range(1, F.r + 1)) - shown))
    if not colors:
        raise ClaimFailure("collapsed sweep but every color is separated from H1")
    return H1, colors


def verify_collapse(F: ColoredFamily, certificate) -> bool:
    """Cross-check a collapse certificate with the transversal search."""
    H1, colors = certificate
    for c in colors:
        members = F.polytopes(F.color_class(c))
        if find_hyperplane_transversal(members) is None:
            return False
        if not all(meets(H1, K) for K in members):
            return False
    return True


# -- annotation ---------------------------------------------------------------


class CentralData:
    """Sweep data of one cell, kept in the integer frame of its family.

    ``x`` is the cell representative as an integer vector, ``t1``, ``t2`` the
    sweep levels and ``v1``, ``v2`` attaining vertices, all scaled by ``L``.
    """

    __slots__ = ("cell", "x", "L", "t1", "t2", "v1", "v2", "minus", "plus")

    def __init__(self, cell, x, L, t1, t2, v1, v2, minus, plus):
        self.cell, self.x, self.L = cell, x, L
        self.t1, self.t2, self.v1, self.v2 = t1, t2, v1, v2
        self.minus, self.plus = minus, plus

    @property
    def H1(self) -> OrientedHyperplane:
        return OrientedHyperplane(self.x, Fraction(self.t1, self.L))

    @property
    def H2(self) -> OrientedHyperplane:
        return OrientedHyperplane(self.x, Fraction(self.t2, self.L))

    @property
    def H(self) -> OrientedHyperplane:
        return OrientedHyperplane(self.x, Fraction(self.t1 + self.t2, 2 * self.L))

    @property
    def vertex1(self) -> tuple:
        return tuple(Fraction(c, self.L) for c in self.v1)

    @property
    def vertex2(self) -> tuple:
        return tuple(Fraction(c, self.L) for c in self.v2)

    @property
    def collapsed(self) -> bool:
        return self.t1 >= self.t2

    def __repr__(self):
        return (f"CentralData(cell={self.cell}, x={self.x}, H={self.H}, "
                f"minus={sorted(self.minus)}, plus={sorted(self.plus)})")


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _int_rep(cell) -> tuple:
    rep = cell.representative
    if all(isinstance(c, int) for c in rep):
        return tuple(rep)
    return primitive(rep)


def interior_samples(cx: SphereComplex, cell_id: int, count: int = 5) -> list[tuple]:
    """Integer directions in the same cell: j * rep + (boundary representatives).

    Cells are relatively open convex cones, and a relative-interior point plus
    any point of the closure stays in the relative interior.
    """
    a = _int_rep(cx.cells[cell_id])
    bound = [_int_rep(cx.cells[t]) for t in cx.faces[cell_id]]
    if not bound:
        return [tuple(j * c for c in a) for j in range(2, count + 2)]
    out = []
    for j in range(count):
        w = bound[j % len(bound)]
        if j >= len(bound) and len(bound) > 1:
            w = tuple(p + q for p, q in zip(w, bound[(j + 1) % len(bound)]))
        out.append(tuple((j + 1) * p + q for p, q in zip(a, w)))
    return out


def _sample_matrix(cx: SphereComplex, reps, count: int):
    """interior_samples for every cell at once, as an integer array."""
    import numpy as np

    C = len(reps)
    R = np.array(reps, dtype=object)
    if R.size and int(np.abs(R).max()) * (count + 3) < 2 ** 40:
        R = R.astype(np.int64)
    f1 = np.full((C, count), -1, dtype=np.int64)
    f2 = np.full((C, count), -1, dtype=np.int64)
    mult = np.zeros((C, count), dtype=np.int64)
    for i, fs in enumerate(cx.faces):
        nb = len(fs)
        for j in range(count):
            if not nb:
                mult[i, j] = j + 2
                continue
            mult[i, j] = j + 1
            f1[i, j] = fs[j % nb]
            if j >= nb and nb > 1:
                f2[i, j] = fs[(j + 1) % nb]
    R0 = np.vstack([R, np.zeros((1, R.shape[1]), dtype=R.dtype)])  # row -1 is the zero vector
    out = mult[:, :, None] * R[:, None, :] + R0[f1] + R0[f2]
    return out.reshape(C * count, R.shape[1])


def annotate_cells(cx: SphereComplex, F: ColoredFamily, r: Optional[int] = None,
                   samples: int = 0) -> list[CentralData]:
    """Central data at every cell representative.

    With ``samples > 0`` the separated subfamilies are recomputed at that many
    interior points per cell and a mismatch raises ClaimFailure.
    """
    frame = _Frame(F, r)
    reps = [_int_rep(c) for c in cx.cells]
    out = [CentralData(i, x, frame.L, *res)
           for i, (x, res) in enumerate(zip(reps, frame.sweep_many(reps)))]
    if samples and reps:
        import numpy as np

        minus0, plus0 = frame.side_masks(reps)
        Y = _sample_matrix(cx, reps, samples)
        minus, plus = frame.side_masks(Y)
        same = ((minus.reshape(len(reps), samples, -1) == minus0[:, None, :]).all(axis=(1, 2))
                & (plus.reshape(len(reps), samples, -1) == plus0[:, None, :]).all(axis=(1, 2)))
        bad = np.flatnonzero(~same)
        if bad.size:
            raise ClaimFailure(f"separated subfamilies change inside cell {int(bad[0])}")
    return out


@dataclass
class MonotonicityReport:
    checked: int = 0
    failures: list = field(default_factory=list)  # (tau, sigma) pairs

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_monotonicity(cx: SphereComplex, data: Sequence[CentralData]) -> MonotonicityReport:
    """For every tau in the boundary of sigma, check F_tau^- <= F_sigma^- and likewise for +."""
    report = MonotonicityReport()
    for sigma, fs in enumerate(cx.faces):
        for tau in fs:
            report.checked += 1
            if not (data[tau].minus <= data[sigma].minus and data[tau].plus <= data[sigma].plus):
                report.failures.append((tau, sigma))
    return report


CLAIMS = ("midpoint_incidence", "strict_order", "all_colors", "half_colors",
          "antipodality", "cell_constancy", "monotonicity")


@dataclass
class ClaimsReport:
    cells: int
    failures: dict  # claim name -> list of offending cell ids or pairs

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())


def verify_claims(cx: SphereComplex, F: ColoredFamily, r: Optional[int] = None,
                  samples: int = 5, data: Optional[Sequence[CentralData]] = None) -> ClaimsReport:
    """Check the per-cell properties of central hyperplanes on a whole complex."""
    r = F.r if r is None else r
    h = _ceil_half(r)
    failures = {name: [] for name in CLAIMS}
    if data is None or samples:
        try:
            data = annotate_cells(cx, F, r, samples)
        except ClaimFailure as exc:
            failures["cell_constancy"].append(str(exc))
            data = annotate_cells(cx, F, r, 0)
    frame = _Frame(F, r)
    verts = sorted({v for vs in frame.verts for v in vs})
    mid_sums = {tuple(a + b for a, b in zip(u, w))
                for i, u in enumerate(verts) for w in verts[i + 1:]}
    all_colors = set(range(1, r + 1))
    colors_of = F.coloring.colors_of
    color_memo: dict = {}

    def ncolors(members):
        if members not in color_memo:
            color_memo[members] = colors_of(members)
        return color_memo[members]

    for cd in data:
        x = cd.x
        m = tuple(a + b for a, b in zip(cd.v1, cd.v2))
        if (_dot(cd.v1, x) != cd.t1 or _dot(cd.v2, x) != cd.t2
                or m not in mid_sums or _dot(m, x) != cd.t1 + cd.t2):
            failures["midpoint_incidence"].append(cd.cell)
        if cd.collapsed:
            failures["strict_order"].append(cd.cell)
        cm, cp = ncolors(cd.minus), ncolors(cd.plus)
        if cm | cp != all_colors:
            failures["all_colors"].append(cd.cell)
        if len(cm) < h or len(cp) < h:
            failures["half_colors"].append(cd.cell)
        anti = data[cx.antipode[cd.cell]]
        if anti.x == tuple(-c for c in x):
            flipped = (anti.t1, anti.t2)
        else:
            flipped = frame.sweep_int(tuple(-c for c in x))[:2]
        # H(-x) = -H(x) means the levels swap roles and change sign.
        if (anti.minus != cd.plus or anti.plus != cd.minus
                or flipped != (-cd.t2, -cd.t1)):
            failures["antipodality"].append(cd.cell)
    failures["monotonicity"] = verify_monotonicity(cx, data).failures
    return ClaimsReport(len(data), failures)
