"""Exact rational arithmetic, linear algebra and linear feasibility.

Every geometric predicate in the package reduces to the functions here. Numbers
are :class:`fractions.Fraction`; points are tuples of fractions. The simplex
method pivots on integer tableaux with fraction-free (Bareiss) updates, so the
inner loop only touches Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Point = tuple  # tuple[Fraction, ...]
RationalLike = Union[Fraction, int, str]

LE = "<="
LT = "<"


# -- rationals ---------------------------------------------------------------


def rational(value: RationalLike) -> Fraction:
    """Parse an exact rational from a Fraction, int or "p/q" string."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot read {type(value).__name__} as an exact rational")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def as_point(coords: Iterable[RationalLike]) -> Point:
    return tuple(rational(c) for c in coords)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def scale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)


def neg(v: Sequence) -> tuple:
    return tuple(-a for a in v)


def common_denominator(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = lcm(out, Fraction(v).denominator)
    return out


def integer_row(row: Sequence[Fraction]) -> tuple[list[int], int]:
    """Scale ``row`` by the lcm of its denominators; returns (ints, factor)."""
    s = common_denominator(row)
    return [int(Fraction(v) * s) for v in row], s


def primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Positive rescaling of a rational vector to a primitive integer vector."""
    ints, _ = integer_row(vec)
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


def canonical_direction(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Primitive integer vector with first nonzero coordinate positive.

    Two vectors get the same key iff they span the same line.
    """
    p = primitive(vec)
    for v in p:
        if v:
            return p if v > 0 else tuple(-c for c in p)
    raise ValueError("zero vector has no direction")


# -- linear algebra ----------------------------------------------------------


def _bareiss_rank(rows: list[list[int]]) -> int:
    m = [list(r) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, nrows):
            f = m[i][col]
            m[i] = [(a * p - f * b) // prev for a, b in zip(m[i], m[rank])]
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank by fraction-free Gaussian elimination."""
    rows = [r for r in rows]
    if not rows:
        return 0
    return _bareiss_rank([integer_row(r)[0] for r in rows])


def det(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant (Bareiss on the integer-scaled rows)."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    factor = 1
    m = []
    for r in matrix:
        ints, s = integer_row(r)
        factor *= s
        m.append(ints)
    return Fraction(int_det(m), factor)


def int_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        a, b, c = m
        return (a[0] * (b[1] * c[2] - b[2] * c[1])
                - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]))
    m = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        p = m[k][k]
        for i in range(k + 1, n):
            f = m[i][k]
            m[i] = [(a * p - f * b) // prev for a, b in zip(m[i], m[k])]
        prev = p
    return sign * m[n - 1][n - 1]


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : rows @ x = 0}, one vector per free column of the RREF."""
    m = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [v / p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row_i, pc in enumerate(pivots):
            vec[pc] = -m[row_i][fc]
        basis.append(tuple(vec))
    return basis


def solve_unique(rows: Sequence[Sequence], rhs: Sequence) -> "tuple | None":
    """The unique solution of rows @ x = rhs, or None if there is none or many."""
    ncols = len(rows[0]) if rows else 0
    m = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            return None
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [v / p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(m[i][-1] for i in range(r, len(m))):
        return None
    return tuple(m[i][-1] for i in range(ncols))


def barycentric(q: Sequence, points: Sequence[Sequence]) -> "tuple | None":
    """Affine coordinates of q w.r.t. affinely independent points, else None.

    None also when q is off their affine hull. The coordinates may be negative.
    """
    d = len(q)
    rows = [[p[c] for p in points] for c in range(d)] + [[1] * len(points)]
    return solve_unique(rows, list(q) + [1])


def int_normal(diffs: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Generalized cross product of d-1 integer vectors in Z^d."""
    d = len(diffs) + 1
    out = []
    for i in range(d):
        minor = [[row[j] for j in range(d) if j != i] for row in diffs]
        v = int_det(minor)
        out.append(v if i % 2 == 0 else -v)
    return tuple(out)


def hyperplane_through(points: Sequence[Point]):
    """The hyperplane (normal, offset) through d affinely independent points of R^d.

    Returns None when the points are affinely dependent.
    """
    d = len(points)
    if d == 0:
        raise ValueError("need at least one point")
    base = points[0]
    diffs = [sub(p, base) for p in points[1:]]
    int_diffs = [integer_row(row)[0] for row in diffs]
    normal = int_normal(int_diffs)
    if not any(normal):
        return None
    normal = primitive(normal)
    return normal, dot(normal, base)


def is_affinely_independent(points: Sequence[Point]) -> bool:
    return rank([tuple(p) + (1,) for p in points]) == len(points)


def affine_rank(points: Sequence[Point]) -> int:
    """Dimension of the affine hull (-1 for the empty set)."""
    if not points:
        return -1
    return rank([tuple(p) + (1,) for p in points]) - 1


# -- hyperplanes --------------------------------------------------------------


@dataclass(frozen=True)
class OrientedHyperplane:
    """H = {v : v . normal = offset}; the normal points to the positive side."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(rational(c) for c in self.normal))
        object.__setattr__(self, "offset", rational(self.offset))
        if not any(self.normal):
            raise ValueError("hyperplane normal must be nonzero")

    @property
    def d(self) -> int:
        return len(self.normal)

    def value(self, v: Sequence) -> Fraction:
        return dot(self.normal, v) - self.offset

    def side(self, v: Sequence) -> int:
        s = self.value(v)
        return (s > 0) - (s < 0)

    def __neg__(self) -> "OrientedHyperplane":
        return OrientedHyperplane(neg(self.normal), -self.offset)

    def normalized(self) -> "OrientedHyperplane":
        """Same oriented hyperplane with a primitive integer normal."""
        ints, s = integer_row(self.normal + (self.offset,))
        g = 0
        for v in ints[:-1]:
            g = gcd(g, v)
        return OrientedHyperplane(tuple(Fraction(v, g) for v in ints[:-1]),
                                  Fraction(ints[-1], g))

    def same_set(self, other: "OrientedHyperplane") -> bool:
        a, b = self.normalized(), other.normalized()
        return a == b or a == -b


def _axis_separator(low_points, high_points) -> "OrientedHyperplane | None":
    # A coordinate direction, when one separates, gives the most readable certificate.
    d = len(low_points[0])
    for i in range(d):
        for sgn in (1, -1):
            lo = max(sgn * p[i] for p in low_points)
            hi = min(sgn * p[i] for p in high_points)
            if lo < hi:
                normal = tuple(Fraction(sgn if j == i else 0) for j in range(d))
                return OrientedHyperplane(normal, (lo + hi) / 2)
    return None


def _separator(normal, low_values, high_values) -> OrientedHyperplane:
    # Offset halfway between the two sides; caller guarantees max(low) < min(high).
    lo, hi = max(low_values), min(high_values)
    assert lo < hi
    return OrientedHyperplane(normal, (lo + hi) / 2).normalized()


# -- linear systems ------------------------------------------------------------


@dataclass(frozen=True)
class LinearSystem:
    """Equalities a.x = b and inequalities a.x <= b or a.x < b over free variables."""

    num_vars: int
    equalities: tuple = ()
    inequalities: tuple = ()

    def __post_init__(self):
        eqs = []
        for row, rhs in self.equalities:
            row = tuple(rational(v) for v in row)
            if len(row) != self.num_vars:
                raise ValueError(f"equality row has {len(row)} entries, expected {self.num_vars}")
            eqs.append((row, rational(rhs)))
        ineqs = []
        for item in self.inequalities:
            if len(item) == 2:
                (row, rhs), rel = item, LE
            else:
                row, rhs, rel = item
            if rel not in (LE, LT):
                raise ValueError(f"unknown relation {rel!r}")
            row = tuple(rational(v) for v in row)
            if len(row) != self.num_vars:
                raise ValueError(f"inequality row has {len(row)} entries, expected {self.num_vars}")
            ineqs.append((row, rational(rhs), rel))
        object.__setattr__(self, "equalities", tuple(eqs))
        object.__setattr__(self, "inequalities", tuple(ineqs))

    @property
    def has_strict(self) -> bool:
        return any(rel == LT for _, _, rel in self.inequalities)

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.num_vars:
            return False
        for row, rhs in self.equalities:
            if dot(row, x) != rhs:
                return False
        for row, rhs, rel in self.inequalities:
            v = dot(row, x)
            if v > rhs or (rel == LT and v == rhs):
                return False
        return True


@dataclass(frozen=True)
class FarkasCertificate:
    """Multipliers whose combination of the constraints reads 0 <= c < 0 or 0 < 0.

    Equality multipliers may have either sign; inequality multipliers are >= 0.
    """

    eq_multipliers: tuple
    ineq_multipliers: tuple

    def verify(self, system: LinearSystem) -> bool:
        if len(self.eq_multipliers) != len(system.equalities):
            return False
        if len(self.ineq_multipliers) != len(system.inequalities):
            return False
        if any(m < 0 for m in self.ineq_multipliers):
            return False
        combo = [Fraction(0)] * system.num_vars
        rhs = Fraction(0)
        strict_weight = Fraction(0)
        for mult, (row, b) in zip(self.eq_multipliers, system.equalities):
            if mult:
                for j, a in enumerate(row):
                    combo[j] += mult * a
                rhs += mult * b
        for mult, (row, b, rel) in zip(self.ineq_multipliers, system.inequalities):
            if mult:
                for j, a in enumerate(row):
                    combo[j] += mult * a
                rhs += mult * b
                if rel == LT:
                    strict_weight += mult
        if any(combo):
            return False
        return rhs < 0 or (rhs == 0 and strict_weight > 0)


@dataclass(frozen=True)
class Feasible:
    point: tuple


@dataclass(frozen=True)
class Infeasible:
    certificate: FarkasCertificate


class SolverError(RuntimeError):
    """The solver produced an answer that failed exact re-verification."""


def _phase_one(A: list[list[int]], b: list[int]):
    """Find z >= 0 with A z = b, or y with y.A <= 0 and y.b > 0.

    Phase-one simplex with Bland's rule on an integer tableau. Entries are kept
    as D * (B^-1 [A | I | b]) where D is the current basis determinant, so all
    divisions below are exact.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return True, [Fraction(0)] * n
    sign = []
    T = []
    for i in range(m):
        row, bi = A[i], b[i]
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
            sign.append(-1)
        else:
            sign.append(1)
        art = [0] * m
        art[i] = 1
        T.append(list(row) + art + [bi])
    ncols = n + m
    obj = [0] * (ncols + 1)
    for row in T:
        for j in range(n):
            obj[j] -= row[j]
        obj[ncols] -= row[ncols]
    basis = list(range(n, n + m))
    D = 1
    while True:
        s = -1
        for j in range(ncols):
            if obj[j] < 0:
                s = j
                break
        if s < 0:
            break
        r = -1
        for i in range(m):
            a = T[i][s]
            if a > 0:
                if r < 0:
                    r = i
                    continue
                lhs = T[i][ncols] * T[r][s]
                rhs = T[r][ncols] * a
                if lhs < rhs or (lhs == rhs and basis[i] < basis[r]):
                    r = i
        if r < 0:
            raise SolverError("phase one reported unbounded")
        prow = T[r]
        p = prow[s]
        for i in range(m):
            if i == r:
                continue
            row = T[i]
            f = row[s]
            if f:
                T[i] = [(x * p - f * y) // D for x, y in zip(row, prow)]
            elif p != D:
                T[i] = [x * p // D for x in row]
        f = obj[s]
        obj = [(x * p - f * y) // D for x, y in zip(obj, prow)]
        D = p
        basis[r] = s
    if obj[ncols] < 0:
        y = [sign[i] * (1 - Fraction(obj[n + i], D)) for i in range(m)]
        return False, y
    z = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            z[j] = Fraction(T[i][ncols], D)
    return True, z


def _solve_closed(n: int, eqs: list, ineqs: list):
    """Feasibility of {a.x = b} and {a.x <= b} over free x.

    Returns (True, x) or (False, eq_mults, ineq_mults) with a Farkas combination.
    Rows of the form -c * x_j <= 0 are treated as sign bounds.
    """
    bound_row = {}
    body = []
    for idx, (row, rhs) in enumerate(ineqs):
        if rhs == 0:
            nz = [j for j, a in enumerate(row) if a]
            if len(nz) == 1 and row[nz[0]] < 0:
                bound_row.setdefault(nz[0], idx)
                continue
        body.append(idx)
    # Slack columns come first so Bland's rule prefers slack bases.
    nslack = len(body)
    col_of = []
    ncols = nslack
    for j in range(n):
        if j in bound_row:
            col_of.append((ncols, None))
            ncols += 1
        else:
            col_of.append((ncols, ncols + 1))
            ncols += 2
    A, b, row_scale = [], [], []
    for row, rhs in eqs:
        ints, s = integer_row(row + (rhs,))
        out = [0] * ncols
        for j in range(n):
            a = ints[j]
            if a:
                pc, mc = col_of[j]
                out[pc] = a
                if mc is not None:
                    out[mc] = -a
        A.append(out)
        b.append(ints[n])
        row_scale.append(s)
    for k, idx in enumerate(body):
        row, rhs = ineqs[idx]
        ints, s = integer_row(row + (rhs,))
        out = [0] * ncols
        for j in range(n):
            a = ints[j]
            if a:
                pc, mc = col_of[j]
                out[pc] = a
                if mc is not None:
                    out[mc] = -a
        out[k] = 1
        A.append(out)
        b.append(ints[n])
        row_scale.append(s)
    if not A:
        return True, tuple(Fraction(0) for _ in range(n))
    ok, vec = _phase_one(A, b)
    if ok:
        x = []
        for j in range(n):
            pc, mc = col_of[j]
            x.append(vec[pc] - (vec[mc] if mc is not None else 0))
        return True, tuple(x)
    lam = [-v for v in vec]
    neq = len(eqs)
    eq_mults = [lam[i] * row_scale[i] for i in range(neq)]
    ineq_mults = [Fraction(0)] * len(ineqs)
    for k, idx in enumerate(body):
        ineq_mults[idx] = lam[neq + k] * row_scale[neq + k]
    for j, idx in bound_row.items():
        # Cancel the column combination with the bound row -c x_j <= 0.
        total = Fraction(0)
        for mult, (row, _) in zip(eq_mults, eqs):
            total += mult * row[j]
        for k, i2 in enumerate(body):
            total += ineq_mults[i2] * ineqs[i2][0][j]
        ineq_mults[idx] = total / (-ineqs[idx][0][j])
    return False, tuple(eq_mults), tuple(ineq_mults)


def solve_feasibility(system: LinearSystem):
    """Decide a mixed system exactly; returns Feasible(point) or Infeasible(certificate).

    Strict rows are handled by homogenizing: x = y / tau with tau >= 1 and
    every strict row tightened by one unit, which is feasible iff the original
    strict system is.
    """
    n = system.num_vars
    eqs = [(row, rhs) for row, rhs in system.equalities]
    if not system.has_strict:
        ineqs = [(row, rhs) for row, rhs, _ in system.inequalities]
        res = _solve_closed(n, eqs, ineqs)
        if res[0]:
            out = Feasible(res[1])
        else:
            out = Infeasible(FarkasCertificate(res[1], res[2]))
    else:
        zero = Fraction(0)
        h_eqs = [(row + (-rhs,), zero) for row, rhs in eqs]
        h_ineqs = []
        for row, rhs, rel in system.inequalities:
            h_ineqs.append((row + (-rhs,), Fraction(-1) if rel == LT else zero))
        h_ineqs.append(((zero,) * n + (Fraction(-1),), Fraction(-1)))
        res = _solve_closed(n + 1, h_eqs, h_ineqs)
        if res[0]:
            y = res[1]
            tau = y[n]
            out = Feasible(tuple(v / tau for v in y[:n]))
        else:
            out = Infeasible(FarkasCertificate(res[1], res[2][:-1]))
    if isinstance(out, Feasible):
        if not system.satisfied_by(out.point):
            raise SolverError("feasible point failed re-substitution")
    elif not out.certificate.verify(system):
        raise SolverError("Farkas certificate failed re-verification")
    return out


# -- convex hull predicates ------------------------------------------------------


@dataclass(frozen=True)
class InHull:
    weights: tuple  # one weight per input point

    def point(self, points: Sequence[Point]) -> Point:
        d = len(points[0])
        return tuple(sum(w * p[i] for w, p in zip(self.weights, points)) for i in range(d))


@dataclass(frozen=True)
class Outside:
    """``hyperplane`` has the query strictly positive and the hull strictly negative."""

    hyperplane: OrientedHyperplane


@dataclass(frozen=True)
class Intersect:
    point: Point
    weights_a: tuple
    weights_b: tuple


@dataclass(frozen=True)
class Separated:
    """``hyperplane`` has hull(A) strictly negative and hull(B) strictly positive."""

    hyperplane: OrientedHyperplane


def _check_dims(points: Sequence[Point], d: int):
    for p in points:
        if len(p) != d:
            raise ValueError(f"dimension mismatch: expected {d}, got {len(p)}")


def point_in_hull(q: Sequence, S: Sequence[Sequence]):
    """Exact membership of q in conv(S) with barycentric weights or a separator."""
    if not S:
        raise ValueError("empty point set")
    q = as_point(q)
    S = [as_point(s) for s in S]
    d = len(q)
    _check_dims(S, d)
    n = len(S)
    eqs = [(tuple(s[c] for s in S), q[c]) for c in range(d)]
    eqs.append(((1,) * n, 1))
    ineqs = [(tuple(-1 if j == i else 0 for j in range(n)), 0) for i in range(n)]
    res = solve_feasibility(LinearSystem(n, eqs, ineqs))
    if isinstance(res, Feasible):
        return InHull(tuple(res.point))
    H = _axis_separator(S, [q])
    if H is None:
        normal = neg(res.certificate.eq_multipliers[:d])
        H = _separator(normal, [dot(normal, s) for s in S], [dot(normal, q)])
    return Outside(H)


def hulls_intersect(A: Sequence[Sequence], B: Sequence[Sequence]):
    """Exact test of conv(A) ∩ conv(B) with a common point or a strict separator."""
    if not A or not B:
        raise ValueError("empty point set")
    A = [as_point(a) for a in A]
    B = [as_point(b) for b in B]
    d = len(A[0])
    _check_dims(A, d)
    _check_dims(B, d)
    na, nb = len(A), len(B)
    n = na + nb
    eqs = [(tuple(a[c] for a in A) + tuple(-b[c] for b in B), 0) for c in range(d)]
    eqs.append(((1,) * na + (0,) * nb, 1))
    eqs.append(((0,) * na + (1,) * nb, 1))
    ineqs = [(tuple(-1 if j == i else 0 for j in range(n)), 0) for i in range(n)]
    res = solve_feasibility(LinearSystem(n, eqs, ineqs))
    if isinstance(res, Feasible):
        lam = res.point[:na]
        mu = res.point[na:]
        pt = tuple(sum(w * a[c] for w, a in zip(lam, A)) for c in range(d))
        return Intersect(pt, tuple(lam), tuple(mu))
    H = _axis_separator(A, B)
    if H is None:
        normal = neg(res.certificate.eq_multipliers[:d])
        H = _separator(normal, [dot(normal, a) for a in A], [dot(normal, b) for b in B])
    return Separated(H)


# -- Radon circuits ------------------------------------------------------------


@dataclass(frozen=True)
class Circuit:
    """A minimal affinely dependent subset with its signed dependence.

    ``coefficients`` sum to zero and combine the support points to zero; the
    first coefficient is positive.
    """

    support: tuple  # indices into the input point list, increasing
    coefficients: tuple

    @property
    def signs(self) -> tuple:
        return tuple(1 if c > 0 else -1 for c in self.coefficients)

    @property
    def positive(self) -> tuple:
        return tuple(i for i, c in zip(self.support, self.coefficients) if c > 0)

    @property
    def negative(self) -> tuple:
        return tuple(i for i, c in zip(self.support, self.coefficients) if c < 0)

    def weights(self) -> tuple[dict, dict]:
        """Convex weights on each side that produce the common point."""
        total = sum(c for c in self.coefficients if c > 0)
        pos = {i: c / total for i, c in zip(self.support, self.coefficients) if c > 0}
        negw = {i: -c / total for i, c in zip(self.support, self.coefficients) if c < 0}
        return pos, negw

    def witness(self, points: Sequence[Point]) -> Point:
        pos, _ = self.weights()
        k = len(points[0])
        return tuple(sum(w * points[i][c] for i, w in pos.items()) for c in range(k))


def affine_circuits(P: Sequence[Sequence]) -> list[Circuit]:
    """All circuits of the affine point configuration P, ordered by support.

    Subsets of size at most k+2 are scanned; a subset is a circuit iff its
    affine dependence space is one-dimensional with full support.
    """
    pts = [as_point(p) for p in P]
    if not pts:
        return []
    k = len(pts[0])
    _check_dims(pts, k)
    lifted, factors = [], []
    for p in pts:
        ints, f = integer_row(p + (Fraction(1),))
        lifted.append(ints)
        factors.append(f)
    out = []
    for size in range(2, min(k + 2, len(pts)) + 1):
        for sub_idx in combinations(range(len(pts)), size):
            cols = [lifted[i] for i in sub_idx]
            rows = [[c[r] for c in cols] for r in range(k + 1)]
            if _bareiss_rank(rows) != size - 1:
                continue
            vec = _int_null_vector(rows, size)
            if not all(vec):
                continue
            # Columns were scaled by factors[i] > 0; undo on the dependence.
            vec = [v * factors[i] for v, i in zip(vec, sub_idx)]
            if vec[0] < 0:
                vec = neg(vec)
            out.append(Circuit(sub_idx, tuple(Fraction(v) for v in primitive(vec))))
    return out


def _int_null_vector(rows: list[list[int]], ncols: int) -> tuple[int, ...]:
    """Kernel generator of an integer matrix of rank ncols - 1, by cofactors."""
    chosen: list[list[int]] = []
    for row in rows:
        if _bareiss_rank(chosen + [row]) > len(chosen):
            chosen.append(row)
            if len(chosen) == ncols - 1:
                break
    return int_normal(chosen)


def midpoints(V: Sequence[Sequence]) -> list[Point]:
    """Sorted, deduplicated midpoints of pairs of distinct points of V."""
    pts = sorted(set(as_point(v) for v in V))
    half = Fraction(1, 2)
    return sorted({tuple((a + b) * half for a, b in zip(u, v))
                   for u, v in combinations(pts, 2)})
