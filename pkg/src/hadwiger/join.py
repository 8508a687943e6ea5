"""Lifted configurations, geometric joins and the origin tests built on them.

Members of F^- are lifted to -(phi(m), 1), members of F^+ to (phi(m), 1),
so both lifted sets sit on opposite sides of W = {last coordinate = 0}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .exact import InHull, OrientedHyperplane, barycentric, point_in_hull
from .radon import Coloring, KOrdering, RadonPair, Violation

JOIN = "join"
SLICE = "slice"
CONVSLICE = "convslice"
VARIANTS = (JOIN, SLICE, CONVSLICE)


class PreconditionError(ValueError):
    """A lemma's hypothesis does not hold for the given input."""


@dataclass(frozen=True)
class LiftedPoint:
    coords: tuple
    color: int
    member: str
    side: int  # -1 for the lifted F^-, +1 for F^+


@dataclass(frozen=True)
class LiftedConfig:
    k: int
    minus: tuple  # LiftedPoints with last coordinate -1
    plus: tuple

    @property
    def points(self) -> tuple:
        return self.minus + self.plus

    def colors(self) -> set[int]:
        return {p.color for p in self.points}

    def negated(self) -> "LiftedConfig":
        flip = lambda p: LiftedPoint(tuple(-c for c in p.coords), p.color, p.member, -p.side)
        return LiftedConfig(self.k, tuple(flip(p) for p in self.plus),
                            tuple(flip(p) for p in self.minus))

    def as_sets(self) -> tuple[frozenset, frozenset]:
        return (frozenset((p.coords, p.color) for p in self.minus),
                frozenset((p.coords, p.color) for p in self.plus))


def lift(ordering: KOrdering, F_minus: Iterable[str], F_plus: Iterable[str],
         coloring: Coloring) -> LiftedConfig:
    F_minus, F_plus = sorted(set(F_minus)), sorted(set(F_plus))
    overlap = set(F_minus) & set(F_plus)
    if overlap:
        raise ValueError(f"members on both sides: {sorted(overlap)}")
    one = Fraction(1)
    minus = tuple(LiftedPoint(tuple(-c for c in ordering[m]) + (-one,), coloring[m], m, -1)
                  for m in F_minus)
    plus = tuple(LiftedPoint(tuple(ordering[m]) + (one,), coloring[m], m, 1) for m in F_plus)
    return LiftedConfig(ordering.k, minus, plus)


@dataclass(frozen=True)
class JoinWitness:
    """Colorful lifted points with convex weights combining to the origin."""

    points: tuple  # LiftedPoints
    weights: tuple

    def combination(self) -> tuple:
        dim = len(self.points[0].coords)
        return tuple(sum(w * p.coords[c] for w, p in zip(self.weights, self.points))
                     for c in range(dim))


def _colorful_subsets(points: Sequence[LiftedPoint], size: int):
    for sub in combinations(range(len(points)), size):
        if len({points[i].color for i in sub}) == size:
            yield sub


def origin_in_join(points: Sequence[LiftedPoint], r: Optional[int] = None) -> Optional[JoinWitness]:
    """A colorful subset whose hull contains the origin, or None.

    By Caratheodory it suffices to look at affinely independent subsets of at
    most dim + 1 points, where membership is an exact barycentric solve. With
    every color class nonempty a colorful subset extends to a full system of
    representatives by zero weights, so this decides 0 in join(Q).
    """
    points = list(points)
    if r is not None:
        missing = set(range(1, r + 1)) - {p.color for p in points}
        if missing:
            raise ValueError(f"empty color classes in the join: {sorted(missing)}")
    if not points:
        return None
    dim = len(points[0].coords)
    origin = (0,) * dim
    for size in range(1, dim + 2):
        for sub in _colorful_subsets(points, size):
            w = barycentric(origin, [points[i].coords for i in sub])
            if w is not None and all(x >= 0 for x in w):
                keep = [(points[i], x) for i, x in zip(sub, w) if x]
                return JoinWitness(tuple(p for p, _ in keep), tuple(x for _, x in keep))
    return None


@dataclass(frozen=True)
class SliceWitness:
    """Origin as a convex combination of W-crossings of colorful segments."""

    segments: tuple  # ((q_minus, q_plus), ...)
    crossings: tuple
    weights: tuple


def _crossing(a: LiftedPoint, b: LiftedPoint) -> tuple:
    return tuple((x + y) / 2 for x, y in zip(a.coords, b.coords))


def origin_in_convslice(config: LiftedConfig) -> Optional[SliceWitness]:
    """0 in conv(W cap join(Q)) for k = 1.

    W cap join(Q) is covered by slices of colorful hulls, whose extreme points
    are crossings of colorful segments between the two sides.
    """
    if config.k != 1:
        raise ValueError("the convex-slice variant is defined for k = 1 only")
    segs = [(a, b) for a in config.minus for b in config.plus if a.color != b.color]
    if not segs:
        return None
    xs = [_crossing(a, b)[0] for a, b in segs]
    for i, x in enumerate(xs):
        if x == 0:
            return SliceWitness((segs[i],), ((Fraction(0), Fraction(0)),), (Fraction(1),))
    neg = min((i for i in range(len(xs)) if xs[i] < 0), key=lambda i: (-xs[i], i), default=None)
    pos = min((i for i in range(len(xs)) if xs[i] > 0), key=lambda i: (xs[i], i), default=None)
    if neg is None or pos is None:
        return None
    a, b = xs[neg], xs[pos]
    wa, wb = b / (b - a), -a / (b - a)
    return SliceWitness((segs[neg], segs[pos]),
                        ((a, Fraction(0)), (b, Fraction(0))), (wa, wb))


@dataclass(frozen=True)
class SSigma:
    variant: str
    config: LiftedConfig
    d: int
    r: int
    cell: Optional[int] = None
    H: Optional[OrientedHyperplane] = None  # central hyperplane of the cell

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.variant == CONVSLICE and self.config.k != 1:
            raise ValueError("the convex-slice variant is defined for k = 1 only")
        if not self.m < self.d:
            raise ValueError(f"{self.variant} lives in dimension {self.m}, needs < d = {self.d}")

    @property
    def k(self) -> int:
        return self.config.k

    @property
    def m(self) -> int:
        return self.k + 1 if self.variant == JOIN else self.k


def origin_in_s_sigma(S: SSigma):
    """JoinWitness or SliceWitness when the origin lies in S, else None."""
    if S.variant in (JOIN, SLICE):
        # The origin lies on W, so 0 in W cap join(Q) iff 0 in join(Q).
        return origin_in_join(S.config.points, S.r)
    return origin_in_convslice(S.config)


def norigin_certificate(S: SSigma, witness, ordering: KOrdering) -> Violation:
    """Turn an origin witness into a colorful Radon pair separated by H_sigma.

    Points of the witness from the F^- side are negated and stripped of the
    last coordinate, giving phi-images whose hull meets that of the F^+ side.
    """
    if witness is None:
        raise ValueError("no origin witness to convert")
    if S.H is None:
        raise ValueError("S(sigma) carries no central hyperplane")
    if isinstance(witness, SliceWitness):
        witness = origin_in_join(S.config.points, S.r)
        if witness is None:
            raise PreconditionError("slice witness without a join witness")
    w1 = {p.member: 2 * w for p, w in zip(witness.points, witness.weights) if p.side < 0}
    w2 = {p.member: 2 * w for p, w in zip(witness.points, witness.weights) if p.side > 0}
    if sum(w1.values()) != 1 or sum(w2.values()) != 1:
        raise AssertionError("origin witness does not split evenly across W")
    k = S.k
    pt1 = tuple(sum(w * ordering[m][c] for m, w in w1.items()) for c in range(k))
    pt2 = tuple(sum(w * ordering[m][c] for m, w in w2.items()) for c in range(k))
    if pt1 != pt2:
        raise AssertionError("the two sides of the witness disagree")
    pair = RadonPair(tuple(sorted(w1)), tuple(sorted(w2)), pt1, dict(sorted(w1.items())),
                     dict(sorted(w2.items())))
    return Violation(pair, S.H)


# -- star-shapedness ------------------------------------------------------------


@dataclass(frozen=True)
class KernelPoint:
    p: tuple
    p1: LiftedPoint
    p2: LiftedPoint
    checked: int  # selections verified


def kernel_point(S: SSigma, selections: Sequence[tuple]) -> KernelPoint:
    """A point of W seeing each selected x_i inside S(sigma).

    ``selections`` holds pairs (x_i, X_i) with X_i a colorful list of at most
    k+1 lifted points of the configuration and x_i in W cap conv(X_i). The
    returned p lies on a colorful segment p1 p2 with p1 in Q^-, p2 in Q^+;
    both x_i and p lie in conv(X_i + {p1, p2}), whose slice by W sits in S.
    """
    if S.variant != SLICE:
        raise ValueError("kernel points are defined for the slice variant")
    k = S.k
    need_r = 2 * (k + 1) ** 2 + 3
    if S.r < need_r:
        raise PreconditionError(f"needs r >= {need_r}, got r = {S.r}")
    need = (k + 1) ** 2 + 2
    cm = {p.color for p in S.config.minus}
    cp = {p.color for p in S.config.plus}
    if len(cm) < need or len(cp) < need:
        raise PreconditionError(f"each side must span at least {need} colors "
                                f"(got {len(cm)} and {len(cp)})")
    if len(selections) > k + 1:
        raise PreconditionError(f"at most {k + 1} boundary selections")
    points = set(S.config.points)
    used: set[int] = set()
    for x, X in selections:
        X = list(X)
        if len(X) > k + 1 or len({p.color for p in X}) != len(X):
            raise PreconditionError("each X_i must be colorful with at most k+1 points")
        if not set(X) <= points:
            raise PreconditionError("X_i must consist of points of the configuration")
        if x[-1] != 0 or not isinstance(point_in_hull(x, [p.coords for p in X]), InHull):
            raise PreconditionError(f"{x} is not in W cap conv(X_i)")
        used |= {p.color for p in X}
    p1 = next(p for p in S.config.minus if p.color not in used)
    p2 = next(p for p in S.config.plus if p.color not in used and p.color != p1.color)
    p = tuple((a + b) / 2 for a, b in zip(p1.coords, p2.coords))
    for x, X in selections:
        gen = [q.coords for q in X] + [p1.coords, p2.coords]
        if len({q.color for q in X} | {p1.color, p2.color}) != len(X) + 2:
            raise AssertionError("extended selection is not colorful")
        for y in (x, p):
            if y[-1] != 0 or not isinstance(point_in_hull(y, gen), InHull):
                raise AssertionError("visibility check failed")
    return KernelPoint(p, p1, p2, len(selections))
