"""Colorings, k-orderings, independence oracles and (rainbow) consistency."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import TYPE_CHECKING, Iterable, Mapping, Optional, Sequence

from .exact import (
    OrientedHyperplane,
    Separated,
    affine_circuits,
    affine_rank,
    as_point,
    hulls_intersect,
)

if TYPE_CHECKING:
    from .transversal import ColoredFamily


@dataclass(frozen=True)
class Coloring:
    """Partition of member ids into ``r`` non-empty color classes 1..r."""

    labels: Mapping[str, int]
    r: int

    def __post_init__(self):
        labels = {str(k): int(v) for k, v in dict(self.labels).items()}
        if self.r < 1:
            raise ValueError("r must be positive")
        bad = {c for c in labels.values() if not 1 <= c <= self.r}
        if bad:
            raise ValueError(f"colors outside 1..{self.r}: {sorted(bad)}")
        missing = set(range(1, self.r + 1)) - set(labels.values())
        if missing:
            raise ValueError(f"empty color classes: {sorted(missing)}")
        object.__setattr__(self, "labels", labels)

    def __getitem__(self, member: str) -> int:
        return self.labels[member]

    def classes(self) -> dict[int, tuple[str, ...]]:
        out: dict[int, list[str]] = {c: [] for c in range(1, self.r + 1)}
        for m in sorted(self.labels):
            out[self.labels[m]].append(m)
        return {c: tuple(ms) for c, ms in out.items()}

    def is_colorful(self, members: Iterable[str]) -> bool:
        seen = set()
        for m in members:
            c = self.labels[m]
            if c in seen:
                return False
            seen.add(c)
        return True

    def colors_of(self, members: Iterable[str]) -> set[int]:
        return {self.labels[m] for m in members}


class IndependenceOracle:
    """Matroid access by independence queries; ``rank`` is the matroid rank."""

    rank: int

    def is_independent(self, members: Iterable[str]) -> bool:
        raise NotImplementedError

    def rank_of(self, members: Iterable[str]) -> int:
        # Greedy is exact for matroids.
        basis: list[str] = []
        for m in sorted(members):
            if self.is_independent(basis + [m]):
                basis.append(m)
        return len(basis)


class PartitionOracle(IndependenceOracle):
    """The partition matroid of a coloring: independent iff colorful."""

    def __init__(self, coloring: Coloring):
        self.coloring = coloring
        self.rank = coloring.r

    def is_independent(self, members):
        return self.coloring.is_colorful(members)

    def rank_of(self, members):
        return len(self.coloring.colors_of(members))


class FreeOracle(IndependenceOracle):
    """Every subset independent; checking it recovers plain consistency."""

    def __init__(self, members: Iterable[str]):
        self.members = tuple(sorted(members))
        self.rank = len(self.members)

    def is_independent(self, members):
        return True

    def rank_of(self, members):
        return len(set(members))


class TableOracle(IndependenceOracle):
    """Matroid given by a table of independent sets (closed under subsets)."""

    def __init__(self, ground: Iterable[str], independent: Iterable[Iterable[str]]):
        self.ground = frozenset(ground)
        tops = [frozenset(s) for s in independent]
        for s in tops:
            if not s <= self.ground:
                raise ValueError(f"independent set {sorted(s)} leaves the ground set")
        self.maximal = tuple(s for s in tops if not any(s < t for t in tops))
        self.rank = max((len(s) for s in self.maximal), default=0)

    def is_independent(self, members):
        ms = list(members)
        g = frozenset(ms)
        if len(g) != len(ms):
            return False
        return not g or any(g <= s for s in self.maximal)

    def check_exchange(self) -> bool:
        """Augmentation axiom over the closure of the table."""
        family = set()
        for s in self.maximal:
            for size in range(len(s) + 1):
                family.update(frozenset(c) for c in combinations(sorted(s), size))
        for a in family:
            for b in family:
                if len(a) < len(b) and not any(a | {x} in family for x in b - a):
                    return False
        return True


@dataclass(frozen=True)
class KOrdering:
    """A map member id -> point of R^k whose image affinely spans R^k.

    For k = 0 every member maps to the single point of R^0. Repeated images
    are otherwise rejected unless ``allow_repeats`` (used for monochromatic
    copies, where copies share their original's image).
    """

    k: int
    points: Mapping[str, tuple]
    allow_repeats: bool = False

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        pts = {str(m): as_point(p) for m, p in dict(self.points).items()}
        for m, p in pts.items():
            if len(p) != self.k:
                raise ValueError(f"point of {m} has dimension {len(p)}, expected {self.k}")
        if pts and affine_rank(list(pts.values())) != self.k:
            raise ValueError(f"image does not affinely span R^{self.k}")
        if self.k > 0 and not self.allow_repeats and len(set(pts.values())) != len(pts):
            raise ValueError("ordering is not injective")
        object.__setattr__(self, "points", pts)

    @property
    def members(self) -> tuple[str, ...]:
        return tuple(sorted(self.points))

    def __getitem__(self, member: str) -> tuple:
        return self.points[member]

    def is_general_position(self) -> bool:
        """Every k+1 image points are affinely independent."""
        pts = list(self.points.values())
        for sub in combinations(pts, min(self.k + 1, len(pts))):
            if affine_rank(list(sub)) != len(sub) - 1:
                return False
        return True


@dataclass(frozen=True)
class RadonPair:
    """Disjoint member sets whose images' hulls share ``witness``.

    ``weights1`` and ``weights2`` are convex weights on the images of the two
    parts, each reproducing ``witness`` exactly.
    """

    part1: tuple
    part2: tuple
    witness: tuple
    weights1: Mapping[str, Fraction] = field(default_factory=dict)
    weights2: Mapping[str, Fraction] = field(default_factory=dict)

    @property
    def support(self) -> tuple:
        return tuple(sorted(self.part1 + self.part2))


@dataclass(frozen=True)
class Consistent:
    circuits_checked: int = 0


@dataclass(frozen=True)
class Violation:
    """A (colorful) Radon pair of images whose sets are strictly separated.

    ``separator`` has the members of ``pair.part1`` strictly on its negative
    side and those of ``pair.part2`` strictly positive.
    """

    pair: RadonPair
    separator: OrientedHyperplane


def enumerate_colorful_circuits(ordering: KOrdering,
                                oracle: Optional[IndependenceOracle] = None) -> list[RadonPair]:
    """Circuits of the image whose support is independent, with exact witnesses."""
    ids = ordering.members
    pts = [ordering[m] for m in ids]
    out = []
    for c in affine_circuits(pts):
        support = tuple(ids[i] for i in c.support)
        if oracle is not None and not oracle.is_independent(support):
            continue
        pos, negw = c.weights()
        out.append(RadonPair(
            part1=tuple(ids[i] for i in c.positive),
            part2=tuple(ids[i] for i in c.negative),
            witness=c.witness(pts),
            weights1={ids[i]: w for i, w in pos.items()},
            weights2={ids[i]: w for i, w in negw.items()},
        ))
    out.sort(key=lambda p: p.support)
    return out


def _vertices(family: "ColoredFamily", members: Sequence[str]) -> list[tuple]:
    out = []
    for m in members:
        out.extend(family.members[m].vertices)
    return out


def _check_cover(family: "ColoredFamily", ordering: KOrdering):
    if set(family.members) != set(ordering.points):
        missing = sorted(set(family.members) ^ set(ordering.points))
        raise ValueError(f"ordering and family disagree on members: {missing}")


def is_rainbow_consistent(family: "ColoredFamily", ordering: KOrdering,
                          oracle: Optional[IndependenceOracle] = None):
    """Consistent, or the lexicographically first violating independent circuit.

    Checking circuits suffices: any violating pair of subfamilies contains a
    circuit of images whose parts sit inside the pair's parts, and strict
    separation passes to subfamilies.
    """
    _check_cover(family, ordering)
    if oracle is None:
        oracle = PartitionOracle(family.coloring)
    checked = 0
    for pair in enumerate_colorful_circuits(ordering, oracle):
        checked += 1
        res = hulls_intersect(_vertices(family, pair.part1), _vertices(family, pair.part2))
        if isinstance(res, Separated):
            return Violation(pair, res.hyperplane)
    return Consistent(checked)


def is_consistent_ordering(family: "ColoredFamily", ordering: KOrdering):
    """Consistency with respect to all Radon partitions of the image."""
    return is_rainbow_consistent(family, ordering, FreeOracle(family.members))


@dataclass(frozen=True)
class RBound:
    lower: int
    upper: Optional[int]  # None when no upper bound is known
    exact: bool


_EXACT = {(1, 0): 2, (2, 1): 3, (4, 2): 4}


def _upper_at(d: int, k: int) -> Optional[int]:
    cands = []
    if (d, k) in _EXACT:
        cands.append(_EXACT[(d, k)])
    if d == k + 2:
        cands.append(comb(k + 2, 2) + 1)
    if d == k + 1:
        cands.append(2 * (k + 1) ** 2 + 3)
    return min(cands) if cands else None


def r_bound(d: int, k: int) -> RBound:
    """Best known bounds on r(d, k).

    Upper bounds propagate upward in d since r(d, k) >= r(d+1, k); every
    known lower bound is k + 2.
    """
    if not d > k >= 0:
        raise ValueError(f"need d > k >= 0, got d={d}, k={k}")
    uppers = [u for dd in range(k + 1, d + 1) if (u := _upper_at(dd, k)) is not None]
    upper = min(uppers) if uppers else None
    lower = k + 2
    return RBound(lower, upper, upper == lower)
