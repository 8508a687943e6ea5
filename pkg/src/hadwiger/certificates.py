"""Verdict certificates and a validator that checks them without any LP.

The validator only substitutes points into hyperplanes and recombines convex
weights, so it shares no code path with the searches that produce the
certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .exact import OrientedHyperplane
from .radon import IndependenceOracle, KOrdering, PartitionOracle, RadonPair
from .transversal import ColoredFamily, Polytope


@dataclass(frozen=True)
class Incidence:
    """A point of H written as lam * u + (1 - lam) * v for vertices u, v."""

    u: tuple
    v: tuple
    lam: Fraction

    @property
    def point(self) -> tuple:
        return tuple(self.lam * a + (1 - self.lam) * b for a, b in zip(self.u, self.v))


@dataclass(frozen=True)
class TransversalWitness:
    color: Optional[int]  # None when the subfamily comes from a general matroid
    hyperplane: OrientedHyperplane
    incidences: Mapping[str, Incidence]

    kind = "transversal"

    @property
    def members(self) -> tuple:
        return tuple(sorted(self.incidences))


@dataclass(frozen=True)
class RadonViolation:
    pair: RadonPair
    separator: OrientedHyperplane

    kind = "violation"

    @property
    def witness(self) -> tuple:
        return self.pair.witness


@dataclass(frozen=True)
class OpenCase:
    diagnostics: Mapping = field(default_factory=dict)

    kind = "open"


def incidence(H: OrientedHyperplane, K: Polytope) -> Incidence:
    vals = [(H.value(v), v) for v in K.vertices]
    for s, v in vals:
        if s == 0:
            return Incidence(v, v, Fraction(1))
    lo = min(vals)
    hi = max(vals)
    if not lo[0] < 0 < hi[0]:
        raise ValueError("hyperplane misses the polytope")
    lam = hi[0] / (hi[0] - lo[0])
    return Incidence(lo[1], hi[1], lam)


def transversal_certificate(F: ColoredFamily, members, H: OrientedHyperplane,
                            color: Optional[int] = None) -> TransversalWitness:
    return TransversalWitness(color, H, {m: incidence(H, F.members[m]) for m in sorted(members)})


# -- validation ------------------------------------------------------------------


@dataclass
class Validation:
    ok: bool
    problems: list

    def __bool__(self):
        return self.ok


def _on(hyperplane, p) -> bool:
    return sum(a * b for a, b in zip(hyperplane.normal, p)) == hyperplane.offset


def validate_transversal(F: ColoredFamily, cert: TransversalWitness,
                         oracle: Optional[IndependenceOracle] = None) -> Validation:
    """The subfamily is a color class, or for a general matroid the complement
    of a set of rank below the full rank."""
    problems = []
    H = cert.hyperplane
    if not any(H.normal):
        problems.append("zero normal")
    if cert.color is not None:
        if set(cert.incidences) != set(F.color_class(cert.color)):
            problems.append("incidences do not cover exactly the color class")
    elif oracle is None:
        problems.append("no color and no oracle to justify the subfamily")
    else:
        rest = set(F.members) - set(cert.incidences)
        if oracle.rank_of(sorted(rest)) >= oracle.rank:
            problems.append("complement of the subfamily has full rank")
    for m, inc in cert.incidences.items():
        if m not in F.members:
            problems.append(f"unknown member {m}")
            continue
        verts = set(F.members[m].vertices)
        if inc.u not in verts or inc.v not in verts:
            problems.append(f"{m}: incidence uses a non-vertex")
        if not 0 <= inc.lam <= 1:
            problems.append(f"{m}: weight outside [0, 1]")
        if not _on(H, inc.point):
            problems.append(f"{m}: incidence point is off the hyperplane")
    return Validation(not problems, problems)


def validate_violation(F: ColoredFamily, ordering: KOrdering, cert: RadonViolation,
                       oracle: Optional[IndependenceOracle] = None) -> Validation:
    problems = []
    pair = cert.pair
    p1, p2 = set(pair.part1), set(pair.part2)
    if not p1 or not p2:
        problems.append("empty part")
    if p1 & p2:
        problems.append("parts overlap")
    if oracle is None:
        oracle = PartitionOracle(F.coloring)
    if not oracle.is_independent(sorted(p1 | p2)):
        problems.append("pair is not colorful / independent")
    for name, part, weights in (("part1", p1, pair.weights1), ("part2", p2, pair.weights2)):
        if set(weights) != part:
            problems.append(f"{name}: weights do not match the part")
            continue
        if any(w < 0 for w in weights.values()) or sum(weights.values()) != 1:
            problems.append(f"{name}: weights are not convex")
        k = ordering.k
        combo = tuple(sum(w * ordering[m][c] for m, w in weights.items()) for c in range(k))
        if combo != tuple(pair.witness):
            problems.append(f"{name}: weights do not reproduce the witness")
    H = cert.separator
    for m in p1:
        if any(H.side(v) >= 0 for v in F.members[m].vertices):
            problems.append(f"{m} is not strictly negative")
    for m in p2:
        if any(H.side(v) <= 0 for v in F.members[m].vertices):
            problems.append(f"{m} is not strictly positive")
    return Validation(not problems, problems)


def validate(F: ColoredFamily, ordering: KOrdering, cert,
             oracle: Optional[IndependenceOracle] = None) -> Validation:
    if isinstance(cert, TransversalWitness):
        return validate_transversal(F, cert, oracle)
    if isinstance(cert, RadonViolation):
        return validate_violation(F, ordering, cert, oracle)
    if isinstance(cert, OpenCase):
        return Validation(True, [])
    return Validation(False, [f"unknown certificate {type(cert).__name__}"])
