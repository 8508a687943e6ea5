"""Instance generation and the end-to-end verification pipeline."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Optional

from .certificates import (
    OpenCase,
    RadonViolation,
    TransversalWitness,
    transversal_certificate,
    validate,
)
from .complex import SphereComplex, annotate_cells, build_complex
from .join import (
    CONVSLICE,
    JOIN,
    SLICE,
    VARIANTS,
    LiftedConfig,
    LiftedPoint,
    PreconditionError,
    SSigma,
    lift,
    norigin_certificate,
    origin_in_s_sigma,
)
from .radon import (
    Coloring,
    Consistent,
    IndependenceOracle,
    KOrdering,
    PartitionOracle,
    TableOracle,
    is_rainbow_consistent,
    r_bound,
)
from .transversal import (
    ColoredFamily,
    Polytope,
    find_hyperplane_transversal,
    find_monochromatic_transversal,
)

KINDS = ("segments", "simplices", "polytopes")
ORACLES = ("partition", "table")


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class InstanceSpec:
    d: int
    k: int
    r: int
    members_per_color: int = 4
    kind: str = "segments"
    vertices: int = 4          # vertex count for kind="polytopes"
    coord_bound: int = 10      # centers in [-B, B]^d, offsets with denominator B
    member_size: int = 3       # offsets lie in [-size, size]
    seed: int = 0
    oracle: str = "partition"
    hard: bool = False
    ordering_bound: int = 1000
    retries: int = 50

    def __post_init__(self):
        if not self.d > self.k >= 0:
            raise ValueError(f"need d > k >= 0, got d={self.d}, k={self.k}")
        if self.r < 1 or self.members_per_color < 1:
            raise ValueError("r and members_per_color must be positive")
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.oracle not in ORACLES:
            raise ValueError(f"oracle must be one of {ORACLES}")
        if self.coord_bound < 1 or self.member_size < 1:
            raise ValueError("coord_bound and member_size must be positive")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "InstanceSpec":
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown spec fields: {sorted(extra)}")
        return cls(**data)


@dataclass
class Instance:
    family: ColoredFamily
    ordering: KOrdering
    oracle: Optional[IndependenceOracle] = None

    def independence(self) -> IndependenceOracle:
        return self.oracle if self.oracle is not None else PartitionOracle(self.family.coloring)


def _member(rng: random.Random, spec: InstanceSpec) -> Polytope:
    B = spec.coord_bound
    nverts = {"segments": 2, "simplices": spec.d + 1, "polytopes": spec.vertices}[spec.kind]
    center = [rng.randint(-B, B) for _ in range(spec.d)]
    while True:
        verts = [tuple(c + Fraction(rng.randint(-B, B), B) * spec.member_size for c in center)
                 for _ in range(nverts)]
        if len(set(verts)) == nverts:
            return Polytope(verts)


def _ordering_points(rng: random.Random, k: int, n: int, bound: int) -> list[tuple]:
    """n integer points of R^k in general position, sampled incrementally."""
    from .exact import affine_rank

    if k == 0:
        return [()] * n
    pts: list[tuple] = []
    while len(pts) < n:
        p = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(k))
        if p in pts:
            continue
        size = min(k, len(pts))
        if all(affine_rank(list(sub) + [p]) == size for sub in combinations(pts, size)):
            pts.append(p)
    return pts


def partition_table(coloring: Coloring) -> TableOracle:
    """The partition matroid of a coloring spelled out as a table of bases."""
    classes = coloring.classes()
    bases = [set(choice) for choice in product(*(classes[c] for c in sorted(classes)))]
    return TableOracle(coloring.labels, bases)


def generate_instance(spec: InstanceSpec) -> Instance:
    """A pure function of ``spec``: the same spec gives the same instance."""
    rng = random.Random(spec.seed)
    members: dict[str, Polytope] = {}
    labels: dict[str, int] = {}
    for c in range(1, spec.r + 1):
        for attempt in range(spec.retries if spec.hard else 1):
            polys = [_member(rng, spec) for _ in range(spec.members_per_color)]
            if not spec.hard or find_hyperplane_transversal(polys) is None:
                break
        else:
            raise GenerationError(
                f"color {c}: every one of {spec.retries} samples of "
                f"{spec.members_per_color} members had a hyperplane transversal")
        for j, P in enumerate(polys):
            mid = f"c{c:02d}m{j:02d}"
            members[mid] = P
            labels[mid] = c
    family = ColoredFamily(members, Coloring(labels, spec.r))
    ids = family.ids
    pts = _ordering_points(rng, spec.k, len(ids), spec.ordering_bound)
    ordering = KOrdering(spec.k, dict(zip(ids, pts)), allow_repeats=spec.k == 0)
    oracle = partition_table(family.coloring) if spec.oracle == "table" else None
    return Instance(family, ordering, oracle)


# -- verification pipeline -------------------------------------------------------


def _matroid_hyperplanes(oracle: IndependenceOracle, ground) -> list[frozenset]:
    """Closed sets of rank r - 1 (closures of independent (r-1)-sets)."""
    ground = sorted(ground)
    out = set()
    target = oracle.rank - 1
    for sub in combinations(ground, target):
        if oracle.is_independent(list(sub)):
            closure = frozenset(m for m in ground
                                if oracle.rank_of(list(sub) + [m]) == target)
            out.add(closure)
    return sorted(out, key=lambda s: sorted(s))


def transversal_search(inst: Instance, method: str = "vertices"):
    """(certificate or None, subfamilies searched)."""
    F = inst.family
    if inst.oracle is None or isinstance(inst.oracle, PartitionOracle):
        hit = find_monochromatic_transversal(F, method)
        searched = F.r if hit is None else hit[0]
        if hit is None:
            return None, searched
        color, H = hit
        return transversal_certificate(F, F.color_class(color), H, color), searched
    searched = 0
    for flat in _matroid_hyperplanes(inst.oracle, F.ids):
        rest = [m for m in F.ids if m not in flat]
        searched += 1
        H = find_hyperplane_transversal(F.polytopes(rest), method)
        if H is not None:
            return transversal_certificate(F, rest, H), searched
    return None, searched


def consistency_search(inst: Instance):
    res = is_rainbow_consistent(inst.family, inst.ordering, inst.independence())
    if isinstance(res, Consistent):
        return None, res.circuits_checked
    return RadonViolation(res.pair, res.separator), None


@dataclass
class Verdict:
    certificate: object
    transversal: Optional[TransversalWitness] = None
    violation: Optional[RadonViolation] = None
    diagnostics: dict = field(default_factory=dict)


def verify_theorem(inst: Instance, both: bool = False, method: str = "vertices") -> Verdict:
    """Transversal search first, then the consistency check.

    Every certificate is re-validated; OpenCase is returned only when both
    exhaustive searches come back empty, and is flagged as contradicting the
    known bound when r is at least the best upper bound for (d, k).
    """
    F, ordering = inst.family, inst.ordering
    oracle = inst.independence()
    tcert, t_searched = transversal_search(inst, method)
    vcert = circuits = None
    if tcert is None or both:
        vcert, circuits = consistency_search(inst)
    for cert in (tcert, vcert):
        if cert is not None:
            check = validate(F, ordering, cert, oracle)
            if not check:
                raise AssertionError(f"certificate failed validation: {check.problems}")
    if tcert is not None:
        return Verdict(tcert, tcert, vcert)
    if vcert is not None:
        return Verdict(vcert, None, vcert)
    bound = r_bound(F.d, ordering.k)
    diag = {
        "d": F.d,
        "k": ordering.k,
        "r": F.r,
        "subfamilies_searched": t_searched,
        "circuits_checked": circuits,
        "r_upper_bound": bound.upper,
        "contradicts_bound": bound.upper is not None and F.r >= bound.upper,
    }
    return Verdict(OpenCase(diag), None, None, diag)


# -- zero-cell scan ----------------------------------------------------------------


@dataclass(frozen=True)
class ZeroCell:
    cell: int
    S: SSigma
    witness: object


def lift_cell(cx: SphereComplex, data, F: ColoredFamily, ordering: KOrdering, cell: int) -> LiftedConfig:
    return lift(ordering, data[cell].minus, data[cell].plus, F.coloring)


def scan_zero_cell(inst: Instance, variant: str, cx: Optional[SphereComplex] = None,
                   data=None, first: bool = True):
    """The first cell (by id) whose S(sigma) contains the origin, or None.

    With ``first=False`` all hits are returned as a list.
    """
    F, ordering = inst.family, inst.ordering
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    if F.d not in (2, 3):
        raise PreconditionError(f"zero-cell scans need d in (2, 3), got d={F.d}")
    try:
        SSigma(variant, LiftedConfig(ordering.k, (), ()), F.d, F.r)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from exc
    if find_monochromatic_transversal(F) is not None:
        raise PreconditionError("a monochromatic subfamily has a hyperplane transversal")
    if cx is None:
        cx = build_complex(F)
    if data is None:
        data = annotate_cells(cx, F)
    memo: dict = {}
    hits = []
    for cd in data:
        key = (cd.minus, cd.plus)
        if key not in memo:
            config = lift(ordering, cd.minus, cd.plus, F.coloring)
            S = SSigma(variant, config, F.d, F.r)
            memo[key] = (config, origin_in_s_sigma(S))
        config, w = memo[key]
        if w is not None:
            hit = ZeroCell(cd.cell, SSigma(variant, config, F.d, F.r, cd.cell, cd.H), w)
            if first:
                return hit
            hits.append(hit)
    return None if first else hits


def zero_cell_certificate(inst: Instance, hit: ZeroCell) -> RadonViolation:
    v = norigin_certificate(hit.S, hit.witness, inst.ordering)
    return RadonViolation(v.pair, v.separator)


# -- synthetic star configurations ---------------------------------------------------


def synthetic_star_config(seed: int, k: int = 1, r: Optional[int] = None, bound: int = 50):
    """A lifted slice configuration with tight color counts and k+1 selections.

    Each side spans exactly (k+1)^2 + 2 colors and the sides share one color,
    so r = 2(k+1)^2 + 3 colors appear in total. The selections use (k+1)^2
    distinct colors, the shared one among them, leaving the greedy choice of
    p1 p2 as little room as the counting bound allows.
    """
    rng = random.Random(seed)
    need = (k + 1) ** 2 + 2
    r = 2 * need - 1 if r is None else r
    if r < 2 * need - 1:
        raise ValueError(f"needs r >= {2 * need - 1}")
    colors = list(range(1, r + 1))
    rng.shuffle(colors)
    shared = colors[need - 1]
    minus_cols = colors[:need]
    plus_cols = colors[need - 1:2 * need - 1]
    for c in colors[2 * need - 1:]:
        (minus_cols if rng.random() < 0.5 else plus_cols).append(c)
    tag = iter(range(10 ** 6))

    def point(side, color):
        coords = tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, 5)) for _ in range(k))
        return LiftedPoint(coords + (Fraction(side),), color, f"q{next(tag):03d}", side)

    minus = [point(-1, c) for c in minus_cols for _ in range(rng.randint(1, 2))]
    plus = [point(1, c) for c in plus_cols for _ in range(rng.randint(1, 2))]
    rng.shuffle(minus)
    rng.shuffle(plus)
    config = LiftedConfig(k, tuple(minus), tuple(plus))

    # One point below W per selection, the shared color first.
    below = [shared] + [c for c in minus_cols if c != shared][:k]
    above = [c for c in plus_cols if c != shared][:k * (k + 1)]
    selections = []
    for i in range(k + 1):
        a = next(p for p in minus if p.color == below[i])
        X = [a] + [next(p for p in plus if p.color == c) for c in above[i * k:(i + 1) * k]]
        b = X[1]
        x = tuple((u + v) / 2 for u, v in zip(a.coords, b.coords))
        selections.append((x, X))
    return SSigma(SLICE, config, k + 1, r), selections


# -- the r(3,2) probe -----------------------------------------------------------------


def probe_r32(rmin: int = 4, rmax: int = 7, seeds=range(1, 51), members_per_color: int = 5,
              kind: str = "simplices", hard: bool = True, coord_bound: int = 10,
              member_size: int = 2) -> dict:
    """Tabulate verify_theorem outcomes for d=3, k=2 across r and seeds."""
    rows, archive = [], []
    for r in range(rmin, rmax + 1):
        counts = {"transversal": 0, "violation": 0, "open": 0, "generation_failed": 0}
        for seed in seeds:
            spec = InstanceSpec(d=3, k=2, r=r, members_per_color=members_per_color, kind=kind,
                                coord_bound=coord_bound, member_size=member_size,
                                seed=seed, hard=hard)
            try:
                inst = generate_instance(spec)
            except GenerationError:
                counts["generation_failed"] += 1
                continue
            verdict = verify_theorem(inst, both=True)
            counts[verdict.certificate.kind] += 1
            if isinstance(verdict.certificate, OpenCase):
                archive.append({"spec": spec.to_dict(), "diagnostics": verdict.diagnostics})
        rows.append({"r": r, "seeds": len(list(seeds)), **counts})
    return {"d": 3, "k": 2, "bound": asdict(r_bound(3, 2)), "rows": rows, "open_cases": archive}
