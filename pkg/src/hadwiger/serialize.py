"""JSON encoding of instances, certificates and complex dumps.

Rationals travel as "p/q" strings ("p" when q = 1), so every payload
round-trips exactly. ``dumps`` fixes key order and indentation; identical
objects always give identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from .certificates import Incidence, OpenCase, RadonViolation, TransversalWitness
from .exact import OrientedHyperplane, as_point, format_rational, rational
from .radon import Coloring, KOrdering, RadonPair, TableOracle
from .transversal import ColoredFamily, Polytope


def dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def loads(text: str) -> Any:
    return json.loads(text)


def rat(x) -> str:
    return format_rational(Fraction(x))


def vec(v) -> list[str]:
    return [rat(c) for c in v]


# -- families, orderings, instances ------------------------------------------------


def family_to_json(F: ColoredFamily) -> dict:
    return {
        "d": F.d,
        "r": F.r,
        "sets": [{"id": m, "color": F.coloring[m], "vertices": [vec(v) for v in P.vertices]}
                 for m, P in F.members.items()],
    }


def family_from_json(data: dict) -> ColoredFamily:
    sets = data["sets"]
    d = int(data["d"])
    members, labels = {}, {}
    for s in sets:
        mid = str(s["id"])
        if mid in members:
            raise ValueError(f"duplicate member id {mid!r}")
        P = Polytope([as_point(v) for v in s["vertices"]])
        if P.d != d:
            raise ValueError(f"member {mid!r} does not live in R^{d}")
        members[mid] = P
        labels[mid] = int(s["color"])
    r = int(data.get("r", max(labels.values(), default=0)))
    return ColoredFamily(members, Coloring(labels, r))


def ordering_to_json(ordering: KOrdering) -> dict:
    return {"k": ordering.k, "points": {m: vec(ordering[m]) for m in ordering.members}}


def ordering_from_json(data: dict, allow_repeats: Optional[bool] = None) -> KOrdering:
    k = int(data["k"])
    if allow_repeats is None:
        allow_repeats = k == 0
    return KOrdering(k, {str(m): as_point(p) for m, p in data["points"].items()},
                     allow_repeats=allow_repeats)


def oracle_to_json(oracle: TableOracle) -> dict:
    return {"kind": "table", "independent": sorted(sorted(s) for s in oracle.maximal)}


def oracle_from_json(data: dict, ground) -> TableOracle:
    if data.get("kind") != "table":
        raise ValueError(f"unknown oracle kind {data.get('kind')!r}")
    return TableOracle(ground, data["independent"])


def instance_to_json(inst, spec=None) -> dict:
    out = family_to_json(inst.family)
    out["ordering"] = ordering_to_json(inst.ordering)
    if isinstance(inst.oracle, TableOracle):
        out["oracle"] = oracle_to_json(inst.oracle)
    if spec is not None:
        out["spec"] = spec.to_dict()
    return out


def instance_from_json(data: dict):
    from .harness import Instance

    F = family_from_json(data)
    ordering = ordering_from_json(data["ordering"])
    if set(ordering.members) != set(F.ids):
        raise ValueError("ordering does not cover exactly the family members")
    oracle = oracle_from_json(data["oracle"], F.ids) if "oracle" in data else None
    return Instance(F, ordering, oracle)


# -- hyperplanes and certificates ----------------------------------------------------


def hyperplane_to_json(H: OrientedHyperplane) -> dict:
    return {"x": vec(H.normal), "t": rat(H.offset)}


def hyperplane_from_json(data: dict) -> OrientedHyperplane:
    return OrientedHyperplane(as_point(data["x"]), rational(data["t"]))


def radon_pair_to_json(pair: RadonPair) -> dict:
    return {
        "part1": list(pair.part1),
        "part2": list(pair.part2),
        "witness": vec(pair.witness),
        "weights1": {m: rat(w) for m, w in pair.weights1.items()},
        "weights2": {m: rat(w) for m, w in pair.weights2.items()},
    }


def radon_pair_from_json(data: dict) -> RadonPair:
    return RadonPair(
        tuple(data["part1"]), tuple(data["part2"]), as_point(data["witness"]),
        {m: rational(w) for m, w in data.get("weights1", {}).items()},
        {m: rational(w) for m, w in data.get("weights2", {}).items()},
    )


def certificate_to_json(cert) -> dict:
    if isinstance(cert, TransversalWitness):
        return {
            "kind": cert.kind,
            "color": cert.color,
            "hyperplane": hyperplane_to_json(cert.hyperplane),
            "incidences": {m: {"u": vec(i.u), "v": vec(i.v), "lambda": rat(i.lam)}
                           for m, i in sorted(cert.incidences.items())},
        }
    if isinstance(cert, RadonViolation):
        return {"kind": cert.kind, "radon_pair": radon_pair_to_json(cert.pair),
                "separator": hyperplane_to_json(cert.separator)}
    if isinstance(cert, OpenCase):
        return {"kind": cert.kind, "diagnostics": dict(cert.diagnostics)}
    raise TypeError(f"not a certificate: {type(cert).__name__}")


def certificate_from_json(data: dict):
    kind = data.get("kind")
    if kind == "transversal":
        inc = {m: Incidence(as_point(i["u"]), as_point(i["v"]), rational(i["lambda"]))
               for m, i in data["incidences"].items()}
        return TransversalWitness(data["color"], hyperplane_from_json(data["hyperplane"]), inc)
    if kind == "violation":
        return RadonViolation(radon_pair_from_json(data["radon_pair"]),
                              hyperplane_from_json(data["separator"]))
    if kind == "open":
        return OpenCase(data.get("diagnostics", {}))
    raise ValueError(f"unknown certificate kind {kind!r}")


def verdict_to_json(verdict) -> dict:
    out = {"certificate": certificate_to_json(verdict.certificate)}
    if verdict.transversal is not None:
        out["transversal"] = certificate_to_json(verdict.transversal)
    if verdict.violation is not None:
        out["violation"] = certificate_to_json(verdict.violation)
    return out


# -- complex and zero-cell dumps ------------------------------------------------------


def complex_to_json(cx, data) -> list:
    """One entry per cell; ``boundary_of`` lists the cells whose boundary holds it."""
    cofaces = cx.cofaces()
    out = []
    for i, (cell, cd) in enumerate(zip(cx.cells, data)):
        out.append({
            "id": i,
            "dim": cell.dim,
            "signs": list(cell.signs),
            "representative": vec(cell.representative),
            "boundary_of": list(cofaces[i]),
            "F_minus": sorted(cd.minus),
            "F_plus": sorted(cd.plus),
            "H": hyperplane_to_json(cd.H),
        })
    return out


def lifted_point_to_json(p) -> dict:
    return {"coords": vec(p.coords), "color": p.color, "member": p.member, "side": p.side}


def witness_to_json(hit, certificate: Optional[RadonViolation] = None) -> dict:
    """Zero-cell witness: combination points, weights and the derived violation."""
    from .join import SliceWitness

    w = hit.witness
    out: dict = {"cell": hit.cell, "variant": hit.S.variant}
    if isinstance(w, SliceWitness):
        out["points"] = [vec(c) for c in w.crossings]
        out["segments"] = [[lifted_point_to_json(a), lifted_point_to_json(b)]
                           for a, b in w.segments]
    else:
        out["points"] = [lifted_point_to_json(p) for p in w.points]
    out["weights"] = [rat(x) for x in w.weights]
    if certificate is not None:
        out["radon_pair"] = radon_pair_to_json(certificate.pair)
        out["separator"] = hyperplane_to_json(certificate.separator)
    return out
