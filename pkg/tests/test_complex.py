import random
from fractions import Fraction
from math import ceil

import numpy as np
import pytest

from gen import rand_int_point

from hadwiger.complex import (
    CLAIMS,
    ClaimFailure,
    UnsupportedDimension,
    annotate_cells,
    build_complex,
    central_hyperplane,
    collapse_certificate,
    interior_samples,
    separated_subfamilies,
    sweep,
    sweep_pair,
    verify_claims,
    verify_collapse,
    verify_monotonicity,
)
from hadwiger.exact import OrientedHyperplane, dot
from hadwiger.harness import InstanceSpec, generate_instance
from hadwiger.transversal import ColoredFamily, find_monochromatic_transversal

F = Fraction


def sort_oracle(fam, x, r):
    """Sweep levels by scanning candidate levels in order (closed side holds the whole member)."""
    h = ceil(r / 2)
    ext = {m: [dot(v, x) for v in K.vertices] for m, K in fam.members.items()}
    t1 = next(t for t in sorted({max(e) for e in ext.values()})
              if len({fam.coloring[m] for m, e in ext.items() if max(e) <= t}) >= h)
    t2 = next(t for t in sorted({min(e) for e in ext.values()}, reverse=True)
              if len({fam.coloring[m] for m, e in ext.items() if min(e) >= t}) >= h)
    return t1, t2


_NORMALS: dict = {}


def signs_of(cx, y):
    """Sign vector of an integer direction against the complex normals."""
    if id(cx) not in _NORMALS:
        _NORMALS[id(cx)] = np.array(cx.normals, dtype=np.int64)
    return tuple(int(v) for v in np.sign(_NORMALS[id(cx)] @ np.array(y, dtype=np.int64)))


def line_points(values):
    return ColoredFamily.from_sets([(f"p{i}", i + 1, [(v, 0)]) for i, v in enumerate(values)])


def distinct_lines(points):
    dirs = set()
    pts = sorted(set(points))
    for i, u in enumerate(pts):
        for w in pts[i + 1:]:
            a, b = w[0] - u[0], w[1] - u[1]
            # Slope as a canonical key, vertical lines separately.
            dirs.add(("v",) if a == 0 else (b / a,))
    return dirs


@pytest.fixture(scope="module")
def hard2():
    spec = InstanceSpec(d=2, k=1, r=3, members_per_color=3, seed=4, hard=True)
    inst = generate_instance(spec)
    cx = build_complex(inst.family)
    return inst.family, cx, annotate_cells(cx, inst.family)


# -- construction ------------------------------------------------------------------


def test_single_segment_gives_four_cells():
    cx = build_complex(ColoredFamily.from_sets([("s", 1, [(0, 0), (2, 2)])]))
    assert len(cx.normals) == 1 and len(cx) == 4
    assert cx.midpoints == ((1, 1),)


def test_two_triangles_cell_count():
    fam = ColoredFamily.from_sets([("a", 1, [(0, 0), (4, 1), (1, 5)]),
                                   ("b", 2, [(7, 2), (9, 9), (6, 8)])])
    cx = build_complex(fam)
    V = [v for K in fam.members.values() for v in K.vertices]
    mids = [tuple((a + b) / 2 for a, b in zip(u, w)) for i, u in enumerate(V) for w in V[i + 1:]]
    assert len(cx) == 2 * len(distinct_lines(V + mids)) * 2


def test_antipodal_cells_flip_signs(hard2):
    _, cx, _ = hard2
    # Sign vectors are recomputed in Python, so sample the cells.
    for i in range(0, len(cx), 97):
        a, b = cx.cells[i], cx.cells[cx.antipode[i]]
        assert signs_of(cx, b.representative) == tuple(-s for s in signs_of(cx, a.representative))


def test_spatial_complex_is_antipodal():
    fam = ColoredFamily.from_sets([("a", 1, [(0, 0, 0)]), ("b", 2, [(1, 0, 2)]), ("c", 3, [(0, 3, 1)])])
    cx = build_complex(fam)
    assert cx.d == 3 and len(cx) > 0
    for i, cell in enumerate(cx.cells):
        j = cx.antipode[i]
        assert cx.cells[j].signs == tuple(-s for s in cell.signs)
        for t in cx.faces[i]:
            assert all(a == 0 or a == b for a, b in zip(cx.cells[t].signs, cell.signs))


def test_cofaces_invert_faces(hard2):
    _, cx, _ = hard2
    co = cx.cofaces()
    assert sum(map(len, co)) == sum(map(len, cx.faces))
    for s, fs in enumerate(cx.faces):
        assert all(s in co[t] for t in fs)


def test_high_dimension_is_unsupported():
    fam = ColoredFamily.from_sets([("a", 1, [(0, 0, 0, 0)])])
    with pytest.raises(UnsupportedDimension):
        build_complex(fam)


def test_interior_samples_stay_in_their_cell(hard2):
    _, cx, _ = hard2
    for i in range(0, len(cx), 211):
        want = signs_of(cx, cx.cells[i].representative)
        for y in interior_samples(cx, i):
            assert signs_of(cx, y) == want


# -- sweeps ------------------------------------------------------------------------


def test_three_points_meet_in_the_middle():
    H1, H2 = sweep_pair(line_points([0, 1, 2]), (1, 0))
    assert (H1.offset, H2.offset) == (1, 1)


def test_two_points_split():
    fam = line_points([0, 1])
    H1, H2 = sweep_pair(fam, (1, 0))
    assert (H1.offset, H2.offset) == (0, 1)
    assert central_hyperplane(fam, (1, 0)).offset == F(1, 2)


def test_sweep_of_reversed_direction(hard2):
    fam, _, _ = hard2
    rng = random.Random(5)
    for _ in range(30):
        x = rand_int_point(rng, 2, 9)
        if not any(x):
            continue
        H1, H2 = sweep_pair(fam, x)
        G1, G2 = sweep_pair(fam, tuple(-c for c in x))
        assert (G1, G2) == (-H2, -H1)
        assert central_hyperplane(fam, tuple(-c for c in x)) == -central_hyperplane(fam, x)


def test_sweep_matches_sort_oracle():
    rng = random.Random(6)
    for _ in range(40):
        r = rng.randint(2, 4)
        fam = ColoredFamily.from_sets(
            [(f"m{i}", 1 + i % r, [rand_int_point(rng, 2, 6) for _ in range(2)]) for i in range(3 * r)])
        x = rand_int_point(rng, 2, 5)
        if not any(x):
            continue
        s = sweep(fam, x)
        assert (s.t1, s.t2) == sort_oracle(fam, x, r)


def test_central_level_passes_through_a_vertex_midpoint():
    rng = random.Random(7)
    for _ in range(40):
        fam = ColoredFamily.from_sets(
            [(f"m{i}", 1 + i % 3, [rand_int_point(rng, 2, 6) for _ in range(2)]) for i in range(9)])
        x = (F(rng.randint(-5, 5), 3), F(rng.randint(1, 5), 2))
        H1, H2 = sweep_pair(fam, x)
        H = central_hyperplane(fam, x)
        V = fam.vertices()
        assert any(dot(v, x) == H1.offset for v in V)
        assert any(dot(v, x) == H2.offset for v in V)
        assert H.offset == (H1.offset + H2.offset) / 2
        assert any(dot(tuple((a + b) / 2 for a, b in zip(u, w)), x) == H.offset
                   for u in V for w in V)


def test_sweep_rejects_zero_direction():
    with pytest.raises(ValueError):
        sweep(line_points([0, 1]), (0, 0))


# -- annotations and claims ---------------------------------------------------------


def test_transversal_free_fixture(hard2):
    fam, _, _ = hard2
    assert find_monochromatic_transversal(fam) is None


def test_annotation_matches_direct_separation(hard2):
    fam, cx, data = hard2
    for cd in data[:: max(1, len(data) // 300)]:
        x = cx.cells[cd.cell].representative
        H = central_hyperplane(fam, x)
        assert H.same_set(cd.H) and H.normalized() == cd.H.normalized()
        assert (cd.minus, cd.plus) == separated_subfamilies(fam, H)


def test_every_cell_sees_all_colors_and_half_on_each_side(hard2):
    fam, _, data = hard2
    h = ceil(fam.r / 2)
    for cd in data:
        cm, cp = fam.coloring.colors_of(cd.minus), fam.coloring.colors_of(cd.plus)
        assert cm | cp == set(range(1, fam.r + 1))
        assert len(cm) >= h and len(cp) >= h
        assert not cd.minus & cd.plus
        assert not cd.collapsed


def test_antipodal_cells_swap_sides(hard2):
    _, cx, data = hard2
    for cd in data:
        anti = data[cx.antipode[cd.cell]]
        assert anti.minus == cd.plus and anti.plus == cd.minus


def test_cell_constancy_with_interior_samples(hard2):
    fam, cx, _ = hard2
    annotate_cells(cx, fam, samples=5)


def test_boundary_monotonicity(hard2):
    fam, cx, data = hard2
    report = verify_monotonicity(cx, data)
    assert report.ok and report.checked == sum(map(len, cx.faces))
    for sigma, fs in enumerate(cx.faces):
        for tau in fs:
            assert data[tau].minus <= data[sigma].minus and data[tau].plus <= data[sigma].plus


def test_claims_report_is_clean(hard2):
    fam, cx, data = hard2
    report = verify_claims(cx, fam, samples=0, data=data)
    assert report.ok, {k: v[:3] for k, v in report.failures.items() if v}
    assert set(report.failures) == set(CLAIMS)


def test_collapse_detector_on_a_family_with_transversals():
    # Every member crosses both x = -1 and x = 1, so the sweep collapses.
    fam = ColoredFamily.from_sets([(f"m{i}", 1 + i % 3, [(-1, i), (1, 2 * i)]) for i in range(6)])
    x = (1, 0)
    s = sweep(fam, x)
    assert s.collapsed
    cert = collapse_certificate(fam, x)
    H1, colors = cert
    assert H1 == OrientedHyperplane(x, s.t1) and colors == (1, 2, 3)
    assert verify_collapse(fam, cert)
    cx = build_complex(fam)
    report = verify_claims(cx, fam, samples=0)
    assert report.failures["strict_order"]


def test_strictly_ordered_sweep_has_no_collapse(hard2):
    fam, cx, _ = hard2
    assert collapse_certificate(fam, cx.cells[0].representative) is None


def test_failing_monotonicity_is_reported_on_both_antipodes(hard2):
    _, cx, data = hard2
    sigma = next(s for s, fs in enumerate(cx.faces) if fs)
    tau = cx.faces[sigma][0]
    forged = list(data)

    class Fake:
        def __init__(self, cd, minus, plus):
            self.minus, self.plus = minus, plus

    extra = frozenset({"zz"})
    forged[tau] = Fake(data[tau], data[tau].minus | extra, data[tau].plus)
    forged[cx.antipode[tau]] = Fake(data[cx.antipode[tau]], data[cx.antipode[tau]].minus,
                                    data[cx.antipode[tau]].plus | extra)
    fails = set(verify_monotonicity(cx, forged).failures)
    assert (tau, sigma) in fails
    assert (cx.antipode[tau], cx.antipode[sigma]) in fails


def test_cell_constancy_failure_is_raised(hard2):
    fam, cx, _ = hard2
    # Annotating another family's complex breaks constancy somewhere.
    other = generate_instance(InstanceSpec(d=2, k=1, r=3, members_per_color=3, seed=9, hard=True))
    with pytest.raises(ClaimFailure):
        annotate_cells(cx, other.family, samples=5)
