"""Tests for simplicial G-sets, Bredon chains and representation spheres."""
import sys
from pathlib import Path

import pytest

from src.bredon import (
    SimplicialGSet,
    SimplicialPayload,
    bredon_complex,
    fixed_dimension,
    fixed_subcomplex,
    parse_representation,
    representation_sphere,
    simplicial_homology,
    smash,
    sphere_invertibility_hypotheses,
)
from src.errors import BudgetExceeded, InvalidInput, NotRegular, UnsupportedRepresentation
from src.grp import cyclic, subgroup_classes, symmetric, trivial
from src.gset import GSet
from src.intalg import AbGroup

Z = AbGroup.free(1)
ZERO = AbGroup.trivial()


def concentrated(homology, degree: int) -> bool:
    return homology.get(degree) == Z and all(
        a == ZERO for d, a in homology.items() if d != degree
    )


def subgroup_of_order(g, order: int):
    return next(h for h in subgroup_classes(g) if h.order == order)


@pytest.fixture
def c2():
    return cyclic(2)


@pytest.fixture
def swapped_edge(c2):
    """C2 swapping the two ends of an edge."""
    return SimplicialGSet(GSet(c2, [(0, 1), (1, 0)]), [(0, 1)])


# ============================================================================
# Simplicial G-sets
# ============================================================================


def test_triangle_boundary_is_a_circle():
    x = SimplicialGSet(GSet.trivial(trivial(), 3), [(0, 1), (1, 2), (0, 2)])
    h = x.homology()
    assert h[0] == Z
    assert h[1] == Z
    assert x.euler_characteristic() == 0


def test_simplex_with_repeated_vertex_rejected():
    with pytest.raises(InvalidInput):
        SimplicialGSet(GSet.trivial(trivial(), 2), [(0, 0)])


def test_missing_face_rejected():
    with pytest.raises(InvalidInput):
        SimplicialGSet(GSet.trivial(trivial(), 3), [(0, 1, 2)])


def test_moved_basepoint_rejected(c2):
    with pytest.raises(InvalidInput):
        SimplicialGSet(GSet(c2, [(0, 1), (1, 0)]), [], basepoint=0)


def test_irregular_action_is_detected(swapped_edge, c2):
    assert not swapped_edge.is_regular
    with pytest.raises(NotRegular) as info:
        swapped_edge.check_regular()
    assert info.value.details["simplex"] == [0, 1]
    with pytest.raises(NotRegular):
        fixed_subcomplex(swapped_edge, c2.whole())


def test_subdivision_makes_action_regular(swapped_edge, c2):
    x = swapped_edge.regularized()
    assert x.is_regular
    assert x.simplex_counts() == [3, 2]
    fixed = fixed_subcomplex(x, c2.whole())
    assert fixed.simplex_counts() == [1]
    assert fixed.names == ["[0,1]"]


def test_fixed_subcomplex_remembers_parent_vertices(c2):
    s = representation_sphere(c2, "sign")
    fixed = fixed_subcomplex(s, c2.whole())
    assert [s.names[v] for v in fixed.parent_vertices] == ["0", "∞"]
    assert fixed.names[fixed.basepoint] == "∞"


def test_reduced_chains_need_basepoint():
    x = SimplicialGSet(GSet.trivial(trivial(), 2))
    with pytest.raises(InvalidInput):
        x.homology(reduced=True)


def test_order_complex_budget():
    points = GSet.trivial(trivial(), 6)
    with pytest.raises(BudgetExceeded) as info:
        SimplicialGSet.order_complex(points, lambda a, b: a <= b, budget=10)
    assert info.value.details["what"] == "simplices"


# ============================================================================
# Representation spheres
# ============================================================================


def test_zero_representation_is_s0(c2):
    s = representation_sphere(c2, "")
    assert s.simplex_counts() == [2]
    b = bredon_complex(s)
    for i in range(len(b.cat)):
        assert concentrated(b.homology(i), 0)


def test_sign_sphere(c2):
    b = bredon_complex(representation_sphere(c2, "sign"))
    assert concentrated(b.homology(b.cat.free_orbit), 1)
    assert concentrated(b.homology(b.cat.terminal), 0)


def test_regular_sphere_of_c2(c2):
    b = bredon_complex(representation_sphere(c2, "regular"))
    assert concentrated(b.homology(b.cat.free_orbit), 2)
    assert concentrated(b.homology(b.cat.terminal), 1)


def test_regular_sphere_of_c3():
    g = cyclic(3)
    s = representation_sphere(g, "regular")
    assert concentrated(s.homology(reduced=True), 3)
    assert concentrated(fixed_subcomplex(s, g.whole()).homology(reduced=True), 1)


def test_rotation_sphere_of_c4():
    g = cyclic(4)
    b = bredon_complex(representation_sphere(g, "rotation"))
    for i, h in enumerate(b.cat.subgroups):
        assert concentrated(b.homology(i), 2 if h.is_trivial else 0), h.order


def test_trivial_summands_shift_every_orbit(c2):
    b = bredon_complex(representation_sphere(c2, "trivial^2+sign"))
    assert concentrated(b.homology(b.cat.free_orbit), 3)
    assert concentrated(b.homology(b.cat.terminal), 2)


def test_permutation_summand_from_gset():
    g = symmetric(3)
    s = representation_sphere(g, "permutation")
    for h in subgroup_classes(g):
        d = fixed_dimension(g, "permutation", h)
        assert concentrated(fixed_subcomplex(s, h).homology(reduced=True), d)


def test_fixed_dimensions():
    g = cyclic(4)
    z2 = subgroup_of_order(g, 2)
    assert fixed_dimension(g, "trivial^2+sign", g.trivial_subgroup()) == 3
    assert fixed_dimension(g, "trivial^2+sign", z2) == 3
    assert fixed_dimension(g, "trivial^2+sign", g.whole()) == 2
    assert fixed_dimension(g, "regular", z2) == 2
    assert fixed_dimension(g, "rotation", z2) == 0


def test_parse_representation_accepts_gsets(c2):
    x = GSet(c2, [(0, 1), (1, 0)])
    summands = parse_representation(c2, ["sign^2", x])
    assert [s.kind for s in summands] == ["sign", "permutation"]
    assert summands[0].multiplicity == 2
    assert summands[1].gset is x


@pytest.mark.parametrize(
    "group, rep",
    [
        (symmetric(3), "rotation"),
        (cyclic(3), "sign"),
        (cyclic(2), "quaternion"),
        (cyclic(2), "trivial^0"),
        (cyclic(2), "rotation:1"),
    ],
)
def test_unsupported_representations(group, rep):
    with pytest.raises(UnsupportedRepresentation):
        representation_sphere(group, rep)


def test_cross_polytope_budget():
    g = symmetric(3)
    with pytest.raises(BudgetExceeded):
        representation_sphere(g, "regular", budget=100)


# ============================================================================
# Bredon chains
# ============================================================================


def test_bredon_complex_requires_regular_action(swapped_edge):
    with pytest.raises(NotRegular):
        bredon_complex(swapped_edge, reduced=False)


def test_reduced_bredon_complex_requires_basepoint(swapped_edge):
    with pytest.raises(InvalidInput):
        bredon_complex(swapped_edge.regularized())


def test_restriction_to_free_orbit_is_inclusion_of_fixed_points(c2):
    b = bredon_complex(representation_sphere(c2, "sign"))
    r = b.restriction((b.cat.free_orbit, b.cat.terminal, 0))
    assert r.source.ranks == [1]
    assert r.target.ranks == [3, 4]
    assert r.component(0).to_rows() == [[0], [0], [1]]


def test_euler_check_passes():
    g = cyclic(4)
    report = bredon_complex(representation_sphere(g, "rotation+sign")).euler_check()
    assert report.passed, report.violations
    assert len(report.checks) == 3


def test_to_dict_lists_every_orbit(c2):
    out = bredon_complex(representation_sphere(c2, "sign")).to_dict()
    assert out["reduced"] is True
    assert [o["subgroup"] for o in out["orbits"]] == [[0], [0, 1]]
    assert out["orbits"][0]["homology"] == {"0": "0", "1": "Z"}


# ============================================================================
# JSON format
# ============================================================================


def test_payload_file_and_direct_homology(tmp_path: Path, c2):
    s = representation_sphere(c2, "sign")
    path = tmp_path / "sphere.json"
    SimplicialPayload.from_simplicial(s, "C2").to_json_file(path)
    payload = SimplicialPayload.from_json_file(path)
    assert payload.basepoint == "∞"
    rebuilt = payload.build()
    assert rebuilt.simplex_counts() == s.simplex_counts()
    b = bredon_complex(s)
    direct = simplicial_homology(payload, reduced=True)
    assert direct == b.homology(b.cat.free_orbit)


def test_payload_with_bad_faces_rejected(c2):
    payload = SimplicialPayload.model_validate({
        "group": "C2",
        "dims": [
            {"simplices": ["a", "b"], "action": {0: [1, 0]}},
            {"simplices": ["ab"], "faces": [[0]], "action": {0: [0]}},
        ],
    })
    with pytest.raises(InvalidInput):
        payload.build()


def test_missing_payload_file(tmp_path: Path):
    with pytest.raises(FileNotFoundError):
        SimplicialPayload.from_json_file(tmp_path / "missing.json")


# ============================================================================
# Smash products
# ============================================================================


@pytest.mark.parametrize("left, right", [("", "sign"), ("sign", "sign"), ("sign", "trivial")])
def test_smash_adds_fixed_dimensions(c2, left, right):
    x = representation_sphere(c2, left)
    y = representation_sphere(c2, right)
    xy = smash(x, y)
    assert xy.is_regular
    for h in subgroup_classes(c2):
        d = fixed_dimension(c2, left, h) + fixed_dimension(c2, right, h)
        assert concentrated(fixed_subcomplex(xy, h).homology(reduced=True), d), (left, right, h.order)


def test_smash_needs_basepoints_and_one_group(c2):
    unbased = SimplicialGSet(GSet.trivial(c2, 2))
    based = representation_sphere(c2, "sign")
    with pytest.raises(InvalidInput):
        smash(unbased, based)
    with pytest.raises(InvalidInput):
        smash(based, representation_sphere(cyclic(3), ""))


# ============================================================================
# Sphere invertibility hypotheses
# ============================================================================


@pytest.mark.parametrize(
    "group, rep",
    [(cyclic(2), "sign"), (cyclic(2), "regular"), (cyclic(3), "regular"), (cyclic(4), "rotation")],
)
def test_hypotheses_hold_for_all_nested_pairs(group, rep):
    for h1 in subgroup_classes(group):
        for h2 in subgroup_classes(group):
            if not h1.is_subgroup_of(h2):
                continue
            report = sphere_invertibility_hypotheses(group, rep, h1, h2)
            assert report.passed, (h1.order, h2.order, report.violations)


def test_hypotheses_record_weyl_action(c2):
    report = sphere_invertibility_hypotheses(c2, "sign", c2.trivial_subgroup(), c2.whole())
    assert report.notes["W_order"] == 2
    assert report.notes["cells"] == 6
    assert report.notes["witnesses"] == []


def test_hypotheses_for_c4_rotation_between_small_subgroups():
    g = cyclic(4)
    report = sphere_invertibility_hypotheses(g, "rotation", g.trivial_subgroup(), subgroup_of_order(g, 2))
    assert report.passed, report.violations
    assert report.notes["W_order"] == 2


def test_hypotheses_require_nested_subgroups():
    g = cyclic(4)
    with pytest.raises(InvalidInput):
        sphere_invertibility_hypotheses(g, "rotation", g.whole(), g.trivial_subgroup())


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
