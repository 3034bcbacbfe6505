"""Tests for G-sets, equivariant maps and the orbit category."""
import sys
from pathlib import Path

import pytest

from src.errors import InvalidInput
from src.grp import all_subgroups, cyclic, dihedral, resolve_group, symmetric
from src.gset import (
    GMap,
    GSet,
    GSetPayload,
    OrbitCat,
    coset_space,
    equivariant_maps,
    fibered_product,
    fixed_points,
    linearize,
    orbits,
    product,
    t_functor,
)
from src.intalg import IntMatrix


@pytest.fixture
def s3():
    return symmetric(3)


@pytest.fixture
def s3_mod_swap(s3):
    """S3/⟨(01)⟩, three points."""
    return coset_space(s3, s3.generate([s3.index((1, 0, 2))]))


# ============================================================================
# G-sets
# ============================================================================


def test_trivial_action_orbits(s3):
    x = GSet.trivial(s3, 2)
    pieces = orbits(x)
    assert len(pieces) == 2
    assert all(stab.is_whole for _, stab in pieces)


def test_regular_action_single_orbit():
    c2 = cyclic(2)
    x = coset_space(c2, c2.trivial_subgroup())
    pieces = orbits(x)
    assert len(pieces) == 1
    assert pieces[0][1].is_trivial


def test_product_of_coset_spaces(s3_mod_swap):
    x = product(s3_mod_swap, s3_mod_swap)
    assert x.size == 9
    pieces = orbits(x)
    assert [p.size for p, _ in pieces] == [3, 6]
    assert [stab.order for _, stab in pieces] == [2, 1]


def test_orbit_sizes_sum_to_total():
    g = dihedral(4)
    for h in all_subgroups(g):
        x = product(coset_space(g, h), coset_space(g, g.trivial_subgroup()))
        assert sum(p.size for p, _ in orbits(x)) == x.size


def test_product_with_point_is_identity(s3_mod_swap, s3):
    pt = GSet.trivial(s3)
    assert product(s3_mod_swap, pt).table == s3_mod_swap.table


def test_fibered_product_over_point_is_product(s3_mod_swap, s3):
    pt = GSet.trivial(s3)
    to_pt = GMap(s3_mod_swap, pt, [0, 0, 0])
    fp, p1, p2 = fibered_product(to_pt, to_pt)
    assert fp.table == product(s3_mod_swap, s3_mod_swap).table
    assert p1.images == (0, 0, 0, 1, 1, 1, 2, 2, 2)


def test_fibered_product_of_free_orbits():
    c2 = cyclic(2)
    free = coset_space(c2, c2.trivial_subgroup())
    pt = coset_space(c2, c2.whole())
    f = GMap(free, pt, [0, 0])
    fp, _, _ = fibered_product(f, f)
    assert fp.size == 4
    pieces = orbits(fp)
    assert [p.size for p, _ in pieces] == [2, 2]
    assert all(stab.is_trivial for _, stab in pieces)


def test_fixed_points(s3, s3_mod_swap):
    assert fixed_points(GSet.trivial(s3, 3), s3.whole()) == [0, 1, 2]
    free = coset_space(s3, s3.trivial_subgroup())
    assert fixed_points(free, s3.generate([s3.index((1, 0, 2))])) == []
    other_swap = s3.generate([s3.index((2, 1, 0))])
    assert len(fixed_points(s3_mod_swap, other_swap)) == 1


def test_fixed_points_match_equivariant_maps(s3, s3_mod_swap):
    targets = [s3_mod_swap, product(s3_mod_swap, s3_mod_swap), GSet.trivial(s3, 2)]
    for h in all_subgroups(s3):
        orbit = coset_space(s3, h)
        for x in targets:
            assert len(fixed_points(x, h)) == len(equivariant_maps(orbit, x))


def test_fixed_points_of_product(s3, s3_mod_swap):
    y = coset_space(s3, s3.generate([s3.index((1, 2, 0))]))
    xy = product(s3_mod_swap, y)
    for h in all_subgroups(s3):
        expected = {a * y.size + b for a in fixed_points(s3_mod_swap, h) for b in fixed_points(y, h)}
        assert set(fixed_points(xy, h)) == expected


def test_invalid_action_rejected():
    c2 = cyclic(2)
    with pytest.raises(InvalidInput, match="Identity element"):
        GSet(c2, [(1, 0), (1, 0)])


def test_non_equivariant_map_rejected():
    c2 = cyclic(2)
    free = coset_space(c2, c2.trivial_subgroup())
    with pytest.raises(InvalidInput, match="not equivariant"):
        GMap(free, GSet.trivial(c2, 2), [0, 1])


def test_linearize_is_permutation_module(s3_mod_swap):
    module = linearize(s3_mod_swap)
    module.validate()
    assert module.invariants().dimension == 1


def test_gset_payload_file(tmp_path: Path):
    c2 = resolve_group("C2")
    x = GSet.from_generators(c2, [[1, 0, 2]], ["a", "b", "c"])
    path = tmp_path / "x.json"
    GSetPayload.from_gset(x, "C2").to_json_file(path)

    loaded = GSetPayload.from_json_file(path).build()
    assert loaded.names == ["a", "b", "c"]
    assert loaded.table == x.table
    assert len(orbits(loaded)) == 2


# ============================================================================
# Orbit category
# ============================================================================


def test_orbit_category_hom_counts():
    cat = OrbitCat(cyclic(2))
    assert [len(cat.hom(i, j)) for i in range(2) for j in range(2)] == [2, 1, 0, 1]


@pytest.mark.parametrize("ref", ["C2", "C4", "S3", "D4"])
def test_endomorphisms_form_groups(ref: str):
    cat = OrbitCat(resolve_group(ref))
    for i in range(len(cat)):
        assert cat.automorphism_group(i).order == len(cat.hom(i, i))
        for a in range(len(cat.hom(i, i))):
            assert cat.is_iso(i, i, a)


def test_automorphisms_are_weyl_groups():
    g = dihedral(4)
    from src.grp import weyl_group

    cat = OrbitCat(g)
    for i, h in enumerate(cat.subgroups):
        assert cat.automorphism_group(i).order == weyl_group(h).order


def test_composition_with_identity():
    cat = OrbitCat(symmetric(3))
    for (i, j, k) in cat.morphisms():
        assert cat.compose(i, j, j, k, cat.identity(j)) == k
        assert cat.compose(i, i, j, cat.identity(i), k) == k


def test_t_functor_of_point():
    cat = OrbitCat(symmetric(3))
    top = cat.terminal
    t = t_functor(cat, top)
    assert t.ranks == [0, 0, 0, 1]
    t_free = t_functor(cat, cat.free_orbit)
    assert t_free.ranks[top] == 1


def test_t_functor_free_orbit_of_c2():
    cat = OrbitCat(cyclic(2))
    free, top = cat.free_orbit, cat.terminal
    t = t_functor(cat, free)
    t.check_functoriality()
    assert t.ranks == [2, 1]

    swap = t.aut_source_action(free)
    assert swap.matrix(1) == IntMatrix.from_rows([[0, 1], [1, 0]])
    assert t.aut_source_action(top).is_trivial_action


def test_t_functor_functorial_for_s3():
    cat = OrbitCat(symmetric(3))
    for c in range(len(cat)):
        t_functor(cat, c).check_functoriality()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
