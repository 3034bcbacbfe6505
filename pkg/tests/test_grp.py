"""Tests for permutation groups, subgroup classes and G-modules."""
import sys
from itertools import combinations
from pathlib import Path

import pytest

from src.errors import ComplexInvalid, GroupTooLarge, InvalidInput
from src.grp import (
    GModule,
    GroupPayload,
    PermGroup,
    PermutationComplex,
    all_subgroups,
    are_conjugate,
    cyclic,
    dihedral,
    double_coset_classes,
    double_cosets,
    family_closure,
    is_p_group,
    left_cosets,
    normalizer,
    resolve_group,
    subgroup_classes,
    symmetric,
    weyl_group,
)
from src.intalg import IntChainComplex, IntMatrix


@pytest.fixture
def s3() -> PermGroup:
    return symmetric(3)


@pytest.fixture
def swap01(s3: PermGroup):
    """The subgroup generated by the transposition of points 0 and 1."""
    return s3.generate([s3.index((1, 0, 2))])


def brute_force_subgroups(g: PermGroup):
    found = []
    others = list(range(1, g.order))
    for k in range(0, len(others) + 1):
        for rest in combinations(others, k):
            elems = {0, *rest}
            if all(g.mul(a, b) in elems for a in elems for b in elems):
                found.append(frozenset(elems))
    return found


# ============================================================================
# Groups
# ============================================================================


def test_identity_is_index_zero(s3: PermGroup):
    assert s3.order == 6
    assert s3.perm(0) == (0, 1, 2)
    assert all(s3.mul(0, x) == x for x in s3)
    assert all(s3.mul(x, s3.inv(x)) == 0 for x in s3)


def test_composition_convention():
    g = PermGroup(3, [(1, 2, 0), (1, 0, 2)])
    p, q = g.index((1, 2, 0)), g.index((1, 0, 2))
    # (p∘q)(i) = p(q(i))
    assert g.perm(g.mul(p, q)) == (2, 1, 0)


def test_invalid_generator_rejected():
    with pytest.raises(InvalidInput, match="not a permutation"):
        PermGroup(3, [(0, 0, 1)])


def test_named_groups():
    assert resolve_group("C2").order == 2
    assert resolve_group("C6").order == 6
    assert resolve_group("S3").order == 6
    assert resolve_group("D4").order == 8
    assert resolve_group("A4").order == 12
    assert resolve_group("C1").order == 1
    assert resolve_group("C5").order == 5
    with pytest.raises(InvalidInput, match="Unknown group reference"):
        resolve_group("Q8")


def test_group_payload_file(tmp_path: Path):
    path = tmp_path / "c3.json"
    GroupPayload.from_group(cyclic(3)).to_json_file(path)
    g = resolve_group(str(path))
    assert g.order == 3
    assert g == cyclic(3)


# ============================================================================
# Subgroups
# ============================================================================


@pytest.mark.parametrize("ref, count", [("C2", 2), ("S3", 4), ("C4", 3), ("C6", 4), ("D4", 8), ("A4", 5)])
def test_subgroup_class_counts(ref: str, count: int):
    assert len(subgroup_classes(resolve_group(ref))) == count


def test_subgroup_classes_sorted_by_order(s3: PermGroup):
    orders = [h.order for h in subgroup_classes(s3)]
    assert orders == [1, 2, 3, 6]


@pytest.mark.parametrize("ref", ["S3", "C4", "C6", "D4"])
def test_subgroup_classes_cover_brute_force(ref: str):
    g = resolve_group(ref)
    classes = subgroup_classes(g)
    subgroups = brute_force_subgroups(g)
    assert {h.elements for h in all_subgroups(g)} == set(subgroups)
    for elems in subgroups:
        h = g.generate(elems)
        assert sum(are_conjugate(rep, h) for rep in classes) == 1


def test_group_too_large():
    with pytest.raises(GroupTooLarge, match="exceeds the configured bound"):
        subgroup_classes(symmetric(5))


def test_normalizer_and_weyl(s3: PermGroup, swap01):
    assert normalizer(swap01) == swap01
    assert weyl_group(swap01).order == 1
    assert weyl_group(s3.trivial_subgroup()).order == 6
    assert weyl_group(s3.whole()).order == 1


def test_weyl_order_formula():
    g = dihedral(4)
    for h in all_subgroups(g):
        assert weyl_group(h).order == normalizer(h).order // h.order


def test_double_cosets(s3: PermGroup, swap01):
    assert len(double_cosets(s3.whole(), s3.whole())) == 1
    assert len(double_cosets(s3.trivial_subgroup(), s3.trivial_subgroup())) == 6
    assert len(double_cosets(swap01, swap01)) == 2


def test_double_cosets_partition_group():
    g = dihedral(4)
    subgroups = all_subgroups(g)
    for h1 in subgroups:
        for h2 in subgroups:
            classes = double_coset_classes(h1, h2)
            assert sum(len(c) for c in classes) == g.order
            assert set().union(*classes) == set(g)


def test_left_cosets(s3: PermGroup, swap01):
    cosets = left_cosets(swap01)
    assert len(cosets) == 3
    assert min(cosets[0]) == 0


def test_family_closure(s3: PermGroup, swap01):
    family = family_closure([swap01])
    assert [h.order for h in family] == [1, 2, 2, 2]
    c4 = cyclic(4)
    involution = next(x for x in c4 if c4.element_order(x) == 2)
    assert [h.order for h in family_closure([c4.generate([involution])])] == [1, 2]


def test_is_p_group():
    assert is_p_group(cyclic(4)) == 2
    assert is_p_group(dihedral(4)) == 2
    assert is_p_group(cyclic(3)) == 3
    assert is_p_group(symmetric(3)) is None
    assert is_p_group(cyclic(6)) is None


# ============================================================================
# Modules
# ============================================================================


def test_regular_module(s3: PermGroup):
    reg = GModule.regular(s3)
    reg.validate()
    assert reg.rank == 6
    assert reg.invariants().dimension == 1
    assert reg.dual() == reg


def test_from_generators_detects_bad_relation():
    c2 = cyclic(2)
    with pytest.raises(InvalidInput, match="not a homomorphism"):
        GModule.from_generators(c2, 1, [IntMatrix.from_rows([[2]])])


def test_sign_module_from_generators():
    c2 = cyclic(2)
    sign = GModule.from_generators(c2, 1, [IntMatrix.from_rows([[-1]])])
    assert sign.invariants().dimension == 0
    assert sign.tensor(sign).is_trivial_action


def test_tensor_direct_sum_restrict(s3: PermGroup, swap01):
    reg = GModule.regular(s3)
    triv = GModule.trivial(s3)
    assert reg.tensor(triv) == reg
    assert (reg + triv).rank == 7
    restricted = reg.restrict(swap01)
    assert restricted.group.order == 2
    assert restricted.invariants().dimension == 3


def test_permutation_complex_equivariance():
    c2 = cyclic(2)
    reg_images = [[c2.mul(g, h) for h in c2] for g in c2]
    augmentation = IntMatrix.from_rows([[1, 1]])
    c = IntChainComplex(0, 1, [1, 2], {1: augmentation})
    pc = PermutationComplex(c, c2, {0: [[0], [0]], 1: reg_images})
    assert [len(stab) for _, stab in pc.basis_orbits(1)] == [1]

    skewed = IntChainComplex(0, 1, [1, 2], {1: IntMatrix.from_rows([[1, 0]])})
    with pytest.raises(ComplexInvalid, match="not equivariant"):
        PermutationComplex(skewed, c2, {0: [[0], [0]], 1: reg_images})


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
