"""Tests for bar complexes, group (co)homology and free resolutions."""
import random
import sys

import pytest

from src.cathom import (
    ActionGroupoid,
    CoefficientSystem,
    FinCategory,
    FreeResolution,
    bar_complex,
    chain_counts,
    derived_burnside,
    functor_chain_map,
    group_cohomology,
    group_homology,
)
from src.errors import BudgetExceeded, InvalidInput
from src.grp import GModule, cyclic, subgroup_classes, symmetric, trivial, weyl_group
from src.intalg import AbGroup, IntMatrix

Z = AbGroup.free(1)
ZERO = AbGroup.trivial()


def z_mod(n: int) -> AbGroup:
    return AbGroup.cyclic(n)


# ============================================================================
# Finite categories
# ============================================================================


def test_poset_hom_sets():
    cat = FinCategory.poset(3, [(0, 1), (1, 2)])
    assert len(cat.hom(0, 2)) == 1
    assert cat.hom(2, 0) == []
    assert cat.n_morphisms == 6


def test_poset_cycle_rejected():
    with pytest.raises(InvalidInput, match="force"):
        FinCategory.poset(2, [(0, 1), (1, 0)])


def test_unitality_violation_rejected():
    with pytest.raises(InvalidInput, match="unitality"):
        FinCategory(["*"], [0, 0], [0, 0], [0], {(0, 0): 0, (0, 1): 0, (1, 0): 1, (1, 1): 1})


def test_one_object_category_is_valid():
    FinCategory.one_object(symmetric(3)).validate()


def test_initial_object_adjoined():
    base = FinCategory.one_object(cyclic(2))
    cat = FinCategory.with_initial_object(base)
    assert len(cat) == 2
    assert len(cat.hom(0, 1)) == 1
    assert len(cat.hom(1, 0)) == 0
    assert all(cat.is_iso(f) for f in cat.hom(1, 1))


def test_non_functorial_coefficients_rejected():
    bg = FinCategory.one_object(cyclic(2))
    with pytest.raises(InvalidInput, match="composite"):
        CoefficientSystem(bg, [1], lambda f: IntMatrix.identity(1) if f == 0 else IntMatrix.from_rows([[2]]))


# ============================================================================
# Bar complexes
# ============================================================================


def test_point_has_homology_of_a_point():
    point = FinCategory.one_object(trivial())
    bar = bar_complex(point, CoefficientSystem.constant(point), 4)
    assert bar.reliable_window.degrees() == range(0, 3)
    assert bar.homology() == {0: Z, 1: ZERO, 2: ZERO}


@pytest.mark.parametrize("seed", range(20))
def test_initial_object_kills_higher_homology(seed: int):
    cat = FinCategory.random_category_with_initial_object(random.Random(seed))
    cat.validate()
    bar = bar_complex(cat, CoefficientSystem.constant(cat), 4)
    assert bar.homology() == {0: Z, 1: ZERO, 2: ZERO}


def test_classifying_space_of_c2():
    bg = FinCategory.one_object(cyclic(2))
    bar = bar_complex(bg, CoefficientSystem.constant(bg), 5)
    assert bar.homology() == {0: Z, 1: z_mod(2), 2: ZERO, 3: z_mod(2)}


def test_chain_counts_match_enumeration():
    cat = FinCategory.with_initial_object(FinCategory.one_object(cyclic(3)))
    e = CoefficientSystem.constant(cat, 2)
    for normalized in (True, False):
        bar = bar_complex(cat, e, 3, normalized=normalized)
        assert bar.underlying.ranks == chain_counts(cat, e, 3, normalized)


@pytest.mark.parametrize(
    "cat",
    [
        FinCategory.one_object(cyclic(2)),
        FinCategory.poset(3, [(0, 1), (0, 2)]),
        FinCategory.with_initial_object(FinCategory.one_object(cyclic(3))),
    ],
)
def test_normalized_and_full_bar_agree(cat):
    e = CoefficientSystem.constant(cat)
    small = bar_complex(cat, e, 4, normalized=True)
    full = bar_complex(cat, e, 4, normalized=False)
    assert small.homology() == full.homology()


def test_budget_names_degree():
    bg = FinCategory.one_object(symmetric(3))
    with pytest.raises(BudgetExceeded) as info:
        bar_complex(bg, CoefficientSystem.constant(bg), 5, budget=100)
    assert info.value.details["degree"] == 3
    assert info.value.details["count"] == 125


def test_free_action_groupoid_is_contractible():
    c2 = cyclic(2)
    free = ActionGroupoid(c2, [(0, 1), (1, 0)])
    bar = bar_complex(free, CoefficientSystem.constant(free), 4)
    assert bar.homology() == {0: Z, 1: ZERO, 2: ZERO}

    fixed = ActionGroupoid(c2, [(0,), (0,)])
    assert bar_complex(fixed, CoefficientSystem.constant(fixed), 4).homology()[1] == z_mod(2)


def test_functor_to_point_is_chain_map():
    cat = FinCategory.with_initial_object(FinCategory.poset(2, [(0, 1)]))
    point = FinCategory.one_object(trivial())
    source = bar_complex(cat, CoefficientSystem.constant(cat), 3)
    target = bar_complex(point, CoefficientSystem.constant(point), 3)
    f = functor_chain_map(
        source,
        target,
        [0] * len(cat),
        lambda m: 0,
        [IntMatrix.identity(1)] * len(cat),
        point.is_identity,
    )
    assert f.component(0) == IntMatrix.from_rows([[1, 1, 1]])
    assert f.component(1).is_zero()


# ============================================================================
# Group (co)homology
# ============================================================================


def test_homology_in_degree_zero_is_z():
    g = symmetric(3)
    assert group_homology(g, GModule.trivial(g), 3)[0] == Z


def test_first_homology_of_c3():
    g = cyclic(3)
    assert group_homology(g, GModule.trivial(g), 3)[1] == z_mod(3)


@pytest.mark.parametrize("n", [2, 3])
def test_free_module_has_no_higher_homology(n: int):
    g = cyclic(n)
    h = group_homology(g, GModule.regular(g), 4)
    assert h[0] == Z
    assert h[1] == ZERO and h[2] == ZERO


def test_cohomology_of_c2():
    g = cyclic(2)
    h = group_cohomology(g, GModule.trivial(g), 4)
    assert h == {0: Z, 1: ZERO, 2: z_mod(2)}


def test_cohomology_degree_zero_is_invariants():
    g = cyclic(2)
    regular = GModule.regular(g)
    assert group_cohomology(g, regular, 3)[0] == AbGroup.free(regular.invariants().dimension)


def test_higher_cohomology_is_torsion():
    g = symmetric(3)
    m = GModule.regular(g) + GModule.trivial(g)
    h = group_cohomology(g, m, 3)
    assert h[1].free_rank == 0


def test_derived_burnside_of_c2():
    assert derived_burnside(cyclic(2), 5) == {0: AbGroup.free(2), 1: z_mod(2), 2: ZERO, 3: z_mod(2)}


def test_derived_burnside_of_trivial_group():
    assert derived_burnside(trivial(), 4) == {0: Z, 1: ZERO, 2: ZERO}


def test_derived_burnside_splits_over_weyl_groups():
    g = symmetric(3)
    total = derived_burnside(g, 4)
    assert total[0] == AbGroup.free(len(subgroup_classes(g)))
    expected = {d: ZERO for d in range(3)}
    for h in subgroup_classes(g):
        w = weyl_group(h)
        for d, group in group_homology(w, GModule.trivial(w), 4).items():
            expected[d] = expected[d] + group
    assert total == expected


# ============================================================================
# Free resolutions
# ============================================================================


def test_reduced_resolution_of_c2_is_periodic():
    res = FreeResolution(cyclic(2), 3)
    assert res.ranks == [1, 1, 1, 1]


@pytest.mark.parametrize("kind,group,length", [("reduced", symmetric(3), 4), ("bar", cyclic(3), 3)])
def test_resolution_is_exact(kind: str, group, length: int):
    res = FreeResolution(group, length, kind=kind)
    c = res.complex()
    assert c.homology(0) == Z
    for d in range(1, length):
        assert c.homology(d).is_trivial


def test_unknown_resolution_kind():
    with pytest.raises(InvalidInput, match="Unknown resolution kind"):
        FreeResolution(cyclic(2), 2, kind="periodic")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_resolution_cohomology_matches_bar(n: int):
    g = cyclic(n)
    z = GModule.trivial(g)
    cochains = FreeResolution(g, 5).cohomology(z)
    bar = group_cohomology(g, z, 5)
    for j, group in bar.items():
        assert cochains.homology(-j) == group


def test_bar_and_reduced_resolutions_agree():
    g = cyclic(3)
    m = GModule.regular(g) + GModule.trivial(g)
    a = FreeResolution(g, 4, kind="bar").homology(m)
    b = FreeResolution(g, 4, kind="reduced").homology(m)
    for d in range(4):
        assert a.homology(d) == b.homology(d)


def test_hypercohomology_of_module_in_degree_zero():
    g = symmetric(3)
    z = GModule.trivial(g)
    res = FreeResolution(g, 4)
    hyper = res.hypercohomology_complex({0: z}, {})
    plain = res.cohomology(z)
    for j in res.window.degrees():
        assert hyper.homology(-j) == plain.homology(-j)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
