"""Tests for classical and family Tate cohomology."""
import sys

import pytest

from src.cathom import FreeResolution
from src.config import AppConfig, TateConfig, set_config
from src.errors import BudgetExceeded, InvalidInput
from src.grp import GModule, cyclic, proper_family, resolve_group, symmetric
from src.gset import coset_space, linearize
from src.intalg import AbGroup, IntMatrix, Window
from src.tate import (
    PeriodicResolution,
    build_adapted,
    check_schedule,
    classical_tate,
    default_schedule,
    first_stage,
    generalized_tate,
    stage_cochains,
    tate_annihilation_check,
)

ZERO = AbGroup.trivial()


def sign_module(n: int) -> GModule:
    """Z with the generator of Z/n (n even) acting by −1."""
    g = cyclic(n)
    sigma = next(s for s in g if g.element_order(s) == n)
    matrices = [IntMatrix.from_rows([[(-1) ** k]]) for k in range(n)]
    images = [IntMatrix.identity(1)] * n
    for k in range(n):
        images[g.power(sigma, k)] = matrices[k]
    return GModule(g, 1, images)


def subgroup_of_order(g, order: int):
    return next(h for h in proper_family(g) if h.order == order)


# ============================================================================
# Classical Tate cohomology
# ============================================================================


@pytest.mark.parametrize("n", [2, 3, 5])
def test_classical_tate_of_z(n: int):
    result = classical_tate(n, window=(-3, 3))
    for t in range(-3, 4):
        expected = AbGroup.cyclic(n) if t % 2 == 0 else ZERO
        assert result[t] == expected, t
    assert result.all_stable
    assert result.method == "classical"


@pytest.mark.parametrize("n", [2, 4])
def test_classical_tate_of_regular_module_vanishes(n: int):
    result = classical_tate(n, GModule.regular(cyclic(n)), window=(-2, 2))
    assert all(h.is_trivial for h in result.groups.values())


def test_classical_tate_of_trivial_group_vanishes():
    result = classical_tate(1, window=(-2, 2))
    assert all(h.is_trivial for h in result.groups.values())


def test_classical_tate_of_sign_module_is_shifted():
    result = classical_tate(2, sign_module(2), window=(-2, 2))
    assert result[0] == ZERO
    assert result[1] == AbGroup.cyclic(2)
    assert result[-1] == AbGroup.cyclic(2)


def test_classical_tate_rejects_foreign_module():
    with pytest.raises(InvalidInput):
        classical_tate(3, GModule.trivial(cyclic(2)), window=(0, 1))


def test_classical_tate_uses_configured_window():
    result = classical_tate(2)
    assert result.window == (-3, 3)
    assert sorted(result.groups) == list(range(-3, 4))


def test_inverted_window_rejected():
    with pytest.raises(InvalidInput):
        classical_tate(2, window=(2, 1))


# ============================================================================
# Periodic resolution
# ============================================================================


@pytest.mark.parametrize("n", [2, 3, 4])
def test_periodic_boundaries_compose_to_zero(n: int):
    res = PeriodicResolution(n, 4)
    assert res.ranks == [1] * 5
    for k in range(2, 5):
        assert (res.boundary(k - 1) @ res.boundary(k)).is_zero()
    assert (res.augmentation @ res.boundary(1)).is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_periodic_resolution_is_exact(n: int):
    res = PeriodicResolution(n, 5)
    f = res.complex()
    assert f.homology(0) == AbGroup.free(1)
    assert f.is_acyclic_in(Window(lo=1, hi=4))


def test_p_tilde_is_acyclic_and_equivariant():
    res = PeriodicResolution(3, 4)
    p = res.p_tilde()
    p.check_equivariance()
    assert p.complex.rank(0) == 1
    assert p.complex.is_acyclic_in(Window(lo=0, hi=4))


def test_periodic_resolution_rejects_bad_order():
    with pytest.raises(InvalidInput):
        PeriodicResolution(0)


# ============================================================================
# Adapted complexes
# ============================================================================


def test_orbit_simplex_for_free_family():
    g = cyclic(2)
    p = build_adapted(g, [g.trivial_subgroup()], 3, 3, kind="orbit_simplex")
    assert p.complex.ranks == [1, 2, 2, 2]
    assert p.report.passed, p.report.violations
    assert p.exact_below == 2


def test_orbit_simplex_for_s3_proper_family():
    g = symmetric(3)
    p = build_adapted(g, proper_family(g), 2, 2, kind="orbit_simplex")
    # X = G/C3 ⊔ G/C2
    assert p.complex.ranks == [1, 5, 20]
    assert p.report.passed, p.report.violations


def test_family_closure_is_reported():
    g = cyclic(4)
    p = build_adapted(g, [subgroup_of_order(g, 2)], 2, 2, kind="orbit_simplex")
    assert [len(h) for h in p.family] == [1, 2]
    assert p.report.notes["closure"]["added"] == 1


def test_t_complex_adapted_to_proper_family_of_c4():
    g = cyclic(4)
    p = build_adapted(g, [subgroup_of_order(g, 2)], 3, 3)
    assert p.kind == "t_complex"
    assert p.complex.rank(0) == 1
    assert p.report.passed, p.report.violations
    p.carrier.check_equivariance()


def test_stages_and_inclusions():
    g = cyclic(2)
    p = build_adapted(g, [g.trivial_subgroup()], 4, 4, kind="orbit_simplex")
    assert p.stage(2).complex.hi == 2
    inclusion = p.inclusion(1, 3)
    assert inclusion.component(1) == IntMatrix.identity(2)
    assert inclusion.component(3).is_zero()
    with pytest.raises(InvalidInput):
        p.inclusion(3, 1)
    with pytest.raises(InvalidInput):
        p.stage(5)


def test_adapted_rejects_unknown_kind_and_empty_family():
    g = cyclic(2)
    with pytest.raises(InvalidInput):
        build_adapted(g, [g.trivial_subgroup()], kind="bar")
    with pytest.raises(InvalidInput):
        build_adapted(g, [])


def test_orbit_simplex_budget():
    g = symmetric(3)
    with pytest.raises(BudgetExceeded) as info:
        build_adapted(g, proper_family(g), 4, 4, kind="orbit_simplex", budget=50)
    assert info.value.details["what"] == "orbit simplices"


# ============================================================================
# Family Tate cohomology
# ============================================================================


def test_default_schedule_starts_at_the_lowest_degree():
    assert default_schedule(Window(lo=-2, hi=2)) == [2, 3, 4]
    assert default_schedule(Window(lo=0, hi=1), gap=2) == [1, 3, 5]
    assert first_stage(Window(lo=3, hi=4)) == 1


def test_free_family_recovers_classical_tate_for_c2():
    g = cyclic(2)
    result = generalized_tate(g, [g.trivial_subgroup()], window=(0, 1))
    assert result[0] == AbGroup.cyclic(2)
    assert result[1] == ZERO
    assert result.all_stable
    assert result.l_stages == [1, 2, 3]


def test_free_family_recovers_classical_tate_for_c3():
    g = cyclic(3)
    result = generalized_tate(g, [g.trivial_subgroup()], window=(-1, 1))
    classical = classical_tate(3, window=(-1, 1))
    assert result.groups == classical.groups
    assert all(h.free_rank == 0 for h in result.groups.values())


def test_low_degrees_match_classical_tate_once_reached():
    g = cyclic(2)
    result = generalized_tate(g, [g.trivial_subgroup()], window=(-4, 0), l_schedule=[4, 5, 6])
    assert result.groups == classical_tate(2, window=(-4, 0)).groups
    assert result.all_stable


def test_schedule_must_reach_the_lowest_degree():
    g = cyclic(2)
    with pytest.raises(InvalidInput, match="first stage must be at least 4"):
        generalized_tate(g, [g.trivial_subgroup()], window=(-4, 0), l_schedule=[1, 3])
    with pytest.raises(InvalidInput):
        check_schedule([3, 5], Window(lo=-4, hi=0))
    check_schedule([4, 5], Window(lo=-4, hi=0))


def test_t_complex_can_replace_orbit_simplex():
    g = cyclic(2)
    p = build_adapted(g, [g.trivial_subgroup()], 4, 4)
    result = generalized_tate(g, [g.trivial_subgroup()], window=(0, 1), l_schedule=[1, 3], adapted=p)
    assert result[0] == AbGroup.cyclic(2)
    assert result[1] == ZERO
    assert result.notes["adapted"] == "t_complex"


def test_stage_cochains_are_filtered_by_first_stage():
    g = cyclic(2)
    p = build_adapted(g, [g.trivial_subgroup()], 3, 3, kind="orbit_simplex")
    res = FreeResolution(g, 5, kind="reduced")
    cochains = stage_cochains(res, p, GModule.trivial(g), [1, 3], Window(lo=-2, hi=1))
    assert (cochains.chains.lo, cochains.chains.hi) == (-2, 1)
    assert max(cochains.levels[1]) == 1
    reduced = cochains.reduced()
    assert sum(reduced.chains.ranks) < sum(cochains.chains.ranks)
    for d in (-1, 0):
        assert reduced.sublevel(0).homology(d) == cochains.sublevel(0).homology(d)
        assert reduced.chains.homology(d) == cochains.chains.homology(d)


def test_s3_proper_family_vanishes():
    g = symmetric(3)
    result = generalized_tate(g, proper_family(g), window=(0, 0), l_schedule=[1, 2])
    assert result[0] == ZERO


def test_c4_proper_family_vanishes_with_wide_schedule():
    g = cyclic(4)
    result = generalized_tate(g, proper_family(g), window=(-1, 0), l_schedule=[2, 6])
    assert all(h.is_trivial for h in result.groups.values())


def test_c4_two_stage_schedule_is_flagged_unstable():
    g = cyclic(4)
    result = generalized_tate(g, proper_family(g), window=(0, 0), l_schedule=[1, 2])
    assert result[0] == AbGroup.cyclic(2)
    assert not result.stable[0]


def test_c4_default_schedule_widens_until_stable():
    g = cyclic(4)
    result = generalized_tate(g, proper_family(g), window=(-1, 0))
    assert result.all_stable
    assert all(h.is_trivial for h in result.groups.values())
    first, second, third = result.l_stages
    assert first == 1
    assert second - first == third - second > 1


@pytest.fixture
def single_gap():
    """Only the gap-1 schedule is tried."""
    set_config(AppConfig(tate=TateConfig(max_stage_gap=1)))
    yield
    set_config(None)


def test_widening_stops_at_the_configured_gap(single_gap):
    g = cyclic(4)
    result = generalized_tate(g, proper_family(g), window=(0, 0))
    assert result.l_stages == [1, 2, 3]
    assert not result.stable[0]


@pytest.mark.slow
@pytest.mark.parametrize("name", ["S3", "C4"])
def test_proper_family_vanishes_on_wide_window(name: str):
    g = resolve_group(name)
    result = generalized_tate(g, proper_family(g), window=(-2, 3))
    assert all(h.is_trivial for h in result.groups.values()), result.groups
    assert result.all_stable, result.stable


@pytest.mark.slow
def test_s3_stabilizes_on_consecutive_stages():
    g = symmetric(3)
    result = generalized_tate(g, proper_family(g), window=(-2, 3))
    assert result.l_stages == [2, 3, 4]


def test_induced_from_family_member_vanishes():
    g = cyclic(4)
    h = subgroup_of_order(g, 2)
    m = linearize(coset_space(g, h))
    result = generalized_tate(g, [h], m, window=(0, 1))
    assert all(x.is_trivial for x in result.groups.values())


def test_generalized_tate_rejects_bad_schedules():
    g = cyclic(2)
    family = [g.trivial_subgroup()]
    with pytest.raises(InvalidInput):
        generalized_tate(g, family, window=(0, 1), l_schedule=[2])
    with pytest.raises(InvalidInput):
        generalized_tate(g, family, window=(0, 1), l_schedule=[3, 1])


def test_generalized_tate_needs_exact_adapted_complex():
    g = cyclic(2)
    p = build_adapted(g, [g.trivial_subgroup()], 3, 3)
    with pytest.raises(InvalidInput):
        generalized_tate(g, [g.trivial_subgroup()], window=(0, 1), l_schedule=[1, 3], adapted=p)


def test_generalized_tate_rejects_foreign_module():
    g = cyclic(2)
    with pytest.raises(InvalidInput):
        generalized_tate(g, [g.trivial_subgroup()], GModule.trivial(cyclic(3)), window=(0, 1))


def test_result_to_dict():
    g = cyclic(2)
    out = generalized_tate(g, [g.trivial_subgroup()], window=(0, 1)).to_dict()
    assert out["method"] == "generalized"
    assert out["groups"] == {"0": "Z/2", "1": "0"}
    assert out["stable"] == {"0": True, "1": True}
    assert out["family"] == [[0]]


# ============================================================================
# Annihilation
# ============================================================================


def test_annihilation_holds_for_c4():
    report = tate_annihilation_check(cyclic(4), window=(-1, 1))
    assert report.passed, report.violations
    assert report.notes["prime"] == 2
    assert report.notes["provisional"] == []


def test_annihilation_skips_unstable_degrees():
    report = tate_annihilation_check(cyclic(4), window=(0, 0), l_schedule=[1, 2])
    assert not report.passed
    assert [c.name for c in report.violations] == ["degree 0 stabilized"]
    assert "degree 0 is killed by 2" not in [c.name for c in report.checks]
    assert report.notes["provisional"] == [0]


def test_annihilation_precondition_for_non_p_group():
    report = tate_annihilation_check(symmetric(3), window=(0, 0))
    assert not report.passed
    assert [c.name for c in report.violations] == ["group is a p-group"]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
