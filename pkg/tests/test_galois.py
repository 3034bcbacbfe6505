"""Tests for factorization groupoids, T-complexes and Φ-complexes."""
import sys

import pytest

from src.errors import BudgetExceeded, InvalidInput
from src.galois import (
    FactorizationGroupoid,
    aut_of_morphism,
    check_adaptedness_combinatorial,
    enumerate_cn,
    families_from_c1,
    induced_coefficients,
    inflation,
    phi_complex,
    supported_on,
    t_complex,
)
from src.grp import GModule, cyclic
from src.gset import OrbitCat, OrbitFunctor, t_functor
from src.intalg import AbGroup, IntChainComplex, IntMatrix

Z = AbGroup.free(1)
ZERO = AbGroup.trivial()


def free_to_point(cat: OrbitCat):
    """f: G/e → G/G."""
    return (cat.free_orbit, cat.terminal, 0)


@pytest.fixture
def c4_cat():
    return OrbitCat(cyclic(4))


# ============================================================================
# Factorization groupoids
# ============================================================================


@pytest.mark.parametrize("p", [2, 3, 5])
def test_c1_of_free_to_point_is_one_free_class(p: int):
    cat = OrbitCat(cyclic(p))
    cn = enumerate_cn(cat, free_to_point(cat), 1)
    assert len(cn) == p
    classes = cn.classes()
    assert len(classes) == 1
    assert classes[0].size == p
    assert classes[0].automorphisms == 1


def test_invertible_morphism_has_no_factorizations():
    cat = OrbitCat(cyclic(3))
    top = cat.terminal
    assert len(enumerate_cn(cat, (top, top, cat.identity(top)), 1)) == 0
    free = cat.free_orbit
    assert len(enumerate_cn(cat, (free, free, 1), 2)) == 0


def test_c2_of_point_matches_brute_force(c4_cat):
    cat, top = c4_cat, c4_cat.terminal
    expected = 0
    for c1 in range(len(cat)):
        for c2 in range(len(cat)):
            non_iso = sum(1 for k in range(len(cat.hom(c2, top))) if not cat.is_iso(c2, top, k))
            expected += len(cat.hom(c1, c2)) * non_iso
    cn = enumerate_cn(cat, top, 2)
    assert len(cn) == expected == 8


def test_morphism_diagrams_compose_to_f(c4_cat):
    cat = c4_cat
    f = free_to_point(cat)
    cn = enumerate_cn(cat, f, 2)
    for d in cn.diagrams:
        path = cn.path(d)
        composite = d.maps[0]
        for t in range(1, len(d.maps)):
            composite = cat.compose(path[0], path[t], path[t + 1], composite, d.maps[t])
        assert composite == f[2]
        assert not cat.is_iso(path[-2], path[-1], d.maps[-1])


def test_isomorphisms_preserve_diagrams(c4_cat):
    cn = enumerate_cn(c4_cat, free_to_point(c4_cat), 2)
    total = sum(cls.size for cls in cn.classes())
    assert total == len(cn)
    for cls in cn.classes():
        block = next(b for b in cn.blocks if b.objects == cls.representative.objects)
        assert cls.size * cls.automorphisms == block.group.order


def test_deleting_first_object_lands_in_row_below(c4_cat):
    f = free_to_point(c4_cat)
    upper = FactorizationGroupoid(c4_cat, f, 2)
    lower = FactorizationGroupoid(c4_cat, f, 1)
    for i in (1, 2):
        object_map, morphism_map = upper.deletion_functor(i, lower)
        assert all(0 <= y < len(lower) for y in object_map)
        for g in range(upper.groupoid.n_morphisms):
            image = morphism_map(g)
            assert lower.groupoid.source(image) == object_map[upper.groupoid.source(g)]
            assert lower.groupoid.target(image) == object_map[upper.groupoid.target(g)]


def test_empty_diagram_row():
    cat = OrbitCat(cyclic(2))
    row = FactorizationGroupoid(cat, cat.terminal, 0)
    assert len(row) == 1
    assert row.first_object(row.diagrams[0]) == cat.terminal


def test_enumeration_budget():
    cat = OrbitCat(cyclic(4))
    with pytest.raises(BudgetExceeded) as info:
        enumerate_cn(cat, cat.terminal, 2, budget=3)
    assert info.value.details["what"] == "diagrams"


def test_length_must_be_positive():
    cat = OrbitCat(cyclic(2))
    with pytest.raises(InvalidInput, match="at least 1"):
        enumerate_cn(cat, cat.terminal, 0)


def test_unknown_morphism_rejected():
    cat = OrbitCat(cyclic(2))
    with pytest.raises(InvalidInput, match="not in the category"):
        enumerate_cn(cat, (cat.terminal, cat.free_orbit, 0), 1)


def test_summary_lists_classes():
    cat = OrbitCat(cyclic(3))
    summary = enumerate_cn(cat, free_to_point(cat), 1).summary()
    assert summary["diagrams"] == 3
    assert summary["classes"][0]["size"] == 3


# ============================================================================
# T-complexes
# ============================================================================


@pytest.mark.parametrize("p", [2, 3])
def test_t_complex_of_cyclic_group_is_acyclic(p: int):
    cat = OrbitCat(cyclic(p))
    t = t_complex(cat, free_to_point(cat), 4, 4)
    assert t.window.degrees() == range(0, 3)
    assert all(h.is_trivial for h in t.homology().values())


def test_t_complex_of_c4_kills_degree_zero(c4_cat):
    t = t_complex(c4_cat, free_to_point(c4_cat), 3, 3)
    assert t.homology()[0] == ZERO


def test_invertible_morphism_gives_unit_complex():
    cat = OrbitCat(cyclic(3))
    top = cat.terminal
    t = t_complex(cat, (top, top, cat.identity(top)), 4, 4)
    assert t.total == IntChainComplex.unit()


def test_truncation_is_the_smaller_bound():
    cat = OrbitCat(cyclic(2))
    t = t_complex(cat, free_to_point(cat), 5, 3)
    assert t.total.hi == 3
    assert t.window.hi == 1


def test_aut_of_free_to_point_is_whole_group():
    cat = OrbitCat(cyclic(3))
    assert aut_of_morphism(cat, free_to_point(cat)).order == 3


def test_t_complex_action_commutes_with_boundary(c4_cat):
    t = t_complex(c4_cat, free_to_point(c4_cat), 3, 3)
    t.carrier.check_equivariance()
    assert t.group.order == 4


def test_pullback_along_identity(c4_cat):
    t = t_complex(c4_cat, free_to_point(c4_cat), 3, 3)
    pulled = t.pullback(t.group, list(t.embedding))
    for d in t.total.degrees():
        for g in t.group:
            assert pulled.action(d, g) == t.carrier.action(d, g)


def test_t_complex_budget_counts_total_degree():
    cat = OrbitCat(cyclic(3))
    with pytest.raises(BudgetExceeded) as info:
        t_complex(cat, free_to_point(cat), 4, 4, budget=5)
    assert info.value.details["what"] in ("basis elements", "diagrams", "bar chains")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_t_complex_is_adapted(n: int):
    cat = OrbitCat(cyclic(n))
    report = check_adaptedness_combinatorial(t_complex(cat, free_to_point(cat), 3, 3))
    assert report.passed, report.violations
    assert report.notes["witnesses"] == []


def test_t_complex_to_dict_reports_window():
    cat = OrbitCat(cyclic(2))
    out = t_complex(cat, free_to_point(cat), 4, 4).to_dict()
    assert out["window"] == [0, 2]
    assert out["f"] == list(free_to_point(cat))


def test_families_from_c1_of_c4(c4_cat):
    family = families_from_c1(c4_cat, free_to_point(c4_cat))
    assert [h.order for h in family] == [1, 2]


# ============================================================================
# Coefficients
# ============================================================================


def test_inflation_of_z_for_c2():
    cat = OrbitCat(cyclic(2))
    free, top = cat.free_orbit, cat.terminal
    e = inflation(cat, free, GModule.trivial(cat.automorphism_group(free)))
    e.check_functoriality()
    assert e.ranks == [1, 1]
    assert e.matrix(free, top, 0) == IntMatrix.from_rows([[2]])


def test_inflation_rejects_foreign_module():
    cat = OrbitCat(cyclic(2))
    with pytest.raises(InvalidInput, match="automorphism group"):
        inflation(cat, cat.free_orbit, GModule.trivial(cyclic(3)))


def test_supported_on_is_functorial():
    cat = OrbitCat(cyclic(4))
    e = supported_on(cat, 1, 2)
    e.check_functoriality()
    assert e.ranks == [0, 2, 0]


def test_induced_coefficients_are_sums_of_t_functors():
    cat = OrbitCat(cyclic(2))
    induced = induced_coefficients(cat, {cat.free_orbit: 1, cat.terminal: 2})
    assert induced.functor.ranks == [2, 3]
    assert induced.expected(cat.free_orbit) == AbGroup.free(2)
    assert induced.expected(cat.terminal) == AbGroup.free(2)


def test_negative_multiplicity_rejected():
    cat = OrbitCat(cyclic(2))
    with pytest.raises(InvalidInput, match="negative"):
        induced_coefficients(cat, {0: -1})


# ============================================================================
# Φ-complexes
# ============================================================================


@pytest.mark.parametrize("p", [2, 3])
def test_phi_of_inflated_z_is_tate_cohomology(p: int):
    cat = OrbitCat(cyclic(p))
    free, top = cat.free_orbit, cat.terminal
    e = inflation(cat, free, GModule.trivial(cat.automorphism_group(free)))
    phi = phi_complex(cat, top, e, 4, 4)
    zp = AbGroup.cyclic(p)
    assert phi.homology() == {0: zp, 1: ZERO, 2: zp}
    assert phi.tate_degrees() == {0: zp, -1: ZERO, -2: zp}


@pytest.mark.parametrize("c", [0, 1, 2])
def test_phi_of_coefficients_supported_on_object(c4_cat, c: int):
    phi = phi_complex(c4_cat, c, supported_on(c4_cat, c, 2), 4, 4)
    h = phi.homology()
    assert h[0] == AbGroup.free(2)
    assert all(h[d].is_trivial for d in (1, 2))


@pytest.mark.parametrize("c", [0, 1])
def test_phi_of_induced_coefficients(c: int):
    cat = OrbitCat(cyclic(2))
    induced = induced_coefficients(cat, {cat.free_orbit: 1, cat.terminal: 1})
    h = phi_complex(cat, c, induced.functor, 4, 4).homology()
    assert h[0] == induced.expected(c)
    assert h[1].is_trivial and h[2].is_trivial


def test_phi_of_t_functor_matches_t_complexes():
    cat = OrbitCat(cyclic(3))
    free, top = cat.free_orbit, cat.terminal
    phi = phi_complex(cat, top, t_functor(cat, free), 4, 4)
    ranks = [0] * 5
    for k in range(len(cat.hom(free, top))):
        t = t_complex(cat, (free, top, k), 4, 4)
        ranks = [a + t.total.rank(d) for d, a in enumerate(ranks)]
    assert [phi.total.rank(d) for d in range(5)] == ranks


def test_phi_respects_direct_sums(c4_cat):
    top = c4_cat.terminal
    a = OrbitFunctor.constant(c4_cat)
    b = t_functor(c4_cat, 1)
    both = phi_complex(c4_cat, top, a + b, 3, 3)
    ranks = [
        phi_complex(c4_cat, top, a, 3, 3).total.rank(d) + phi_complex(c4_cat, top, b, 3, 3).total.rank(d)
        for d in range(4)
    ]
    assert [both.total.rank(d) for d in range(4)] == ranks


def test_phi_action_commutes_with_boundary(c4_cat):
    phi = phi_complex(c4_cat, 1, OrbitFunctor.constant(c4_cat), 3, 3)
    phi.check_equivariance()
    for d in phi.total.degrees():
        phi.module(d).validate()


def test_phi_rejects_coefficients_on_other_category():
    cat = OrbitCat(cyclic(2))
    other = OrbitCat(cyclic(2))
    with pytest.raises(InvalidInput, match="different orbit category"):
        phi_complex(cat, cat.terminal, OrbitFunctor.constant(other), 3, 3)


def test_phi_to_dict_carries_calibration():
    cat = OrbitCat(cyclic(2))
    out = phi_complex(cat, cat.terminal, OrbitFunctor.constant(cat), 4, 4).to_dict()
    assert out["calibration"] == "tate_degree = -phi_degree"
    assert set(out["tate"]) == {"0", "-1", "-2"}


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
