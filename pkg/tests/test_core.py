import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fincat.core import (
    CapExceeded, FiniteCategory, Functor, NaturalTransformation, StructureError,
    are_isomorphic, build_category, build_graph, coproduct_category,
    discrete_category, enumerate_functors, enumerate_nat_trans, functor_category,
    graph_homomorphisms, hom_set, opposite, product_category, terminal_category,
    validate_category, constant_functor, identity_functor,
)
from fincat.fixtures import (
    cyclic_group_category, divisor_lattice, parallel_pair, walking_arrow,
)

import helpers


def test_walking_arrow_valid():
    assert validate_category(walking_arrow()).ok


def test_fixture_battery_valid(fixtures):
    assert len(fixtures) >= 20
    for name, cat in fixtures.items():
        report = validate_category(cat)
        assert report.ok, "%s: %s" % (name, report)


def test_identity_law_violation_names_offender():
    two = walking_arrow()
    comp = dict(two.composition.items())
    comp[("f", "id_0")] = "id_0"
    mutant = helpers.clone_with(two, composition=comp)
    report = validate_category(mutant)
    assert not report.ok
    assert any("identity" in v.law and "f" in v.offenders for v in report.violations)


def test_associativity_corruption_caught_by_scan_and_report():
    # 3-object category carrying a cyclic-group block; one cell redirected.
    z3 = cyclic_group_category(3)
    cat = coproduct_category([z3, discrete_category(["p", "q"])], name="z3+2")
    comp = dict(cat.composition.items())
    assert comp[("0@r1", "0@r1")] == "0@r2"
    comp[("0@r1", "0@r1")] = "0@id_*"
    mutant = helpers.clone_with(cat, composition=comp)
    broken = helpers.associativity_scan(mutant)
    assert broken, "oracle scan must find the broken triple"
    report = validate_category(mutant)
    offenders = [v for v in report.violations if v.law == "associativity"]
    assert offenders and set(broken) >= {tuple(v.offenders) for v in offenders}


def test_structural_error_distinct_from_violation():
    cat = FiniteCategory(["a"], ["id_a", "f"], {"id_a": "a", "f": "a"},
                         {"id_a": "a", "f": "ghost"}, {"a": "id_a"}, {})
    with pytest.raises(StructureError):
        validate_category(cat)


def test_hom_set_examples():
    two = walking_arrow()
    assert hom_set(two, "0", "1") == ["f"]
    assert hom_set(two, "1", "0") == []
    pp = parallel_pair()
    assert hom_set(pp, "a", "b") == ["f", "g"]
    with pytest.raises(StructureError):
        hom_set(two, "0", "nope")


def test_discrete_category_shape():
    d = discrete_category(["x", "y"])
    assert len(d.objects) == 2 and len(d.morphisms) == 2
    assert all(d.is_identity(m) for m in d.morphisms)


def test_coproduct_disjoint_union():
    two = walking_arrow()
    c = coproduct_category([two, two])
    assert len(c.objects) == 4 and len(c.morphisms) == 6
    assert validate_category(c).ok
    for m in c.morphisms:
        assert c.dom[m].split("@")[0] == c.cod[m].split("@")[0]


def test_functor_category_over_discrete_pair():
    two = walking_arrow()
    fc = functor_category(discrete_category(["1", "2"]), two)
    assert len(fc.category.objects) == 4
    # morphism count equals the sum over pairs of products of hom-sets
    expected = 0
    for F in fc.functors.values():
        for G in fc.functors.values():
            n = 1
            for x in ("1", "2"):
                n *= len(two._hom.get((F.obj_map[x], G.obj_map[x]), ()))
            expected += n
    assert len(fc.category.morphisms) == expected == 9
    assert validate_category(fc.category).ok


@pytest.mark.parametrize("source_name,target_name,expected", [
    ("one", "two", 2),
    ("two", "two", 3),
    ("PP", "two", 3),
    ("PP", "PP", 6),
])
def test_enumerate_functors_against_brute_force(fixtures, source_name, target_name, expected):
    src, tgt = fixtures[source_name], fixtures[target_name]
    oracle = helpers.brute_force_functors(src, tgt)
    got = enumerate_functors(src, tgt)
    assert len(got) == len(oracle) == expected
    assert {tuple(sorted(f.mor_map.items())) for f in got} == \
        {tuple(sorted(f["morphisms"].items())) for f in oracle}


def test_enumerate_nat_trans_examples(fixtures):
    disc = discrete_category(["s", "t"])
    ident = identity_functor(disc)
    assert len(enumerate_nat_trans(ident, ident)) == 1

    pp, one = fixtures["PP"], fixtures["one"]
    Fa = constant_functor(one, pp, "a")
    Fb = constant_functor(one, pp, "b")
    nts = enumerate_nat_trans(Fa, Fb)
    assert sorted(nt.components["*"] for nt in nts) == ["f", "g"]

    three = coproduct_category([one, one, one])
    nabla_a = constant_functor(three, pp, "a")
    nabla_b = constant_functor(three, pp, "b")
    got = enumerate_nat_trans(nabla_a, nabla_b)
    oracle = helpers.brute_force_nat_trans(nabla_a, nabla_b)
    assert len(got) == len(oracle) == 8


def test_nat_trans_requires_parallel(fixtures):
    two = fixtures["two"]
    F = constant_functor(two, two, "0")
    G = constant_functor(fixtures["PP"], two, "0")
    with pytest.raises(StructureError):
        enumerate_nat_trans(F, G)


@given(st.data())
@settings(max_examples=25, deadline=None)
def test_discrete_domain_nat_trans_count_is_hom_product(data):
    # Over a discrete shape, components are independent choices.
    cats = [walking_arrow(), parallel_pair(), divisor_lattice(6), cyclic_group_category(2)]
    cat = data.draw(st.sampled_from(cats))
    size = data.draw(st.integers(min_value=0, max_value=3))
    disc = discrete_category(["d%d" % i for i in range(size)])
    functors = enumerate_functors(disc, cat)
    F = data.draw(st.sampled_from(functors))
    G = data.draw(st.sampled_from(functors))
    expected = 1
    for x in disc.objects:
        expected *= len(cat._hom.get((F.obj_map[x], G.obj_map[x]), ()))
    assert len(enumerate_nat_trans(F, G)) == expected


def test_functor_category_point_is_identity(fixtures):
    for name in ("two", "PP", "div6"):
        cat = fixtures[name]
        fc = functor_category(terminal_category(), cat)
        assert are_isomorphic(fc.category, cat)


def test_functor_category_over_coproduct_splits(fixtures):
    two = fixtures["two"]
    xy = coproduct_category([terminal_category(), terminal_category()])
    lhs = functor_category(xy, two).category
    rhs = product_category(functor_category(terminal_category(), two).category,
                           functor_category(terminal_category(), two).category).category
    assert are_isomorphic(lhs, rhs)


def test_opposite_involution(fixtures):
    for name in ("two", "PP", "div12", "Z3", "triangle"):
        cat = fixtures[name]
        assert opposite(opposite(cat)).same_tables(cat)


def test_product_category_lazy_table_is_total(fixtures):
    two = fixtures["two"]
    prod = product_category(two, two)
    assert validate_category(prod.category).ok
    assert len(prod.category.composition) == len(two.composition) ** 2


def test_isomorphism_search(fixtures):
    two = fixtures["two"]
    relabeled = build_category(["p", "q"], {"arrow": ("p", "q")}, name="two'")
    assert are_isomorphic(two, relabeled)
    assert not are_isomorphic(two, fixtures["PP"])
    assert not are_isomorphic(fixtures["Z2"], fixtures["Z3"])


def test_cap_is_a_hard_error():
    big = discrete_category(["e%d" % i for i in range(10)])
    with pytest.raises(CapExceeded):
        enumerate_functors(big, big, cap=100)


def test_corruption_harness_all_caught(fixtures):
    caught = 0
    for name in ("two", "PP", "div6", "Z3", "triangle", "sat2"):
        for label, mutant in helpers.corruptions(fixtures[name]):
            report = validate_category(mutant)
            assert not report.ok, "%s / %s escaped validation" % (name, label)
            caught += 1
    assert caught >= 12


def test_graphs():
    tri = build_graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    disc = build_graph(["u", "v"], [])
    homs = graph_homomorphisms(disc, tri)
    assert len(homs) == 9
    edge_homs = graph_homomorphisms(tri, tri)
    assert all(frozenset((h["a"], h["b"])) in tri.edges for h in edge_homs)
    with pytest.raises(StructureError):
        build_graph(["a"], [("a", "b")])
    with pytest.raises(StructureError):
        build_graph(["a", "b"], [("a", "b"), ("b", "a")])
