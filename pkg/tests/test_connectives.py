import pytest

from fincat.connectives import (
    IndexedCategory, ParametrisedCalculus, SetFamily, SetSquare, adhoc_product,
    adhoc_rules_check, beck_chevalley_check, canonical_discreteness_check,
    constant_indexed, discreteness_instance, fiberwise_ccc, internal_ccc,
    internal_connectives, naive_ccc, r_closed,
)
from fincat.core import (
    Functor, NaturalTransformation, StructureError, build_graph,
    constant_functor, diagonal_functor, discrete_category, functor_category,
    identity_functor, terminal_category,
)
from fincat.fixtures import (
    boolean_square, cyclic_group_category, divisor_lattice, parallel_pair,
    poset_category, walking_arrow,
)
from fincat.kan import Adjunction

import helpers


# ---------------------------------------------------------------------------
# discreteness


def test_category_discreteness_instance():
    inst = discreteness_instance("categories")
    two = walking_arrow()
    report = inst.hom_bijection(["p", "q", "r"], two)
    assert report.bijective and report.lhs == 2 ** 3
    assert inst.unit_is_isomorphism(["p", "q"])
    assert inst.two_fully_faithful(["p"], ["u", "v"])


def test_graph_discreteness_instance():
    inst = discreteness_instance("graphs")
    triangle = build_graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    assert inst.underlying(triangle) == ("a", "b", "c")
    assert not inst.include(["a", "b", "c"]).edges
    report = inst.hom_bijection(["u", "v"], triangle)
    assert report.bijective and report.lhs == 9
    assert inst.unit_is_isomorphism(["u"])


def test_canonical_discreteness():
    assert canonical_discreteness_check(discrete_category(["s", "t"]))
    assert not canonical_discreteness_check(walking_arrow())
    assert not canonical_discreteness_check(parallel_pair())


# ---------------------------------------------------------------------------
# internal connectives


def test_div12_connectives_match_meet_join_oracle():
    d12 = divisor_lattice(12)
    conn = internal_connectives(d12)
    assert conn.terminal.right.obj_map["*"] == "12"
    assert conn.initial.left.obj_map["*"] == "1"
    for a in d12.objects:
        for b in d12.objects:
            assert conn.product_of(a, b) == str(helpers.divisor_meet(int(a), int(b)))
            assert conn.coproduct_of(a, b) == str(helpers.divisor_join(int(a), int(b)))


def test_parallel_pair_has_no_connectives():
    conn = internal_connectives(parallel_pair())
    report = conn.report()
    assert not report.ok
    assert not report["products"].exists
    assert "no terminal universal arrow" in report["products"].certificate


def test_terminal_category_has_all_connectives():
    assert internal_connectives(terminal_category()).report().ok


def test_boolean_square_internal_ccc_is_heyting():
    b22 = boolean_square()
    ccc = internal_ccc(b22)
    assert ccc.exists
    meets = helpers.poset_meet_table(b22)
    for a in b22.objects:
        for b in b22.objects:
            oracle = helpers.relative_pseudocomplement(b22, meets, a, b)
            assert ccc.exponent(b, a) == oracle
    # the spec's sample point: (1,0) => (0,1) is (0,1)
    assert ccc.exponent("01", "10") == "01"


def test_walking_arrow_ccc_table():
    ccc = internal_ccc(walking_arrow())
    assert ccc.exists
    assert ccc.exponent("1", "0") == "1"   # 0 => 1
    assert ccc.exponent("0", "1") == "0"   # 1 => 0
    assert ccc.exponent("0", "0") == "1"
    assert ccc.exponent("1", "1") == "1"


def test_parallel_pair_ccc_precondition_fails():
    ccc = internal_ccc(parallel_pair())
    assert not ccc.exists and ccc.precondition_failed
    assert "no internal products" in ccc.certificate


def test_exponent_functor_and_evaluation():
    d12 = divisor_lattice(12)
    ccc = internal_ccc(d12)
    for x in d12.objects:
        F = ccc.exponent_functor(x)
        F.validate()
    ev = ccc.evaluation("3", "6")   # (6 => 3) meet 6 -> 3
    assert d12.cod[ev] == "3"


def test_naive_ccc_on_lattices_and_implication():
    b22 = boolean_square()
    conn = internal_connectives(b22)
    assert naive_ccc(b22, conn).ok
    d12 = divisor_lattice(12)
    assert naive_ccc(d12).ok


def test_internal_ccc_implies_naive_ccc():
    for cat in (walking_arrow(), boolean_square(), divisor_lattice(6)):
        conn = internal_connectives(cat)
        ccc = internal_ccc(cat, conn)
        if ccc.exists:
            assert naive_ccc(cat, conn).ok


# ---------------------------------------------------------------------------
# magma closedness


def test_meet_magma_left_closed_agrees_with_ccc():
    d12 = divisor_lattice(12)
    conn = internal_connectives(d12)
    report = r_closed(d12, conn.products.right, "left")
    assert report.closed and report.characterisations_agree
    ccc = internal_ccc(d12, conn)
    twist_adj = report.bundled.witness
    for a in d12.objects:
        for b in d12.objects:
            pair = twist_adj.right.obj_map["(%s,%s)" % (b, a)]
            assert pair == "(%s,%s)" % (ccc.exponent(b, a), a)


def test_group_multiplication_is_closed():
    z2 = cyclic_group_category(2)
    prod, _ = diagonal_functor(z2)
    flip = {"id_*": "r1", "r1": "id_*"}

    def mul(u, v):
        if u == "id_*":
            return v
        return flip[v]

    magma = Functor(prod.category, z2, {prod.object_ids[("*", "*")]: "*"},
                    {prod.morphism_ids[(u, v)]: mul(u, v)
                     for u in z2.morphisms for v in z2.morphisms}, name="mul")
    magma.validate()
    for side in ("left", "right"):
        report = r_closed(z2, magma, side)
        assert report.characterisations_agree
        assert report.closed  # group translations are isomorphisms


def test_constant_magma_on_parallel_pair_not_closed():
    pp = parallel_pair()
    prod, _ = diagonal_functor(pp)
    magma = constant_functor(prod.category, pp, "b")
    report = r_closed(pp, magma, "left")
    assert not report.closed and report.characterisations_agree


def test_r_closed_with_inclusion_parameter():
    d12 = divisor_lattice(12)
    conn = internal_connectives(d12)
    sub = poset_category(["1", "2"], lambda a, b: int(b) % int(a) == 0)
    inc = Functor(sub, d12, {"1": "1", "2": "2"},
                  {"id_1": "id_1", "id_2": "id_2", "1<=2": "1<=2"}, name="inc")
    inc.validate()
    report = r_closed(d12, conn.products.right, "left", inclusion=inc)
    assert report.closed and report.characterisations_agree


# ---------------------------------------------------------------------------
# indexed categories


def test_constant_indexed_with_ccc_fiber_passes():
    idx = constant_indexed(walking_arrow(), boolean_square())
    assert not idx.validate_split()
    assert fiberwise_ccc(idx).ok


def test_indexed_with_parallel_pair_fiber_fails_at_that_fiber():
    idx = IndexedCategory(
        discrete_category(["p", "q"]),
        {"p": boolean_square(), "q": parallel_pair()},
        {"id_p": identity_functor(boolean_square()),
         "id_q": identity_functor(parallel_pair())})
    report = fiberwise_ccc(idx)
    assert not report.ok
    assert all("q" in issue.where for issue in report.issues)


def test_fiberwise_ccc_detects_broken_reindexing():
    # "is the element nonzero": monotone but does not preserve meets
    b22 = boolean_square()
    base = walking_arrow()
    collapse_map = {"00": "00", "01": "11", "10": "11", "11": "11"}
    mor_map = {}
    for m in b22.morphisms:
        a, b = collapse_map[b22.dom[m]], collapse_map[b22.cod[m]]
        mor_map[m] = b22.identities[a] if a == b else "%s<=%s" % (a, b)
    collapse = Functor(b22, b22, collapse_map, mor_map, name="nonzero")
    collapse.validate()
    idx = IndexedCategory(base, {x: b22 for x in base.objects},
                          {"id_0": identity_functor(b22),
                           "id_1": identity_functor(b22),
                           "f": collapse})
    report = fiberwise_ccc(idx)
    assert not report.ok
    assert any(issue.where == "reindex f" for issue in report.issues)


# ---------------------------------------------------------------------------
# ad hoc polymorphism


def test_adhoc_product_fiberwise_meet():
    d12 = divisor_lattice(12)
    fam = SetFamily(d12, ("1", "2", "3"), {"1": "4", "2": "6", "3": "12"})
    s = {"1": "*", "2": "*", "3": "*"}
    res = adhoc_product(fam, s, ("*",), "product")
    assert res.family.values == {"*": "2"}
    assert adhoc_rules_check(fam, s, res)


def test_adhoc_identity_and_empty_fiber():
    d12 = divisor_lattice(12)
    fam = SetFamily(d12, ("1", "2"), {"1": "4", "2": "6"})
    res = adhoc_product(fam, {"1": "1", "2": "2"}, ("1", "2"), "product")
    assert res.family.values == fam.values
    res2 = adhoc_product(fam, {"1": "a", "2": "a"}, ("a", "b"), "product")
    assert res2.family.values["b"] == "12"
    res3 = adhoc_product(fam, {"1": "a", "2": "a"}, ("a", "b"), "coproduct")
    assert res3.family.values["b"] == "1"
    assert res3.family.values["a"] == "12"


def test_adhoc_missing_limit_is_none():
    pp = parallel_pair()
    fam = SetFamily(pp, ("1",), {"1": "a"})
    assert adhoc_product(fam, {"1": "u"}, ("u", "v"), "product") is None


def test_adhoc_composition_of_index_maps():
    d12 = divisor_lattice(12)
    fam = SetFamily(d12, ("1", "2", "3", "4"),
                    {"1": "4", "2": "6", "3": "12", "4": "2"})
    s = {"1": "u", "2": "u", "3": "v", "4": "v"}
    t = {"u": "*", "v": "*"}
    through = adhoc_product(adhoc_product(fam, s, ("u", "v"), "product").family,
                            t, ("*",), "product")
    direct = adhoc_product(fam, {j: t[s[j]] for j in fam.index}, ("*",), "product")
    assert through.family.values == direct.family.values


# ---------------------------------------------------------------------------
# Beck-Chevalley


def test_beck_chevalley_identity_square():
    d12 = divisor_lattice(12)
    fam = SetFamily(d12, ("1", "2"), {"1": "4", "2": "6"})
    square = SetSquare(("1", "2"), ("1", "2"), ("1", "2"), ("1", "2"),
                       {i: i for i in "12"}, {i: i for i in "12"},
                       {i: i for i in "12"}, {i: i for i in "12"})
    assert beck_chevalley_check(square, fam).ok


def test_beck_chevalley_collapse_square():
    d12 = divisor_lattice(12)
    fam = SetFamily(d12, ("1", "2", "3"), {"1": "4", "2": "6", "3": "12"})
    square = SetSquare(("1", "2", "3"), ("*",), ("m",), ("p1", "p2", "p3"),
                       {"1": "*", "2": "*", "3": "*"}, {"m": "*"},
                       {"p1": "1", "p2": "2", "p3": "3"},
                       {"p1": "m", "p2": "m", "p3": "m"})
    rep = beck_chevalley_check(square, fam)
    assert rep.ok
    assert rep.via_product_then_reindex == rep.via_reindex_then_product == {"m": "2"}


def test_beck_chevalley_flags_non_pullback():
    d12 = divisor_lattice(12)
    fam = SetFamily(d12, ("1", "2", "3"), {"1": "4", "2": "6", "3": "12"})
    square = SetSquare(("1", "2", "3"), ("*",), ("m",), ("p1",),
                       {"1": "*", "2": "*", "3": "*"}, {"m": "*"},
                       {"p1": "1"}, {"p1": "m"})
    rep = beck_chevalley_check(square, fam)
    assert not rep.is_pullback and not rep.comparison_iso and not rep.ok


def test_beck_chevalley_rejects_non_commuting():
    d12 = divisor_lattice(12)
    fam = SetFamily(d12, ("1", "2"), {"1": "4", "2": "6"})
    square = SetSquare(("1", "2"), ("u", "v"), ("m",), ("p1",),
                       {"1": "u", "2": "u"}, {"m": "v"}, {"p1": "1"}, {"p1": "m"})
    with pytest.raises(StructureError):
        beck_chevalley_check(square, fam)


# ---------------------------------------------------------------------------
# the parametrised rule system


@pytest.fixture(scope="module")
def calculus():
    b22 = boolean_square()
    conn = internal_connectives(b22)
    ccc = internal_ccc(b22, conn)
    shape = discrete_category(["x1", "x2"])
    return ParametrisedCalculus(conn, ccc, shape)


def test_rules_identity_and_composition(calculus):
    tau = calculus.element({"x1": "01", "x2": "11"})
    ident = calculus.rule_id(tau)
    assert calculus.rule_com(ident, ident).components == ident.components


def test_rules_terminal_and_initial(calculus):
    tau = calculus.element({"x1": "01", "x2": "10"})
    calculus.rule_one_int(tau).validate()
    calculus.rule_zero_int(tau).validate()


def test_rules_product_round_trip(calculus):
    rho = calculus.element({"x1": "00", "x2": "00"})
    tau = calculus.element({"x1": "01", "x2": "11"})
    sigma = calculus.element({"x1": "10", "x2": "01"})
    f = NaturalTransformation(rho, tau, {"x1": "00<=01", "x2": "00<=11"})
    g = NaturalTransformation(rho, sigma, {"x1": "00<=10", "x2": "00<=01"})
    pair = calculus.rule_prod_int(f, g)
    left, right = calculus.rule_prod_eli(pair, tau, sigma)
    assert left.components == f.components
    assert right.components == g.components


def test_rules_coproduct_round_trip(calculus):
    tau = calculus.element({"x1": "01", "x2": "00"})
    sigma = calculus.element({"x1": "10", "x2": "01"})
    rho = calculus.element({"x1": "11", "x2": "11"})
    f = NaturalTransformation(tau, rho, {"x1": "01<=11", "x2": "00<=11"})
    g = NaturalTransformation(sigma, rho, {"x1": "10<=11", "x2": "01<=11"})
    co = calculus.rule_coprod_int(f, g)
    back_f, back_g = calculus.rule_coprod_eli(co, tau, sigma)
    assert back_f.components == f.components
    assert back_g.components == g.components


def test_rules_lambda_round_trip(calculus):
    tau = calculus.element({"x1": "01", "x2": "11"})
    sigma = calculus.element({"x1": "10", "x2": "01"})
    rho = calculus.element({"x1": "11", "x2": "01"})
    ts = calculus.product_element(tau, sigma)
    f = NaturalTransformation(ts, rho, {"x1": "00<=11", "x2": "01<=01" if False else "id_01"})
    f.validate()
    lam = calculus.rule_lam_int(f, tau, sigma, rho)
    back = calculus.rule_lam_eli(lam, tau, sigma, rho)
    assert back.components == f.components


def test_parametrised_lambda_theorem_on_functor_categories():
    # internally ccc base: hom(X, A) is cartesian closed for discrete X
    b22 = boolean_square()
    assert internal_ccc(b22).exists
    for size in (0, 1, 2):
        shape = discrete_category(["i%d" % k for k in range(size)])
        hom_cat = functor_category(shape, b22).category
        conn = internal_connectives(hom_cat)
        assert conn.report().ok
        assert internal_ccc(hom_cat, conn).exists
