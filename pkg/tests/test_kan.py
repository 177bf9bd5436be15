import pytest

from fincat.core import (
    Functor, NaturalTransformation, WorkbenchError, are_isomorphic, bang_functor,
    compose_functors, constant_functor, coproduct_category, diagonal_functor,
    discrete_category, empty_category, enumerate_functors, enumerate_nat_trans,
    identity_functor, terminal_category, validate_category,
)
from fincat.fixtures import divisor_lattice, parallel_pair, poset_category, walking_arrow
from fincat.kan import (
    Adjunction, KanExtensionResult, comma_category, colimit_of_diagram,
    density_monad, find_adjoint, inserter, is_pointwise, kan_extension,
    kan_forward, limit_of_diagram,
)

import helpers


def monotone_functor(poset, omap, name=""):
    mor_map = {}
    for f in poset.morphisms:
        a, b = poset.dom[f], poset.cod[f]
        fa, fb = omap[a], omap[b]
        mor_map[f] = poset.identities[fa] if fa == fb else "%s<=%s" % (fa, fb)
    F = Functor(poset, poset, omap, mor_map, name=name)
    F.validate()
    return F


# ---------------------------------------------------------------------------
# comma categories


def test_comma_of_identities_is_arrow_category():
    two = walking_arrow()
    comma = comma_category(identity_functor(two), identity_functor(two))
    # oracle: triples (x, y, k) enumerated directly
    expected = {(x, y, k) for x in two.objects for y in two.objects
                for k in two._hom.get((x, y), ())}
    assert set(comma.objects.values()) == expected
    assert len(comma.category.objects) == 3
    assert validate_category(comma.category).ok
    comma.filler.validate()
    comma.proj1.validate()
    comma.proj2.validate()


def test_comma_arrows_into_an_object():
    two = walking_arrow()
    into_one = comma_category(identity_functor(two),
                              constant_functor(terminal_category(), two, "1"))
    assert len(into_one.category.objects) == 2  # f: 0 -> 1 and id_1
    out_of_one = comma_category(constant_functor(terminal_category(), two, "1"),
                                identity_functor(two))
    assert len(out_of_one.category.objects) == 1  # only id_1


def test_comma_of_constants_into_discrete():
    disc = discrete_category(["u", "v"])
    A = discrete_category(["p", "q", "r"])
    left = constant_functor(disc, A, "p")
    right = constant_functor(A, A, "p")
    comma = comma_category(left, right)
    # identity fillers only: one object per (source object, target object)
    assert len(comma.category.objects) == len(disc.objects) * len(A.objects)


# ---------------------------------------------------------------------------
# limits


def test_empty_limit_is_terminal_object():
    d12 = divisor_lattice(12)
    diagram = Functor(empty_category(), d12, {}, {})
    cone = limit_of_diagram(diagram)
    assert cone is not None and cone.apex == "12"


def test_binary_meet_limit():
    d12 = divisor_lattice(12)
    disc = discrete_category(["p", "q"])
    diagram = Functor(disc, d12, {"p": "4", "q": "6"},
                      {"id_p": "id_4", "id_q": "id_6"})
    cone = limit_of_diagram(diagram)
    assert cone.apex == str(helpers.divisor_meet(4, 6)) == "2"


def test_equalizer_missing_in_parallel_pair():
    pp = parallel_pair()
    assert limit_of_diagram(identity_functor(pp)) is None


def test_colimit_dualizes():
    d12 = divisor_lattice(12)
    disc = discrete_category(["p", "q"])
    diagram = Functor(disc, d12, {"p": "4", "q": "6"},
                      {"id_p": "id_4", "id_q": "id_6"})
    cocone = colimit_of_diagram(diagram)
    assert cocone.apex == str(helpers.divisor_join(4, 6)) == "12"


def test_limit_factorization_unique():
    d12 = divisor_lattice(12)
    disc = discrete_category(["p", "q"])
    diagram = Functor(disc, d12, {"p": "6", "q": "4"},
                      {"id_p": "id_6", "id_q": "id_4"})
    cone = limit_of_diagram(diagram)
    legs = {"p": "1<=6", "q": "1<=4"}
    assert cone.factor("1", legs) == "1<=2"


# ---------------------------------------------------------------------------
# adjoints


def test_diagonal_right_adjoint_is_meet_table():
    d12 = divisor_lattice(12)
    prod, delta = diagonal_functor(d12)
    adj = find_adjoint(delta, "right")
    assert adj is not None
    adj.validate()
    for a in d12.objects:
        for b in d12.objects:
            expected = str(helpers.divisor_meet(int(a), int(b)))
            assert adj.right.obj_map[prod.object_ids[(a, b)]] == expected


def test_identity_right_adjoint_is_identity():
    two = walking_arrow()
    adj = find_adjoint(identity_functor(two), "right")
    assert adj.right == identity_functor(two)
    assert all(two.is_identity(c) for c in adj.unit.components.values())


def test_parallel_pair_diagonal_has_no_adjoints():
    pp = parallel_pair()
    _, delta = diagonal_functor(pp)
    assert find_adjoint(delta, "right") is None
    assert find_adjoint(delta, "left") is None


def test_left_adjoint_of_diagonal_is_join():
    d12 = divisor_lattice(12)
    prod, delta = diagonal_functor(d12)
    adj = find_adjoint(delta, "left")
    adj.validate()
    for a in d12.objects:
        for b in d12.objects:
            expected = str(helpers.divisor_join(int(a), int(b)))
            assert adj.left.obj_map[prod.object_ids[(a, b)]] == expected


# ---------------------------------------------------------------------------
# inserters


def test_inserter_of_monotone_maps_is_full_subposet():
    d12 = divisor_lattice(12)
    F = monotone_functor(d12, {a: str(helpers.divisor_meet(int(a), 4)) for a in d12.objects})
    G = monotone_functor(d12, {a: str(helpers.divisor_meet(int(a), 6)) for a in d12.objects})
    ins = inserter(F, G)
    # oracle: elements whose image divides the other image
    expected = sorted(a for a in d12.objects
                      if helpers.divisor_meet(int(a), 6) % helpers.divisor_meet(int(a), 4) == 0)
    assert sorted(p[0] for p in ins.objects.values()) == expected == ["1", "2", "3", "6"]
    assert validate_category(ins.category).ok
    ins.two_cell.validate()


def test_inserter_of_equal_maps_is_domain():
    d12 = divisor_lattice(12)
    ident = identity_functor(d12)
    ins = inserter(ident, ident)
    assert are_isomorphic(ins.category, d12)


def test_inserter_into_parallel_pair_is_discrete():
    pp = parallel_pair()
    one = terminal_category()
    ins = inserter(constant_functor(one, pp, "a"), constant_functor(one, pp, "b"))
    assert len(ins.category.objects) == 2
    assert all(ins.category.is_identity(m) for m in ins.category.morphisms)


def test_inserter_arrow_faithful_and_conservative():
    # hom(X, i) faithful and conservative for probe shapes
    pp = parallel_pair()
    ins = inserter(identity_functor(pp), identity_functor(pp))
    i = ins.arrow
    for probe in (terminal_category(), walking_arrow()):
        functors = enumerate_functors(probe, ins.category)
        for F in functors:
            for G in functors:
                nts = enumerate_nat_trans(F, G)
                pushed = [tuple(sorted(
                    (x, i.mor_map[nt.components[x]]) for x in probe.objects))
                    for nt in nts]
                assert len(set(pushed)) == len(nts)  # faithful
                for nt in nts:
                    image_iso = all(_is_iso(pp, i.mor_map[c]) for c in nt.components.values())
                    own_iso = all(_is_iso(ins.category, c) for c in nt.components.values())
                    assert own_iso == image_iso  # conservative


def _is_iso(cat, m):
    a, b = cat.dom[m], cat.cod[m]
    return any(cat.composition[(w, m)] == cat.identities[a]
               and cat.composition[(m, w)] == cat.identities[b]
               for w in cat._hom.get((b, a), ()))


def test_inserter_universal_property_by_enumeration():
    pp = parallel_pair()
    f = identity_functor(pp)
    ins = inserter(f, f)
    for probe in (terminal_category(), walking_arrow()):
        for x in enumerate_functors(probe, pp):
            fx = compose_functors(f, x)
            for cell in enumerate_nat_trans(fx, fx):
                h = ins.factor(x, cell)
                h.validate()
                assert compose_functors(ins.arrow, h) == x
                for obj in probe.objects:
                    assert ins.two_cell.components[h.obj_map[obj]] == cell.components[obj]


# ---------------------------------------------------------------------------
# Kan extensions


def test_right_kan_along_codiagonal_is_binary_product():
    d12 = divisor_lattice(12)
    one = terminal_category()
    xx = coproduct_category([one, one])
    tau = Functor(xx, d12, {"0@*": "4", "1@*": "6"},
                  {"0@id_*": "id_4", "1@id_*": "id_6"}, name="[4,6]")
    nabla = Functor(xx, one, {o: "*" for o in xx.objects},
                    {m: "id_*" for m in xx.morphisms}, name="nabla")
    ext = kan_extension(tau, nabla, "right")
    assert ext.extension.obj_map["*"] == str(helpers.divisor_meet(4, 6))
    assert ext.verified


def test_kan_along_identity_is_tau():
    two = walking_arrow()
    tau = identity_functor(two)
    ext = kan_extension(tau, identity_functor(two), "right")
    assert ext.extension == tau
    assert all(two.is_identity(c) for c in ext.two_cell.components.values())


def test_right_kan_along_bang_is_meet_of_family():
    d12 = divisor_lattice(12)
    disc = discrete_category(["1", "2", "3"])
    tau = Functor(disc, d12, {"1": "4", "2": "6", "3": "12"},
                  {"id_1": "id_4", "id_2": "id_6", "id_3": "id_12"})
    ext = kan_extension(tau, bang_functor(disc, terminal_category()), "right")
    assert ext.extension.obj_map["*"] == "2"
    left = kan_extension(tau, bang_functor(disc, terminal_category()), "left")
    assert left.extension.obj_map["*"] == "12"
    assert left.verified


def test_kan_bijection_has_explicit_inverses():
    d12 = divisor_lattice(12)
    disc = discrete_category(["1", "2"])
    tau = Functor(disc, d12, {"1": "4", "2": "6"}, {"id_1": "id_4", "id_2": "id_6"})
    along = bang_functor(disc, terminal_category())
    ext = kan_extension(tau, along, "right")
    for h in enumerate_functors(terminal_category(), d12):
        lhs = enumerate_nat_trans(h, ext.extension)
        rhs = enumerate_nat_trans(compose_functors(h, along), tau)
        images = {kan_forward(ext.extension, ext.two_cell, along, nt, "right").key()
                  for nt in lhs}
        assert images == {nt.key() for nt in rhs} and len(images) == len(lhs)


def test_missing_kan_extension_is_none():
    pp = parallel_pair()
    one = terminal_category()
    three = coproduct_category([one, one, one])
    nabla = Functor(three, one, {o: "*" for o in three.objects},
                    {m: "id_*" for m in three.morphisms})
    tau = constant_functor(three, pp, "b")
    assert kan_extension(tau, nabla, "right") is None


def test_pointwise_probes_pass_and_catch_corruption():
    d12 = divisor_lattice(12)
    disc = discrete_category(["1", "2", "3"])
    tau = Functor(disc, d12, {"1": "4", "2": "6", "3": "12"},
                  {"id_1": "id_4", "id_2": "id_6", "id_3": "id_12"})
    along = bang_functor(disc, terminal_category())
    ext = kan_extension(tau, along, "right")
    probes = [identity_functor(terminal_category())]
    assert all(r.ok for r in is_pointwise(ext, probes))

    corrupt = Functor(terminal_category(), d12, {"*": "1"}, {"id_*": "id_1"})
    cell = NaturalTransformation(compose_functors(corrupt, along), tau,
                                 {"1": "1<=4", "2": "1<=6", "3": "1<=12"})
    cell.validate()
    bad = KanExtensionResult("right", corrupt, cell, tau, along, False, False)
    assert not all(r.ok for r in is_pointwise(bad, probes))


def test_pointwise_reduces_to_fiber_formula_for_discrete_shapes():
    # product along an index map: each value is the meet over its fiber
    d12 = divisor_lattice(12)
    src = discrete_category(["a", "b", "c"])
    tgt = discrete_category(["u", "v"])
    s = Functor(src, tgt, {"a": "u", "b": "u", "c": "v"},
                {"id_a": "id_u", "id_b": "id_u", "id_c": "id_v"})
    tau = Functor(src, d12, {"a": "4", "b": "6", "c": "3"},
                  {"id_a": "id_4", "id_b": "id_6", "id_c": "id_3"})
    ext = kan_extension(tau, s, "right")
    assert ext.extension.obj_map["u"] == str(helpers.divisor_meet(4, 6))
    assert ext.extension.obj_map["v"] == "3"
    probes = [constant_functor(terminal_category(), tgt, y) for y in tgt.objects]
    assert all(r.ok for r in is_pointwise(ext, probes))


# ---------------------------------------------------------------------------
# density monads


def test_density_monad_of_constant_element():
    d12 = divisor_lattice(12)
    tau = constant_functor(terminal_category(), d12, "4")
    res = density_monad(tau, "monad")
    expected = {c: ("4" if 4 % int(c) == 0 else "12") for c in d12.objects}
    assert res.endofunctor.obj_map == expected
    assert res.laws.ok


def test_density_monad_of_identity_is_identity():
    d12 = divisor_lattice(12)
    res = density_monad(identity_functor(d12), "monad")
    assert res.endofunctor == identity_functor(d12)
    assert res.laws.ok


def test_density_comonad_of_dense_inclusion_is_identity():
    d12 = divisor_lattice(12)
    sub = poset_category(["1", "2", "3", "4"], lambda a, b: int(b) % int(a) == 0)
    inc = monotone_embedding(sub, d12)
    res = density_monad(inc, "comonad")
    assert res.endofunctor == identity_functor(d12)
    assert res.laws.ok


def monotone_embedding(sub, sup):
    mor = {}
    for f in sub.morphisms:
        a, b = sub.dom[f], sub.cod[f]
        mor[f] = sup.identities[a] if a == b else "%s<=%s" % (a, b)
    F = Functor(sub, sup, {a: a for a in sub.objects}, mor, name="inc")
    F.validate()
    return F


def test_density_monad_absent_when_limits_missing():
    pp = parallel_pair()
    tau = constant_functor(terminal_category(), pp, "b")
    assert density_monad(tau, "monad") is None
