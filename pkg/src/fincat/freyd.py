"""Finite mechanization of the incompleteness argument.

The set-theoretic contradiction (no injection 2^lambda -> lambda) becomes the
finite fact 2^lambda > n for lambda = ceil(log2(n + 1)), where n counts the
morphisms of the category under audit.  The audit demonstrates non-existence
along two routes and requires them to agree: the diagonal into the lambda-th
power has no right adjoint, and the right Kan extension along the codiagonal
of the lambda-fold coproduct does not exist.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import (
    FiniteCategory, Functor, NaturalTransformation, StructureError,
    WorkbenchError, compose_functors, constant_functor, coproduct_category,
    discrete_category, enumerate_functors, enumerate_nat_trans,
    functor_category, identity_functor, resolve_cap, terminal_category,
)
from .internalcat import associated_category, internal_poset_check, \
    representably_posetal_check
from .kan import find_adjoint, kan_extension, kan_forward


@dataclass(frozen=True)
class TensorWithSet:
    """The coproduct of lambda copies of a category, with its structure maps."""
    index: tuple[str, ...]
    base: FiniteCategory
    category: FiniteCategory
    injections: dict[str, Functor]            # index element -> X -> tensor
    codiagonal: Functor                       # tensor -> X

    def reindexing(self, s: dict[str, str], other: "TensorWithSet") -> Functor:
        """s (x) X : this tensor -> other tensor for an index map s."""
        obj_map, mor_map = {}, {}
        for k, i in enumerate(self.index):
            target_tag = list(other.index).index(s[i])
            for x in self.base.objects:
                obj_map["%d@%s" % (k, x)] = "%d@%s" % (target_tag, x)
            for f in self.base.morphisms:
                mor_map["%d@%s" % (k, f)] = "%d@%s" % (target_tag, f)
        return Functor(self.category, other.category, obj_map, mor_map, name="s(x)X")


def tensor_with_set(index, cat: FiniteCategory) -> TensorWithSet:
    """lambda (x) X as the tagged coproduct, with injections and codiagonal."""
    index = tuple(sorted(set(index)))
    parts = coproduct_category([cat] * len(index), name="%d(x)%s" % (len(index), cat.name))
    injections = {}
    for k, i in enumerate(index):
        injections[i] = Functor(cat, parts,
                                {x: "%d@%s" % (k, x) for x in cat.objects},
                                {f: "%d@%s" % (k, f) for f in cat.morphisms},
                                name="inj%s" % i)
    codiag = Functor(parts, cat,
                     {"%d@%s" % (k, x): x for k in range(len(index)) for x in cat.objects},
                     {"%d@%s" % (k, f): f for k in range(len(index)) for f in cat.morphisms},
                     name="codiag")
    return TensorWithSet(index, cat, parts, injections, codiag)


def tensor_hom_bijection(tensor: TensorWithSet, target: FiniteCategory,
                         cap: int | None = None) -> bool:
    """hom(lambda (x) X, C) = (lambda)-tuples of functors X -> C, by counting
    and by injectivity of restriction along the injections."""
    cap = resolve_cap(cap)
    whole = enumerate_functors(tensor.category, target, cap=cap)
    parts = enumerate_functors(tensor.base, target, cap=cap)
    expected = len(parts) ** len(tensor.index)
    restrictions = set()
    for F in whole:
        restrictions.add(tuple(
            (tuple(sorted(compose_functors(F, tensor.injections[i]).obj_map.items())),
             tuple(sorted(compose_functors(F, tensor.injections[i]).mor_map.items())))
            for i in tensor.index))
    return len(whole) == expected and len(restrictions) == len(whole)


@dataclass(frozen=True)
class IncompletenessReport:
    """Counting data for a distinct parallel pair of 2-cells, per the
    cardinality bound |hom(a.codiag, b.codiag)| = |hom(a, b)|^lambda."""
    lam: int
    hom_count: int
    power_count: int
    bound: int
    extension_exists: bool
    transpose_count: int | None
    bijection_checked: bool

    @property
    def counting_ok(self) -> bool:
        return self.power_count == self.hom_count ** self.lam and self.power_count >= self.bound


def incompleteness_witness(cat: FiniteCategory, a: Functor, b: Functor,
                           f: NaturalTransformation, g: NaturalTransformation,
                           index, cap: int | None = None) -> IncompletenessReport:
    """Count hom(a.codiag, b.codiag) and, when the right Kan extension along
    the codiagonal exists, verify the defining bijection on it."""
    cap = resolve_cap(cap)
    if f.key() == g.key():
        raise StructureError("the 2-cells must be distinct")
    tensor = tensor_with_set(index, a.source)
    lam = len(tensor.index)
    a_nabla = compose_functors(a, tensor.codiagonal)
    b_nabla = compose_functors(b, tensor.codiagonal)
    hom_count = len(enumerate_nat_trans(a, b, cap=cap))
    power = enumerate_nat_trans(a_nabla, b_nabla, cap=cap)
    ext = kan_extension(b_nabla, tensor.codiagonal, "right", cap=cap)
    if ext is None:
        return IncompletenessReport(lam, hom_count, len(power), 2 ** lam, False, None, False)
    transposes = enumerate_nat_trans(a, ext.extension, cap=cap)
    images = {kan_forward(ext.extension, ext.two_cell, ext.along, nt, "right").key()
              for nt in transposes}
    ok = len(images) == len(transposes) and images == {nt.key() for nt in power}
    if not ok:
        raise WorkbenchError("kan bijection failed in incompleteness witness")
    return IncompletenessReport(lam, hom_count, len(power), 2 ** lam, True,
                                len(transposes), True)


@dataclass(frozen=True)
class FreydVerdict:
    """Outcome of the finite incompleteness audit."""
    posetal: bool
    morphism_count: int
    lam: int | None = None
    witness_pair: tuple[str, str] | None = None     # objects with parallel 2-cells
    power_count: int | None = None
    diagonal_adjoint_missing: bool | None = None
    kan_missing: bool | None = None
    routes_agree: bool | None = None

    @property
    def obstruction(self) -> str:
        if self.posetal:
            return "representably posetal; every hom-category is a poset"
        return ("2^%d = %d > %d morphisms; the %d-fold diagonal has no right "
                "adjoint and the Kan extension along the codiagonal is missing"
                % (self.lam, 2 ** self.lam, self.morphism_count, self.lam))


def finite_freyd_audit(cat: FiniteCategory, cap: int | None = None) -> FreydVerdict:
    """Posetal certificate, or the least-lambda counting obstruction with the
    diagonal route and the codiagonal-Kan route agreeing on non-existence."""
    cap = resolve_cap(cap)
    point = terminal_category()
    if representably_posetal_check(cat, [point], cap=cap):
        return FreydVerdict(True, len(cat.morphisms))
    n = len(cat.morphisms)
    lam = 1
    while 2 ** lam <= n:
        lam += 1
    if lam > 4:
        raise StructureError("audit supports lambda <= 4, needed %d" % lam)
    pair = None
    for x in cat.objects:
        for y in cat.objects:
            if len(cat._hom.get((x, y), ())) >= 2:
                pair = (x, y)
                break
        if pair:
            break
    if pair is None:
        raise WorkbenchError("non-posetal category without a parallel pair")
    index = tuple("i%d" % k for k in range(lam))
    tensor = tensor_with_set(index, point)
    a = constant_functor(point, cat, pair[0])
    b = constant_functor(point, cat, pair[1])
    b_nabla = compose_functors(b, tensor.codiagonal)
    power_count = len(enumerate_nat_trans(
        compose_functors(a, tensor.codiagonal), b_nabla, cap=cap))
    kan_missing = kan_extension(b_nabla, tensor.codiagonal, "right", cap=cap) is None
    # cotensor route: the diagonal into C^lambda
    power_cat = functor_category(discrete_category(index), cat, cap=cap)
    diag_obj = {}
    diag_mor = {}
    for x in cat.objects:
        F = constant_functor(discrete_category(index), cat, x)
        diag_obj[x] = power_cat.object_of(F)
    nt_index = {(power_cat.category.dom[m], power_cat.category.cod[m],
                 power_cat.transformations[m].key()): m
                for m in power_cat.transformations}
    for u in cat.morphisms:
        src, tgt = diag_obj[cat.dom[u]], diag_obj[cat.cod[u]]
        key = tuple(sorted({i: u for i in index}.items()))
        diag_mor[u] = nt_index[(src, tgt, key)]
    delta = Functor(cat, power_cat.category, diag_obj, diag_mor, name="diag^%d" % lam)
    delta.validate()
    diagonal_missing = find_adjoint(delta, "right", cap=cap) is None
    agree = diagonal_missing == kan_missing
    if not agree:
        raise WorkbenchError("diagonal route and codiagonal route disagree")
    if not (diagonal_missing and kan_missing):
        raise WorkbenchError("expected non-existence for a non-posetal category")
    return FreydVerdict(False, n, lam, pair, power_count, diagonal_missing,
                        kan_missing, agree)
