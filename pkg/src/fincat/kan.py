"""Comma categories, limits, adjoint search, inserters, pointwise Kan
extensions and density (co)monads.

Limits are found by enumerating cones and testing terminality; adjoints by
universal arrows over comma categories.  Absence ("none") is a first-class
result.  Thin categories get a fast path: a terminal cone is a maximum and
can be found in two linear passes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import (
    CapExceeded, FiniteCategory, Functor, NaturalTransformation, StructureError,
    WorkbenchError, _check_cap, compose_functors, constant_functor,
    enumerate_functors, enumerate_nat_trans, identity_functor, identity_nat,
    opposite, opposite_functor, opposite_nat, resolve_cap, terminal_category,
    vertical_compose, whisker_left, whisker_right,
)


@dataclass(frozen=True)
class CommaCategory:
    """The comma category (F/G) with projections and the canonical 2-cell."""
    category: FiniteCategory
    proj1: Functor                      # (F/G) -> source of F
    proj2: Functor                      # (F/G) -> source of G
    filler: NaturalTransformation       # F . proj1 -> G . proj2
    objects: dict[str, tuple[str, str, str]] = field(repr=False)   # id -> (x, y, k)
    morphisms: dict[str, tuple[str, str]] = field(repr=False)      # id -> (u, v)


def comma_category(left: Functor, right: Functor) -> CommaCategory:
    """Objects (x, y, k: left x -> right y); morphisms are commuting pairs."""
    if left.target is not right.target and left.target.objects != right.target.objects:
        raise StructureError("comma requires functors with a common target")
    amb = left.target
    X, Y = left.source, right.source
    obj_data: dict[str, tuple[str, str, str]] = {}
    for x in X.objects:
        for y in Y.objects:
            for k in amb._hom.get((left.obj_map[x], right.obj_map[y]), ()):
                obj_data["(%s,%s,%s)" % (x, y, k)] = (x, y, k)
    mor_data: dict[str, tuple[str, str]] = {}
    dom, cod = {}, {}
    counter = 0
    by_pair: dict[tuple[str, str, str, str], str] = {}
    for o1, (x1, y1, k1) in obj_data.items():
        for o2, (x2, y2, k2) in obj_data.items():
            for u in X._hom.get((x1, x2), ()):
                for v in Y._hom.get((y1, y2), ()):
                    if amb.composition[(right.mor_map[v], k1)] != amb.composition[(k2, left.mor_map[u])]:
                        continue
                    mid = "c%d(%s,%s)" % (counter, u, v)
                    counter += 1
                    mor_data[mid] = (u, v)
                    dom[mid], cod[mid] = o1, o2
                    by_pair[(o1, o2, u, v)] = mid
    identities = {}
    for o, (x, y, _) in obj_data.items():
        identities[o] = by_pair[(o, o, X.identities[x], Y.identities[y])]
    comp = {}
    for m2, (u2, v2) in mor_data.items():
        for m1, (u1, v1) in mor_data.items():
            if dom[m2] != cod[m1]:
                continue
            comp[(m2, m1)] = by_pair[(dom[m1], cod[m2],
                                      X.composition[(u2, u1)], Y.composition[(v2, v1)])]
    cat = FiniteCategory(obj_data.keys(), mor_data.keys(), dom, cod, identities, comp,
                         name="(%s/%s)" % (left.name, right.name))
    proj1 = Functor(cat, X, {o: d[0] for o, d in obj_data.items()},
                    {m: mor_data[m][0] for m in mor_data}, name="pi1")
    proj2 = Functor(cat, Y, {o: d[1] for o, d in obj_data.items()},
                    {m: mor_data[m][1] for m in mor_data}, name="pi2")
    filler = NaturalTransformation(compose_functors(left, proj1), compose_functors(right, proj2),
                                   {o: d[2] for o, d in obj_data.items()})
    return CommaCategory(cat, proj1, proj2, filler, dict(obj_data), dict(mor_data))


@dataclass(frozen=True)
class LimitCone:
    """A terminal cone over a diagram."""
    diagram: Functor
    apex: str
    legs: dict[str, str]                # diagram-object -> morphism apex -> D j

    def factor(self, apex: str, legs: dict[str, str]) -> str:
        """The unique mediating morphism from another cone; raises if not unique."""
        cat = self.diagram.target
        hits = [h for h in cat._hom.get((apex, self.apex), ())
                if all(cat.composition[(self.legs[j], h)] == legs[j] for j in self.legs)]
        if len(hits) != 1:
            raise WorkbenchError("expected a unique mediating morphism, found %d" % len(hits))
        return hits[0]


def _cones(diagram: Functor, cap: int) -> list[tuple[str, dict[str, str]]]:
    J, C = diagram.source, diagram.target
    jobjs = J.objects
    arrows = [f for f in J.morphisms if not J.is_identity(f)]
    cones: list[tuple[str, dict[str, str]]] = []
    seen = 0
    for apex in C.objects:
        choices = [C._hom.get((apex, diagram.obj_map[j]), ()) for j in jobjs]
        size = 1
        for c in choices:
            size *= len(c)
        seen += size
        _check_cap(seen, cap, "cone enumeration")
        if size == 0:
            continue

        def backtrack(pos: int, legs: dict[str, str]) -> None:
            if pos == len(jobjs):
                cones.append((apex, dict(legs)))
                return
            j = jobjs[pos]
            for leg in choices[pos]:
                legs[j] = leg
                ok = True
                for f in arrows:
                    a, b = J.dom[f], J.cod[f]
                    if a in legs and b in legs:
                        if C.composition[(diagram.mor_map[f], legs[a])] != legs[b]:
                            ok = False
                            break
                if ok:
                    backtrack(pos + 1, legs)
                del legs[j]

        backtrack(0, {})
    return cones


def limit_of_diagram(diagram: Functor, cap: int | None = None) -> LimitCone | None:
    """Terminal cone over the diagram, or None when no limit exists."""
    cap = resolve_cap(cap)
    C = diagram.target
    cones = _cones(diagram, cap)
    if not cones:
        return None
    if C.is_thin:
        # At most one cone per apex: the terminal cone is the maximum apex.
        best = cones[0]
        for cone in cones[1:]:
            if C._hom.get((best[0], cone[0])):
                best = cone
        if all(C._hom.get((k[0], best[0])) for k in cones):
            return LimitCone(diagram, best[0], best[1])
        return None
    for apex, legs in cones:
        terminal = True
        for apex2, legs2 in cones:
            hits = 0
            for h in C._hom.get((apex2, apex), ()):
                if all(C.composition[(legs[j], h)] == legs2[j] for j in legs):
                    hits += 1
                    if hits > 1:
                        break
            if hits != 1:
                terminal = False
                break
        if terminal:
            return LimitCone(diagram, apex, legs)
    return None


@dataclass(frozen=True)
class ColimitCocone:
    diagram: Functor
    apex: str
    legs: dict[str, str]                # diagram-object -> morphism D j -> apex

    def factor(self, apex: str, legs: dict[str, str]) -> str:
        cat = self.diagram.target
        hits = [h for h in cat._hom.get((self.apex, apex), ())
                if all(cat.composition[(h, self.legs[j])] == legs[j] for j in self.legs)]
        if len(hits) != 1:
            raise WorkbenchError("expected a unique mediating morphism, found %d" % len(hits))
        return hits[0]


def colimit_of_diagram(diagram: Functor, cap: int | None = None) -> ColimitCocone | None:
    dual = limit_of_diagram(opposite_functor(diagram), cap=cap)
    if dual is None:
        return None
    return ColimitCocone(diagram, dual.apex, dual.legs)


@dataclass(frozen=True)
class Adjunction:
    """An adjunction left -| right with unit and counit."""
    left: Functor                       # F : A -> B
    right: Functor                      # U : B -> A
    unit: NaturalTransformation         # Id_A -> U . F
    counit: NaturalTransformation       # F . U -> Id_B

    def validate(self) -> None:
        F, U = self.left, self.right
        A, B = F.source, F.target
        self.unit.validate()
        self.counit.validate()
        for a in A.objects:
            lhs = B.composition[(self.counit.components[F.obj_map[a]],
                                 F.mor_map[self.unit.components[a]])]
            if lhs != B.identities[F.obj_map[a]]:
                raise WorkbenchError("triangle (counit F)(F unit) fails at %r" % a)
        for b in B.objects:
            lhs = A.composition[(U.mor_map[self.counit.components[b]],
                                 self.unit.components[U.obj_map[b]])]
            if lhs != A.identities[U.obj_map[b]]:
                raise WorkbenchError("triangle (U counit)(unit U) fails at %r" % b)


@dataclass(frozen=True)
class UniversalArrowFailure:
    """Locates why an adjoint does not exist."""
    side: str
    at_object: str
    reason: str

    def __str__(self) -> str:
        return "no %s adjoint: %s at object %s" % (self.side, self.reason, self.at_object)


def _terminal_universal_arrow(functor: Functor, target_obj: str) -> tuple[str, str] | None:
    """Terminal object of (functor / target_obj): a pair (a, e: F a -> b)."""
    A, B = functor.source, functor.target
    candidates = [(a, e) for a in A.objects
                  for e in B._hom.get((functor.obj_map[a], target_obj), ())]
    if not candidates:
        return None
    if A.is_thin and B.is_thin:
        best = candidates[0]
        for cand in candidates[1:]:
            if A._hom.get((best[0], cand[0])):
                best = cand
        if all(A._hom.get((c[0], best[0])) for c in candidates):
            return best
        return None
    for (a, e) in candidates:
        ok = True
        for (a2, e2) in candidates:
            hits = 0
            for k in A._hom.get((a2, a), ()):
                if B.composition[(e, functor.mor_map[k])] == e2:
                    hits += 1
                    if hits > 1:
                        break
            if hits != 1:
                ok = False
                break
        if ok:
            return (a, e)
    return None


def _right_adjoint(functor: Functor) -> Adjunction | UniversalArrowFailure:
    A, B = functor.source, functor.target
    arrows: dict[str, tuple[str, str]] = {}
    for b in B.objects:
        found = _terminal_universal_arrow(functor, b)
        if found is None:
            return UniversalArrowFailure("right", b, "no terminal universal arrow")
        arrows[b] = found

    def mediate(src_obj: str, tgt_obj: str, wanted: str) -> str:
        a_t, e_t = arrows[tgt_obj]
        a_s, _ = arrows[src_obj]
        hits = [k for k in A._hom.get((a_s, a_t), ())
                if B.composition[(e_t, functor.mor_map[k])] == wanted]
        if len(hits) != 1:
            raise WorkbenchError("universal arrow at %r is not universal" % tgt_obj)
        return hits[0]

    obj_map = {b: arrows[b][0] for b in B.objects}
    mor_map = {}
    for g in B.morphisms:
        b1, b2 = B.dom[g], B.cod[g]
        mor_map[g] = mediate(b1, b2, B.composition[(g, arrows[b1][1])])
    U = Functor(B, A, obj_map, mor_map, name="radj(%s)" % functor.name)
    unit_comps = {}
    for a in A.objects:
        fa = functor.obj_map[a]
        a_t, e_t = arrows[fa]
        hits = [k for k in A._hom.get((a, a_t), ())
                if B.composition[(e_t, functor.mor_map[k])] == B.identities[fa]]
        if len(hits) != 1:
            raise WorkbenchError("unit component at %r is not unique" % a)
        unit_comps[a] = hits[0]
    unit = NaturalTransformation(identity_functor(A), compose_functors(U, functor), unit_comps)
    counit = NaturalTransformation(compose_functors(functor, U), identity_functor(B),
                                   {b: arrows[b][1] for b in B.objects})
    adj = Adjunction(functor, U, unit, counit)
    U.validate()
    adj.validate()
    return adj


def find_adjoint(functor: Functor, side: str, cap: int | None = None) -> Adjunction | None:
    """Search the right (resp. left) adjoint of ``functor`` by universal arrows."""
    found = adjoint_or_failure(functor, side, cap=cap)
    return found if isinstance(found, Adjunction) else None


def adjoint_or_failure(functor: Functor, side: str,
                       cap: int | None = None) -> Adjunction | UniversalArrowFailure:
    """Like :func:`find_adjoint` but reporting the failing object on absence."""
    if side == "right":
        return _right_adjoint(functor)
    if side == "left":
        dual = _right_adjoint(opposite_functor(functor))
        if isinstance(dual, UniversalArrowFailure):
            return UniversalArrowFailure("left", dual.at_object, "no initial universal arrow")
        # F^op -| R dualises to R^op -| F with unit/counit swapped and reversed.
        L = Functor(functor.target, functor.source, dual.right.obj_map, dual.right.mor_map,
                    name="ladj(%s)" % functor.name)
        unit = NaturalTransformation(identity_functor(functor.target),
                                     compose_functors(functor, L), dual.counit.components)
        counit = NaturalTransformation(compose_functors(L, functor),
                                       identity_functor(functor.source), dual.unit.components)
        adj = Adjunction(L, functor, unit, counit)
        L.validate()
        adj.validate()
        return adj
    raise StructureError("side must be 'left' or 'right', got %r" % side)


@dataclass(frozen=True)
class InserterResult:
    """Inserter of a parallel pair f, g: universal (i, two_cell: f.i -> g.i)."""
    category: FiniteCategory
    arrow: Functor                       # i : I -> A
    two_cell: NaturalTransformation      # f . i -> g . i
    left: Functor
    right: Functor
    objects: dict[str, tuple[str, str]] = field(repr=False)   # id -> (a, alpha)

    def factor(self, leg: Functor, cell: NaturalTransformation) -> Functor:
        """The unique functor X -> I for an inserter cone (leg, cell) over X."""
        obj_index = {pair: o for o, pair in self.objects.items()}
        obj_map = {x: obj_index[(leg.obj_map[x], cell.components[x])]
                   for x in leg.source.objects}
        mor_index = {}
        I = self.category
        for m in I.morphisms:
            mor_index[(I.dom[m], I.cod[m], self.arrow.mor_map[m])] = m
        mor_map = {f: mor_index[(obj_map[leg.source.dom[f]], obj_map[leg.source.cod[f]],
                                 leg.mor_map[f])]
                   for f in leg.source.morphisms}
        h = Functor(leg.source, I, obj_map, mor_map, name="insfac")
        return h


def inserter(left: Functor, right: Functor) -> InserterResult:
    """Inserter of parallel functors: objects (a, alpha: left a -> right a)."""
    if left.source is not right.source or left.target is not right.target:
        if left.source.objects != right.source.objects or left.target.objects != right.target.objects:
            raise StructureError("inserter requires a parallel pair")
    A, B = left.source, left.target
    obj_data: dict[str, tuple[str, str]] = {}
    for a in A.objects:
        for alpha in B._hom.get((left.obj_map[a], right.obj_map[a]), ()):
            obj_data["(%s,%s)" % (a, alpha)] = (a, alpha)
    mor_data: dict[str, str] = {}
    dom, cod = {}, {}
    by_data: dict[tuple[str, str, str], str] = {}
    counter = 0
    for o1, (a1, al1) in obj_data.items():
        for o2, (a2, al2) in obj_data.items():
            for gamma in A._hom.get((a1, a2), ()):
                if B.composition[(right.mor_map[gamma], al1)] != \
                        B.composition[(al2, left.mor_map[gamma])]:
                    continue
                mid = "i%d(%s)" % (counter, gamma)
                counter += 1
                mor_data[mid] = gamma
                dom[mid], cod[mid] = o1, o2
                by_data[(o1, o2, gamma)] = mid
    identities = {o: by_data[(o, o, A.identities[pair[0]])] for o, pair in obj_data.items()}
    comp = {}
    for m2, g2 in mor_data.items():
        for m1, g1 in mor_data.items():
            if dom[m2] != cod[m1]:
                continue
            comp[(m2, m1)] = by_data[(dom[m1], cod[m2], A.composition[(g2, g1)])]
    cat = FiniteCategory(obj_data.keys(), mor_data.keys(), dom, cod, identities, comp,
                         name="ins(%s,%s)" % (left.name, right.name))
    arrow = Functor(cat, A, {o: pair[0] for o, pair in obj_data.items()}, dict(mor_data),
                    name="i")
    cell = NaturalTransformation(compose_functors(left, arrow), compose_functors(right, arrow),
                                 {o: pair[1] for o, pair in obj_data.items()})
    return InserterResult(cat, arrow, cell, left, right, dict(obj_data))


@dataclass(frozen=True)
class KanExtensionResult:
    """A pointwise Kan extension with its universal 2-cell.

    For direction "right" the 2-cell is extension.s -> tau; for "left" it is
    tau -> extension.s.
    """
    direction: str
    extension: Functor                   # Y -> A
    two_cell: NaturalTransformation
    tau: Functor
    along: Functor
    pointwise: bool
    verified: bool


def _right_kan(tau: Functor, along: Functor, cap: int) -> KanExtensionResult | None:
    X, Y, A = along.source, along.target, tau.target
    point = terminal_category()
    limits: dict[str, LimitCone] = {}
    commas: dict[str, CommaCategory] = {}
    for y in Y.objects:
        comma = comma_category(constant_functor(point, Y, y), along)
        diagram = compose_functors(tau, comma.proj2)
        cone = limit_of_diagram(diagram, cap=cap)
        if cone is None:
            return None
        commas[y] = comma
        limits[y] = cone
    obj_map = {y: limits[y].apex for y in Y.objects}
    mor_map = {}
    for g in Y.morphisms:
        y1, y2 = Y.dom[g], Y.cod[g]
        # Restrict the cone at y1 along precomposition with g and factor it
        # through the limit at y2.
        legs = {}
        for o2, (_, x, k) in commas[y2].objects.items():
            legs[o2] = limits[y1].legs["(*,%s,%s)" % (x, Y.composition[(k, g)])]
        mor_map[g] = limits[y2].factor(obj_map[y1], legs)
    ext = Functor(Y, A, obj_map, mor_map, name="ran_%s(%s)" % (along.name, tau.name))
    ext.validate()
    counit_comps = {}
    for x in X.objects:
        sx = along.obj_map[x]
        counit_comps[x] = limits[sx].legs["(*,%s,%s)" % (x, Y.identities[sx])]
    two_cell = NaturalTransformation(compose_functors(ext, along), tau, counit_comps)
    two_cell.validate()
    verified = _verify_kan_universal(ext, two_cell, tau, along, "right", cap)
    return KanExtensionResult("right", ext, two_cell, tau, along, True, verified)


def kan_forward(ext: Functor, two_cell: NaturalTransformation, along: Functor,
                candidate: NaturalTransformation, direction: str) -> NaturalTransformation:
    """Transpose across the Kan bijection.

    right: (h -> ext) to (h.along -> tau); left: (ext -> h) to (tau -> h.along).
    """
    if direction == "right":
        return vertical_compose(two_cell, whisker_right(candidate, along))
    return vertical_compose(whisker_right(candidate, along), two_cell)


def _verify_kan_universal(ext: Functor, two_cell: NaturalTransformation, tau: Functor,
                          along: Functor, direction: str, cap: int,
                          verify_bound: int = 40_000) -> bool:
    Y, A = along.target, tau.target
    try:
        _check_cap(len(A.objects) ** max(len(Y.objects), 1), min(cap, verify_bound),
                   "kan verification")
        competitors = enumerate_functors(Y, A, cap=min(cap, verify_bound))
    except CapExceeded:
        return False
    for h in competitors:
        if direction == "right":
            lhs = enumerate_nat_trans(h, ext, cap=cap)
            rhs = {nt.key() for nt in enumerate_nat_trans(compose_functors(h, along), tau, cap=cap)}
        else:
            lhs = enumerate_nat_trans(ext, h, cap=cap)
            rhs = {nt.key() for nt in enumerate_nat_trans(tau, compose_functors(h, along), cap=cap)}
        images = {kan_forward(ext, two_cell, along, nt, direction).key() for nt in lhs}
        if len(images) != len(lhs) or images != rhs:
            raise WorkbenchError("kan extension fails its universal property at %r" % h.name)
    return True


def kan_extension(tau: Functor, along: Functor, side: str,
                  cap: int | None = None) -> KanExtensionResult | None:
    """Pointwise Kan extension of tau along ``along`` (shared source), or None.

    The defining bijection hom(h, ran) = hom(h.along, tau) is checked for
    every competitor h when that enumeration fits the verification bound;
    the ``verified`` flag records whether the check ran.
    """
    if tau.source is not along.source and tau.source.objects != along.source.objects:
        raise StructureError("tau and along must share their source")
    cap = resolve_cap(cap)
    if side == "right":
        return _right_kan(tau, along, cap)
    if side == "left":
        dual = _right_kan(opposite_functor(tau), opposite_functor(along), cap)
        if dual is None:
            return None
        ext = Functor(along.target, tau.target, dual.extension.obj_map,
                      dual.extension.mor_map, name="lan_%s(%s)" % (along.name, tau.name))
        unit = NaturalTransformation(tau, compose_functors(ext, along),
                                     dual.two_cell.components)
        ext.validate()
        unit.validate()
        return KanExtensionResult("left", ext, unit, tau, along, True, dual.verified)
    raise StructureError("side must be 'left' or 'right', got %r" % side)


@dataclass(frozen=True)
class PointwiseProbeReport:
    probe: str
    ok: bool
    detail: str


def is_pointwise(ext: KanExtensionResult, probes: list[Functor],
                 cap: int | None = None) -> list[PointwiseProbeReport]:
    """Check comma-stability of the extension along each probe into Y."""
    cap = resolve_cap(cap)
    reports = []
    for probe in probes:
        if ext.direction == "right":
            comma = comma_category(probe, ext.along)
            candidate = compose_functors(ext.extension, probe)
            # restriction 2-cell: ext.probe.proj1 -> tau.proj2
            lhs = whisker_left(ext.extension, comma.filler)
            cell = vertical_compose(whisker_right(ext.two_cell, comma.proj2), lhs)
            ok, detail = _exhibits_kan(candidate, cell, compose_functors(ext.tau, comma.proj2),
                                       comma.proj1, "right", cap)
        else:
            comma = comma_category(ext.along, probe)
            candidate = compose_functors(ext.extension, probe)
            rhs = whisker_left(ext.extension, comma.filler)
            cell = vertical_compose(rhs, whisker_right(ext.two_cell, comma.proj1))
            ok, detail = _exhibits_kan(candidate, cell, compose_functors(ext.tau, comma.proj1),
                                       comma.proj2, "left", cap)
        reports.append(PointwiseProbeReport(probe.name or "probe", ok, detail))
    return reports


def _exhibits_kan(candidate: Functor, cell: NaturalTransformation, tau: Functor,
                  along: Functor, direction: str, cap: int) -> tuple[bool, str]:
    """Does (candidate, cell) satisfy the Kan universal property by enumeration?"""
    Y, A = along.target, tau.target
    try:
        competitors = enumerate_functors(Y, A, cap=cap)
    except CapExceeded as exc:
        return False, str(exc)
    for h in competitors:
        if direction == "right":
            lhs = enumerate_nat_trans(h, candidate, cap=cap)
            rhs = {nt.key() for nt in enumerate_nat_trans(compose_functors(h, along), tau, cap=cap)}
            images = {vertical_compose(cell, whisker_right(nt, along)).key() for nt in lhs}
        else:
            lhs = enumerate_nat_trans(candidate, h, cap=cap)
            rhs = {nt.key() for nt in enumerate_nat_trans(tau, compose_functors(h, along), cap=cap)}
            images = {vertical_compose(whisker_right(nt, along), cell).key() for nt in lhs}
        if len(images) != len(lhs) or images != rhs:
            return False, "universal bijection fails against competitor %s" % (h.obj_map,)
    return True, "all %d competitors factor uniquely" % len(competitors)


@dataclass(frozen=True)
class MonadLawReport:
    left_unit: bool
    right_unit: bool
    associativity: bool

    @property
    def ok(self) -> bool:
        return self.left_unit and self.right_unit and self.associativity


@dataclass(frozen=True)
class DensityMonadResult:
    """Kan extension of tau along itself with its (co)monad structure."""
    kind: str                            # "monad" | "comonad"
    endofunctor: Functor
    unit: NaturalTransformation          # monad: Id -> T; comonad: D -> Id
    multiplication: NaturalTransformation  # monad: TT -> T; comonad: D -> DD
    laws: MonadLawReport
    extension: KanExtensionResult


def density_monad(tau: Functor, side: str = "monad",
                  cap: int | None = None) -> DensityMonadResult | None:
    """Density product (codensity monad) or density coproduct (comonad) of tau."""
    cap = resolve_cap(cap)
    C = tau.target
    if side == "monad":
        ext = kan_extension(tau, tau, "right", cap=cap)
        if ext is None:
            return None
        T = ext.extension
        eps = ext.two_cell                      # T.tau -> tau
        ident = identity_functor(C)
        unit = _unique_transpose(ext, ident, identity_nat(tau), cap)
        TT = compose_functors(T, T)
        mult_target = vertical_compose(eps, whisker_left(T, eps))
        mult = _unique_transpose(ext, TT, mult_target, cap)
        laws = _monad_laws(C, T, unit, mult)
        return DensityMonadResult("monad", T, unit, mult, laws, ext)
    if side == "comonad":
        ext = kan_extension(tau, tau, "left", cap=cap)
        if ext is None:
            return None
        D = ext.extension
        eta = ext.two_cell                      # tau -> D.tau
        ident = identity_functor(C)
        counit = _unique_cotranspose(ext, ident, identity_nat(tau), cap)
        DD = compose_functors(D, D)
        comult_target = vertical_compose(whisker_left(D, eta), eta)
        comult = _unique_cotranspose(ext, DD, comult_target, cap)
        laws = _comonad_laws(C, D, counit, comult)
        return DensityMonadResult("comonad", D, counit, comult, laws, ext)
    raise StructureError("side must be 'monad' or 'comonad', got %r" % side)


def _unique_transpose(ext: KanExtensionResult, h: Functor,
                      wanted: NaturalTransformation, cap: int) -> NaturalTransformation:
    hits = [nt for nt in enumerate_nat_trans(h, ext.extension, cap=cap)
            if kan_forward(ext.extension, ext.two_cell, ext.along, nt, "right").key() == wanted.key()]
    if len(hits) != 1:
        raise WorkbenchError("expected a unique transpose, found %d" % len(hits))
    return hits[0]


def _unique_cotranspose(ext: KanExtensionResult, h: Functor,
                        wanted: NaturalTransformation, cap: int) -> NaturalTransformation:
    hits = [nt for nt in enumerate_nat_trans(ext.extension, h, cap=cap)
            if kan_forward(ext.extension, ext.two_cell, ext.along, nt, "left").key() == wanted.key()]
    if len(hits) != 1:
        raise WorkbenchError("expected a unique cotranspose, found %d" % len(hits))
    return hits[0]


def _monad_laws(C: FiniteCategory, T: Functor, unit: NaturalTransformation,
                mult: NaturalTransformation) -> MonadLawReport:
    left_unit = all(
        C.composition[(mult.components[c], unit.components[T.obj_map[c]])] ==
        C.identities[T.obj_map[c]]
        for c in C.objects)
    right_unit = all(
        C.composition[(mult.components[c], T.mor_map[unit.components[c]])] ==
        C.identities[T.obj_map[c]]
        for c in C.objects)
    assoc = all(
        C.composition[(mult.components[c], mult.components[T.obj_map[c]])] ==
        C.composition[(mult.components[c], T.mor_map[mult.components[c]])]
        for c in C.objects)
    return MonadLawReport(left_unit, right_unit, assoc)


def _comonad_laws(C: FiniteCategory, D: Functor, counit: NaturalTransformation,
                  comult: NaturalTransformation) -> MonadLawReport:
    left = all(
        C.composition[(counit.components[D.obj_map[c]], comult.components[c])] ==
        C.identities[D.obj_map[c]]
        for c in C.objects)
    right = all(
        C.composition[(D.mor_map[counit.components[c]], comult.components[c])] ==
        C.identities[D.obj_map[c]]
        for c in C.objects)
    assoc = all(
        C.composition[(comult.components[D.obj_map[c]], comult.components[c])] ==
        C.composition[(D.mor_map[comult.components[c]], comult.components[c])]
        for c in C.objects)
    return MonadLawReport(left, right, assoc)
