"""Explicit finite categories, functors and natural transformations.

Every category is given by a complete composition table over opaque string
ids.  All enumerations are deterministic: objects and morphisms are kept in
lexicographic order and searches walk them in that order.  Values are
immutable after construction; operations are pure.
"""
from __future__ import annotations

import itertools
import os
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

DEFAULT_CAP = 1_000_000
CAP_ENV_VAR = "WORKBENCH_CAP"


class WorkbenchError(Exception):
    """Base class for all errors raised by this package."""


class StructureError(WorkbenchError):
    """Malformed input: ids do not resolve, shapes do not match."""


class CapExceeded(WorkbenchError):
    """An enumeration would exceed the candidate cap; nothing was truncated."""


def resolve_cap(cap: int | None = None) -> int:
    """Effective enumeration cap: explicit argument, else WORKBENCH_CAP, else default."""
    if cap is not None:
        if cap <= 0:
            raise StructureError("cap must be positive, got %r" % cap)
        return cap
    env = os.environ.get(CAP_ENV_VAR)
    if env:
        try:
            value = int(env)
        except ValueError as exc:
            raise StructureError("%s must be an integer, got %r" % (CAP_ENV_VAR, env)) from exc
        if value <= 0:
            raise StructureError("%s must be positive, got %r" % (CAP_ENV_VAR, env))
        return value
    return DEFAULT_CAP


def _check_cap(count: int, cap: int, what: str) -> None:
    if count > cap:
        raise CapExceeded("%s needs %d candidates, cap is %d" % (what, count, cap))


@dataclass(frozen=True)
class Violation:
    law: str
    offenders: tuple[str, ...]
    detail: str

    def __str__(self) -> str:
        return "%s [%s]: %s" % (self.law, ", ".join(self.offenders), self.detail)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(str(v) for v in self.violations)


class FiniteCategory:
    """A finite category: objects, morphisms, identities and a total
    composition table.

    The constructor normalises order and builds hom-set indexes but does not
    check the category laws; see :func:`validate_category`.  The composition
    mapping may be any Mapping from composable pairs ``(g, f)`` to the
    composite id (large generated categories use lazy mappings).
    """

    __slots__ = (
        "objects", "morphisms", "dom", "cod", "identities", "composition",
        "name", "_hom", "_identity_ids", "_is_thin",
    )

    def __init__(
        self,
        objects: Iterable[str],
        morphisms: Iterable[str],
        dom: Mapping[str, str],
        cod: Mapping[str, str],
        identities: Mapping[str, str],
        composition: Mapping[tuple[str, str], str],
        name: str = "",
    ):
        self.objects: tuple[str, ...] = tuple(sorted(objects))
        self.morphisms: tuple[str, ...] = tuple(sorted(morphisms))
        if len(set(self.objects)) != len(self.objects):
            raise StructureError("duplicate object ids")
        if len(set(self.morphisms)) != len(self.morphisms):
            raise StructureError("duplicate morphism ids")
        self.dom = dict(dom)
        self.cod = dict(cod)
        self.identities = dict(identities)
        self.composition = composition if not isinstance(composition, dict) else dict(composition)
        self.name = name
        objset = set(self.objects)
        hom: dict[tuple[str, str], list[str]] = {}
        for f in self.morphisms:
            a, b = self.dom.get(f), self.cod.get(f)
            if a in objset and b in objset:
                hom.setdefault((a, b), []).append(f)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._identity_ids = frozenset(self.identities.values())
        self._is_thin = all(len(v) <= 1 for v in self._hom.values())

    def __repr__(self) -> str:
        label = self.name or "category"
        return "<%s: %d objects, %d morphisms>" % (label, len(self.objects), len(self.morphisms))

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        if a not in self.dom.values() and a not in self.objects:
            raise StructureError("unknown object %r" % a)
        if b not in self.objects:
            raise StructureError("unknown object %r" % b)
        return self._hom.get((a, b), ())

    def id_of(self, x: str) -> str:
        try:
            return self.identities[x]
        except KeyError as exc:
            raise StructureError("unknown object %r" % x) from exc

    def is_identity(self, f: str) -> bool:
        return f in self._identity_ids

    def compose(self, g: str, f: str) -> str:
        """Composite g after f; raises if the pair is not composable."""
        try:
            return self.composition[(g, f)]
        except KeyError as exc:
            raise StructureError("pair (%s, %s) is not composable" % (g, f)) from exc

    @property
    def is_thin(self) -> bool:
        return self._is_thin

    def endpoints(self, f: str) -> tuple[str, str]:
        return self.dom[f], self.cod[f]

    def same_tables(self, other: "FiniteCategory") -> bool:
        """Exact equality of all tables (not isomorphism)."""
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.dom == other.dom
            and self.cod == other.cod
            and self.identities == other.identities
            and dict(self.composition.items()) == dict(other.composition.items())
        )


def validate_category(cat: FiniteCategory) -> ValidationReport:
    """Scan every category law; structural problems raise StructureError."""
    objset = set(cat.objects)
    morset = set(cat.morphisms)
    for f in cat.morphisms:
        if f not in cat.dom or f not in cat.cod:
            raise StructureError("morphism %r has no dom/cod entry" % f)
        if cat.dom[f] not in objset or cat.cod[f] not in objset:
            raise StructureError("morphism %r has unresolved endpoints" % f)
    for x in cat.objects:
        if x not in cat.identities:
            raise StructureError("object %r has no identity entry" % x)
        if cat.identities[x] not in morset:
            raise StructureError("identity of %r is not a listed morphism" % x)
    for (g, f), h in cat.composition.items():
        if g not in morset or f not in morset or h not in morset:
            raise StructureError("composition entry (%s, %s) -> %s has unresolved ids" % (g, f, h))

    violations: list[Violation] = []

    def bad(law: str, offenders: Iterable[str], detail: str) -> None:
        violations.append(Violation(law, tuple(offenders), detail))

    for x in cat.objects:
        i = cat.identities[x]
        if cat.dom[i] != x or cat.cod[i] != x:
            bad("identity-endpoints", (i,), "identity of %s has dom/cod (%s, %s)" % (x, cat.dom[i], cat.cod[i]))

    composable = set()
    for g in cat.morphisms:
        for f in cat.morphisms:
            if cat.dom[g] == cat.cod[f]:
                composable.add((g, f))
    table_keys = set(cat.composition)
    for pair in sorted(composable - table_keys):
        bad("totality", pair, "composable pair has no composite")
    for pair in sorted(table_keys - composable):
        bad("totality", pair, "table entry for a non-composable pair")

    for (g, f) in sorted(composable & table_keys):
        h = cat.composition[(g, f)]
        if cat.dom[h] != cat.dom[f] or cat.cod[h] != cat.cod[g]:
            bad("composite-endpoints", (g, f, h), "composite has dom/cod (%s, %s), expected (%s, %s)"
                % (cat.dom[h], cat.cod[h], cat.dom[f], cat.cod[g]))

    for f in cat.morphisms:
        left = (cat.identities[cat.cod[f]], f)
        right = (f, cat.identities[cat.dom[f]])
        if left in table_keys and cat.composition[left] != f:
            bad("left-identity", (f,), "id_%s . %s = %s" % (cat.cod[f], f, cat.composition[left]))
        if right in table_keys and cat.composition[right] != f:
            bad("right-identity", (f,), "%s . id_%s = %s" % (f, cat.dom[f], cat.composition[right]))

    # Associativity over all composable triples; skipped pairs were already
    # reported as totality violations.
    for (g, f) in sorted(composable & table_keys):
        gf = cat.composition[(g, f)]
        for h in cat.morphisms:
            if cat.dom[h] != cat.cod[g]:
                continue
            if (h, g) not in table_keys or (h, gf) not in table_keys:
                continue
            hg = cat.composition[(h, g)]
            if (hg, f) not in table_keys:
                continue
            if cat.composition[(h, gf)] != cat.composition[(hg, f)]:
                bad("associativity", (h, g, f), "h.(g.f) = %s but (h.g).f = %s"
                    % (cat.composition[(h, gf)], cat.composition[(hg, f)]))
    return ValidationReport(not violations, tuple(violations))


def hom_set(cat: FiniteCategory, a: str, b: str) -> list[str]:
    """Morphisms a -> b in stable (lexicographic) order."""
    if a not in cat.objects:
        raise StructureError("unknown object %r" % a)
    if b not in cat.objects:
        raise StructureError("unknown object %r" % b)
    return list(cat._hom.get((a, b), ()))


def build_category(
    objects: Iterable[str],
    arrows: Mapping[str, tuple[str, str]],
    composites: Mapping[tuple[str, str], str] | None = None,
    name: str = "",
) -> FiniteCategory:
    """Build and validate a category from its non-identity data.

    ``arrows`` maps each non-identity morphism to (dom, cod); identities are
    created as ``id_<object>`` and identity composites are filled in.
    ``composites`` must name g.f for every remaining composable pair.
    """
    objects = sorted(objects)
    arrows = dict(arrows)
    for x in objects:
        if "id_%s" % x in arrows:
            raise StructureError("arrow name id_%s is reserved" % x)
    identities = {x: "id_%s" % x for x in objects}
    dom = {f: a for f, (a, b) in arrows.items()}
    cod = {f: b for f, (a, b) in arrows.items()}
    for x, i in identities.items():
        dom[i] = cod[i] = x
    morphisms = list(arrows) + list(identities.values())
    composition: dict[tuple[str, str], str] = {}
    for f in morphisms:
        composition[(identities[cod[f]], f)] = f
        composition[(f, identities[dom[f]])] = f
    for pair, h in (composites or {}).items():
        g, f = pair
        if g in identities.values() or f in identities.values():
            if composition.get(pair) != h:
                raise StructureError("identity composite (%s, %s) must equal the other factor" % pair)
        composition[pair] = h
    cat = FiniteCategory(objects, morphisms, dom, cod, identities, composition, name=name)
    report = validate_category(cat)
    if not report:
        raise StructureError("category %r violates laws: %s" % (name or "<anonymous>", report))
    return cat


def discrete_category(elements: Iterable[str], name: str = "") -> FiniteCategory:
    elements = sorted(elements)
    return build_category(elements, {}, {}, name=name or "discrete(%d)" % len(elements))


def terminal_category() -> FiniteCategory:
    return build_category(["*"], {}, {}, name="1")


def empty_category() -> FiniteCategory:
    return FiniteCategory((), (), {}, {}, {}, {}, name="0")


class _FlippedComposition(Mapping):
    """Lazy composition table of an opposite category."""

    __slots__ = ("_base",)

    def __init__(self, base: Mapping):
        self._base = base

    def __getitem__(self, key: tuple[str, str]) -> str:
        g, f = key
        return self._base[(f, g)]

    def __contains__(self, key: object) -> bool:
        try:
            g, f = key  # type: ignore[misc]
        except (TypeError, ValueError):
            return False
        return (f, g) in self._base

    def __iter__(self) -> Iterator[tuple[str, str]]:
        return ((f, g) for (g, f) in self._base)

    def __len__(self) -> int:
        return len(self._base)


def opposite(cat: FiniteCategory) -> FiniteCategory:
    if isinstance(cat.composition, dict):
        comp: Mapping = {(f, g): h for (g, f), h in cat.composition.items()}
    else:
        comp = _FlippedComposition(cat.composition)
    return FiniteCategory(
        cat.objects, cat.morphisms, dict(cat.cod), dict(cat.dom),
        dict(cat.identities), comp,
        name="op(%s)" % cat.name if cat.name else "",
    )


def _pair_id(u: str, v: str) -> str:
    return "(%s,%s)" % (u, v)


class _ProductComposition(Mapping):
    """Lazy composition table of a product category."""

    __slots__ = ("_left", "_right", "_components", "_ids")

    def __init__(self, left: FiniteCategory, right: FiniteCategory,
                 components: Mapping[str, tuple[str, str]], ids: Mapping[tuple[str, str], str]):
        self._left = left
        self._right = right
        self._components = components
        self._ids = ids

    def __getitem__(self, key: tuple[str, str]) -> str:
        g, f = key
        g1, g2 = self._components[g]
        f1, f2 = self._components[f]
        h1 = self._left.composition[(g1, f1)]
        h2 = self._right.composition[(g2, f2)]
        return self._ids[(h1, h2)]

    def __contains__(self, key: object) -> bool:
        try:
            g, f = key  # type: ignore[misc]
            g1, g2 = self._components[g]
            f1, f2 = self._components[f]
        except (KeyError, TypeError, ValueError):
            return False
        return (g1, f1) in self._left.composition and (g2, f2) in self._right.composition

    def __iter__(self) -> Iterator[tuple[str, str]]:
        for (g1, f1) in self._left.composition:
            for (g2, f2) in self._right.composition:
                yield (self._ids[(g1, g2)], self._ids[(f1, f2)])

    def __len__(self) -> int:
        return len(self._left.composition) * len(self._right.composition)


@dataclass(frozen=True)
class ProductCategory:
    """A product category together with its projection/pairing data."""
    category: FiniteCategory
    object_pairs: Mapping[str, tuple[str, str]]
    morphism_pairs: Mapping[str, tuple[str, str]]
    object_ids: Mapping[tuple[str, str], str]
    morphism_ids: Mapping[tuple[str, str], str]

    def pair_object(self, a: str, b: str) -> str:
        return self.object_ids[(a, b)]

    def pair_morphism(self, u: str, v: str) -> str:
        return self.morphism_ids[(u, v)]


def product_category(left: FiniteCategory, right: FiniteCategory) -> ProductCategory:
    obj_ids = {(a, b): _pair_id(a, b) for a in left.objects for b in right.objects}
    mor_ids = {(u, v): _pair_id(u, v) for u in left.morphisms for v in right.morphisms}
    obj_pairs = {i: p for p, i in obj_ids.items()}
    mor_pairs = {i: p for p, i in mor_ids.items()}
    dom = {i: obj_ids[(left.dom[u], right.dom[v])] for i, (u, v) in mor_pairs.items()}
    cod = {i: obj_ids[(left.cod[u], right.cod[v])] for i, (u, v) in mor_pairs.items()}
    identities = {obj_ids[(a, b)]: mor_ids[(left.identities[a], right.identities[b])]
                  for (a, b) in obj_ids}
    comp = _ProductComposition(left, right, mor_pairs, mor_ids)
    cat = FiniteCategory(obj_ids.values(), mor_ids.values(), dom, cod, identities, comp,
                         name="(%s)x(%s)" % (left.name, right.name))
    return ProductCategory(cat, obj_pairs, mor_pairs, obj_ids, mor_ids)


def diagonal_functor(cat: FiniteCategory) -> tuple["ProductCategory", "Functor"]:
    """The diagonal A -> A x A together with the product it lands in."""
    prod = product_category(cat, cat)
    delta = Functor(cat, prod.category,
                    {x: prod.object_ids[(x, x)] for x in cat.objects},
                    {f: prod.morphism_ids[(f, f)] for f in cat.morphisms},
                    name="diag")
    return prod, delta


def bang_functor(cat: FiniteCategory, point: FiniteCategory) -> "Functor":
    """The unique functor A -> 1."""
    star = point.objects[0]
    return Functor(cat, point, {x: star for x in cat.objects},
                   {f: point.identities[star] for f in cat.morphisms}, name="bang")


def pair_functors(left: "Functor", right: "Functor", prod: "ProductCategory") -> "Functor":
    """The tupling <left, right> : X -> A x B of two functors with common source."""
    return Functor(left.source, prod.category,
                   {x: prod.object_ids[(left.obj_map[x], right.obj_map[x])]
                    for x in left.source.objects},
                   {f: prod.morphism_ids[(left.mor_map[f], right.mor_map[f])]
                    for f in left.source.morphisms},
                   name="<%s,%s>" % (left.name, right.name))


def projection_functors(prod: "ProductCategory", left: FiniteCategory,
                        right: FiniteCategory) -> tuple["Functor", "Functor"]:
    p1 = Functor(prod.category, left,
                 {o: pair[0] for o, pair in prod.object_pairs.items()},
                 {m: pair[0] for m, pair in prod.morphism_pairs.items()}, name="pi1")
    p2 = Functor(prod.category, right,
                 {o: pair[1] for o, pair in prod.object_pairs.items()},
                 {m: pair[1] for m, pair in prod.morphism_pairs.items()}, name="pi2")
    return p1, p2


def coproduct_category(parts: list[FiniteCategory], name: str = "") -> FiniteCategory:
    """Disjoint union; ids are tagged with the component index."""
    objects, morphisms = [], []
    dom, cod, identities = {}, {}, {}
    comp: dict[tuple[str, str], str] = {}
    for i, part in enumerate(parts):
        tag = lambda s, i=i: "%d@%s" % (i, s)
        objects.extend(tag(x) for x in part.objects)
        morphisms.extend(tag(f) for f in part.morphisms)
        for f in part.morphisms:
            dom[tag(f)] = tag(part.dom[f])
            cod[tag(f)] = tag(part.cod[f])
        for x in part.objects:
            identities[tag(x)] = tag(part.identities[x])
        for (g, f), h in part.composition.items():
            comp[(tag(g), tag(f))] = tag(h)
    return FiniteCategory(objects, morphisms, dom, cod, identities, comp,
                          name=name or "coproduct(%d)" % len(parts))


class Functor:
    """A functor between finite categories, given by its two tables."""

    __slots__ = ("source", "target", "obj_map", "mor_map", "name")

    def __init__(self, source: FiniteCategory, target: FiniteCategory,
                 obj_map: Mapping[str, str], mor_map: Mapping[str, str], name: str = ""):
        self.source = source
        self.target = target
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)
        self.name = name

    def ob(self, x: str) -> str:
        return self.obj_map[x]

    def mor(self, f: str) -> str:
        return self.mor_map[f]

    def __repr__(self) -> str:
        return "<functor %s>" % (self.name or id(self))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Functor):
            return NotImplemented
        return self.obj_map == other.obj_map and self.mor_map == other.mor_map

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.obj_map.items())), tuple(sorted(self.mor_map.items()))))

    def validate(self) -> None:
        """Raise StructureError unless this is a functor."""
        for x in self.source.objects:
            if self.obj_map.get(x) not in self.target.objects:
                raise StructureError("object %r has no valid image" % x)
        for f in self.source.morphisms:
            ff = self.mor_map.get(f)
            if ff not in self.target.morphisms:
                raise StructureError("morphism %r has no valid image" % f)
            if self.target.dom[ff] != self.obj_map[self.source.dom[f]] \
                    or self.target.cod[ff] != self.obj_map[self.source.cod[f]]:
                raise StructureError("image of %r has wrong endpoints" % f)
        for x in self.source.objects:
            if self.mor_map[self.source.identities[x]] != self.target.identities[self.obj_map[x]]:
                raise StructureError("identity of %r is not preserved" % x)
        for (g, f), h in self.source.composition.items():
            if self.target.composition[(self.mor_map[g], self.mor_map[f])] != self.mor_map[h]:
                raise StructureError("composite (%s, %s) is not preserved" % (g, f))


def identity_functor(cat: FiniteCategory) -> Functor:
    return Functor(cat, cat, {x: x for x in cat.objects}, {f: f for f in cat.morphisms},
                   name="id")


def constant_functor(source: FiniteCategory, target: FiniteCategory, obj: str) -> Functor:
    i = target.id_of(obj)
    return Functor(source, target, {x: obj for x in source.objects},
                   {f: i for f in source.morphisms}, name="const(%s)" % obj)


def compose_functors(outer: Functor, inner: Functor) -> Functor:
    if outer.source is not inner.target and outer.source.objects != inner.target.objects:
        raise StructureError("functors are not composable")
    return Functor(
        inner.source, outer.target,
        {x: outer.obj_map[inner.obj_map[x]] for x in inner.source.objects},
        {f: outer.mor_map[inner.mor_map[f]] for f in inner.source.morphisms},
        name="%s.%s" % (outer.name, inner.name),
    )


def opposite_functor(f: Functor) -> Functor:
    return Functor(opposite(f.source), opposite(f.target), f.obj_map, f.mor_map,
                   name="op(%s)" % f.name)


class NaturalTransformation:
    """A natural transformation between parallel functors."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source: Functor, target: Functor, components: Mapping[str, str]):
        self.source = source
        self.target = target
        self.components = dict(components)

    def at(self, x: str) -> str:
        return self.components[x]

    def key(self) -> tuple[tuple[str, str], ...]:
        return tuple(sorted(self.components.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NaturalTransformation):
            return NotImplemented
        return (self.components == other.components
                and self.source == other.source and self.target == other.target)

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return "<nt %s>" % (dict(sorted(self.components.items())),)

    def validate(self) -> None:
        F, G = self.source, self.target
        cat = F.target
        for x in F.source.objects:
            c = self.components.get(x)
            if c not in cat.morphisms:
                raise StructureError("component at %r missing" % x)
            if cat.dom[c] != F.obj_map[x] or cat.cod[c] != G.obj_map[x]:
                raise StructureError("component at %r has wrong endpoints" % x)
        for f in F.source.morphisms:
            x, y = F.source.dom[f], F.source.cod[f]
            lhs = cat.composition[(G.mor_map[f], self.components[x])]
            rhs = cat.composition[(self.components[y], F.mor_map[f])]
            if lhs != rhs:
                raise StructureError("naturality fails at %r" % f)


def identity_nat(functor: Functor) -> NaturalTransformation:
    cat = functor.target
    return NaturalTransformation(functor, functor,
                                 {x: cat.identities[functor.obj_map[x]]
                                  for x in functor.source.objects})


def vertical_compose(later: NaturalTransformation, first: NaturalTransformation) -> NaturalTransformation:
    cat = first.source.target
    comps = {x: cat.composition[(later.components[x], first.components[x])]
             for x in first.components}
    return NaturalTransformation(first.source, later.target, comps)


def whisker_left(outer: Functor, nt: NaturalTransformation) -> NaturalTransformation:
    """outer . nt : outer.F -> outer.G for nt : F -> G into outer's source."""
    return NaturalTransformation(
        compose_functors(outer, nt.source), compose_functors(outer, nt.target),
        {x: outer.mor_map[c] for x, c in nt.components.items()},
    )


def whisker_right(nt: NaturalTransformation, inner: Functor) -> NaturalTransformation:
    """nt . inner : F.inner -> G.inner for inner into nt's source category."""
    return NaturalTransformation(
        compose_functors(nt.source, inner), compose_functors(nt.target, inner),
        {x: nt.components[inner.obj_map[x]] for x in inner.source.objects},
    )


def opposite_nat(nt: NaturalTransformation) -> NaturalTransformation:
    """The same components read as target -> source between opposite functors."""
    return NaturalTransformation(opposite_functor(nt.target), opposite_functor(nt.source),
                                 nt.components)


def enumerate_functors(source: FiniteCategory, target: FiniteCategory,
                       cap: int | None = None) -> list[Functor]:
    """All functors source -> target, lexicographic in (object map, morphism map)."""
    cap = resolve_cap(cap)
    objs = source.objects
    if len(target.objects) == 0 and len(objs) > 0:
        return []
    obj_map_count = len(target.objects) ** len(objs) if objs else 1
    _check_cap(obj_map_count, cap, "functor enumeration over %d object maps" % obj_map_count)
    nonids = [f for f in source.morphisms if not source.is_identity(f)]
    constraints = [(g, f, h) for (g, f), h in source.composition.items()
                   if not (source.is_identity(g) or source.is_identity(f))]
    results: list[Functor] = []
    candidates_seen = 0
    for images in itertools.product(target.objects, repeat=len(objs)):
        omap = dict(zip(objs, images))
        choices = [target._hom.get((omap[source.dom[f]], omap[source.cod[f]]), ()) for f in nonids]
        size = 1
        for c in choices:
            size *= len(c)
        candidates_seen += size
        _check_cap(candidates_seen, cap, "functor enumeration")
        if size == 0:
            continue
        mmap_base = {source.identities[x]: target.identities[omap[x]] for x in objs}

        def backtrack(pos: int, mmap: dict[str, str]) -> None:
            if pos == len(nonids):
                results.append(Functor(source, target, omap, dict(mmap)))
                return
            f = nonids[pos]
            for image in choices[pos]:
                mmap[f] = image
                ok = True
                for (g, ff, h) in constraints:
                    if g in mmap and ff in mmap and h in mmap:
                        if target.composition[(mmap[g], mmap[ff])] != mmap[h]:
                            ok = False
                            break
                if ok:
                    backtrack(pos + 1, mmap)
                del mmap[f]

        backtrack(0, dict(mmap_base))
    return results


def enumerate_nat_trans(source: Functor, target: Functor,
                        cap: int | None = None) -> list[NaturalTransformation]:
    """All natural transformations source -> target, deterministic order."""
    if source.source is not target.source or source.target is not target.target:
        if source.source.objects != target.source.objects or source.target.objects != target.target.objects:
            raise StructureError("functors are not parallel")
    cap = resolve_cap(cap)
    cat = source.target
    objs = source.source.objects
    choices = [cat._hom.get((source.obj_map[x], target.obj_map[x]), ()) for x in objs]
    size = 1
    for c in choices:
        size *= len(c)
    _check_cap(size, cap, "natural transformation enumeration")
    if size == 0:
        return []
    arrows = list(source.source.morphisms)
    results: list[NaturalTransformation] = []

    def backtrack(pos: int, comps: dict[str, str]) -> None:
        if pos == len(objs):
            results.append(NaturalTransformation(source, target, dict(comps)))
            return
        x = objs[pos]
        for c in choices[pos]:
            comps[x] = c
            ok = True
            for f in arrows:
                a, b = source.source.dom[f], source.source.cod[f]
                if a in comps and b in comps:
                    if cat.composition[(target.mor_map[f], comps[a])] != \
                            cat.composition[(comps[b], source.mor_map[f])]:
                        ok = False
                        break
            if ok:
                backtrack(pos + 1, comps)
            del comps[x]

    backtrack(0, {})
    return results


@dataclass(frozen=True)
class FunctorCategory:
    """The category of functors X -> C with natural transformations."""
    category: FiniteCategory
    functors: Mapping[str, Functor]          # object id -> functor
    transformations: Mapping[str, NaturalTransformation]  # morphism id -> nt
    functor_ids: Mapping[Functor, str]

    def object_of(self, functor: Functor) -> str:
        return self.functor_ids[functor]


def functor_category(source: FiniteCategory, target: FiniteCategory,
                     cap: int | None = None) -> FunctorCategory:
    cap = resolve_cap(cap)
    functors = enumerate_functors(source, target, cap=cap)
    obj_ids = {}
    for i, F in enumerate(functors):
        images = ",".join(F.obj_map[x] for x in source.objects)
        obj_ids[F] = "F%d[%s]" % (i, images)
    nts: dict[str, NaturalTransformation] = {}
    nt_ids: dict[tuple[str, str, tuple], str] = {}
    dom, cod, identities = {}, {}, {}
    counter = 0
    total = 0
    for F in functors:
        for G in functors:
            for nt in enumerate_nat_trans(F, G, cap=cap):
                total += 1
                _check_cap(total, cap, "functor category morphisms")
                mid = "t%d[%s]" % (counter, ",".join(nt.components[x] for x in source.objects))
                counter += 1
                nts[mid] = nt
                nt_ids[(obj_ids[F], obj_ids[G], nt.key())] = mid
                dom[mid] = obj_ids[F]
                cod[mid] = obj_ids[G]
                if F is G and all(target.is_identity(c) for c in nt.components.values()):
                    identities[obj_ids[F]] = mid
    comp: dict[tuple[str, str], str] = {}
    for m2, nt2 in nts.items():
        for m1, nt1 in nts.items():
            if dom[m2] != cod[m1]:
                continue
            composite = vertical_compose(nt2, nt1)
            comp[(m2, m1)] = nt_ids[(dom[m1], cod[m2], composite.key())]
    cat = FiniteCategory(obj_ids.values(), nts.keys(), dom, cod, identities, comp,
                         name="[%s,%s]" % (source.name, target.name))
    functors_by_id = {i: F for F, i in obj_ids.items()}
    return FunctorCategory(cat, functors_by_id, nts, obj_ids)


def find_isomorphism(left: FiniteCategory, right: FiniteCategory) -> tuple[dict[str, str], dict[str, str]] | None:
    """Exact isomorphism search by backtracking; None if there is none."""
    if len(left.objects) != len(right.objects) or len(left.morphisms) != len(right.morphisms):
        return None

    def profile(cat: FiniteCategory, x: str) -> tuple:
        row = sorted((len(cat._hom.get((x, y), ())), len(cat._hom.get((y, x), ())))
                     for y in cat.objects)
        return tuple(row)

    left_profiles = {x: profile(left, x) for x in left.objects}
    right_profiles = {y: profile(right, y) for y in right.objects}
    if sorted(left_profiles.values()) != sorted(right_profiles.values()):
        return None

    right_unused = set(right.objects)

    def extend_morphisms(obj_bij: dict[str, str]) -> dict[str, str] | None:
        hom_pairs = []
        for (a, b), fs in left._hom.items():
            gs = right._hom.get((obj_bij[a], obj_bij[b]), ())
            if len(fs) != len(gs):
                return None
            hom_pairs.append((fs, gs))
        mor_bij: dict[str, str] = {}

        def fits(f: str, g: str) -> bool:
            if left.is_identity(f) != right.is_identity(g):
                return False
            for f2, g2 in mor_bij.items():
                for (p, q), (pp, qq) in (((f, f2), (g, g2)), ((f2, f), (g2, g))):
                    if (p, q) in left.composition:
                        h = left.composition[(p, q)]
                        if h in mor_bij and mor_bij[h] != right.composition[(pp, qq)]:
                            return False
            return True

        def assign(idx: int) -> bool:
            if idx == len(hom_pairs):
                for (g, f), h in left.composition.items():
                    if right.composition[(mor_bij[g], mor_bij[f])] != mor_bij[h]:
                        return False
                return True
            fs, gs = hom_pairs[idx]
            for perm in itertools.permutations(gs):
                chosen = list(zip(fs, perm))
                if all(fits(f, g) for f, g in chosen):
                    for f, g in chosen:
                        mor_bij[f] = g
                    if assign(idx + 1):
                        return True
                    for f, _ in chosen:
                        del mor_bij[f]
            return False

        if assign(0):
            return dict(mor_bij)
        return None

    obj_order = sorted(left.objects)

    def assign_objects(idx: int, obj_bij: dict[str, str]) -> tuple[dict[str, str], dict[str, str]] | None:
        if idx == len(obj_order):
            mor_bij = extend_morphisms(obj_bij)
            if mor_bij is not None:
                return dict(obj_bij), mor_bij
            return None
        x = obj_order[idx]
        for y in sorted(right_unused):
            if right_profiles[y] != left_profiles[x]:
                continue
            obj_bij[x] = y
            right_unused.discard(y)
            found = assign_objects(idx + 1, obj_bij)
            if found:
                return found
            right_unused.add(y)
            del obj_bij[x]
        return None

    return assign_objects(0, {})


def are_isomorphic(left: FiniteCategory, right: FiniteCategory) -> bool:
    return find_isomorphism(left, right) is not None


@dataclass(frozen=True)
class FiniteGraph:
    """A finite undirected graph; edges are 1- or 2-element vertex sets."""
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def __post_init__(self) -> None:
        vset = set(self.vertices)
        for e in self.edges:
            if not e or len(e) > 2 or not e <= vset:
                raise StructureError("edge %r does not fit the vertex set" % (sorted(e),))


def build_graph(vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> FiniteGraph:
    edge_set = set()
    for (u, v) in edges:
        e = frozenset((u, v))
        if e in edge_set:
            raise StructureError("duplicate edge %r" % (sorted(e),))
        edge_set.add(e)
    return FiniteGraph(tuple(sorted(vertices)), frozenset(edge_set))


def graph_homomorphisms(source: FiniteGraph, target: FiniteGraph,
                        cap: int | None = None) -> list[dict[str, str]]:
    """All vertex maps sending edges to edges, deterministic order."""
    cap = resolve_cap(cap)
    count = len(target.vertices) ** len(source.vertices) if source.vertices else 1
    _check_cap(count, cap, "graph homomorphism enumeration")
    homs = []
    for images in itertools.product(target.vertices, repeat=len(source.vertices)):
        vmap = dict(zip(source.vertices, images))
        if all(frozenset(vmap[v] for v in e) in target.edges for e in source.edges):
            homs.append(vmap)
    return homs
