"""Discreteness instances and internal lambda-calculus connective checkers.

Internal connectives are adjoints to structural maps (! for terminal values,
the diagonal for products, a twist map on A x |A| for exponents), so every
checker returns an adjunction witness and downstream rules are executed
through those witnesses.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import (
    FiniteCategory, FiniteGraph, Functor, NaturalTransformation, StructureError,
    WorkbenchError, bang_functor, build_graph, compose_functors, constant_functor,
    diagonal_functor, discrete_category, enumerate_functors, enumerate_nat_trans,
    graph_homomorphisms, identity_functor, pair_functors, product_category,
    projection_functors, resolve_cap, terminal_category, ProductCategory,
)
from .kan import (
    Adjunction, UniversalArrowFailure, adjoint_or_failure, colimit_of_diagram,
    find_adjoint, limit_of_diagram,
)


# ---------------------------------------------------------------------------
# discreteness


def discrete_inclusion(cat: FiniteCategory) -> tuple[FiniteCategory, Functor]:
    """The discrete category on ob(cat) with its identity-on-objects counit."""
    disc = discrete_category(cat.objects, name="|%s|" % cat.name)
    eps = Functor(disc, cat, {x: x for x in disc.objects},
                  {disc.identities[x]: cat.identities[x] for x in disc.objects},
                  name="eps")
    return disc, eps


@dataclass(frozen=True)
class HomBijectionReport:
    lhs: int          # maps in the ambient world
    rhs: int          # maps into the coreflection
    bijective: bool


class DiscretenessInstance:
    """A coreflective inclusion of discrete objects into an ambient world.

    ``kind`` is "categories" (discrete = only identity arrows, coreflector =
    underlying object set) or "graphs" (discrete = edgeless, coreflector
    drops edges).
    """

    def __init__(self, kind: str):
        if kind not in ("categories", "graphs"):
            raise StructureError("unknown discreteness kind %r" % kind)
        self.kind = kind

    # F: the inclusion of a finite set as a discrete object
    def include(self, elements) -> FiniteCategory | FiniteGraph:
        if self.kind == "categories":
            return discrete_category(elements)
        return build_graph(elements, [])

    # |-|: the coreflector
    def underlying(self, thing) -> tuple[str, ...]:
        if self.kind == "categories":
            return thing.objects
        return thing.vertices

    def counit(self, thing):
        """eps: F|W| -> W; identity on the underlying elements."""
        if self.kind == "categories":
            return discrete_inclusion(thing)[1]
        return {v: v for v in thing.vertices}

    def unit_is_isomorphism(self, elements) -> bool:
        """eta at a discrete object: carrier of |F D| equals D."""
        return tuple(sorted(elements)) == self.underlying(self.include(elements))

    def hom_bijection(self, elements, thing, cap: int | None = None) -> HomBijectionReport:
        """hom(F D, W) = hom(D, |W|), checked by full enumeration."""
        cap = resolve_cap(cap)
        carrier = self.underlying(thing)
        rhs = len(carrier) ** len(tuple(elements)) if tuple(elements) else 1
        if self.kind == "categories":
            disc = self.include(elements)
            functors = enumerate_functors(disc, thing, cap=cap)
            images = {tuple(F.obj_map[x] for x in disc.objects) for F in functors}
            lhs = len(functors)
        else:
            disc = self.include(elements)
            homs = graph_homomorphisms(disc, thing, cap=cap)
            images = {tuple(h[v] for v in disc.vertices) for h in homs}
            lhs = len(homs)
        return HomBijectionReport(lhs, rhs, lhs == rhs and len(images) == lhs)

    def two_fully_faithful(self, left_elements, right_elements, cap: int | None = None) -> bool:
        """Between discrete objects every parallel pair admits only identities."""
        if self.kind == "graphs":
            return True  # graphs form a 1-category; nothing to check
        src = self.include(left_elements)
        tgt = self.include(right_elements)
        for F in enumerate_functors(src, tgt, cap=cap):
            for G in enumerate_functors(src, tgt, cap=cap):
                nts = enumerate_nat_trans(F, G, cap=cap)
                if F == G:
                    if len(nts) != 1:
                        return False
                elif nts:
                    return False
        return True


def discreteness_instance(kind: str) -> DiscretenessInstance:
    return DiscretenessInstance(kind)


def canonical_discreteness_check(cat: FiniteCategory, probes: list[FiniteCategory] | None = None,
                                 cap: int | None = None) -> bool:
    """Is every hom-category into ``cat`` discrete?  Probes default to 1 and
    the walking arrow; the result is cross-checked against the direct
    "only identity morphisms" criterion."""
    cap = resolve_cap(cap)
    if probes is None:
        from .fixtures import walking_arrow
        probes = [terminal_category(), walking_arrow()]
    verdict = True
    for probe in probes:
        functors = enumerate_functors(probe, cat, cap=cap)
        for F in functors:
            for G in functors:
                nts = enumerate_nat_trans(F, G, cap=cap)
                nonidentity = [nt for nt in nts
                               if not all(cat.is_identity(c) for c in nt.components.values())]
                if nonidentity:
                    verdict = False
                    break
            if not verdict:
                break
        if not verdict:
            break
    direct = all(cat.is_identity(f) for f in cat.morphisms)
    if verdict != direct:
        raise WorkbenchError("probe verdict %r disagrees with identity scan %r" % (verdict, direct))
    return verdict


# ---------------------------------------------------------------------------
# internal (co)cartesian connectives


@dataclass(frozen=True)
class ConnectiveEntry:
    name: str
    exists: bool
    witness: Adjunction | None
    certificate: str

    def __str__(self) -> str:
        mark = "yes" if self.exists else "no"
        return "%s: %s (%s)" % (self.name, mark, self.certificate)


@dataclass(frozen=True)
class ConnectiveReport:
    category: str
    entries: dict[str, ConnectiveEntry]

    def __getitem__(self, name: str) -> ConnectiveEntry:
        return self.entries[name]

    @property
    def ok(self) -> bool:
        return all(e.exists for e in self.entries.values())


@dataclass(frozen=True)
class InternalConnectives:
    """Adjoint searches on ! and the diagonal, with their ambient data."""
    category: FiniteCategory
    point: FiniteCategory
    prod: ProductCategory
    bang: Functor
    delta: Functor
    terminal: Adjunction | UniversalArrowFailure
    initial: Adjunction | UniversalArrowFailure
    products: Adjunction | UniversalArrowFailure
    coproducts: Adjunction | UniversalArrowFailure

    def entry(self, name: str) -> ConnectiveEntry:
        found = getattr(self, name)
        if isinstance(found, Adjunction):
            return ConnectiveEntry(name, True, found, "adjoint witness validated")
        return ConnectiveEntry(name, False, None, str(found))

    def report(self) -> ConnectiveReport:
        names = ("terminal", "initial", "products", "coproducts")
        return ConnectiveReport(self.category.name, {n: self.entry(n) for n in names})

    @property
    def has_products(self) -> bool:
        return isinstance(self.products, Adjunction)

    # -- helpers reading the product witness -------------------------------
    def product_of(self, a: str, b: str) -> str:
        return self.products.right.obj_map[self.prod.object_ids[(a, b)]]

    def projections(self, a: str, b: str) -> tuple[str, str]:
        eps = self.products.counit.components[self.prod.object_ids[(a, b)]]
        return self.prod.morphism_pairs[eps]

    def pair_morphisms(self, u: str, v: str) -> str:
        """<u, v>: c -> a x b for u: c -> a, v: c -> b."""
        A = self.category
        c = A.dom[u]
        lifted = self.products.right.mor_map[self.prod.morphism_ids[(u, v)]]
        return A.composition[(lifted, self.products.unit.components[c])]

    def coproduct_of(self, a: str, b: str) -> str:
        return self.coproducts.left.obj_map[self.prod.object_ids[(a, b)]]

    def injections(self, a: str, b: str) -> tuple[str, str]:
        eta = self.coproducts.unit.components[self.prod.object_ids[(a, b)]]
        return self.prod.morphism_pairs[eta]

    def copair_morphisms(self, u: str, v: str) -> str:
        """[u, v]: a + b -> c for u: a -> c, v: b -> c."""
        A = self.category
        c = A.cod[u]
        lifted = self.coproducts.left.mor_map[self.prod.morphism_ids[(u, v)]]
        return A.composition[(self.coproducts.counit.components[c], lifted)]


def internal_connectives(cat: FiniteCategory, cap: int | None = None) -> InternalConnectives:
    """Search right/left adjoints of A -> 1 and the diagonal A -> A x A."""
    cap = resolve_cap(cap)
    point = terminal_category()
    bang = bang_functor(cat, point)
    prod, delta = diagonal_functor(cat)
    return InternalConnectives(
        cat, point, prod, bang, delta,
        terminal=adjoint_or_failure(bang, "right", cap=cap),
        initial=adjoint_or_failure(bang, "left", cap=cap),
        products=adjoint_or_failure(delta, "right", cap=cap),
        coproducts=adjoint_or_failure(delta, "left", cap=cap),
    )


# ---------------------------------------------------------------------------
# internal cartesian closedness


@dataclass(frozen=True)
class CccResult:
    """Outcome of the internally-cartesian-closed check on a category."""
    category: FiniteCategory
    exists: bool
    precondition_failed: bool
    certificate: str
    connectives: InternalConnectives | None
    witness: Adjunction | None = None
    disc: FiniteCategory | None = None
    square: ProductCategory | None = None        # A x |A|
    twist: Functor | None = None                 # <prod.(id x eps), pi>

    def entry(self) -> ConnectiveEntry:
        return ConnectiveEntry("ccc", self.exists, self.witness, self.certificate)

    def exponent(self, base: str, power: str) -> str:
        """The object base^power, read from the right adjoint's table."""
        psi = self.witness.right
        return self.square.object_pairs[psi.obj_map[self.square.object_ids[(base, power)]]][0]

    def exponent_functor(self, power: str) -> Functor:
        """(-)^power : A -> A for a fixed discrete exponent."""
        psi = self.witness.right
        A = self.category
        obj_map, mor_map = {}, {}
        for b in A.objects:
            obj_map[b] = self.exponent(b, power)
        idp = self.disc.identities[power]
        for u in A.morphisms:
            lifted = psi.mor_map[self.square.morphism_ids[(u, idp)]]
            mor_map[u] = self.square.morphism_pairs[lifted][0]
        return Functor(A, A, obj_map, mor_map, name="(-)^%s" % power)

    def evaluation(self, base: str, power: str) -> str:
        """ev: (base^power) x power -> base from the counit."""
        eps = self.witness.counit.components[self.square.object_ids[(base, power)]]
        return self.square.morphism_pairs[eps][0]


def internal_ccc(cat: FiniteCategory, conn: InternalConnectives | None = None,
                 cap: int | None = None) -> CccResult:
    """Check internal cartesian closedness via the twist map on A x |A|."""
    cap = resolve_cap(cap)
    if conn is None:
        conn = internal_connectives(cat, cap=cap)
    if not conn.has_products:
        return CccResult(cat, False, True, "no internal products: %s" % conn.products, conn)
    disc, eps = discrete_inclusion(cat)
    square = product_category(cat, disc)
    p1, p2 = projection_functors(square, cat, disc)
    id_x_eps = pair_functors(p1, compose_functors(eps, p2), conn.prod)
    meet_part = compose_functors(conn.products.right, id_x_eps)
    twist = pair_functors(meet_part, p2, square)
    found = adjoint_or_failure(twist, "right", cap=cap)
    if isinstance(found, UniversalArrowFailure):
        return CccResult(cat, False, False, str(found), conn, None, disc, square, twist)
    return CccResult(cat, True, False, "adjoint witness validated", conn, found, disc, square, twist)


@dataclass(frozen=True)
class NaiveCccReport:
    """Weber-style closedness: exponents of constant objects only."""
    category: str
    per_element: dict[str, ConnectiveEntry]

    @property
    def ok(self) -> bool:
        return all(e.exists for e in self.per_element.values())


def naive_ccc(cat: FiniteCategory, conn: InternalConnectives | None = None,
              cap: int | None = None) -> NaiveCccReport:
    """For every global element x, search a right adjoint of (-) x x."""
    cap = resolve_cap(cap)
    if conn is None:
        conn = internal_connectives(cat, cap=cap)
    if not conn.has_products:
        raise StructureError("naive ccc needs internal products")
    entries = {}
    for x in cat.objects:
        with_x = pair_functors(identity_functor(cat), constant_functor(cat, cat, x), conn.prod)
        times_x = compose_functors(conn.products.right, with_x)
        found = adjoint_or_failure(times_x, "right", cap=cap)
        if isinstance(found, Adjunction):
            entries[x] = ConnectiveEntry("(-)x%s" % x, True, found, "adjoint witness validated")
        else:
            entries[x] = ConnectiveEntry("(-)x%s" % x, False, None, str(found))
    return NaiveCccReport(cat.name, entries)


# ---------------------------------------------------------------------------
# magma closedness


@dataclass(frozen=True)
class RClosedReport:
    category: str
    side: str
    bundled: ConnectiveEntry
    per_element: dict[str, ConnectiveEntry]

    @property
    def closed(self) -> bool:
        return self.bundled.exists

    @property
    def characterisations_agree(self) -> bool:
        return self.bundled.exists == all(e.exists for e in self.per_element.values())


def r_closed(cat: FiniteCategory, magma: Functor, side: str,
             inclusion: Functor | None = None, cap: int | None = None) -> RClosedReport:
    """Closedness of a magma r: A x A -> A on the given side.

    The bundled twist-map adjoint search is cross-checked against the
    pointwise characterisation (every r(-, x), resp. r(x, -), has a right
    adjoint).  ``inclusion`` generalises the exponent parameter to j: B -> A
    and defaults to the identity.
    """
    cap = resolve_cap(cap)
    if side not in ("left", "right"):
        raise StructureError("side must be 'left' or 'right', got %r" % side)
    j = inclusion if inclusion is not None else identity_functor(cat)
    B = j.source
    disc, eps_b = discrete_inclusion(B)
    j_eps = compose_functors(j, eps_b)
    prod_aa = _ambient_product(magma)
    square_out = product_category(cat, disc)
    if side == "left":
        square_in = square_out
        p1, p2 = projection_functors(square_in, cat, disc)
        arg = pair_functors(p1, compose_functors(j_eps, p2), prod_aa)
    else:
        square_in = product_category(disc, cat)
        p1, p2 = projection_functors(square_in, disc, cat)
        arg = pair_functors(compose_functors(j_eps, p1), p2, prod_aa)
    bundled_fun = pair_functors(compose_functors(magma, arg),
                                p2 if side == "left" else p1, square_out)
    found = adjoint_or_failure(bundled_fun, "right", cap=cap)
    if isinstance(found, Adjunction):
        bundled = ConnectiveEntry("twist", True, found, "adjoint witness validated")
    else:
        bundled = ConnectiveEntry("twist", False, None, str(found))
    per_element = {}
    for x in B.objects:
        jx = j.obj_map[x]
        if side == "left":
            section = pair_functors(identity_functor(cat), constant_functor(cat, cat, jx), prod_aa)
        else:
            section = pair_functors(constant_functor(cat, cat, jx), identity_functor(cat), prod_aa)
        partial = compose_functors(magma, section)
        got = adjoint_or_failure(partial, "right", cap=cap)
        if isinstance(got, Adjunction):
            per_element[x] = ConnectiveEntry("r-section at %s" % x, True, got,
                                             "adjoint witness validated")
        else:
            per_element[x] = ConnectiveEntry("r-section at %s" % x, False, None, str(got))
    return RClosedReport(cat.name, side, bundled, per_element)


def _ambient_product(magma: Functor) -> ProductCategory:
    """Recover the ProductCategory structure the magma is defined on."""
    src = magma.source
    pairs_obj, pairs_mor = {}, {}
    for o in src.objects:
        if not (o.startswith("(") and o.endswith(")")):
            raise StructureError("magma source is not a generated product category")
    # Generated product ids are "(l,r)"; split on the comma at depth zero.
    def split(s: str) -> tuple[str, str]:
        depth = 0
        for i, ch in enumerate(s):
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
            elif ch == "," and depth == 1:
                return s[1:i], s[i + 1:-1]
        raise StructureError("cannot split product id %r" % s)

    for o in src.objects:
        pairs_obj[o] = split(o)
    for m in src.morphisms:
        pairs_mor[m] = split(m)
    obj_ids = {p: o for o, p in pairs_obj.items()}
    mor_ids = {p: m for m, p in pairs_mor.items()}
    return ProductCategory(src, pairs_obj, pairs_mor, obj_ids, mor_ids)


# ---------------------------------------------------------------------------
# indexed categories


@dataclass(frozen=True)
class SplitViolation:
    kind: str
    at: tuple[str, ...]


@dataclass(frozen=True)
class IndexedCategory:
    """A split indexed category: strict fibers and reindexing functors."""
    base: FiniteCategory
    fibers: dict[str, FiniteCategory]
    reindex: dict[str, Functor]          # base morphism -> contravariant functor

    def validate_split(self, max_pairs: int | None = None) -> list[SplitViolation]:
        violations = []
        for x in self.base.objects:
            r = self.reindex[self.base.identities[x]]
            if r != identity_functor(self.fibers[x]):
                violations.append(SplitViolation("identity", (x,)))
        count = 0
        for (g, f) in self.base.composition:
            if max_pairs is not None and count >= max_pairs:
                break
            count += 1
            h = self.base.composition[(g, f)]
            lhs = self.reindex[h]
            rhs = compose_functors(self.reindex[f], self.reindex[g])
            if lhs.obj_map != rhs.obj_map or lhs.mor_map != rhs.mor_map:
                violations.append(SplitViolation("composition", (g, f)))
        return violations


def constant_indexed(base: FiniteCategory, fiber: FiniteCategory) -> IndexedCategory:
    return IndexedCategory(base, {x: fiber for x in base.objects},
                           {f: identity_functor(fiber) for f in base.morphisms})


@dataclass(frozen=True)
class FiberwiseIssue:
    where: str
    what: str


@dataclass(frozen=True)
class FiberwiseCccReport:
    issues: list[FiberwiseIssue]

    @property
    def ok(self) -> bool:
        return not self.issues


def _is_product_span(cat: FiniteCategory, apex: str, p1: str, p2: str,
                     left: str, right: str) -> bool:
    for c in cat.objects:
        pairs = {(u, v) for u in cat._hom.get((c, left), ()) for v in cat._hom.get((c, right), ())}
        hits = {(cat.composition[(p1, h)], cat.composition[(p2, h)])
                for h in cat._hom.get((c, apex), ())}
        if len(hits) != len(cat._hom.get((c, apex), ())) or hits != pairs:
            return False
    return True


def fiberwise_ccc(indexed: IndexedCategory, cap: int | None = None) -> FiberwiseCccReport:
    """Each fiber cartesian closed, and reindexing preserves the structure."""
    cap = resolve_cap(cap)
    issues: list[FiberwiseIssue] = []
    conns: dict[str, InternalConnectives] = {}
    cccs: dict[str, CccResult] = {}
    for x, fiber in indexed.fibers.items():
        conn = internal_connectives(fiber, cap=cap)
        conns[x] = conn
        if not isinstance(conn.terminal, Adjunction):
            issues.append(FiberwiseIssue("fiber %s" % x, "no terminal value"))
        if not conn.has_products:
            issues.append(FiberwiseIssue("fiber %s" % x, "no products"))
            continue
        ccc = internal_ccc(fiber, conn, cap=cap)
        cccs[x] = ccc
        if not ccc.exists:
            issues.append(FiberwiseIssue("fiber %s" % x, "not cartesian closed"))
    if issues:
        return FiberwiseCccReport(issues)
    for u in indexed.base.morphisms:
        src_fib = indexed.fibers[indexed.base.cod[u]]
        tgt_fib = indexed.fibers[indexed.base.dom[u]]
        R = indexed.reindex[u]
        conn_s = conns[indexed.base.cod[u]]
        conn_t = conns[indexed.base.dom[u]]
        ccc_s = cccs[indexed.base.cod[u]]
        for a in src_fib.objects:
            for b in src_fib.objects:
                P = conn_s.product_of(a, b)
                pi1, pi2 = conn_s.projections(a, b)
                if not _is_product_span(tgt_fib, R.obj_map[P], R.mor_map[pi1], R.mor_map[pi2],
                                        R.obj_map[a], R.obj_map[b]):
                    issues.append(FiberwiseIssue("reindex %s" % u,
                                                 "product of (%s, %s) not preserved" % (a, b)))
                E = ccc_s.exponent(a, b)
                ev = ccc_s.evaluation(a, b)
                P2 = conn_s.product_of(E, b)
                r1, r2 = conn_s.projections(E, b)
                if not _is_exponent(tgt_fib, conn_t, R.obj_map[E], R.obj_map[a], R.obj_map[b],
                                    R.obj_map[P2], R.mor_map[ev], R.mor_map[r1], R.mor_map[r2]):
                    issues.append(FiberwiseIssue("reindex %s" % u,
                                                 "exponent %s^%s not preserved" % (a, b)))
    return FiberwiseCccReport(issues)


def _is_exponent(cat: FiniteCategory, conn: InternalConnectives, expo: str, base: str,
                 power: str, prod_img: str, ev_img: str, pi1_img: str, pi2_img: str) -> bool:
    """Is (expo, ev) an exponent of base^power, given the image of the chosen
    product span of (expo, power) along the reindexing functor?"""
    # The image span must itself be a product, then transport ev along the
    # canonical comparison from the fiber's own chosen product.
    if not _is_product_span(cat, prod_img, pi1_img, pi2_img, expo, power):
        return False
    P = conn.product_of(expo, power)
    q1, q2 = conn.projections(expo, power)
    kappa = None
    for h in cat._hom.get((P, prod_img), ()):
        if cat.composition[(pi1_img, h)] == q1 and cat.composition[(pi2_img, h)] == q2:
            kappa = h
            break
    if kappa is None:
        return False
    ev = cat.composition[(ev_img, kappa)]
    for c in cat.objects:
        transposed = set()
        for h in cat._hom.get((c, expo), ()):
            h_times_id = conn.pair_morphisms(
                cat.composition[(h, conn.projections(c, power)[0])],
                conn.projections(c, power)[1])
            transposed.add(cat.composition[(ev, h_times_id)])
        if len(transposed) != len(cat._hom.get((c, expo), ())):
            return False
        if transposed != set(cat._hom.get((conn.product_of(c, power), base), ())):
            return False
    return True


# ---------------------------------------------------------------------------
# ad hoc polymorphism over set-indexed families


@dataclass(frozen=True)
class SetFamily:
    """A finite-set-indexed family of objects of a category."""
    category: FiniteCategory
    index: tuple[str, ...]
    values: dict[str, str]

    def __post_init__(self):
        for i in self.index:
            if self.values.get(i) not in self.category.objects:
                raise StructureError("family value at %r is not an object" % i)


@dataclass(frozen=True)
class AdhocResult:
    family: SetFamily
    side: str


def adhoc_product(family: SetFamily, s: dict[str, str], target_index,
                  side: str = "product", cap: int | None = None) -> AdhocResult | None:
    """Fiberwise (co)product along an index function s; empty fibers take the
    terminal (resp. initial) value.  None when a required (co)limit is missing."""
    cap = resolve_cap(cap)
    target_index = tuple(sorted(target_index))
    for j in family.index:
        if s.get(j) not in target_index:
            raise StructureError("index map undefined or out of range at %r" % j)
    C = family.category
    values = {}
    for i in target_index:
        fiber = [j for j in family.index if s[j] == i]
        disc = discrete_category(["j%d" % k for k in range(len(fiber))])
        diagram = Functor(disc, C,
                          {"j%d" % k: family.values[fiber[k]] for k in range(len(fiber))},
                          {disc.identities["j%d" % k]: C.identities[family.values[fiber[k]]]
                           for k in range(len(fiber))},
                          name="fiber@%s" % i)
        if side == "product":
            cone = limit_of_diagram(diagram, cap=cap)
        elif side == "coproduct":
            cone = colimit_of_diagram(diagram, cap=cap)
        else:
            raise StructureError("side must be 'product' or 'coproduct', got %r" % side)
        if cone is None:
            return None
        values[i] = cone.apex
    return AdhocResult(SetFamily(C, target_index, values), side)


def adhoc_rules_check(family: SetFamily, s: dict[str, str], result: AdhocResult,
                      cap: int | None = None) -> bool:
    """The introduction/elimination bijection, per target index:
    hom(c, prod_i) = prod over the fiber of hom(c, tau_j), for every c."""
    C = family.category
    for i in result.family.index:
        fiber = [j for j in family.index if s[j] == i]
        value = result.family.values[i]
        for c in C.objects:
            if result.side == "product":
                per_leg = [len(C._hom.get((c, family.values[j]), ())) for j in fiber]
                lhs = len(C._hom.get((c, value), ()))
            else:
                per_leg = [len(C._hom.get((family.values[j], c), ())) for j in fiber]
                lhs = len(C._hom.get((value, c), ()))
            rhs = 1
            for n in per_leg:
                rhs *= n
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# Beck-Chevalley


@dataclass(frozen=True)
class SetSquare:
    """A commuting square of finite sets: i . p2 = s . p1 with s: X -> Y."""
    X: tuple[str, ...]
    Y: tuple[str, ...]
    I: tuple[str, ...]
    P: tuple[str, ...]
    s: dict[str, str]
    i: dict[str, str]
    p1: dict[str, str]   # P -> X
    p2: dict[str, str]   # P -> I

    def commutes(self) -> bool:
        return all(self.s[self.p1[q]] == self.i[self.p2[q]] for q in self.P)

    def is_pullback(self) -> bool:
        pairs = {(self.p1[q], self.p2[q]) for q in self.P}
        wanted = {(x, m) for x in self.X for m in self.I if self.s[x] == self.i[m]}
        return len(pairs) == len(self.P) and pairs == wanted


@dataclass(frozen=True)
class BeckChevalleyReport:
    is_pullback: bool
    via_product_then_reindex: dict[str, str]
    via_reindex_then_product: dict[str, str]
    comparison_iso: bool

    @property
    def ok(self) -> bool:
        return self.is_pullback and self.comparison_iso


def beck_chevalley_check(square: SetSquare, family: SetFamily,
                         cap: int | None = None) -> BeckChevalleyReport:
    """Compare reindex(product along s) with product along p2 of the reindexed
    family.  Non-commuting squares are structural errors; commuting
    non-pullbacks are evaluated and flagged through the verdict."""
    cap = resolve_cap(cap)
    if tuple(sorted(family.index)) != tuple(sorted(square.X)):
        raise StructureError("family must be indexed by the square's X")
    if not square.commutes():
        raise StructureError("square does not commute")
    down = adhoc_product(family, square.s, square.Y, "product", cap=cap)
    if down is None:
        raise StructureError("products along s are missing in the value category")
    lhs = {q: down.family.values[square.i[q]] for q in square.I}
    pulled = SetFamily(family.category, tuple(sorted(square.P)),
                       {q: family.values[square.p1[q]] for q in square.P})
    across = adhoc_product(pulled, square.p2, square.I, "product", cap=cap)
    if across is None:
        raise StructureError("products along p2 are missing in the value category")
    rhs = dict(across.family.values)
    C = family.category
    iso = True
    for q in square.I:
        a, b = lhs[q], rhs[q]
        fwd = C._hom.get((a, b), ())
        bwd = C._hom.get((b, a), ())
        if not (fwd and bwd):
            iso = False
            break
        found = False
        for f in fwd:
            for g in bwd:
                if C.composition[(g, f)] == C.identities[a] and \
                        C.composition[(f, g)] == C.identities[b]:
                    found = True
        if not found:
            iso = False
            break
    return BeckChevalleyReport(square.is_pullback(), lhs, rhs, iso)


# ---------------------------------------------------------------------------
# the parametrised rule calculus, executed through adjunction witnesses


class ParametrisedCalculus:
    """Sequent-style rules over elements X -> A for a discrete parameter X.

    Elements are functors, sequents are natural transformations; every rule
    builds its conclusion from the stored adjunction witnesses.
    """

    def __init__(self, conn: InternalConnectives, ccc: CccResult, shape: FiniteCategory):
        if not all(shape.is_identity(f) for f in shape.morphisms):
            raise StructureError("the parameter category must be discrete")
        self.conn = conn
        self.ccc = ccc
        self.shape = shape
        self.cat = conn.category

    # -- elements -----------------------------------------------------------
    def element(self, assignment: dict[str, str]) -> Functor:
        A, X = self.cat, self.shape
        return Functor(X, A, dict(assignment),
                       {X.identities[x]: A.identities[assignment[x]] for x in X.objects})

    def _lift(self, src: Functor, tgt: Functor, comps: dict[str, str]) -> NaturalTransformation:
        nt = NaturalTransformation(src, tgt, comps)
        nt.validate()
        return nt

    def top_element(self) -> Functor:
        top = self.conn.terminal.right.obj_map["*"]
        return self.element({x: top for x in self.shape.objects})

    def bottom_element(self) -> Functor:
        bot = self.conn.initial.left.obj_map["*"]
        return self.element({x: bot for x in self.shape.objects})

    def product_element(self, tau: Functor, sigma: Functor) -> Functor:
        return self.element({x: self.conn.product_of(tau.obj_map[x], sigma.obj_map[x])
                             for x in self.shape.objects})

    def coproduct_element(self, tau: Functor, sigma: Functor) -> Functor:
        return self.element({x: self.conn.coproduct_of(tau.obj_map[x], sigma.obj_map[x])
                             for x in self.shape.objects})

    def exponent_element(self, rho: Functor, sigma: Functor) -> Functor:
        return self.element({x: self.ccc.exponent(rho.obj_map[x], sigma.obj_map[x])
                             for x in self.shape.objects})

    # -- rules ---------------------------------------------------------------
    def rule_id(self, tau: Functor) -> NaturalTransformation:
        return self._lift(tau, tau, {x: self.cat.identities[tau.obj_map[x]]
                                     for x in self.shape.objects})

    def rule_com(self, f: NaturalTransformation, g: NaturalTransformation) -> NaturalTransformation:
        return self._lift(f.source, g.target,
                          {x: self.cat.composition[(g.components[x], f.components[x])]
                           for x in self.shape.objects})

    def rule_one_int(self, tau: Functor) -> NaturalTransformation:
        eta = self.conn.terminal.unit
        return self._lift(tau, self.top_element(),
                          {x: eta.components[tau.obj_map[x]] for x in self.shape.objects})

    def rule_zero_int(self, tau: Functor) -> NaturalTransformation:
        eps = self.conn.initial.counit
        return self._lift(self.bottom_element(), tau,
                          {x: eps.components[tau.obj_map[x]] for x in self.shape.objects})

    def rule_prod_int(self, f: NaturalTransformation, g: NaturalTransformation) -> NaturalTransformation:
        rho, tau, sigma = f.source, f.target, g.target
        return self._lift(rho, self.product_element(tau, sigma),
                          {x: self.conn.pair_morphisms(f.components[x], g.components[x])
                           for x in self.shape.objects})

    def rule_prod_eli(self, f: NaturalTransformation, tau: Functor, sigma: Functor) \
            -> tuple[NaturalTransformation, NaturalTransformation]:
        rho = f.source
        pi1 = {x: self.conn.projections(tau.obj_map[x], sigma.obj_map[x])[0]
               for x in self.shape.objects}
        pi2 = {x: self.conn.projections(tau.obj_map[x], sigma.obj_map[x])[1]
               for x in self.shape.objects}
        left = self._lift(rho, tau, {x: self.cat.composition[(pi1[x], f.components[x])]
                                     for x in self.shape.objects})
        right = self._lift(rho, sigma, {x: self.cat.composition[(pi2[x], f.components[x])]
                                        for x in self.shape.objects})
        return left, right

    def rule_coprod_int(self, f: NaturalTransformation, g: NaturalTransformation) -> NaturalTransformation:
        tau, sigma, rho = f.source, g.source, f.target
        return self._lift(self.coproduct_element(tau, sigma), rho,
                          {x: self.conn.copair_morphisms(f.components[x], g.components[x])
                           for x in self.shape.objects})

    def rule_coprod_eli(self, f: NaturalTransformation, tau: Functor, sigma: Functor) \
            -> tuple[NaturalTransformation, NaturalTransformation]:
        rho = f.target
        out = []
        for pick, part in ((0, tau), (1, sigma)):
            comps = {}
            for x in self.shape.objects:
                iota = self.conn.injections(tau.obj_map[x], sigma.obj_map[x])[pick]
                comps[x] = self.cat.composition[(f.components[x], iota)]
            out.append(self._lift(part, rho, comps))
        return out[0], out[1]

    def rule_lam_int(self, f: NaturalTransformation, tau: Functor, sigma: Functor,
                     rho: Functor) -> NaturalTransformation:
        """From f: tau x sigma |- rho build the transpose tau |- rho^sigma."""
        sq = self.ccc.square
        psi = self.ccc.witness.right
        unit = self.ccc.witness.unit
        comps = {}
        for x in self.shape.objects:
            t, s, r = tau.obj_map[x], sigma.obj_map[x], rho.obj_map[x]
            u = sq.morphism_ids[(f.components[x], self.cat.identities[s])]
            lifted = psi.mor_map[u]
            whole = sq.category.composition[(lifted, unit.components[sq.object_ids[(t, s)]])]
            comps[x] = sq.morphism_pairs[whole][0]
        return self._lift(tau, self.exponent_element(rho, sigma), comps)

    def rule_lam_eli(self, f: NaturalTransformation, tau: Functor, sigma: Functor,
                     rho: Functor) -> NaturalTransformation:
        """From f: tau |- rho^sigma recover tau x sigma |- rho."""
        comps = {}
        for x in self.shape.objects:
            t, s, r = tau.obj_map[x], sigma.obj_map[x], rho.obj_map[x]
            ev = self.ccc.evaluation(r, s)
            pi1, pi2 = self.conn.projections(t, s)
            f_times_id = self.conn.pair_morphisms(
                self.cat.composition[(f.components[x], pi1)], pi2)
            comps[x] = self.cat.composition[(ev, f_times_id)]
        return self._lift(self.product_element(tau, sigma), rho, comps)
