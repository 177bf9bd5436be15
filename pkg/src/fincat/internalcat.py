"""Internal categories in finite sets, the associated-category construction,
externalization to split indexed categories, generic objects, hom objects and
posetality checks.

The associated category of a finite category A is built literally: its object
of morphisms is the inserter of the two composites |A x A| => |A| -> A, and
the identity and composition maps are the unique factorizations through that
inserter.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field

from .core import (
    FiniteCategory, Functor, NaturalTransformation, StructureError, Violation,
    ValidationReport, WorkbenchError, compose_functors, discrete_category,
    enumerate_functors, enumerate_nat_trans, identity_functor,
    product_category, projection_functors, resolve_cap, terminal_category,
    _check_cap,
)
from .connectives import IndexedCategory, discrete_inclusion
from .kan import inserter


@dataclass(frozen=True)
class InternalCategory:
    """A category object in finite sets: (A0, A1, dom, cod, e, m)."""
    A0: tuple[str, ...]
    A1: tuple[str, ...]
    dom: dict[str, str]
    cod: dict[str, str]
    e: dict[str, str]                       # A0 -> A1
    m: dict[tuple[str, str], str]           # composable pairs -> A1

    def composable_pairs(self) -> list[tuple[str, str]]:
        return [(g, f) for g in self.A1 for f in self.A1 if self.dom[g] == self.cod[f]]


def validate_internal(cat: InternalCategory) -> ValidationReport:
    """Scan the internal-category laws by table inspection."""
    a0, a1 = set(cat.A0), set(cat.A1)
    for f in cat.A1:
        if cat.dom.get(f) not in a0 or cat.cod.get(f) not in a0:
            raise StructureError("element %r has unresolved dom/cod" % f)
    for x in cat.A0:
        if cat.e.get(x) not in a1:
            raise StructureError("identity of %r unresolved" % x)
    violations: list[Violation] = []

    def bad(law: str, offenders, detail: str) -> None:
        violations.append(Violation(law, tuple(offenders), detail))

    for x in cat.A0:
        i = cat.e[x]
        if cat.dom[i] != x or cat.cod[i] != x:
            bad("identity-endpoints", (i,), "e(%s) has endpoints (%s, %s)" % (x, cat.dom[i], cat.cod[i]))
    pairs = set(cat.composable_pairs())
    for p in sorted(pairs - set(cat.m)):
        bad("totality", p, "composable pair missing from m")
    for p in sorted(set(cat.m) - pairs):
        bad("totality", p, "m defined on a non-composable pair")
    for (g, f), h in cat.m.items():
        if (g, f) not in pairs or h not in a1:
            continue
        if cat.dom[h] != cat.dom[f] or cat.cod[h] != cat.cod[g]:
            bad("composite-endpoints", (g, f, h), "m(g, f) has wrong endpoints")
    for f in cat.A1:
        left = (cat.e[cat.cod[f]], f)
        right = (f, cat.e[cat.dom[f]])
        if left in cat.m and cat.m[left] != f:
            bad("left-unit", (f,), "m(e, f) = %s" % cat.m[left])
        if right in cat.m and cat.m[right] != f:
            bad("right-unit", (f,), "m(f, e) = %s" % cat.m[right])
    for (g, f) in sorted(pairs & set(cat.m)):
        gf = cat.m[(g, f)]
        for h in cat.A1:
            if cat.dom[h] != cat.cod[g] or (h, g) not in cat.m:
                continue
            if (h, gf) in cat.m and (cat.m[(h, g)], f) in cat.m:
                if cat.m[(h, gf)] != cat.m[(cat.m[(h, g)], f)]:
                    bad("associativity", (h, g, f), "m(h, m(g, f)) != m(m(h, g), f)")
    return ValidationReport(not violations, tuple(violations))


def associated_category(cat: FiniteCategory) -> InternalCategory:
    """Run the inserter construction of the category object associated to cat."""
    disc, eps = discrete_inclusion(cat)
    square = product_category(disc, disc)        # |A x A| = |A| x |A|
    pi0, pi1 = projection_functors(square, disc, disc)
    left = compose_functors(eps, pi0)
    right = compose_functors(eps, pi1)
    ins = inserter(left, right)

    # Relabel inserter objects by their choosing arrow, which is unique.
    label = {o: pair[1] for o, pair in ins.objects.items()}
    if len(set(label.values())) != len(label):
        raise WorkbenchError("inserter objects are not determined by their arrows")
    dom = {label[o]: square.object_pairs[ins.arrow.obj_map[o]][0] for o in ins.objects}
    cod = {label[o]: square.object_pairs[ins.arrow.obj_map[o]][1] for o in ins.objects}

    # e: the unique map induced by the identity 2-cell on eps . |diagonal|.
    diag = Functor(disc, square.category,
                   {x: square.object_ids[(x, x)] for x in disc.objects},
                   {disc.identities[x]: square.category.identities[square.object_ids[(x, x)]]
                    for x in disc.objects},
                   name="|diag|")
    ident_cell = NaturalTransformation(compose_functors(left, diag), compose_functors(right, diag),
                                       {x: cat.identities[x] for x in disc.objects})
    e_functor = ins.factor(diag, ident_cell)
    e = {x: label[e_functor.obj_map[x]] for x in disc.objects}

    # m: the unique map induced by the pasted 2-cell on the pullback A2.
    arrows = sorted(label.values())
    pairs = [(g, f) for g in arrows for f in arrows if dom[g] == cod[f]]
    pair_ids = {p: "p(%s,%s)" % p for p in pairs}
    a2 = discrete_category(pair_ids.values(), name="A2")
    to_square = Functor(a2, square.category,
                        {pair_ids[(g, f)]: square.object_ids[(dom[f], cod[g])] for (g, f) in pairs},
                        {a2.identities[pair_ids[p]]:
                         square.category.identities[square.object_ids[(dom[p[1]], cod[p[0]])]]
                         for p in pairs},
                        name="<dom p1, cod p2>")
    pasted = NaturalTransformation(
        compose_functors(left, to_square), compose_functors(right, to_square),
        {pair_ids[(g, f)]: cat.composition[(g, f)] for (g, f) in pairs})
    m_functor = ins.factor(to_square, pasted)
    m = {p: label[m_functor.obj_map[pair_ids[p]]] for p in pairs}

    result = InternalCategory(tuple(cat.objects), tuple(sorted(label.values())),
                              dom, cod, e, m)
    report = validate_internal(result)
    if not report:
        raise WorkbenchError("associated category violates laws: %s" % report)
    return result


def internal_to_category(cat: InternalCategory) -> FiniteCategory:
    """Read an internal category in finite sets as a finite category."""
    identities = dict(cat.e)
    out = FiniteCategory(cat.A0, cat.A1, dict(cat.dom), dict(cat.cod), identities,
                         dict(cat.m), name="E")
    return out


def internal_poset_check(cat: InternalCategory) -> bool:
    """Is <dom, cod>: A1 -> A0 x A0 injective?"""
    seen = set()
    for f in cat.A1:
        key = (cat.dom[f], cat.cod[f])
        if key in seen:
            return False
        seen.add(key)
    return True


def representably_posetal_check(cat: FiniteCategory, generators: list[FiniteCategory],
                                cap: int | None = None) -> bool:
    """Is every hom-category from a generator a poset?

    When the terminal category is among the generators the verdict is
    cross-checked against the internal-poset criterion on the associated
    category; disagreement is an internal error.
    """
    cap = resolve_cap(cap)
    verdict = True
    for gen in generators:
        functors = enumerate_functors(gen, cat, cap=cap)
        for F in functors:
            for G in functors:
                if len(enumerate_nat_trans(F, G, cap=cap)) > 1:
                    verdict = False
                    break
            if not verdict:
                break
        if not verdict:
            break
    if any(len(g.objects) == 1 and len(g.morphisms) == 1 for g in generators):
        internal = internal_poset_check(associated_category(cat))
        if internal != verdict:
            raise WorkbenchError("representable and internal posetality disagree")
    return verdict


# ---------------------------------------------------------------------------
# externalization


def _subset_id(subset: frozenset[str]) -> str:
    return "{%s}" % ",".join(sorted(subset))


def _fn_id(src_id: str, tgt_id: str, mapping: dict[str, str]) -> str:
    body = ",".join("%s>%s" % (k, mapping[k]) for k in sorted(mapping))
    return "f%s>%s[%s]" % (src_id, tgt_id, body)


class _FunctionComposition(Mapping):
    """Lazy composition table for a category of finite sets and functions."""

    __slots__ = ("_functions", "_index")

    def __init__(self, functions: dict[str, tuple[str, str, dict[str, str]]],
                 index: dict[tuple[str, str, tuple], str]):
        self._functions = functions
        self._index = index

    def __getitem__(self, key: tuple[str, str]) -> str:
        g, f = key
        fs, ft, fmap = self._functions[f]
        gs, gt, gmap = self._functions[g]
        if ft != gs:
            raise KeyError(key)
        comp = {k: gmap[v] for k, v in fmap.items()}
        return self._index[(fs, gt, tuple(sorted(comp.items())))]

    def __contains__(self, key: object) -> bool:
        try:
            g, f = key  # type: ignore[misc]
            return self._functions[f][1] == self._functions[g][0]
        except (KeyError, TypeError, ValueError):
            return False

    def __iter__(self) -> Iterator[tuple[str, str]]:
        by_source: dict[str, list[str]] = {}
        for fid, (src, _, _) in self._functions.items():
            by_source.setdefault(src, []).append(fid)
        for fid, (_, tgt, _) in self._functions.items():
            for gid in by_source.get(tgt, ()):
                yield (gid, fid)

    def __len__(self) -> int:
        by_source: dict[str, int] = {}
        for (src, _, _) in self._functions.values():
            by_source[src] = by_source.get(src, 0) + 1
        return sum(by_source.get(tgt, 0) for (_, tgt, _) in self._functions.values())


def finite_set_universe(carrier) -> tuple[FiniteCategory, dict[str, frozenset[str]],
                                          dict[str, tuple[str, str, dict[str, str]]]]:
    """The category of all subsets of the carrier and all functions."""
    carrier = tuple(sorted(set(carrier)))
    subsets = {}
    for r in range(len(carrier) + 1):
        for combo in itertools.combinations(carrier, r):
            s = frozenset(combo)
            subsets[_subset_id(s)] = s
    functions: dict[str, tuple[str, str, dict[str, str]]] = {}
    identities = {}
    for sid, s in subsets.items():
        for tid, t in subsets.items():
            for images in itertools.product(sorted(t), repeat=len(s)):
                mapping = dict(zip(sorted(s), images))
                fid = _fn_id(sid, tid, mapping)
                functions[fid] = (sid, tid, mapping)
                if sid == tid and all(k == v for k, v in mapping.items()):
                    identities[sid] = fid
    index = {(src, tgt, tuple(sorted(mapping.items()))): fid
             for fid, (src, tgt, mapping) in functions.items()}
    dom = {fid: src for fid, (src, _, _) in functions.items()}
    cod = {fid: tgt for fid, (_, tgt, _) in functions.items()}
    comp = _FunctionComposition(functions, index)
    base = FiniteCategory(subsets.keys(), functions.keys(), dom, cod, identities, comp,
                          name="Set<=%d" % len(carrier))
    return base, subsets, functions


def _tuple_id(keys: list[str], mapping: dict[str, str]) -> str:
    return "[%s]" % ",".join("%s>%s" % (k, mapping[k]) for k in keys)


@dataclass(frozen=True)
class Externalization:
    """The family fibration of an internal category over a finite universe."""
    internal: InternalCategory
    indexed: IndexedCategory
    subsets: dict[str, frozenset[str]]
    functions: dict[str, tuple[str, str, dict[str, str]]]
    fiber_objects: dict[str, dict[str, dict[str, str]]]     # subset -> obj id -> map
    fiber_morphisms: dict[str, dict[str, dict[str, str]]]   # subset -> mor id -> map


def externalize(cat: InternalCategory, carrier) -> Externalization:
    """Fibers over a subset X are functions X -> A0 with A1-valued arrows,
    reindexed by precomposition."""
    carrier = tuple(sorted(set(carrier)))
    base, subsets, functions = finite_set_universe(carrier)
    fibers: dict[str, FiniteCategory] = {}
    fiber_objects: dict[str, dict[str, dict[str, str]]] = {}
    fiber_morphisms: dict[str, dict[str, dict[str, str]]] = {}
    obj_index: dict[str, dict[tuple, str]] = {}
    mor_index: dict[str, dict[tuple, str]] = {}
    for sid, s in subsets.items():
        keys = sorted(s)
        objs: dict[str, dict[str, str]] = {}
        for images in itertools.product(cat.A0, repeat=len(keys)):
            mapping = dict(zip(keys, images))
            objs[_tuple_id(keys, mapping)] = mapping
        mors: dict[str, dict[str, str]] = {}
        dom, codm, identities = {}, {}, {}
        for images in itertools.product(cat.A1, repeat=len(keys)):
            mapping = dict(zip(keys, images))
            mid = _tuple_id(keys, mapping)
            mors[mid] = mapping
            dom[mid] = _tuple_id(keys, {k: cat.dom[v] for k, v in mapping.items()})
            codm[mid] = _tuple_id(keys, {k: cat.cod[v] for k, v in mapping.items()})
        for oid, omap in objs.items():
            identities[oid] = _tuple_id(keys, {k: cat.e[v] for k, v in omap.items()})
        comp = {}
        for m2, map2 in mors.items():
            for m1, map1 in mors.items():
                if dom[m2] != codm[m1]:
                    continue
                comp[(m2, m1)] = _tuple_id(keys, {k: cat.m[(map2[k], map1[k])] for k in keys})
        fibers[sid] = FiniteCategory(objs.keys(), mors.keys(), dom, codm, identities, comp,
                                     name="fam(%s)" % sid)
        fiber_objects[sid] = objs
        fiber_morphisms[sid] = mors
        obj_index[sid] = {tuple(sorted(m.items())): i for i, m in objs.items()}
        mor_index[sid] = {tuple(sorted(m.items())): i for i, m in mors.items()}
    reindex = {}
    for fid, (src, tgt, mapping) in functions.items():
        target_fiber = fibers[tgt]
        src_keys = sorted(subsets[src])
        obj_map = {}
        for oid, omap in fiber_objects[tgt].items():
            pulled = {k: omap[mapping[k]] for k in src_keys}
            obj_map[oid] = obj_index[src][tuple(sorted(pulled.items()))]
        mor_map = {}
        for mid, mmap in fiber_morphisms[tgt].items():
            pulled = {k: mmap[mapping[k]] for k in src_keys}
            mor_map[mid] = mor_index[src][tuple(sorted(pulled.items()))]
        reindex[fid] = Functor(target_fiber, fibers[src], obj_map, mor_map,
                               name="reidx(%s)" % fid)
    indexed = IndexedCategory(base, fibers, reindex)
    return Externalization(cat, indexed, subsets, functions, fiber_objects, fiber_morphisms)


@dataclass(frozen=True)
class GenericObjectResult:
    omega: tuple[str, ...]
    counts_match: bool
    natural: bool

    @property
    def ok(self) -> bool:
        return self.counts_match and self.natural


def generic_object(ext: Externalization) -> GenericObjectResult:
    """Omega = A0: fiber objects over X are exactly functions X -> A0,
    naturally in X.  Failure here is an internal inconsistency."""
    omega = ext.internal.A0
    counts = True
    for sid, s in ext.subsets.items():
        if len(ext.fiber_objects[sid]) != len(omega) ** len(s):
            counts = False
    natural = True
    for fid, (src, tgt, mapping) in ext.functions.items():
        R = ext.indexed.reindex[fid]
        for oid, omap in ext.fiber_objects[tgt].items():
            via_reindex = ext.fiber_objects[src][R.obj_map[oid]]
            via_precompose = {k: omap[mapping[k]] for k in sorted(ext.subsets[src])}
            if via_reindex != via_precompose:
                natural = False
    result = GenericObjectResult(omega, counts, natural)
    if not result.ok:
        raise WorkbenchError("generic object verification failed: %r" % (result,))
    return result


@dataclass(frozen=True)
class HomObjectWitness:
    """The hom object of two fiber objects with its universality certificate."""
    elements: tuple[tuple[str, str], ...]   # pairs (index element, arrow)
    p: dict[tuple[str, str], str]           # projection to the index set
    chi: dict[tuple[str, str], str]         # tautological vertical arrow
    probes_checked: int
    complete: bool


def hom_object(ext: Externalization, index_id: str, x: str, y: str,
               cap: int | None = None) -> HomObjectWitness:
    """Realize hom(x, y) over an index set with projection and tautological
    arrow, then certify universality against every (q, beta) in the universe."""
    cap = resolve_cap(cap)
    cat = ext.internal
    if index_id not in ext.subsets:
        raise StructureError("unknown index set %r" % index_id)
    xs = ext.fiber_objects[index_id].get(x)
    ys = ext.fiber_objects[index_id].get(y)
    if xs is None or ys is None:
        raise StructureError("objects must live in the fiber over %s" % index_id)
    elements = tuple((i, m) for i in sorted(ext.subsets[index_id]) for m in cat.A1
                     if cat.dom[m] == xs[i] and cat.cod[m] == ys[i])
    p = {el: el[0] for el in elements}
    chi = {el: el[1] for el in elements}
    probes = 0
    complete = True
    for jid, j in ext.subsets.items():
        jkeys = sorted(j)
        for q_images in itertools.product(sorted(ext.subsets[index_id]), repeat=len(jkeys)):
            q = dict(zip(jkeys, q_images))
            beta_choices = []
            for jk in jkeys:
                i = q[jk]
                beta_choices.append([m for m in cat.A1
                                     if cat.dom[m] == xs[i] and cat.cod[m] == ys[i]])
            for beta_images in itertools.product(*beta_choices):
                beta = dict(zip(jkeys, beta_images))
                probes += 1
                _check_cap(probes, cap, "hom-object probes")
                expected = {jk: (q[jk], beta[jk]) for jk in jkeys}
                hits = 0
                for h_images in itertools.product(elements, repeat=len(jkeys)):
                    h = dict(zip(jkeys, h_images))
                    if all(p[h[jk]] == q[jk] and chi[h[jk]] == beta[jk] for jk in jkeys):
                        hits += 1
                        if h != expected:
                            complete = False
                if hits != 1:
                    complete = False
    return HomObjectWitness(elements, p, chi, probes, complete)
