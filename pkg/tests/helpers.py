"""Independent oracles for the test-bench.

Everything here recomputes expected values from first principles (raw
itertools enumeration, divisibility scans, meet tables) without touching the
search machinery under test.
"""
from __future__ import annotations

import itertools
from math import gcd

from fincat.core import FiniteCategory, Functor, NaturalTransformation


def brute_force_functors(source: FiniteCategory, target: FiniteCategory) -> list[dict]:
    """Every functor as a pair of raw maps, found by filtering all maps."""
    found = []
    objs, mors = source.objects, source.morphisms
    for obj_images in itertools.product(target.objects, repeat=len(objs)):
        omap = dict(zip(objs, obj_images))
        for mor_images in itertools.product(target.morphisms, repeat=len(mors)):
            mmap = dict(zip(mors, mor_images))
            if not all(target.dom[mmap[f]] == omap[source.dom[f]]
                       and target.cod[mmap[f]] == omap[source.cod[f]] for f in mors):
                continue
            if not all(mmap[source.identities[x]] == target.identities[omap[x]] for x in objs):
                continue
            if not all(target.composition[(mmap[g], mmap[f])] == mmap[h]
                       for (g, f), h in source.composition.items()):
                continue
            found.append({"objects": omap, "morphisms": mmap})
    return found


def brute_force_nat_trans(F: Functor, G: Functor) -> list[dict]:
    cat = F.target
    objs = F.source.objects
    out = []
    for images in itertools.product(cat.morphisms, repeat=len(objs)):
        comps = dict(zip(objs, images))
        if not all(cat.dom[comps[x]] == F.obj_map[x] and cat.cod[comps[x]] == G.obj_map[x]
                   for x in objs):
            continue
        if all(cat.composition[(G.mor_map[f], comps[F.source.dom[f]])] ==
               cat.composition[(comps[F.source.cod[f]], F.mor_map[f])]
               for f in F.source.morphisms):
            out.append(comps)
    return out


def divisor_meet(a: int, b: int) -> int:
    return gcd(a, b)


def divisor_join(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def poset_meet_table(cat: FiniteCategory) -> dict[tuple[str, str], str] | None:
    """Pairwise meets of a thin category by scanning lower bounds; None if
    some meet is missing."""
    table = {}
    for a in cat.objects:
        for b in cat.objects:
            lower = [c for c in cat.objects
                     if cat._hom.get((c, a)) and cat._hom.get((c, b))]
            tops = [c for c in lower if all(cat._hom.get((d, c)) for d in lower)]
            if len(tops) != 1:
                return None
            table[(a, b)] = tops[0]
    return table


def relative_pseudocomplement(cat: FiniteCategory, meets: dict[tuple[str, str], str],
                              a: str, b: str) -> str | None:
    """max { c : c meet a <= b } by direct scan of a thin category."""
    candidates = [c for c in cat.objects if cat._hom.get((meets[(c, a)], b))]
    best = [c for c in candidates if all(cat._hom.get((d, c)) for d in candidates)]
    return best[0] if len(best) == 1 else None


def associativity_scan(cat: FiniteCategory) -> list[tuple[str, str, str]]:
    """All associativity failures, recomputed without validate_category."""
    bad = []
    for g in cat.morphisms:
        for f in cat.morphisms:
            if cat.dom[g] != cat.cod[f]:
                continue
            for h in cat.morphisms:
                if cat.dom[h] != cat.cod[g]:
                    continue
                lhs = cat.composition[(h, cat.composition[(g, f)])]
                rhs = cat.composition[(cat.composition[(h, g)], f)]
                if lhs != rhs:
                    bad.append((h, g, f))
    return bad


def clone_with(cat: FiniteCategory, composition=None, identities=None) -> FiniteCategory:
    return FiniteCategory(cat.objects, cat.morphisms, dict(cat.dom), dict(cat.cod),
                          dict(identities if identities is not None else cat.identities),
                          dict(composition if composition is not None else
                               dict(cat.composition.items())),
                          name=cat.name + "*")


def corruptions(cat: FiniteCategory) -> list[tuple[str, FiniteCategory]]:
    """Deterministic single-cell mutations, each guaranteed to break a law."""
    out = []
    comp = dict(cat.composition.items())
    # Redirect an identity composite: breaks a unit law or an endpoint law.
    for (g, f), h in sorted(comp.items()):
        if cat.is_identity(f) and not cat.is_identity(g):
            for other in cat.morphisms:
                if other != h:
                    mutated = dict(comp)
                    mutated[(g, f)] = other
                    out.append(("identity-composite (%s, %s) -> %s" % (g, f, other),
                                clone_with(cat, composition=mutated)))
                    break
            break
    # Drop one entry: breaks totality.
    if comp:
        key = sorted(comp)[0]
        mutated = dict(comp)
        del mutated[key]
        out.append(("dropped composite %s" % (key,), clone_with(cat, composition=mutated)))
    # Point an identity at a non-endomorphism: breaks identity endpoints.
    for x in cat.objects:
        wrong = next((m for m in cat.morphisms if cat.dom[m] != x or cat.cod[m] != x), None)
        if wrong is not None:
            ids = dict(cat.identities)
            ids[x] = wrong
            out.append(("identity of %s set to %s" % (x, wrong), clone_with(cat, identities=ids)))
            break
    # Redirect a non-identity composite to a parallel alternative when that
    # provably breaks some law (checked by the independent scan).
    for (g, f), h in sorted(comp.items()):
        if cat.is_identity(g) or cat.is_identity(f):
            continue
        for other in cat._hom.get((cat.dom[h], cat.cod[h]), ()):
            if other == h:
                continue
            mutated = dict(comp)
            mutated[(g, f)] = other
            mutant = clone_with(cat, composition=mutated)
            if associativity_scan(mutant):
                out.append(("composite (%s, %s) -> %s" % (g, f, other), mutant))
                break
        else:
            continue
        break
    return out
