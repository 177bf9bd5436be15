"""Poset-enriched (2-valued) categories: satisfaction relations, semantic
consequence, and the density-product closure operator.

A category enriched in the two-element Boolean algebra is a poset and a
functor is a monotone map, so the density product of the theory map becomes a
closure operator on sentence sets.  Sentence sets are handled as bit masks;
the powerset is only materialized as a category in the small cross-check
against the general Kan machinery.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import FiniteCategory, Functor, StructureError, discrete_category
from .fixtures import poset_category


# ---------------------------------------------------------------------------
# finite posets


@dataclass(frozen=True)
class FinitePoset:
    elements: tuple[str, ...]
    relation: frozenset[tuple[str, str]]

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self.relation

    def meet_of(self, subset) -> str | None:
        lower = [c for c in self.elements if all(self.leq(c, s) for s in subset)]
        tops = [c for c in lower if all(self.leq(d, c) for d in lower)]
        return tops[0] if len(tops) == 1 else None

    def join_of(self, subset) -> str | None:
        upper = [c for c in self.elements if all(self.leq(s, c) for s in subset)]
        bottoms = [c for c in upper if all(self.leq(c, d) for d in upper)]
        return bottoms[0] if len(bottoms) == 1 else None

    def to_category(self) -> FiniteCategory:
        return poset_category(list(self.elements), self.leq, name="poset")


def make_poset(elements, leq) -> FinitePoset:
    elements = tuple(sorted(elements))
    rel = set()
    for a in elements:
        for b in elements:
            if leq(a, b):
                rel.add((a, b))
    for a in elements:
        if (a, a) not in rel:
            raise StructureError("relation is not reflexive at %r" % a)
    for (a, b) in rel:
        if (b, a) in rel and a != b:
            raise StructureError("relation is not antisymmetric on (%r, %r)" % (a, b))
        for c in elements:
            if (b, c) in rel and (a, c) not in rel:
                raise StructureError("relation is not transitive via (%r, %r, %r)" % (a, b, c))
    return FinitePoset(elements, frozenset(rel))


def poset_kan(tau: dict[str, str], along: dict[str, str], source: FinitePoset,
              middle: FinitePoset, target: FinitePoset, side: str) -> dict[str, str] | None:
    """Kan extensions of monotone maps: fiberwise meets over the comma
    down-set for the right extension, joins for the left; None when a
    required meet or join is missing."""
    for x in source.elements:
        if tau.get(x) not in target.elements or along.get(x) not in middle.elements:
            raise StructureError("maps must cover the source poset")
    out: dict[str, str] = {}
    for y in middle.elements:
        if side == "right":
            fiber = [tau[x] for x in source.elements if middle.leq(y, along[x])]
            value = target.meet_of(fiber)
        elif side == "left":
            fiber = [tau[x] for x in source.elements if middle.leq(along[x], y)]
            value = target.join_of(fiber)
        else:
            raise StructureError("side must be 'left' or 'right', got %r" % side)
        if value is None:
            return None
        out[y] = value
    return out


# ---------------------------------------------------------------------------
# satisfaction and consequence


@dataclass(frozen=True)
class SatisfactionRelation:
    models: tuple[str, ...]
    sentences: tuple[str, ...]
    matrix: dict[tuple[str, str], bool]

    def __post_init__(self):
        for m in self.models:
            for s in self.sentences:
                if (m, s) not in self.matrix:
                    raise StructureError("matrix is not total at (%r, %r)" % (m, s))

    def satisfies(self, model: str, sentence: str) -> bool:
        return self.matrix[(model, sentence)]


def satisfaction(rows: dict[str, dict[str, bool]]) -> SatisfactionRelation:
    """Build the relation from per-model rows."""
    models = tuple(sorted(rows))
    sentences = tuple(sorted(next(iter(rows.values())))) if rows else ()
    matrix = {}
    for m in models:
        if tuple(sorted(rows[m])) != sentences:
            raise StructureError("row %r does not match the sentence set" % m)
        for s, v in rows[m].items():
            matrix[(m, s)] = bool(v)
    return SatisfactionRelation(models, sentences, matrix)


def theory_map(sat: SatisfactionRelation) -> dict[str, frozenset[str]]:
    """th(M) = the set of sentences the model satisfies."""
    return {m: frozenset(s for s in sat.sentences if sat.matrix[(m, s)])
            for m in sat.models}


def semantic_consequence(sat: SatisfactionRelation, gamma, psi: str) -> bool:
    """Does every model of gamma satisfy psi?"""
    gamma = frozenset(gamma)
    unknown = gamma - set(sat.sentences)
    if unknown or psi not in sat.sentences:
        raise StructureError("unknown sentences: %s" % sorted(unknown | {psi} - set(sat.sentences)))
    th = theory_map(sat)
    return all(psi in th[m] for m in sat.models if gamma <= th[m])


@dataclass(frozen=True)
class ClosureLawReport:
    extensive: bool
    monotone: bool
    idempotent: bool

    @property
    def ok(self) -> bool:
        return self.extensive and self.monotone and self.idempotent


class ClosureOperator:
    """A closure operator on subsets of a finite sentence carrier, stored as
    a full table over bit masks."""

    def __init__(self, carrier: tuple[str, ...], table: list[int]):
        self.carrier = carrier
        self._table = table
        self._bit = {s: 1 << k for k, s in enumerate(carrier)}

    def mask_of(self, subset) -> int:
        mask = 0
        for s in subset:
            try:
                mask |= self._bit[s]
            except KeyError as exc:
                raise StructureError("unknown sentence %r" % s) from exc
        return mask

    def set_of(self, mask: int) -> frozenset[str]:
        return frozenset(s for s, b in self._bit.items() if mask & b)

    def __call__(self, subset) -> frozenset[str]:
        return self.set_of(self._table[self.mask_of(subset)])

    def check_laws(self) -> ClosureLawReport:
        n = len(self.carrier)
        full = 1 << n
        extensive = all(self._table[g] & g == g for g in range(full))
        idempotent = all(self._table[self._table[g]] == self._table[g] for g in range(full))
        monotone = True
        for g in range(full):
            # All supersets of g, by the standard submask-complement walk.
            rest = ((full - 1) ^ g)
            d = rest
            while True:
                if self._table[g] & self._table[g | d] != self._table[g]:
                    monotone = False
                    break
                if d == 0:
                    break
                d = (d - 1) & rest
            if not monotone:
                break
        return ClosureLawReport(extensive, monotone, idempotent)


def density_product(sat: SatisfactionRelation) -> ClosureOperator:
    """T(Gamma) = set of semantic consequences of Gamma: the end over models
    of th(M)(psi) to the power hom(Gamma, th(M)), i.e. the meet of every
    theory containing Gamma."""
    carrier = sat.sentences
    bit = {s: 1 << k for k, s in enumerate(carrier)}
    th = theory_map(sat)
    model_masks = []
    for m in sat.models:
        mask = 0
        for s in th[m]:
            mask |= bit[s]
        model_masks.append(mask)
    full = (1 << len(carrier)) - 1
    table = []
    for g in range(full + 1):
        t = full
        for mm in model_masks:
            if g & mm == g:
                t &= mm
        table.append(t)
    return ClosureOperator(carrier, table)


def galois_closure(sat: SatisfactionRelation, gamma) -> frozenset[str]:
    """Independent formula: the intersection of all theories containing
    gamma, read directly from the definition of consequence."""
    return frozenset(s for s in sat.sentences if semantic_consequence(sat, gamma, s))


# ---------------------------------------------------------------------------
# powerset encoding for the cross-check against the Kan machinery


def powerset_poset(sentences) -> FinitePoset:
    sentences = tuple(sorted(sentences))
    subsets = []
    for r in range(len(sentences) + 1):
        subsets.extend(frozenset(c) for c in itertools.combinations(sentences, r))
    label = {s: "{%s}" % ",".join(sorted(s)) for s in subsets}
    back = {v: k for k, v in label.items()}
    return make_poset(label.values(), lambda a, b: back[a] <= back[b])


def theory_functor(sat: SatisfactionRelation) -> tuple[Functor, FiniteCategory, FiniteCategory]:
    """th as a functor from the discrete model category to the powerset poset."""
    power = powerset_poset(sat.sentences).to_category()
    mod = discrete_category(sat.models, name="Mod")
    th = theory_map(sat)
    label = lambda s: "{%s}" % ",".join(sorted(s))
    obj_map = {m: label(th[m]) for m in sat.models}
    mor_map = {mod.identities[m]: power.identities[obj_map[m]] for m in sat.models}
    return Functor(mod, power, obj_map, mor_map, name="th"), mod, power
