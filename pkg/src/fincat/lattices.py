"""Exhaustive catalogues of small finite lattices.

A finite meet-semilattice with a greatest element is a lattice, and removing
the top of a lattice leaves a meet-semilattice; so lattices on n elements are
enumerated by extending meet-semilattices one maximal element at a time and
finally adjoining a top.  Isomorphs are removed with a brute-force canonical
form, which is cheap at these sizes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import FiniteCategory
from .fixtures import poset_category


@dataclass(frozen=True)
class Lattice:
    """A finite lattice on elements 0..n-1 given by its order relation."""
    size: int
    leq: frozenset[tuple[int, int]]

    def below(self, x: int) -> frozenset[int]:
        return frozenset(y for y in range(self.size) if (y, x) in self.leq)

    def above(self, x: int) -> frozenset[int]:
        return frozenset(y for y in range(self.size) if (x, y) in self.leq)

    def meet(self, a: int, b: int) -> int:
        lower = self.below(a) & self.below(b)
        tops = [c for c in lower if all((d, c) in self.leq for d in lower)]
        if len(tops) != 1:
            raise ValueError("no meet for (%d, %d)" % (a, b))
        return tops[0]

    def join(self, a: int, b: int) -> int:
        upper = self.above(a) & self.above(b)
        bottoms = [c for c in upper if all((c, d) in self.leq for d in upper)]
        if len(bottoms) != 1:
            raise ValueError("no join for (%d, %d)" % (a, b))
        return bottoms[0]

    def is_distributive(self) -> bool:
        rng = range(self.size)
        return all(self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))
                   for a in rng for b in rng for c in rng)

    def to_category(self) -> FiniteCategory:
        labels = ["e%d" % i for i in range(self.size)]
        return poset_category(labels, lambda a, b: (int(a[1:]), int(b[1:])) in self.leq,
                              name="lattice%d" % self.size)


def _canonical(size: int, leq: frozenset[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    """Smallest relabelling of the relation; permutations pruned by degree.

    Isomorphisms preserve (|below|, |above|) so only permutations within
    equal-degree groups are tried, with fresh labels assigned block by block.
    """
    degree = {x: (sum(1 for p in leq if p[1] == x), sum(1 for p in leq if p[0] == x))
              for x in range(size)}
    by_degree: dict[tuple[int, int], list[int]] = {}
    for x in range(size):
        by_degree.setdefault(degree[x], []).append(x)
    groups = [by_degree[k] for k in sorted(by_degree)]
    best_key: tuple | None = None
    best: frozenset[tuple[int, int]] | None = None
    for perm_parts in itertools.product(*(itertools.permutations(g) for g in groups)):
        perm = list(itertools.chain.from_iterable(perm_parts))
        relabel = {old: new for new, old in enumerate(perm)}
        candidate = frozenset((relabel[a], relabel[b]) for (a, b) in leq)
        key = tuple(sorted(candidate))
        if best_key is None or key < best_key:
            best_key, best = key, candidate
    assert best is not None
    return best


def _is_down_set(size: int, leq: frozenset[tuple[int, int]], subset: frozenset[int]) -> bool:
    return all(y in subset for x in subset for y in range(size) if (y, x) in leq)


def _valid_extension(size: int, leq: frozenset[tuple[int, int]], down: frozenset[int]) -> bool:
    # The new maximal element must have a meet with every old element: the
    # restriction of the down-set below each element needs a greatest member.
    for s in range(size):
        cut = {d for d in down if (d, s) in leq}
        if not cut:
            return False
        if not any(all((d2, d) in leq for d2 in cut) for d in cut):
            return False
    return True


def enumerate_meet_semilattices(max_size: int) -> dict[int, list[frozenset[tuple[int, int]]]]:
    """Non-isomorphic meet-semilattices on 1..max_size elements."""
    levels: dict[int, list[frozenset[tuple[int, int]]]] = {1: [frozenset({(0, 0)})]}
    for k in range(2, max_size + 1):
        seen: set[tuple] = set()
        out: list[frozenset[tuple[int, int]]] = []
        for leq in levels[k - 1]:
            subsets = [frozenset(c) for r in range(k) for c in itertools.combinations(range(k - 1), r)]
            for down in subsets:
                if not _is_down_set(k - 1, leq, down):
                    continue
                if not _valid_extension(k - 1, leq, down):
                    continue
                z = k - 1
                new_leq = leq | {(d, z) for d in down} | {(z, z)}
                canon = _canonical(k, new_leq)
                key = tuple(sorted(canon))
                if key not in seen:
                    seen.add(key)
                    out.append(canon)
        levels[k] = out
    return levels


def enumerate_lattices(max_size: int) -> dict[int, list[Lattice]]:
    """All lattices with 1..max_size elements, one per isomorphism class."""
    result: dict[int, list[Lattice]] = {1: [Lattice(1, frozenset({(0, 0)}))]}
    if max_size < 2:
        return result
    semis = enumerate_meet_semilattices(max_size - 1)
    for n in range(2, max_size + 1):
        seen: set[tuple] = set()
        out: list[Lattice] = []
        for leq in semis[n - 1]:
            top = n - 1
            new_leq = leq | {(x, top) for x in range(n - 1)} | {(top, top)}
            canon = _canonical(n, new_leq)
            key = tuple(sorted(canon))
            if key not in seen:
                seen.add(key)
                out.append(Lattice(n, canon))
        result[n] = out
    return result
