"""Small named categories used throughout the test-bench and the CLI docs."""
from __future__ import annotations

from math import gcd

from .core import (
    FiniteCategory, build_category, coproduct_category, discrete_category,
    product_category, terminal_category,
)


def walking_arrow() -> FiniteCategory:
    """Objects 0, 1 and a single arrow f: 0 -> 1."""
    return build_category(["0", "1"], {"f": ("0", "1")}, name="two")


def parallel_pair() -> FiniteCategory:
    """Objects a, b with two parallel arrows f, g: a -> b."""
    return build_category(["a", "b"], {"f": ("a", "b"), "g": ("a", "b")}, name="PP")


def poset_category(elements: list[str], leq, name: str = "") -> FiniteCategory:
    """Thin category of a finite poset; arrow ids read ``a<=b``."""
    arrows = {}
    for a in elements:
        for b in elements:
            if a != b and leq(a, b):
                arrows["%s<=%s" % (a, b)] = (a, b)
    composites = {}
    full = dict(arrows)
    for x in elements:
        full["id_%s" % x] = (x, x)
    for g, (b1, c) in full.items():
        for f, (a, b2) in full.items():
            if b1 != b2 or g.startswith("id_") or f.startswith("id_"):
                continue
            h = "id_%s" % a if a == c else "%s<=%s" % (a, c)
            composites[(g, f)] = h
    return build_category(elements, arrows, composites, name=name)


def divisor_lattice(n: int) -> FiniteCategory:
    """Divisors of n ordered by divisibility."""
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    return poset_category([str(d) for d in divisors],
                          lambda a, b: int(b) % int(a) == 0,
                          name="div%d" % n)


def chain(n: int) -> FiniteCategory:
    """The linear order 0 < 1 < ... < n-1."""
    return poset_category([str(i) for i in range(n)],
                          lambda a, b: int(a) <= int(b), name="chain%d" % n)


def boolean_square() -> FiniteCategory:
    """The 2x2 Boolean algebra as a poset: subsets of a 2-element set."""
    elements = ["00", "01", "10", "11"]
    leq = lambda a, b: all(x <= y for x, y in zip(a, b))
    return poset_category(elements, leq, name="bool2x2")


def monoid_category(name: str, elements: list[str], table, unit: str) -> FiniteCategory:
    """A monoid as a one-object category; ``table(a, b)`` is a*b."""
    obj = "*"
    arrows = {m: (obj, obj) for m in elements if m != unit}
    composites = {}
    all_elems = list(elements)
    for g in all_elems:
        for f in all_elems:
            if g == unit or f == unit:
                continue
            h = table(g, f)
            composites[(g, f)] = "id_*" if h == unit else h
    renamed_arrows = dict(arrows)
    return build_category([obj], renamed_arrows, composites, name=name)


def cyclic_group_category(n: int) -> FiniteCategory:
    elems = ["e"] + ["r%d" % i for i in range(1, n)]

    def mul(a: str, b: str) -> str:
        ia = 0 if a == "e" else int(a[1:])
        ib = 0 if b == "e" else int(b[1:])
        k = (ia + ib) % n
        return "e" if k == 0 else "r%d" % k

    return monoid_category("Z%d" % n, elems, mul, "e")


def truncated_addition_monoid(cap: int = 2) -> FiniteCategory:
    """Commutative monoid {0..cap} with addition saturating at cap."""
    elems = ["s%d" % i for i in range(cap + 1)]

    def add(a: str, b: str) -> str:
        return "s%d" % min(int(a[1:]) + int(b[1:]), cap)

    return monoid_category("sat%d" % cap, elems, add, "s0")


def commutative_square() -> FiniteCategory:
    """Free commutative square: the product order 2 x 2 (same shape as bool2x2)."""
    return boolean_square()


def standard_fixtures() -> dict[str, FiniteCategory]:
    """A named battery of at least twenty small valid categories."""
    two = walking_arrow()
    pp = parallel_pair()
    fixtures: dict[str, FiniteCategory] = {
        "empty": FiniteCategory((), (), {}, {}, {}, {}, name="0"),
        "one": terminal_category(),
        "two": two,
        "PP": pp,
        "disc2": discrete_category(["x", "y"]),
        "disc3": discrete_category(["u", "v", "w"]),
        "chain3": chain(3),
        "chain4": chain(4),
        "bool2x2": boolean_square(),
        "div6": divisor_lattice(6),
        "div8": divisor_lattice(8),
        "div12": divisor_lattice(12),
        "div18": divisor_lattice(18),
        "Z2": cyclic_group_category(2),
        "Z3": cyclic_group_category(3),
        "sat2": truncated_addition_monoid(2),
        "two_x_two": product_category(two, two).category,
        "two_plus_two": coproduct_category([two, two], name="two+two"),
        "two_plus_PP": coproduct_category([two, pp], name="two+PP"),
        "span": build_category(["l", "m", "r"], {"p": ("m", "l"), "q": ("m", "r")}, name="span"),
        "cospan": build_category(["l", "m", "r"], {"p": ("l", "m"), "q": ("r", "m")}, name="cospan"),
        "triangle": build_category(
            ["a", "b", "c"],
            {"f": ("a", "b"), "g": ("b", "c"), "h": ("a", "c")},
            {("g", "f"): "h"},
            name="triangle",
        ),
    }
    return fixtures
