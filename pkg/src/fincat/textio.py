"""Line-oriented text formats: categories, internal categories, satisfaction
matrices, and JSON functor specs.

Category files name every non-identity composite; identities are implicit
under the reserved names ``id_<object>``.  Serialization is canonical
(sorted), so parse/serialize round-trips are byte-identical on canonically
formatted files.
"""
from __future__ import annotations

import json

from .core import FiniteCategory, Functor, StructureError, WorkbenchError, validate_category
from .enriched2 import SatisfactionRelation, satisfaction
from .internalcat import InternalCategory, validate_internal


class ParseError(WorkbenchError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = " (line %d)" % line if line is not None else ""
        super().__init__(message + where)


def _strip(line: str) -> str:
    if "#" in line:
        line = line[: line.index("#")]
    return line.strip()


def parse_category(text: str, name: str = "") -> FiniteCategory:
    objects: list[str] = []
    arrows: dict[str, tuple[str, str]] = {}
    composes: list[tuple[int, str, str, str]] = []
    seen_objects = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("objects:"):
            if seen_objects:
                raise ParseError("duplicate objects line", lineno)
            seen_objects = True
            for tok in line[len("objects:"):].split():
                if tok in objects:
                    raise ParseError("duplicate object id %r" % tok, lineno)
                objects.append(tok)
        elif line.startswith("arrow "):
            body = line[len("arrow "):]
            if ":" not in body:
                raise ParseError("arrow line needs 'name: dom -> cod'", lineno)
            mid, rest = body.split(":", 1)
            mid = mid.strip()
            if " -> " not in rest:
                raise ParseError("arrow line needs ' -> '", lineno)
            a, b = (tok.strip() for tok in rest.split(" -> ", 1))
            if mid.startswith("id_"):
                raise ParseError("arrow name %r is reserved for identities" % mid, lineno)
            if mid in arrows:
                raise ParseError("duplicate arrow id %r" % mid, lineno)
            if a not in objects or b not in objects:
                raise ParseError("arrow %r references unknown object" % mid, lineno)
            arrows[mid] = (a, b)
        elif line.startswith("compose "):
            body = line[len("compose "):]
            if " = " not in body:
                raise ParseError("compose line needs 'h = g . f' (spaced separators)", lineno)
            h, rest = (tok.strip() for tok in body.split(" = ", 1))
            if " . " not in rest:
                raise ParseError("compose line needs 'g . f' (spaced separators)", lineno)
            g, f = (tok.strip() for tok in rest.split(" . ", 1))
            composes.append((lineno, h, g, f))
        else:
            raise ParseError("unrecognized line %r" % line, lineno)
    if not seen_objects:
        raise ParseError("missing objects line")

    identities = {x: "id_%s" % x for x in objects}
    dom = {m: d for m, (d, _) in arrows.items()}
    cod = {m: c for m, (_, c) in arrows.items()}
    for x, i in identities.items():
        dom[i] = cod[i] = x
    morphisms = set(arrows) | set(identities.values())

    def resolve(mid: str, lineno: int) -> str:
        if mid in morphisms:
            return mid
        raise ParseError("unknown morphism %r in compose line" % mid, lineno)

    composition: dict[tuple[str, str], str] = {}
    for m in morphisms:
        composition[(identities[cod[m]], m)] = m
        composition[(m, identities[dom[m]])] = m
    for lineno, h, g, f in composes:
        h, g, f = resolve(h, lineno), resolve(g, lineno), resolve(f, lineno)
        if dom[g] != cod[f]:
            raise ParseError("pair (%s, %s) is not composable" % (g, f), lineno)
        if (g, f) in composition and composition[(g, f)] != h:
            raise ParseError("conflicting composite for (%s, %s)" % (g, f), lineno)
        composition[(g, f)] = h
    missing = [(g, f) for g in sorted(morphisms) for f in sorted(morphisms)
               if dom[g] == cod[f] and (g, f) not in composition]
    if missing:
        raise ParseError("missing composite for pair (%s, %s)" % missing[0])
    cat = FiniteCategory(objects, morphisms, dom, cod, identities, composition, name=name)
    report = validate_category(cat)
    if not report:
        raise ParseError("category laws violated: %s" % report)
    return cat


def serialize_category(cat: FiniteCategory) -> str:
    """Canonical text form; identity arrows are written as id_<object>."""
    alias = {}
    for x in cat.objects:
        alias[cat.identities[x]] = "id_%s" % x
    for m in cat.morphisms:
        alias.setdefault(m, m)
    lines = ["objects: %s" % " ".join(cat.objects)]
    for m in cat.morphisms:
        if not cat.is_identity(m):
            lines.append("arrow %s: %s -> %s" % (alias[m], cat.dom[m], cat.cod[m]))
    entries = []
    for (g, f), h in cat.composition.items():
        if cat.is_identity(g) or cat.is_identity(f):
            continue
        entries.append("compose %s = %s . %s" % (alias[h], alias[g], alias[f]))
    lines.extend(sorted(entries))
    return "\n".join(lines) + "\n"


def parse_internal(text: str) -> InternalCategory:
    lines = [(_strip(raw), n) for n, raw in enumerate(text.splitlines(), start=1)]
    lines = [(l, n) for l, n in lines if l]
    if not lines or lines[0][0] != "internal":
        raise ParseError("internal category files start with an 'internal' line",
                         lines[0][1] if lines else None)
    a0: list[str] = []
    a1: list[str] = []
    maps: dict[str, dict] = {"dom": {}, "cod": {}, "e": {}, "m": {}}
    section = None
    for line, lineno in lines[1:]:
        if line.startswith("A0:"):
            a0 = line[3:].split()
            section = None
        elif line.startswith("A1:"):
            a1 = line[3:].split()
            section = None
        elif line in ("dom:", "cod:", "e:", "m:"):
            section = line[:-1]
        elif " = " in line and section:
            key, value = (tok.strip() for tok in line.split(" = ", 1))
            if section == "m":
                if " . " not in key:
                    raise ParseError("m entries read 'g . f = h' (spaced separators)", lineno)
                g, f = (tok.strip() for tok in key.split(" . ", 1))
                maps["m"][(g, f)] = value
            else:
                maps[section][key] = value
        else:
            raise ParseError("unrecognized line %r" % line, lineno)
    known1 = set(a1)
    for which in ("dom", "cod"):
        for k, v in maps[which].items():
            if k not in known1 or v not in a0:
                raise ParseError("%s entry %r -> %r has unknown ids" % (which, k, v))
    for k, v in maps["e"].items():
        if k not in a0 or v not in known1:
            raise ParseError("e entry %r -> %r has unknown ids" % (k, v))
    for (g, f), h in maps["m"].items():
        if g not in known1 or f not in known1 or h not in known1:
            raise ParseError("m entry (%s, %s) -> %s has unknown ids" % (g, f, h))
    return InternalCategory(tuple(sorted(a0)), tuple(sorted(a1)),
                            maps["dom"], maps["cod"], maps["e"], maps["m"])


def serialize_internal(cat: InternalCategory) -> str:
    lines = ["internal",
             "A0: %s" % " ".join(cat.A0),
             "A1: %s" % " ".join(cat.A1),
             "dom:"]
    lines.extend("%s = %s" % (f, cat.dom[f]) for f in cat.A1)
    lines.append("cod:")
    lines.extend("%s = %s" % (f, cat.cod[f]) for f in cat.A1)
    lines.append("e:")
    lines.extend("%s = %s" % (x, cat.e[x]) for x in cat.A0)
    lines.append("m:")
    lines.extend(sorted("%s . %s = %s" % (g, f, h) for (g, f), h in cat.m.items()))
    return "\n".join(lines) + "\n"


def parse_satisfaction(text: str) -> SatisfactionRelation:
    rows = [r for r in text.splitlines() if r.strip()]
    if not rows:
        raise ParseError("empty satisfaction matrix")
    header = rows[0].split("\t")
    sentences = [h.strip() for h in header[1:]]
    if not sentences:
        raise ParseError("header row needs sentence names", 1)
    data: dict[str, dict[str, bool]] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        cells = [c.strip() for c in row.split("\t")]
        if len(cells) != len(sentences) + 1:
            raise ParseError("row has %d cells, expected %d" % (len(cells), len(sentences) + 1),
                             lineno)
        model = cells[0]
        if model in data:
            raise ParseError("duplicate model %r" % model, lineno)
        values = {}
        for s, c in zip(sentences, cells[1:]):
            if c not in ("0", "1"):
                raise ParseError("cell %r is not 0/1" % c, lineno)
            values[s] = c == "1"
        data[model] = values
    return satisfaction(data)


def serialize_satisfaction(sat: SatisfactionRelation) -> str:
    lines = ["\t" + "\t".join(sat.sentences)]
    for m in sat.models:
        lines.append(m + "\t" + "\t".join("1" if sat.matrix[(m, s)] else "0"
                                          for s in sat.sentences))
    return "\n".join(lines) + "\n"


def load_category(path: str) -> FiniteCategory:
    with open(path, encoding="utf-8") as handle:
        return parse_category(handle.read(), name=path.rsplit("/", 1)[-1].removesuffix(".cat"))


def load_internal(path: str) -> InternalCategory:
    with open(path, encoding="utf-8") as handle:
        return parse_internal(handle.read())


def load_satisfaction(path: str) -> SatisfactionRelation:
    with open(path, encoding="utf-8") as handle:
        return parse_satisfaction(handle.read())


def load_functor_spec(path: str) -> Functor:
    """JSON functor spec: source/target category paths plus the two tables."""
    with open(path, encoding="utf-8") as handle:
        try:
            spec = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ParseError("functor spec is not valid JSON: %s" % exc)
    for key in ("source", "target", "objects", "morphisms"):
        if key not in spec:
            raise ParseError("functor spec misses %r" % key)
    source = load_category(spec["source"])
    target = load_category(spec["target"])
    functor = Functor(source, target, spec["objects"], spec["morphisms"],
                      name=spec.get("name", path))
    try:
        functor.validate()
    except StructureError as exc:
        raise ParseError("functor spec invalid: %s" % exc)
    return functor
