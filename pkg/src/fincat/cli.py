"""Batch command-line front door.

Each subcommand ingests text fixtures, runs the named checks and emits a
report in text or JSON with identical verdicts.  Exit codes: 0 all checks
pass, 1 a check failed (including audits that find an obstruction, with the
witness embedded), 2 input error, 3 enumeration cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import connectives as cn
from . import enriched2 as e2
from . import freyd as fr
from . import internalcat as ic
from . import kan
from .core import (
    CapExceeded, Functor, StructureError, WorkbenchError, are_isomorphic,
    constant_functor, identity_functor, terminal_category, validate_category,
)
from .kan import Adjunction
from .textio import (
    ParseError, load_category, load_functor_spec, load_internal,
    load_satisfaction, serialize_internal,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_CAP = 3


class Report:
    """Accumulates named check verdicts; text and JSON carry the same data."""

    def __init__(self, command: str):
        self.command = command
        self.checks: list[dict] = []

    def add(self, name: str, ok: bool, detail: str = "", witness=None, counts=None,
            seconds: float | None = None) -> None:
        entry: dict = {"name": name, "verdict": "pass" if ok else "fail", "detail": detail}
        if counts:
            entry["counts"] = counts
        if witness is not None:
            entry["witness"] = witness
        if seconds is not None:
            entry["seconds"] = round(seconds, 4)
        self.checks.append(entry)

    @property
    def ok(self) -> bool:
        return all(c["verdict"] == "pass" for c in self.checks)

    def document(self) -> dict:
        return {"command": self.command, "ok": self.ok, "checks": self.checks}

    def render_text(self) -> str:
        lines = []
        for c in self.checks:
            line = "[%s] %s" % (c["verdict"].upper(), c["name"])
            if c.get("detail"):
                line += ": %s" % c["detail"]
            if c.get("counts"):
                line += "  " + " ".join("%s=%s" % kv for kv in sorted(c["counts"].items()))
            lines.append(line)
        lines.append("result: %s" % ("ok" if self.ok else "failed"))
        return "\n".join(lines)


def _functor_witness(functor: Functor) -> dict:
    return {"objects": dict(sorted(functor.obj_map.items())),
            "morphisms": dict(sorted(functor.mor_map.items()))}


def _adjunction_witness(adj: Adjunction) -> dict:
    return {"left": _functor_witness(adj.left), "right": _functor_witness(adj.right),
            "unit": dict(sorted(adj.unit.components.items())),
            "counit": dict(sorted(adj.counit.components.items()))}


def cmd_validate(args, report: Report) -> None:
    if args.category:
        cat = load_category(args.category)
        res = validate_category(cat)
        report.add("validate %s" % args.category, bool(res), str(res),
                   counts={"objects": len(cat.objects), "morphisms": len(cat.morphisms)})
    if args.internal:
        internal = load_internal(args.internal)
        res = ic.validate_internal(internal)
        report.add("validate %s" % args.internal, bool(res), str(res),
                   counts={"A0": len(internal.A0), "A1": len(internal.A1)})
    if not args.category and not args.internal:
        raise StructureError("validate needs --category or --internal")


def _structural_functor(args) -> Functor:
    if args.functor:
        return load_functor_spec(args.functor)
    if not args.category or not args.structural:
        raise StructureError("adjoint needs --functor SPEC or --category with --structural")
    from .core import bang_functor, diagonal_functor
    cat = load_category(args.category)
    if args.structural == "diagonal":
        return diagonal_functor(cat)[1]
    return bang_functor(cat, terminal_category())


def cmd_adjoint(args, report: Report) -> None:
    functor = _structural_functor(args)
    start = time.monotonic()
    found = kan.adjoint_or_failure(functor, args.side, cap=args.cap)
    took = time.monotonic() - start
    if isinstance(found, Adjunction):
        report.add("%s adjoint of %s" % (args.side, functor.name), True,
                   "triangle identities verified", witness=_adjunction_witness(found),
                   seconds=took)
    else:
        report.add("%s adjoint of %s" % (args.side, functor.name), False, str(found),
                   seconds=took)


def cmd_connectives(args, report: Report) -> None:
    cat = load_category(args.category)
    conn = cn.internal_connectives(cat, cap=args.cap)
    for name in ("terminal", "initial", "products", "coproducts"):
        entry = conn.entry(name)
        witness = _adjunction_witness(entry.witness) if entry.witness else None
        report.add("internal %s" % name, entry.exists, entry.certificate, witness=witness)
    ccc = cn.internal_ccc(cat, conn, cap=args.cap)
    witness = _adjunction_witness(ccc.witness) if ccc.witness else None
    report.add("internal ccc", ccc.exists, ccc.certificate, witness=witness)
    if conn.has_products:
        naive = cn.naive_ccc(cat, conn, cap=args.cap)
        report.add("naive ccc", naive.ok,
                   "per-element adjoints: %s" % {x: e.exists for x, e in naive.per_element.items()})
    if args.r_closed:
        magma_side = args.r_closed
        if not conn.has_products:
            report.add("r-closed (%s)" % magma_side, False, "no internal products to use as magma")
        else:
            rep = cn.r_closed(cat, conn.products.right, magma_side, cap=args.cap)
            report.add("r-closed (%s)" % magma_side, rep.closed,
                       "characterisations agree: %s" % rep.characterisations_agree)


def cmd_kan(args, report: Report) -> None:
    tau = load_functor_spec(args.tau)
    along = load_functor_spec(args.along)
    start = time.monotonic()
    ext = kan.kan_extension(tau, along, args.side, cap=args.cap)
    took = time.monotonic() - start
    if ext is None:
        report.add("kan %s extension" % args.side, False,
                   "a pointwise (co)limit is missing", seconds=took)
        return
    report.add("kan %s extension" % args.side, True,
               "universal bijection verified: %s" % ext.verified,
               witness=_functor_witness(ext.extension), seconds=took)
    probes = [identity_functor(along.target)]
    probes.extend(constant_functor(terminal_category(), along.target, y)
                  for y in along.target.objects)
    for rep in kan.is_pointwise(ext, probes, cap=args.cap):
        report.add("stability probe %s" % rep.probe, rep.ok, rep.detail)


def cmd_associate(args, report: Report) -> None:
    cat = load_category(args.category)
    internal = ic.associated_category(cat)
    text = serialize_internal(internal)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
        report.add("associate %s" % args.category, True, "written to %s" % args.output,
                   counts={"A0": len(internal.A0), "A1": len(internal.A1)})
    else:
        report.add("associate %s" % args.category, True, "inline",
                   witness={"text": text},
                   counts={"A0": len(internal.A0), "A1": len(internal.A1)})
    report.add("internal poset", ic.internal_poset_check(internal),
               "dom/cod jointly injective" if ic.internal_poset_check(internal)
               else "parallel arrows collide")


def cmd_externalize(args, report: Report) -> None:
    internal = load_internal(args.internal)
    carrier = [tok for tok in args.carrier.split(",") if tok]
    ext = ic.externalize(internal, carrier)
    violations = ext.indexed.validate_split()
    report.add("split laws", not violations,
               "; ".join("%s at %s" % (v.kind, v.at) for v in violations) or "all reindexings split")
    gen = ic.generic_object(ext)
    report.add("generic object", gen.ok, "Omega = {%s}" % ",".join(gen.omega))
    if args.hom_object:
        index_id, x, y = args.hom_object
        witness = ic.hom_object(ext, index_id, x, y, cap=args.cap)
        report.add("hom object", witness.complete,
                   "%d elements, %d probes" % (len(witness.elements), witness.probes_checked),
                   witness={"elements": list(map(list, witness.elements))})


def cmd_freyd(args, report: Report) -> None:
    cat = load_category(args.category)
    start = time.monotonic()
    verdict = fr.finite_freyd_audit(cat, cap=args.cap)
    took = time.monotonic() - start
    witness = {"morphisms": verdict.morphism_count}
    if not verdict.posetal:
        witness.update({"lambda": verdict.lam, "parallel_pair_at": list(verdict.witness_pair),
                        "hom_power_count": verdict.power_count,
                        "diagonal_adjoint_missing": verdict.diagonal_adjoint_missing,
                        "kan_along_codiagonal_missing": verdict.kan_missing,
                        "routes_agree": verdict.routes_agree})
    report.add("freyd audit", verdict.posetal, verdict.obstruction, witness=witness,
               seconds=took)


def cmd_consequence(args, report: Report) -> None:
    sat = load_satisfaction(args.matrix)
    if args.psi:
        gamma = [tok for tok in (args.gamma or "").split(",") if tok]
        value = e2.semantic_consequence(sat, gamma, args.psi)
        report.add("consequence {%s} |= %s" % (",".join(gamma), args.psi), value,
                   "holds" if value else "fails")
    if args.closure_laws:
        T = e2.density_product(sat)
        laws = T.check_laws()
        report.add("closure laws", laws.ok,
                   "extensive=%s monotone=%s idempotent=%s"
                   % (laws.extensive, laws.monotone, laws.idempotent))
    if not args.psi and not args.closure_laws:
        raise StructureError("consequence needs --psi or --closure-laws")


def cmd_roundtrip(args, report: Report) -> None:
    cat = load_category(args.category)
    internal = ic.associated_category(cat)
    back = ic.internal_to_category(internal)
    ok = are_isomorphic(back, cat)
    report.add("roundtrip %s" % args.category, ok,
               "associated category externalizes back up to isomorphism" if ok
               else "roundtrip image is not isomorphic")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the structured report")
    common.add_argument("--cap", type=int, default=None,
                        help="enumeration cap (default WORKBENCH_CAP or 10^6)")
    parser = argparse.ArgumentParser(
        prog="fincat",
        description="Finite-category workbench: validation, adjoints, Kan "
                    "extensions, internal categories, incompleteness audits "
                    "and consequence closures.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name: str, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("validate", help="check category laws on a fixture file")
    p.add_argument("--category")
    p.add_argument("--internal")
    p.set_defaults(run=cmd_validate)

    p = add_parser("adjoint", help="search an adjoint of a functor")
    p.add_argument("--functor", help="JSON functor spec")
    p.add_argument("--category", help="category file for a structural functor")
    p.add_argument("--structural", choices=("diagonal", "bang"))
    p.add_argument("--side", choices=("left", "right"), required=True)
    p.set_defaults(run=cmd_adjoint)

    p = add_parser("connectives", help="internal terminal/initial/products/"
                                           "coproducts/ccc/naive-ccc checks")
    p.add_argument("--category", required=True)
    p.add_argument("--r-closed", choices=("left", "right"), dest="r_closed",
                   help="also check magma closedness of the product structure")
    p.set_defaults(run=cmd_connectives)

    p = add_parser("kan", help="pointwise Kan extension with stability probes")
    p.add_argument("--tau", required=True, help="JSON functor spec")
    p.add_argument("--along", required=True, help="JSON functor spec")
    p.add_argument("--side", choices=("left", "right"), required=True)
    p.set_defaults(run=cmd_kan)

    p = add_parser("associate", help="emit the associated internal category")
    p.add_argument("--category", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_associate)

    p = add_parser("externalize", help="family fibration over a finite universe")
    p.add_argument("--internal", required=True)
    p.add_argument("--carrier", required=True, help="comma-separated carrier elements")
    p.add_argument("--hom-object", nargs=3, metavar=("INDEX", "X", "Y"), dest="hom_object")
    p.set_defaults(run=cmd_externalize)

    p = add_parser("freyd", help="posetal certificate or counting obstruction")
    p.add_argument("--category", required=True)
    p.set_defaults(run=cmd_freyd)

    p = add_parser("consequence", help="semantic consequence and closure laws")
    p.add_argument("--matrix", required=True, help="tab-separated satisfaction matrix")
    p.add_argument("--gamma", help="comma-separated premise sentences")
    p.add_argument("--psi", help="conclusion sentence")
    p.add_argument("--closure-laws", action="store_true", dest="closure_laws")
    p.set_defaults(run=cmd_consequence)

    p = add_parser("roundtrip", help="associate, read back, compare up to isomorphism")
    p.add_argument("--category", required=True)
    p.set_defaults(run=cmd_roundtrip)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = Report(args.command)
    try:
        args.run(args, report)
    except (ParseError, StructureError, OSError) as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT_ERROR
    except CapExceeded as exc:
        print("cap exceeded: %s" % exc, file=sys.stderr)
        return EXIT_CAP
    if args.json:
        print(json.dumps(report.document(), indent=2, sort_keys=True))
    else:
        print(report.render_text())
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
