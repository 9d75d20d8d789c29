"""Command-line front end: ``cochainmoves <command> <file> [options]``.

Reports are ``KEY=VALUE`` lines.  Exit status: 0 ok, 1 check failed, 2 parse error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .ainfinity import (SignConvention, build_from_surface, degree_audit, edge_labels_of, probes,
                        relation_sides)
from .chains import CoefficientGroup
from .document import ComplexDocument, ParseError, parse_document
from .homology import format_homology, homology
from .moves import (PENTAGON_ROLES, check_cylinder, check_move_13, check_move_22, check_pentagon,
                    pentagon_states, poincare_dual)
from .surfaces import MalformedSurfaceError

COMMANDS = ("homology", "dual", "move22", "move13", "cylinder", "pentagon", "ainf", "boundary")
BUNDLED = ("s4.cplx", "square22.cplx", "square.cplx", "tri13.cplx", "cylinder.cplx", "pentagon.cplx")


@dataclass
class Report:
    lines: list[str] = field(default_factory=list)
    status: int = 0

    def add(self, key: str, value) -> None:
        self.lines.append(f"{key}={value}")

    def extend(self, text: str) -> None:
        self.lines.extend(text.rstrip("\n").split("\n"))

    def fail(self) -> None:
        self.status = max(self.status, 1)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("cochainmoves") / "data" / name))


def _homology(doc, report, coeff, **_):
    for s in doc.labeled_surfaces():
        report.add("SURFACE", s.name)
        cx = s.cell_complex()
        report.add("CELLS", ",".join(map(str, cx.cell_counts())))
        report.add("EULER", cx.euler_characteristic())
        report.lines.append(format_homology(homology(cx, coeff)))


def _boundary(doc, report, coeff, **_):
    for s in doc.labeled_surfaces():
        report.add("SURFACE", s.name)
        report.add("BOUNDARY", s.labeled_boundary(coeff).format())
        cycles = s.boundary_cycles()
        report.add("CYCLES", "none" if not cycles else ";".join(",".join(c) for c in cycles))


def _dual(doc, report, coeff, **_):
    for s in doc.labeled_surfaces():
        d = poincare_dual(s)
        report.add("SURFACE", s.name)
        report.add("DUAL_VERTICES", len(d.vertices))
        report.add("DUAL_EDGES", len(d.edges))
        report.add("DUAL_FACES", len(d.faces))
        report.add("HALF_EDGES", sum(e.is_half_edge for e in d.edges))
        report.add("TRIVALENT", str(d.trivalent).lower())
        for vid, state in d.vertices:
            report.add(f"VERTEX_{vid}", state)
        report.add("DUAL_BOUNDARY", d.total_boundary(coeff).format())


def _need(doc: ComplexDocument, n: int, command: str):
    surfaces = doc.labeled_surfaces()
    if len(surfaces) < n:
        raise MalformedSurfaceError(f"{command} needs {n} surfaces, the document has {len(surfaces)}")
    return surfaces


def _move22(doc, report, coeff, **_):
    left, right = _need(doc, 2, "move22")[:2]
    cert = check_move_22(left, right, coeff)
    report.extend(cert.serialize())
    if not cert.valid:
        report.fail()


def _move13(doc, report, coeff, **_):
    unsplit, split = _need(doc, 2, "move13")[:2]
    if len(unsplit.triangles) != 1:
        raise MalformedSurfaceError("the first surface of a move13 document is the unsplit triangle")
    cert = check_move_13(unsplit.triangles[0], split, coeff)
    report.extend(cert.serialize())
    if not cert.valid:
        report.fail()


def _cylinder(doc, report, coeff, **_):
    (c, *_rest) = _need(doc, 1, "cylinder")
    cert = check_cylinder(c, group=coeff)
    report.extend(cert.serialize())
    if not cert.valid:
        report.fail()


def _pentagon(doc, report, coeff, **_):
    if not doc.pentagons:
        raise MalformedSurfaceError("no pentagon declared")
    verts = sorted(doc.pentagons[0])
    labels = edge_labels_of(doc.labeled_surfaces())
    roles = {}
    for role, (x, y) in PENTAGON_ROLES.items():
        key = frozenset((verts[x], verts[y]))
        if key not in labels:
            raise MalformedSurfaceError(f"pentagon edge {verts[x]}-{verts[y]} has no label")
        roles[role] = labels[key]
    result = check_pentagon([roles[r] for r in "abcde"], [roles[r] for r in "pqrst"], coeff)
    report.extend(result.certificate.serialize())
    index = {v: k for k, v in enumerate(verts)}
    states = {s.diagonals for s in pentagon_states()}
    found = 0
    for s in doc.labeled_surfaces():
        tris = {tuple(sorted(index[v] for v in t.vertices)) for t in s.triangles if t.vertices}
        diags = frozenset(e for t in tris for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2]))
                          if e not in {(k, k + 1) for k in range(4)} | {(0, 4)})
        found += diags in states and len(tris) == 3
    report.add("DOCUMENT_TRIANGULATIONS", found)
    if not result.certificate.valid:
        report.fail()


def _ainf(doc, report, coeff, convention, probe, **_):
    surfaces = _need(doc, 1, "ainf")
    ambient = surfaces[0]
    labels = edge_labels_of(surfaces)
    extra = [(e.arity, e.inputs, e.output, e.sign) for e in (doc.mtable or [])]
    data = build_from_surface(ambient, doc.polygons, labels, extra, convention, coeff)
    report.add("SURFACE", ambient.name)
    report.add("CONVENTION", convention.value)
    warnings = degree_audit(data)
    report.add("DEGREE_WARNINGS", len(warnings))
    for w in warnings:
        report.add("WARNING", w)
    available = probes(data, doc.polygons, labels)
    wanted = [probe] if probe else sorted(available)
    for name in wanted:
        if name not in available:
            raise MalformedSurfaceError(f"probe {name} is not available for this document")
        x, chain = available[name]
        left, right = relation_sides(data, int(name[1:]), x, chain)
        residual = coeff.reduce(left - right)
        report.add("PROBE", name)
        report.add("INPUT", " ".join(x))
        report.add("CHAIN", chain.format())
        report.lines.append(f"LEFT={left} RIGHT={right} RESIDUAL={residual}")
        if residual:
            report.fail()


HANDLERS = {"homology": _homology, "dual": _dual, "move22": _move22, "move13": _move13,
            "cylinder": _cylinder, "pentagon": _pentagon, "ainf": _ainf, "boundary": _boundary}


def run(command: str, document: ComplexDocument, coeff: CoefficientGroup = CoefficientGroup(),
        convention: SignConvention = SignConvention.STANDARD, probe: str | None = None,
        filename: str = "-") -> Report:
    report = Report()
    report.add("COMMAND", command)
    report.add("FILE", filename)
    report.add("COEFF", coeff)
    try:
        HANDLERS[command](document, report, coeff=coeff, convention=convention, probe=probe)
    except (MalformedSurfaceError, ValueError) as exc:
        report.add("ERROR", exc)
        report.fail()
    return report


def _resolve(path: str) -> tuple[Path, bool]:
    p = Path(path)
    if p.exists():
        try:
            bundled = p.resolve().parent == bundled_path("").resolve()
        except OSError:
            bundled = False
        return p, bundled
    if p.name in BUNDLED:
        return bundled_path(p.name), True
    return p, False


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cochainmoves", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file", help="a .cplx file, or the name of a bundled example")
    ap.add_argument("--coeff", default="z", help="coefficient group: z or zN (default z)")
    ap.add_argument("--convention", choices=[c.value for c in SignConvention],
                    help="A-infinity sign convention (default: paper for bundled examples, standard otherwise)")
    ap.add_argument("--probe", choices=["n1", "n2", "n3", "n4"])
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    path, bundled = _resolve(args.file)
    try:
        coeff = CoefficientGroup.parse(args.coeff)
    except ValueError as exc:
        print(f"ERROR={exc}")
        return 2
    try:
        doc = parse_document(path.read_text(encoding="utf-8"))
    except ParseError as exc:
        sys.stdout.write(f"COMMAND={args.command}\nFILE={path.name}\nERROR={exc}\n")
        return 2
    except OSError as exc:
        sys.stdout.write(f"ERROR={exc.strerror}: {args.file}\n")
        return 2
    if args.convention:
        convention = SignConvention(args.convention)
    else:
        convention = SignConvention.PAPER if bundled else SignConvention.STANDARD
    report = run(args.command, doc, coeff, convention, args.probe, path.name)
    sys.stdout.write(report.text())
    return report.status


if __name__ == "__main__":
    raise SystemExit(main())
