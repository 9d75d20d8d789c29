"""Line-oriented ``.cplx`` complex descriptions.

::

    # comment
    surface left
    vertex 0 1 2 3
    triangle 0 1 3 labels m j i orient + name alpha
    glue 0 1 = 3 2
    square 0 1 2 3
    pentagon 0 1 2 3 4
    mtable
    m2: l* i* -> n*
    sign - m3: k* l* i* -> j*
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field

from .surfaces import LabeledSurface, LabeledTriangle, Orientation


class ParseError(ValueError):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"{line}:{col}: {message}")
        self.line, self.col, self.message = line, col, message


@dataclass(frozen=True)
class TriangleDecl:
    vertices: tuple[int, int, int]
    labels: tuple[str, str, str]
    orientation: Orientation = Orientation.PLUS
    name: str | None = None


@dataclass
class SurfaceDecl:
    name: str
    vertices: list[int] = field(default_factory=list)
    triangles: list[TriangleDecl] = field(default_factory=list)
    glues: list[tuple[tuple[int, int], tuple[int, int]]] = field(default_factory=list)

    def to_surface(self) -> LabeledSurface:
        tris = tuple(LabeledTriangle(t.labels, t.orientation, t.vertices, t.name) for t in self.triangles)
        return LabeledSurface(tris, tuple(self.glues), self.name)


@dataclass(frozen=True)
class MEntry:
    arity: int
    inputs: tuple[str, ...]
    output: str
    sign: int = 1


@dataclass
class ComplexDocument:
    surfaces: list[SurfaceDecl] = field(default_factory=list)
    squares: list[tuple[int, ...]] = field(default_factory=list)
    pentagons: list[tuple[int, ...]] = field(default_factory=list)
    mtable: list[MEntry] | None = None

    def surface(self, name: str) -> SurfaceDecl:
        return next(s for s in self.surfaces if s.name == name)

    def labeled_surfaces(self) -> list[LabeledSurface]:
        return [s.to_surface() for s in self.surfaces]

    @property
    def polygons(self) -> list[tuple[int, ...]]:
        return list(self.squares) + list(self.pentagons)


_TOKEN = re.compile(r"\S+")
_MLINE = re.compile(r"^(?:sign\s+(?P<sign>[+-])\s+)?m(?P<n>\d+)\s*:\s*(?P<ins>.*?)\s*->\s*(?P<out>\S+)\s*$")
KEYWORDS = ("surface", "vertex", "triangle", "glue", "square", "pentagon", "mtable")


def _int(tok: tuple[int, str], lineno: int) -> int:
    col, text = tok
    if not re.fullmatch(r"\d+", text):
        raise ParseError(lineno, col, f"expected a vertex id, got {text!r}")
    return int(text)


def parse_document(text: str) -> ComplexDocument:
    doc = ComplexDocument()
    current: SurfaceDecl | None = None
    in_mtable = False
    uses: dict[str, Counter] = {}
    saw_content = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in _TOKEN.finditer(line)]
        if not toks:
            continue
        saw_content = True
        col, kw = toks[0]
        if in_mtable and kw not in KEYWORDS:
            m = _MLINE.match(line.strip())
            if not m:
                raise ParseError(lineno, col, "expected 'mN: x* ... -> y*' in mtable section")
            n = int(m.group("n"))
            inputs = tuple(m.group("ins").split())
            if len(inputs) != n:
                raise ParseError(lineno, col, f"m{n} takes {n} inputs, got {len(inputs)}")
            doc.mtable.append(MEntry(n, inputs, m.group("out"), -1 if m.group("sign") == "-" else 1))
            continue
        in_mtable = False
        args = toks[1:]
        if kw == "surface":
            if len(args) != 1:
                raise ParseError(lineno, col, "surface takes exactly one name")
            name = args[0][1]
            if any(s.name == name for s in doc.surfaces):
                raise ParseError(lineno, args[0][0], f"duplicate surface {name!r}")
            current = SurfaceDecl(name)
            doc.surfaces.append(current)
            uses[name] = Counter()
        elif kw in ("vertex", "triangle", "glue"):
            if current is None:
                raise ParseError(lineno, col, f"{kw} outside of a surface")
            if kw == "vertex":
                if not args:
                    raise ParseError(lineno, col, "vertex needs at least one id")
                current.vertices.extend(_int(t, lineno) for t in args)
            elif kw == "triangle":
                current.triangles.append(_parse_triangle(args, lineno, col, current, uses[current.name]))
            else:
                words = [t[1] for t in args]
                if len(args) != 5 or words[2] != "=":
                    raise ParseError(lineno, col, "glue takes 'u v = x y'")
                u, v, _, x, y = args
                current.glues.append(((_int(u, lineno), _int(v, lineno)), (_int(x, lineno), _int(y, lineno))))
        elif kw in ("square", "pentagon"):
            want = 4 if kw == "square" else 5
            if len(args) != want:
                raise ParseError(lineno, col, f"{kw} takes {want} vertices, got {len(args)}")
            verts = tuple(_int(t, lineno) for t in args)
            (doc.squares if kw == "square" else doc.pentagons).append(verts)
        elif kw == "mtable":
            if args:
                raise ParseError(lineno, args[0][0], "mtable takes no arguments")
            if doc.mtable is None:
                doc.mtable = []
            in_mtable = True
        else:
            raise ParseError(lineno, col, f"unknown keyword {kw!r}")
    if not saw_content:
        raise ParseError(1, 1, "empty document")
    return doc


def _parse_triangle(args, lineno, col, surface: SurfaceDecl, used: Counter) -> TriangleDecl:
    words = [t[1] for t in args]
    if len(args) < 9 or words[3] != "labels" or words[7] != "orient":
        raise ParseError(lineno, col, "triangle takes 'v0 v1 v2 labels a b c orient +|-' [name N]")
    verts = tuple(_int(t, lineno) for t in args[:3])
    if surface.vertices:
        for tok, v in zip(args[:3], verts):
            if v not in surface.vertices:
                raise ParseError(lineno, tok[0], f"vertex {v} is not declared in surface {surface.name!r}")
    labels = tuple(words[4:7])
    for tok, lab in zip(args[4:7], labels):
        used[lab] += 1
        if used[lab] > 2:
            raise ParseError(lineno, tok[0], f"label {lab!r} used by more than two triangle sides")
    if words[8] not in "+-" or len(words[8]) != 1:
        raise ParseError(lineno, args[8][0], f"orientation must be + or -, got {words[8]!r}")
    orient = Orientation.PLUS if words[8] == "+" else Orientation.OP
    name = None
    rest = args[9:]
    if rest:
        if len(rest) != 2 or rest[0][1] != "name":
            raise ParseError(lineno, rest[0][0], "trailing tokens after triangle; expected 'name N'")
        name = rest[1][1]
        if any(t.name == name for t in surface.triangles):
            raise ParseError(lineno, rest[1][0], f"duplicate triangle name {name!r}")
    return TriangleDecl(verts, labels, orient, name)


def serialize_document(doc: ComplexDocument) -> str:
    out = []
    for s in doc.surfaces:
        out.append(f"surface {s.name}")
        if s.vertices:
            out.append("vertex " + " ".join(map(str, s.vertices)))
        for t in s.triangles:
            line = (f"triangle {' '.join(map(str, t.vertices))} labels {' '.join(t.labels)} "
                    f"orient {t.orientation.symbol}")
            if t.name:
                line += f" name {t.name}"
            out.append(line)
        for (u, v), (x, y) in s.glues:
            out.append(f"glue {u} {v} = {x} {y}")
    for sq in doc.squares:
        out.append("square " + " ".join(map(str, sq)))
    for p in doc.pentagons:
        out.append("pentagon " + " ".join(map(str, p)))
    if doc.mtable is not None:
        out.append("mtable")
        for e in doc.mtable:
            prefix = "sign - " if e.sign < 0 else ""
            out.append(f"{prefix}m{e.arity}: {' '.join(e.inputs)} -> {e.output}")
    return "\n".join(out) + "\n"
