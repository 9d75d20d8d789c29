"""Labeled triangles T(a, b, c) and the surfaces glued from them."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable

from .chains import CellComplex, Chain, CoefficientGroup, Z, _sort_key


class MalformedSurfaceError(ValueError):
    pass


class Orientation(enum.IntEnum):
    PLUS = 1
    OP = -1

    @property
    def symbol(self) -> str:
        return "+" if self is Orientation.PLUS else "-"


@dataclass(frozen=True)
class LabeledTriangle:
    """Triangle whose faces are labeled d0 -> a, d1 -> b, d2 -> c.

    ``vertices`` is the ordered triple (v0, v1, v2); face d_k omits v_k.
    """

    labels: tuple[str, str, str]
    orientation: Orientation = Orientation.PLUS
    vertices: tuple[int, int, int] | None = None
    id: str | None = None

    def __post_init__(self):
        if len(self.labels) != 3 or not all(self.labels):
            raise MalformedSurfaceError(f"triangle needs three labels, got {self.labels!r}")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "orientation", Orientation(self.orientation))
        if self.vertices is not None:
            if len(self.vertices) != 3:
                raise MalformedSurfaceError(f"triangle needs three vertices, got {self.vertices!r}")
            object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def is_op(self) -> bool:
        return self.orientation is Orientation.OP

    def reversed(self) -> "LabeledTriangle":
        return replace(self, orientation=Orientation(-self.orientation))

    def face_vertices(self, pos: int) -> tuple[int, int]:
        v = self.vertices
        return tuple(v[k] for k in range(3) if k != pos)

    def __str__(self):
        a, b, c = self.labels
        return f"T{'^op' if self.is_op else ''}({a},{b},{c})"


def T(a: str, b: str, c: str, vertices=None, id=None) -> LabeledTriangle:
    return LabeledTriangle((a, b, c), Orientation.PLUS, vertices, id)


def Top(a: str, b: str, c: str, vertices=None, id=None) -> LabeledTriangle:
    return LabeledTriangle((a, b, c), Orientation.OP, vertices, id)


def labeled_boundary(t: LabeledTriangle | Iterable[LabeledTriangle], group: CoefficientGroup = Z) -> Chain:
    """Boundary over edge labels: a - b + c for T(a,b,c), negated for T^op.

    Accepts a single triangle or an iterable of them (their sum).
    """
    tris = [t] if isinstance(t, LabeledTriangle) else list(t)
    items = []
    for tri in tris:
        for pos, label in enumerate(tri.labels):
            items.append((label, (-1) ** pos * int(tri.orientation)))
    return Chain.from_terms(1, items, group)


EdgeGlue = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class LabeledSurface:
    """Triangles glued along shared edge labels.

    ``identifications`` are explicit edge gluings ``((u, v), (x, y))``: the
    edge u->v is identified with x->y.  Triangles without vertices are glued
    purely by label.
    """

    triangles: tuple[LabeledTriangle, ...]
    identifications: tuple[EdgeGlue, ...] = ()
    name: str = ""

    def __post_init__(self):
        tris = []
        for k, t in enumerate(self.triangles):
            tris.append(t if t.id else replace(t, id=f"t{k}"))
        ids = [t.id for t in tris]
        if len(set(ids)) != len(ids):
            raise MalformedSurfaceError(f"duplicate triangle ids in {ids}")
        object.__setattr__(self, "triangles", tuple(tris))
        object.__setattr__(self, "identifications", tuple(
            (tuple(a), tuple(b)) for a, b in self.identifications))

    # -- combinatorics -------------------------------------------------

    def label_uses(self) -> Counter:
        return Counter(lab for t in self.triangles for lab in t.labels)

    def validate(self) -> None:
        for label, n in sorted(self.label_uses().items()):
            if n > 2:
                raise MalformedSurfaceError(f"edge label {label!r} is used by {n} triangle sides")

    @property
    def labels(self) -> list[str]:
        return sorted(self.label_uses())

    @property
    def boundary_labels(self) -> list[str]:
        """Unglued labels, in boundary-walk order when the boundary is one simple cycle."""
        free = sorted(lab for lab, n in self.label_uses().items() if n == 1)
        cycles = self.boundary_cycles()
        if cycles is not None and sorted(lab for cyc in cycles for lab in cyc) == free:
            return [lab for cyc in cycles for lab in cyc]
        return free

    @property
    def interior_labels(self) -> list[str]:
        return sorted(lab for lab, n in self.label_uses().items() if n == 2)

    def triangle(self, id: str) -> LabeledTriangle:
        for t in self.triangles:
            if t.id == id:
                return t
        raise KeyError(id)

    # -- operations -----------------------------------------------------

    def reversed(self) -> "LabeledSurface":
        """Flip every triangle's orientation (boundary traversal reverses)."""
        return replace(self, triangles=tuple(t.reversed() for t in self.triangles))

    def glue(self, other: "LabeledSurface", name: str = "") -> "LabeledSurface":
        """Disjoint union of triangles; shared labels and vertex ids are identified."""
        mine = {t.id for t in self.triangles}
        theirs = []
        for t in other.triangles:
            tid = t.id if t.id not in mine else f"{other.name or 'g'}.{t.id}"
            theirs.append(replace(t, id=tid))
        return LabeledSurface(self.triangles + tuple(theirs),
                              self.identifications + other.identifications,
                              name or f"{self.name}+{other.name}")

    def fundamental_chain(self, group: CoefficientGroup = Z) -> Chain:
        return Chain.from_terms(2, [(t.id, int(t.orientation)) for t in self.triangles], group)

    def labeled_boundary(self, group: CoefficientGroup = Z) -> Chain:
        return labeled_boundary(self.triangles, group)

    def euler_characteristic(self) -> int:
        return self.cell_complex().euler_characteristic()

    def cell_complex(self) -> CellComplex:
        """The glued cell structure: vertex classes, one 1-cell per label, one 2-cell per triangle."""
        self.validate()
        return _build_complex(self)

    def boundary_cycles(self) -> list[tuple[str, ...]] | None:
        """Boundary of the fundamental class walked as directed cycles of labels.

        Each cycle is rotated to start at its smallest label.  ``None`` when the
        boundary is not a disjoint union of simple directed cycles.
        """
        try:
            cx = self.cell_complex()
        except MalformedSurfaceError:
            return None
        bd = cx.boundary(self.fundamental_chain())
        out_edges: dict = {}
        for label, c in bd.terms.items():
            if abs(c) != 1:
                return None
            ends = cx.boundaries[1][label].terms
            if not ends:  # loop
                tail = head = cx.edge_ends[label][0]
            else:
                tail = next(v for v, s in ends.items() if s < 0)
                head = next(v for v, s in ends.items() if s > 0)
            if c < 0:
                tail, head = head, tail
            if tail in out_edges:
                return None
            out_edges[tail] = (label, head)
        cycles = []
        while out_edges:
            start = min(out_edges, key=_sort_key)
            cyc, v = [], start
            while v in out_edges:
                label, nxt = out_edges.pop(v)
                cyc.append(label)
                v = nxt
            if v != start:
                return None
            k = cyc.index(min(cyc))
            cycles.append(tuple(cyc[k:] + cyc[:k]))
        return sorted(cycles)


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            lo, hi = sorted((ra, rb), key=_sort_key)
            self.parent[hi] = lo


# face d_k of (v0, v1, v2) as a directed pair
_FACE = {0: (1, 2), 1: (0, 2), 2: (0, 1)}


def _build_complex(s: LabeledSurface) -> CellComplex:
    glues = list(s.identifications)
    occurrences: list[tuple[str, str, int, tuple]] = []  # (label, tri id, pos, raw pair)
    first_seen: dict[str, tuple] = {}
    for t in s.triangles:
        verts = t.vertices if t.vertices is not None else tuple(f"{t.id}.{k}" for k in range(3))
        for pos, label in enumerate(t.labels):
            i, j = _FACE[pos]
            pair = (verts[i], verts[j])
            occurrences.append((label, t.id, pos, pair))
            if t.vertices is None:
                # label-only gluing: same label means same directed edge
                if label in first_seen:
                    glues.append((first_seen[label], pair))
            first_seen.setdefault(label, pair)
    uf = _UnionFind()
    for _, _, _, (u, v) in occurrences:
        uf.find(u), uf.find(v)
    for (u, v), (x, y) in glues:
        uf.union(u, x)
        uf.union(v, y)

    def glue_sign(ref, pair):
        for a, b in glues:
            for p, q in ((a, b), (b, a)):
                if set(p) == set(ref) and set(q) == set(pair):
                    s1 = 1 if p == ref else -1
                    s2 = 1 if q == pair else -1
                    return s1 * s2
        return None

    ref: dict[str, tuple] = {}
    signs: dict[tuple[str, int], int] = {}
    for label, tid, pos, pair in occurrences:
        if label not in ref:
            ref[label] = pair
            signs[(tid, pos)] = 1
            continue
        r = ref[label]
        if pair == r:
            sign = 1
        elif pair == r[::-1]:
            sign = -1
        else:
            sign = glue_sign(r, pair)
            if sign is None:
                cr = (uf.find(r[0]), uf.find(r[1]))
                cp = (uf.find(pair[0]), uf.find(pair[1]))
                if cr[0] == cr[1] and cp == cr:
                    raise MalformedSurfaceError(
                        f"loop edge {label!r} glued without an explicit identification")
                if cp == cr:
                    sign = 1
                elif cp == cr[::-1]:
                    sign = -1
                else:
                    raise MalformedSurfaceError(
                        f"edge label {label!r} joins {cp} but was first seen joining {cr}")
        signs[(tid, pos)] = sign

    vertices = sorted({uf.find(v) for _, _, _, p in occurrences for v in p}, key=_sort_key)
    edges = sorted(ref)
    cells = {0: vertices, 1: edges, 2: [t.id for t in s.triangles]}
    bounds = {0: {v: Chain.zero(-1) for v in vertices}, 1: {}, 2: {}}
    edge_ends = {}
    for label, (u, v) in ref.items():
        cu, cv = uf.find(u), uf.find(v)
        edge_ends[label] = (cu, cv)
        bounds[1][label] = Chain.from_terms(0, [(cv, 1), (cu, -1)])
    for t in s.triangles:
        # 2-cell is the simplex in vertex order; T^op enters through the fundamental chain
        items = [(lab, (-1) ** pos * signs[(t.id, pos)]) for pos, lab in enumerate(t.labels)]
        bounds[2][t.id] = Chain.from_terms(1, items)
    return CellComplex(cells, bounds, edge_ends)
