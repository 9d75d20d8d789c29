"""Poincare duals of labeled surfaces and certificates for 2-2, 1-3, cylinder and pentagon moves.

A certificate replaces an isomorphism claim by two checkable facts: the
glued dual 2-chain has zero boundary, and the glued complex has the expected
homology.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .chains import Chain, CoefficientGroup, Z, normalize_simplex
from .homology import GroupDescriptor, format_homology, homology
from .surfaces import LabeledSurface, LabeledTriangle, MalformedSurfaceError, Orientation


def star(label: str) -> str:
    return f"{label}*"


@dataclass(frozen=True)
class StateSpaceLabel:
    """H(a*,b*,c*) = Hom(b*, a* (x) c*), or H^op(a*,b*,c*) = Hom(a* (x) c*, b*)."""

    kind: str
    labels: tuple[str, str, str]

    @classmethod
    def of(cls, t: LabeledTriangle) -> "StateSpaceLabel":
        return cls("Hop" if t.is_op else "H", t.labels)

    @property
    def legs(self) -> list[tuple[str, int]]:
        """Dual legs with direction: +1 outgoing, -1 incoming."""
        a, b, c = self.labels
        sign = -1 if self.kind == "Hop" else 1
        return [(a, sign), (b, -sign), (c, sign)]

    def hom(self) -> str:
        a, b, c = map(star, self.labels)
        return f"Hom({b},{a}(x){c})" if self.kind == "H" else f"Hom({a}(x){c},{b})"

    def __str__(self):
        name = "H^op" if self.kind == "Hop" else "H"
        return f"{name}({','.join(map(star, self.labels))})"


@dataclass(frozen=True)
class DualEdge:
    label: str
    ends: tuple[str, ...]

    @property
    def is_half_edge(self) -> bool:
        return len(self.ends) == 1


@dataclass(frozen=True)
class DualComplex:
    vertices: tuple[tuple[str, StateSpaceLabel], ...]
    edges: tuple[DualEdge, ...]
    faces: tuple[tuple[object, tuple[str, ...]], ...]

    @property
    def degrees(self) -> dict[str, int]:
        deg = {v: 0 for v, _ in self.vertices}
        for e in self.edges:
            for v in e.ends:
                deg[v] += 1
        return deg

    @property
    def trivalent(self) -> bool:
        return all(d == 3 for d in self.degrees.values())

    def total_boundary(self, group: CoefficientGroup = Z) -> Chain:
        """Sum over dual vertices of outgoing minus incoming legs, in starred labels."""
        items = [(star(lab), s) for _, st in self.vertices for lab, s in st.legs]
        return Chain.from_terms(1, items, group)


def poincare_dual(s: LabeledSurface) -> DualComplex:
    """One dual vertex per triangle, one dual edge per label, one dual face per interior vertex."""
    s.validate()
    cx = s.cell_complex()
    vertices = tuple((t.id, StateSpaceLabel.of(t)) for t in s.triangles)
    users: dict[str, list[str]] = {}
    for t in s.triangles:
        for lab in t.labels:
            users.setdefault(lab, []).append(t.id)
    edges = tuple(DualEdge(lab, tuple(users[lab])) for lab in sorted(users))
    faces = []
    for v in cx.basis(0):
        incident = [lab for lab, ends in cx.edge_ends.items() if v in ends]
        if incident and all(len(users[lab]) == 2 for lab in incident):
            around = sorted({tid for lab in incident for tid in users[lab]})
            faces.append((v, tuple(around)))
    return DualComplex(vertices, edges, tuple(faces))


def sphere_signature(group: CoefficientGroup = Z) -> tuple[GroupDescriptor, ...]:
    m = group.modulus
    return (GroupDescriptor(1, (), m), GroupDescriptor(0, (), m), GroupDescriptor(1, (), m))


@dataclass
class MoveCertificate:
    move_kind: str
    boundary_labels_match: bool
    glued_complex: LabeledSurface | None
    total_dual_boundary: Chain
    coefficient_index_count: int
    sphere_check: tuple[GroupDescriptor, ...] | None = None
    mismatch_position: int | None = None
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)
    group: CoefficientGroup = Z

    @property
    def valid(self) -> bool:
        ok = self.boundary_labels_match and not self.total_dual_boundary
        if self.move_kind in ("22", "13"):
            ok = ok and self.sphere_check == sphere_signature(self.group)
        return ok and all(self.checks.values())

    def serialize(self) -> str:
        lines = [f"MOVE={self.move_kind}", f"VALID={str(self.valid).lower()}",
                 f"BOUNDARY_MATCH={str(self.boundary_labels_match).lower()}"]
        if self.mismatch_position is not None:
            lines.append(f"MISMATCH_POSITION={self.mismatch_position}")
        lines.append(f"DUAL_BOUNDARY={self.total_dual_boundary.format()}")
        lines.append(f"COEFF_INDEX={self.coefficient_index_count}")
        if self.sphere_check is not None:
            lines.append(format_homology(self.sphere_check))
        for k, v in self.checks.items():
            lines.append(f"{k}={str(v).lower()}")
        for k, v in self.details.items():
            lines.append(f"{k}={v}")
        return "\n".join(lines) + "\n"


def _cycle_mismatch(a: Sequence[str], b: Sequence[str]) -> int | None:
    if list(a) == list(b):
        return None
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return min(len(a), len(b))


def _compare_boundaries(x: LabeledSurface, y: LabeledSurface) -> tuple[bool, int | None]:
    cx, cy = x.boundary_cycles(), y.boundary_cycles()
    same_chain = x.labeled_boundary() == y.labeled_boundary()
    if cx is None or cy is None:
        return same_chain and cx == cy, None if same_chain else 0
    flat_x = [lab for c in cx for lab in c]
    flat_y = [lab for c in cy for lab in c]
    pos = _cycle_mismatch(flat_x, flat_y)
    if pos is None and not same_chain:
        pos = 0
    return pos is None, pos


def _glued_facts(glued: LabeledSurface, group: CoefficientGroup):
    """(total dual boundary, 1-cell count, homology) or Nones when the gluing is malformed."""
    try:
        dual = poincare_dual(glued)
        groups = tuple(homology(glued, group))
        return dual.total_boundary(group), len(glued.cell_complex().basis(1)), groups
    except MalformedSurfaceError:
        bd = glued.labeled_boundary(group)
        return Chain(1, {star(k): v for k, v in bd.terms.items()}, group), len(glued.labels), None


def check_move_22(left: LabeledSurface, right: LabeledSurface, group: CoefficientGroup = Z) -> MoveCertificate:
    """Certify the 2-2 move taking the two-triangle square ``left`` to ``right``."""
    for s in (left, right):
        s.validate()
        if len(s.triangles) != 2 or len(s.interior_labels) != 1:
            raise MalformedSurfaceError(f"{s.name or 'surface'} is not a two-triangle square")
    match, pos = _compare_boundaries(left, right)
    glued = left.glue(right.reversed(), name=f"{left.name or 'left'}|{right.name or 'right'}")
    total, n_edges, groups = _glued_facts(glued, group)
    return MoveCertificate(
        "22", match, glued, total, n_edges, groups, pos, group=group,
        details={"DIAGONALS": f"{left.interior_labels[0]}->{right.interior_labels[0]}"})


def split_13(t: LabeledTriangle, center: int, spokes: Mapping[int, str]) -> LabeledSurface:
    """Subdivide ``t`` at a new vertex ``center`` joined to each corner by ``spokes[corner]``."""
    if t.vertices is None:
        raise MalformedSurfaceError("splitting needs the triangle's vertices")
    tris = []
    for k in range(3):
        face = t.face_vertices(k)
        canon, sign = normalize_simplex((center,) + face)
        labels = []
        for p in range(3):
            edge = tuple(v for q, v in enumerate(canon) if q != p)
            if center in edge:
                labels.append(spokes[next(v for v in edge if v != center)])
            else:
                labels.append(t.labels[k])
        orient = Orientation(int(t.orientation) * (-1) ** k * sign)
        tris.append(LabeledTriangle(tuple(labels), orient, canon))
    tris.sort(key=lambda x: (x.is_op, x.vertices))
    return LabeledSurface(tuple(tris), name=f"split({t})")


def fuse_13(split: LabeledSurface) -> LabeledTriangle:
    """The single triangle spanned by the boundary of a split triangle."""
    cx = split.cell_complex()
    free = [lab for lab, n in split.label_uses().items() if n == 1]
    by_pair = {}
    for lab in free:
        u, v = cx.edge_ends[lab]
        by_pair[frozenset((u, v))] = lab
    corners = sorted({v for lab in free for v in cx.edge_ends[lab]})
    if len(corners) != 3 or len(by_pair) != 3:
        raise MalformedSurfaceError("boundary of the split surface is not a triangle")
    labels = tuple(by_pair[frozenset(c for q, c in enumerate(corners) if q != p)] for p in range(3))
    for orient in Orientation:
        t = LabeledTriangle(labels, orient, tuple(corners))
        if LabeledSurface((t,)).labeled_boundary() == split.labeled_boundary():
            return t
    raise MalformedSurfaceError("split surface boundary is not a triangle boundary")


def check_move_13(unsplit: LabeledTriangle, split: LabeledSurface, group: CoefficientGroup = Z) -> MoveCertificate:
    """Certify the 1-3 move splitting ``unsplit`` into the three triangles of ``split``."""
    split.validate()
    if len(split.triangles) != 3:
        raise MalformedSurfaceError("a 1-3 split has exactly three triangles")
    whole = LabeledSurface((unsplit,), name="unsplit")
    checks: dict[str, bool] = {}
    interior = split.interior_labels
    closed = len(interior) == 3
    if closed:
        try:
            ends = split.cell_complex().edge_ends
            closed = bool(set.intersection(*(set(ends[lab]) for lab in interior)))
        except MalformedSurfaceError:
            closed = False
    checks["INTERIOR_CLOSED"] = closed
    match, pos = _compare_boundaries(split, whole)
    glued = split.glue(whole.reversed(), name="split|unsplit")
    total, n_edges, groups = _glued_facts(glued, group)

    details = {"INTERIOR": ",".join(interior)}
    ops = [t for t in split.triangles if t.is_op]
    if len(ops) == 1:
        x = ops[0]
        square = tuple(t for t in split.triangles if t is not x)
        try:
            sub = check_move_22(LabeledSurface((x.reversed(), unsplit), name="fused"),
                                LabeledSurface(square, name="split"), group)
            checks["ROUTE_VALID"] = sub.valid
        except MalformedSurfaceError:
            checks["ROUTE_VALID"] = False
        details["ROUTE"] = (f"move22 {x.reversed()}+{unsplit} -> {square[0]}+{square[1]}; "
                            f"cancel {x.reversed()}+{x}")
    else:
        details["ROUTE"] = "none"
    return MoveCertificate("13", match, glued, total, n_edges, groups, pos, checks, details, group)


def _renamed(s: LabeledSurface, mapping: Mapping[str, str]) -> LabeledSurface:
    tris = tuple(LabeledTriangle(tuple(mapping.get(l, l) for l in t.labels), t.orientation, t.vertices, t.id)
                 for t in s.triangles)
    return LabeledSurface(tris, s.identifications, s.name)


def check_cylinder(c: LabeledSurface, colours: Mapping[str, object] | None = None,
                   group: CoefficientGroup = Z) -> MoveCertificate:
    """Kronecker factor between the two boundary circles, plus the torus gluing evidence.

    ``colours`` assigns a value to each circle label; by default a label's
    value is its name, so the factor is 1 exactly when the labels coincide.
    """
    c.validate()
    cx = c.cell_complex()
    circles = sorted(lab for lab, n in c.label_uses().items() if n == 1)
    if cx.euler_characteristic() != 0 or len(circles) != 2 or \
            any(cx.edge_ends[lab][0] != cx.edge_ends[lab][1] for lab in circles):
        raise MalformedSurfaceError("surface is not a cylinder with two boundary circles")
    i, j = circles
    colour = (lambda lab: colours.get(lab, lab)) if colours else (lambda lab: lab)
    factor = 1 if colour(i) == colour(j) else 0

    # second cylinder: same boundary circles, fresh interior labels, glued reversed
    fresh = {lab: f"{lab}'" for lab in c.interior_labels}
    other = _renamed(c, fresh)
    torus = c.glue(other.reversed(), name="torus")
    total, n_edges, groups = _glued_facts(torus, group)
    chi = torus.euler_characteristic()
    m = group.modulus
    expected = (GroupDescriptor(1, (), m), GroupDescriptor(2, (), m), GroupDescriptor(1, (), m))
    checks = {"TORUS_OK": chi == 0 and groups == expected}
    details = {"CIRCLES": f"{i},{j}", "FACTOR": str(factor), "EULER": str(chi),
               "TORUS": format_homology(groups) if groups else "malformed"}
    return MoveCertificate("cylinder", True, torus, total, n_edges, None, None, checks, details, group)


# ---------------------------------------------------------------------------
# pentagon

# edge roles of the pentagon (01234): boundary a..e, diagonals p..t
PENTAGON_ROLES: dict[str, tuple[int, int]] = {
    "a": (3, 4), "b": (2, 3), "c": (1, 2), "d": (0, 1), "e": (0, 4),
    "p": (2, 4), "q": (1, 4), "r": (0, 3), "s": (1, 3), "t": (0, 2),
}
ROOT_EDGE = (0, 4)


def _crosses(d1, d2) -> bool:
    (a, b), (c, d) = d1, d2
    return a < c < b < d or c < a < d < b


@dataclass(frozen=True)
class FSymbol:
    """F^{Q C S}_{A B P}: H^op(A,P,B) (x) H^op(P,Q,C) -> H^op(B,S,C) (x) H^op(A,Q,S)."""

    upper: tuple[str, str, str]
    lower: tuple[str, str, str]
    inverse: bool = False

    def render(self) -> str:
        head = "F^-1" if self.inverse else "F"
        return f"{head}^{{{''.join(map(star, self.upper))}}}_{{{''.join(map(star, self.lower))}}}"


@dataclass(frozen=True)
class IdSymbol:
    """id^{B}_{A C}: identity on the untouched triangle T(A,B,C)."""

    upper: str
    lower: tuple[str, str]

    def render(self) -> str:
        return f"id^{{{star(self.upper)}}}_{{{''.join(map(star, self.lower))}}}"


@dataclass(frozen=True)
class PentagonState:
    diagonals: frozenset

    def triangles(self) -> list[tuple[int, int, int]]:
        edges = set(self.diagonals) | {(k, k + 1) for k in range(4)} | {ROOT_EDGE}
        return [tri for tri in itertools.combinations(range(5), 3)
                if all(pair in edges for pair in itertools.combinations(tri, 2))]


@dataclass
class PentagonStep:
    before: PentagonState
    after: PentagonState
    factors: tuple[FSymbol | IdSymbol, ...]
    certificate: MoveCertificate

    def render(self, tensor: str = "⊗") -> str:
        return "(" + tensor.join(f.render() for f in self.factors) + ")"


def pentagon_states() -> list[PentagonState]:
    diagonals = [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]
    return [PentagonState(frozenset(p)) for p in itertools.combinations(diagonals, 2) if not _crosses(*p)]


def _triangle(tri, name) -> LabeledTriangle:
    labels = tuple(name[tuple(v for q, v in enumerate(tri) if q != p)] for p in range(3))
    return LabeledTriangle(labels, Orientation.PLUS, tri, "t" + "".join(map(str, tri)))


def _step(before: PentagonState, after: PentagonState, name, group) -> PentagonStep:
    (old,) = before.diagonals - after.diagonals
    (new,) = after.diagonals - before.diagonals
    w, x, y, z = sorted(set(old) | set(new))
    quad_before = [t for t in before.triangles() if set(old) <= set(t)]
    quad_after = [t for t in after.triangles() if set(new) <= set(t)]
    (kept,) = [t for t in before.triangles() if t not in quad_before]
    cert = check_move_22(LabeledSurface(tuple(_triangle(t, name) for t in quad_before), name="before"),
                         LabeledSurface(tuple(_triangle(t, name) for t in quad_after), name="after"), group)
    A, B, C = name[(y, z)], name[(x, y)], name[(w, x)]
    Q, P, S = name[(w, z)], name[(x, z)], name[(w, y)]
    fsym = FSymbol((Q, C, S), (A, B, P), inverse=(old != (x, z)))
    u0, u1, u2 = kept
    ident = IdSymbol(name[(u0, u2)], (name[(u1, u2)], name[(u0, u1)]))
    id_first = set(ROOT_EDGE) <= set(kept)
    factors = (ident, fsym) if id_first else (fsym, ident)
    return PentagonStep(before, after, factors, cert)


def _paths(states, start, end):
    adj = {s: [t for t in states if len(s.diagonals & t.diagonals) == 1] for s in states}
    out = []

    def walk(path):
        if path[-1] == end:
            out.append(list(path))
            return
        for nxt in adj[path[-1]]:
            if nxt not in path:
                walk(path + [nxt])

    walk([start])
    return sorted(out, key=len)


@dataclass
class PentagonResult:
    certificate: MoveCertificate
    states: list[PentagonState]
    left: list[PentagonStep]
    right: list[PentagonStep]
    summation_indices: tuple[str, ...]

    def left_string(self, tensor: str = "⊗") -> str:
        return "".join(step.render(tensor) for step in reversed(self.left))

    def right_string(self, tensor: str = "⊗", ascii: bool = False) -> str:
        idx = ",".join(self.summation_indices)
        head = f"sum_{{{idx} in C*_1}}" if ascii else f"∑_{{{idx}∈C*_1}}"
        return head + "".join(step.render(tensor) for step in reversed(self.right))


def check_pentagon(boundary: Sequence[str] = ("a", "b", "c", "d", "e"),
                   internal: Sequence[str] = ("p", "q", "r", "s", "t"),
                   group: CoefficientGroup = Z) -> PentagonResult:
    """Both 2-2 move paths between the fan at vertex 4 and the fan at vertex 0."""
    names = dict(zip("abcde", boundary)) | dict(zip("pqrst", internal))
    if len(set(names.values())) != 10:
        raise ValueError("pentagon labels must be ten distinct names")
    name = {PENTAGON_ROLES[role]: lab for role, lab in names.items()}
    states = pentagon_states()
    start = next(s for s in states if s.diagonals == {PENTAGON_ROLES["p"], PENTAGON_ROLES["q"]})
    end = next(s for s in states if s.diagonals == {PENTAGON_ROLES["t"], PENTAGON_ROLES["r"]})
    paths = _paths(states, start, end)
    steps = [[_step(a, b, name, group) for a, b in zip(p, p[1:])] for p in paths]
    left, right = steps[0], steps[-1]
    left_diags = {d for p in paths[:1] for s in p for d in s.diagonals}
    right_diags = {d for s in paths[-1] for d in s.diagonals}
    summed = tuple(sorted(name[d] for d in right_diags - left_diags))

    all_steps = left + right
    total = Chain.zero(1, group)
    for st in all_steps:
        total = total + st.certificate.total_dual_boundary
    visited = {s for p in paths for s in p}
    checks = {
        "STEPS_VALID": all(st.certificate.valid for st in all_steps),
        "SAME_ENDPOINTS": paths[0][-1] == paths[-1][-1] and paths[0][0] == paths[-1][0],
        "PATH_SHAPE": [len(p) - 1 for p in paths] == [2, 3],
    }
    result = PentagonResult(None, states, left, right, summed)
    details = {
        "STATES": str(len(visited)),
        "PATH_LENGTHS": ",".join(str(len(p) - 1) for p in paths),
        "LEFT": result.left_string("(x)"),
        "RIGHT": result.right_string("(x)", ascii=True),
    }
    cert = MoveCertificate(
        "pentagon", all(st.certificate.boundary_labels_match for st in all_steps), None, total,
        all_steps[0].certificate.coefficient_index_count, None, None, checks, details, group)
    result.certificate = cert
    return result
