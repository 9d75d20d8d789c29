"""Sparse m_n tables on cochains, Koszul-signed tensor maps, and Stasheff relation residuals.

Tensors are linear combinations of tuples of factors.  A factor is a basis
name such as ``"l*"`` together with a flag recording whether the coboundary
has been applied to it; the flag keeps delta(x) symbolic until it is paired
with a chain or fed to a table.
"""

from __future__ import annotations

import enum
import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .chains import Chain, CoefficientGroup, Z, _sort_key
from .cochains import Cochain, coboundary, evaluate
from .surfaces import LabeledSurface

Factor = tuple[str, int]
Tensor = tuple[Factor, ...]
Expr = dict[Tensor, int]


class SignConvention(enum.Enum):
    """STANDARD: nominal degrees 2 - n and signs (-1)^{r+st}.

    PAPER: higher maps carry Koszul degree 0, and the n = 3 relation takes
    its m_3(1 (x) m_1 (x) 1) family with the opposite sign.
    """

    STANDARD = "standard"
    PAPER = "paper"


@dataclass(frozen=True)
class GradedBasis:
    """Starred basis names with their degrees and the cells they are dual to."""

    degrees: Mapping[str, int]
    cells: Mapping[str, object] = field(default_factory=dict)

    @classmethod
    def from_surface(cls, s: LabeledSurface, extra_labels: Iterable[str] = ()) -> "GradedBasis":
        """C*_0 + C*_1 + C*_2 of ``s``, plus degree-1 duals of edges outside ``s``."""
        cx = s.cell_complex()
        degrees, cells = {}, {}
        for label in extra_labels:
            degrees[f"{label}*"], cells[f"{label}*"] = 1, label
        for n in (0, 1, 2):
            for cell in cx.basis(n):
                name = f"{cell}*"
                if name in degrees and (degrees[name], cells[name]) != (n, cell):
                    raise ValueError(f"basis name {name!r} is used in two degrees")
                degrees[name], cells[name] = n, cell
        return cls(degrees, cells)

    def degree(self, name: str) -> int:
        return self.degrees[name]

    def name_of(self, degree: int, cell) -> str:
        return f"{cell}*"


@dataclass
class GradedMapTable:
    """m_n given on basis tuples; tuples not listed map to zero."""

    arity: int
    entries: dict[tuple[str, ...], dict[str, int]] = field(default_factory=dict)

    @property
    def nominal_degree(self) -> int:
        return 2 - self.arity

    def add(self, inputs: Sequence[str], output: str, coeff: int = 1) -> None:
        inputs = tuple(inputs)
        if len(inputs) != self.arity:
            raise ValueError(f"m{self.arity} entry needs {self.arity} inputs, got {inputs}")
        known = self.entries.get(inputs)
        new = {output: coeff}
        if known is not None and known != new:
            raise ValueError(f"conflicting m{self.arity} entries for {inputs}: {known} vs {new}")
        self.entries[inputs] = new

    def koszul_degree(self, convention: SignConvention) -> int:
        if convention is SignConvention.PAPER and self.arity > 1:
            return 0
        return self.nominal_degree


class Differential(GradedMapTable):
    """m_1 = delta of the ambient surface."""

    def __init__(self):
        super().__init__(1, {})


@dataclass
class AInfinityData:
    basis: GradedBasis
    maps: dict[int, GradedMapTable]
    ambient: LabeledSurface
    convention: SignConvention = SignConvention.STANDARD
    group: CoefficientGroup = Z

    def __post_init__(self):
        self._complex = self.ambient.cell_complex()
        self._delta_cache: dict[str, dict[str, int]] = {}

    def delta(self, name: str) -> dict[str, int]:
        """delta(name) expanded in the dual basis."""
        if name not in self._delta_cache:
            deg = self.basis.degree(name)
            d = coboundary(Cochain.dual(self.basis.cells[name], deg, self.group), self._complex)
            self._delta_cache[name] = {self.basis.name_of(d.degree, k): v for k, v in d.terms.items()}
        return self._delta_cache[name]

    def factor_degree(self, f: Factor) -> int:
        return self.basis.degree(f[0]) + f[1]

    def pair(self, expr: Expr, chain: Chain) -> int:
        """Evaluate a combination of single factors on a chain; longer tensors pair to zero."""
        total = 0
        for tensor, coeff in expr.items():
            if len(tensor) != 1:
                continue
            name, d = tensor[0]
            deg = self.basis.degree(name)
            phi = Cochain.dual(self.basis.cells[name], deg, self.group)
            if d:
                phi = coboundary(phi, self._complex)
            total += coeff * evaluate(phi, chain)
        return self.group.reduce(total)


def tensor(*names: str) -> Expr:
    return {tuple((n, 0) for n in names): 1}


def _add(acc: Expr, expr: Expr, k: int = 1) -> None:
    for t, c in expr.items():
        acc[t] = acc.get(t, 0) + k * c
        if not acc[t]:
            del acc[t]


def _expand(data: AInfinityData, factors: Tensor) -> list[tuple[tuple[str, ...], int]]:
    """Replace every delta-factor by its expansion; plain tuples with coefficients."""
    choices = []
    for name, d in factors:
        choices.append(list(data.delta(name).items()) if d else [(name, 1)])
    out = []
    for combo in itertools.product(*choices):
        coeff = 1
        for _, c in combo:
            coeff *= c
        out.append((tuple(n for n, _ in combo), coeff))
    return out


def apply_map(data: AInfinityData, m: GradedMapTable, factors: Tensor) -> Expr:
    """A single map on a block of factors; the result is a combination of single factors."""
    if len(factors) != m.arity:
        raise ValueError(f"m{m.arity} applied to {len(factors)} factors")
    if isinstance(m, Differential):
        (name, d), = factors
        return {} if d else {((name, 1),): 1}
    out: Expr = {}
    for names, coeff in _expand(data, factors):
        for y, c in m.entries.get(names, {}).items():
            _add(out, {((y, 0),): coeff * c})
    return out


def koszul_apply(data: AInfinityData, slots: Sequence[GradedMapTable | None], expr: Expr,
                 convention: SignConvention | None = None) -> Expr:
    """Apply f_1 (x) ... (x) f_k to each tensor, signs (f (x) g)(x (x) y) = (-1)^{|g||x|} f(x) (x) g(y).

    ``None`` is the identity slot.  Map degrees for the sign come from the
    convention (``data.convention`` by default).
    """
    convention = convention or data.convention
    width = sum(1 if s is None else s.arity for s in slots)
    out: Expr = {}
    for t, coeff in expr.items():
        if len(t) != width:
            raise ValueError(f"{len(slots)} slots of total arity {width} applied to a {len(t)}-fold tensor")
        partial: Expr = {(): coeff}
        pos, seen = 0, 0
        for slot in slots:
            k = 1 if slot is None else slot.arity
            block = t[pos:pos + k]
            if slot is None:
                piece: Expr = {block: 1}
            else:
                sign = (-1) ** ((slot.koszul_degree(convention) * seen) % 2)
                piece = {f: sign * c for f, c in apply_map(data, slot, block).items()}
            nxt: Expr = {}
            for head, hc in partial.items():
                for tail, tc in piece.items():
                    _add(nxt, {head + tail: hc * tc})
            partial = nxt
            seen += sum(data.factor_degree(f) for f in block)
            pos += k
        _add(out, partial)
    return out


def derivation(data: AInfinityData, x: Sequence[str]) -> Expr:
    """sum_i (1^{(x)i} (x) m_1 (x) 1^{...})(x) with Koszul signs."""
    out: Expr = {}
    d = Differential()
    for i in range(len(x)):
        slots = [None] * i + [d] + [None] * (len(x) - i - 1)
        _add(out, koszul_apply(data, slots, tensor(*x)))
    return out


def apply_outer(data: AInfinityData, m: GradedMapTable, expr: Expr) -> Expr:
    """m applied to a whole combination.

    A block equal to c * (Koszul derivation of a plain tensor x) is evaluated
    as c * delta(m(x)), i.e. m is treated as commuting with the differential
    on exactly that block; everything else goes through the table.
    """
    remaining = dict(expr)
    out: Expr = {}
    if not isinstance(m, Differential):
        groups: dict[tuple[str, ...], list[Tensor]] = defaultdict(list)
        for t in expr:
            if sum(d for _, d in t) == 1:
                groups[tuple(n for n, _ in t)].append(t)
        for x, members in sorted(groups.items(), key=lambda kv: _sort_key(kv[0])):
            d = derivation(data, x)
            if not d or set(d) != set(members):
                continue
            ratios = {remaining[t] * d[t] for t in d}  # d[t] is +-1
            if len(ratios) != 1:
                continue
            c = ratios.pop()
            for t in d:
                del remaining[t]
            for ((y, _),), k in apply_map(data, m, tuple((n, 0) for n in x)).items():
                _add(out, {((y, 1),): c * k})
    for t, c in remaining.items():
        _add(out, {f: c * k for f, k in apply_map(data, m, t).items()})
    return out


@dataclass(frozen=True)
class RelationTerm:
    sign: int
    u: int
    s: int
    r: int
    t: int

    def describe(self) -> str:
        inner = ["1"] * self.r + [f"m{self.s}"] + ["1"] * self.t
        return f"{'+' if self.sign > 0 else '-'}m{self.u}({'(x)'.join(inner)})"


def relation_terms(n: int, convention: SignConvention = SignConvention.STANDARD) -> list[RelationTerm]:
    """Summands (-1)^{r+st} m_u(1^r (x) m_s (x) 1^t) with n = r+s+t, u = r+1+t."""
    terms = []
    for s in range(1, n + 1):
        for r in range(n - s + 1):
            t = n - s - r
            sign = (-1) ** ((r + s * t) % 2)
            if convention is SignConvention.PAPER and n == 3 and s == 1:
                sign = -sign
            terms.append(RelationTerm(sign, r + 1 + t, s, r, t))
    return terms


def _split_sides(n: int, terms: list[RelationTerm]) -> tuple[list[tuple[int, RelationTerm]], list[tuple[int, RelationTerm]]]:
    """Arrange the relation as LEFT = RIGHT, each side a list of (weight, term)."""
    if n == 1:
        return [(1, t) for t in terms], []
    if n == 2:
        return [(1, t) for t in terms if t.u == 1], [(-1, t) for t in terms if t.s == 1]
    left = [(-1, t) for t in terms if t.u >= 2 and t.s >= 2]
    right = [(1, t) for t in terms if t.u == 1 or t.s == 1]
    return left, right


def _side_value(data: AInfinityData, side, x: Sequence[str]) -> Expr:
    by_outer: dict[int, Expr] = defaultdict(dict)
    for weight, term in side:
        ms, mu = data.maps.get(term.s), data.maps.get(term.u)
        if ms is None or mu is None:
            continue
        slots = [None] * term.r + [ms] + [None] * term.t
        _add(by_outer[term.u], koszul_apply(data, slots, tensor(*x)), weight * term.sign)
    out: Expr = {}
    for u in sorted(by_outer):
        _add(out, apply_outer(data, data.maps[u], by_outer[u]))
    return out


def relation_sides(data: AInfinityData, n: int, x: Sequence[str], test_chain: Chain) -> tuple[int, int]:
    """Both sides of the n-th relation applied to ``x`` and paired with ``test_chain``."""
    if not 1 <= n <= 4:
        raise ValueError(f"relations are implemented for n = 1..4, got {n}")
    if len(x) != n:
        raise ValueError(f"relation {n} needs an {n}-fold input, got {len(x)}")
    left, right = _split_sides(n, relation_terms(n, data.convention))
    return (data.pair(_side_value(data, left, x), test_chain),
            data.pair(_side_value(data, right, x), test_chain))


def stasheff_residual(data: AInfinityData, n: int, x: Sequence[str], test_chain: Chain) -> int:
    left, right = relation_sides(data, n, x, test_chain)
    return data.group.reduce(left - right)


def degree_audit(data: AInfinityData) -> list[str]:
    """Entries whose output degree differs from (input degrees) + 2 - n."""
    warnings = []
    for n in sorted(data.maps):
        m = data.maps[n]
        if isinstance(m, Differential):
            continue
        for inputs, outputs in sorted(m.entries.items()):
            want = sum(data.basis.degree(x) for x in inputs) + m.nominal_degree
            for y in sorted(outputs):
                got = data.basis.degree(y)
                if got != want:
                    warnings.append(f"m{n}({' '.join(inputs)}) -> {y}: degree {got}, expected {want}")
    return warnings


def polygon_entries(vertices: Sequence[int], edge_label: Mapping[frozenset, str]) -> list[tuple[int, tuple[str, ...], str]]:
    """m_k entries read off a polygon and all of its labeled sub-polygons.

    For a sub-polygon w_0 < ... < w_k the entry is
    e(w_{k-1} w_k) (x) ... (x) e(w_0 w_1) -> e(w_0 w_k).
    """
    out = []
    vs = sorted(vertices)
    for size in range(3, len(vs) + 1):
        for sub in itertools.combinations(vs, size):
            sides = [frozenset((sub[q], sub[q + 1])) for q in range(size - 1)]
            closing = frozenset((sub[0], sub[-1]))
            if all(e in edge_label for e in sides) and closing in edge_label:
                inputs = tuple(f"{edge_label[e]}*" for e in reversed(sides))
                out.append((size - 1, inputs, f"{edge_label[closing]}*"))
    return out


def edge_labels_of(surfaces: Iterable[LabeledSurface]) -> dict[frozenset, str]:
    labels: dict[frozenset, str] = {}
    for s in surfaces:
        for t in s.triangles:
            if t.vertices is None:
                continue
            for pos, lab in enumerate(t.labels):
                key = frozenset(t.face_vertices(pos))
                if labels.setdefault(key, lab) != lab:
                    raise ValueError(f"edge {sorted(key)} labeled both {labels[key]!r} and {lab!r}")
    return labels


def build_from_surface(s: LabeledSurface, polygons: Sequence[Sequence[int]] = (),
                       edge_labels: Mapping[frozenset, str] | None = None,
                       extra_entries: Iterable[tuple[int, Sequence[str], str, int]] = (),
                       convention: SignConvention = SignConvention.STANDARD,
                       group: CoefficientGroup = Z) -> AInfinityData:
    """A-infinity data on the cochains of ``s``.

    m_1 is the coboundary; each triangle T(a,b,c) gives m_2(a* (x) c*) = b*;
    each declared polygon (and its labeled sub-polygons) gives the outer
    path -> closing edge entry.  ``extra_entries`` are (n, inputs, output, sign).
    """
    basis = GradedBasis.from_surface(s, sorted((edge_labels or {}).values()))
    maps: dict[int, GradedMapTable] = {1: Differential()}
    for t in s.triangles:
        a, b, c = t.labels
        maps.setdefault(2, GradedMapTable(2)).add((f"{a}*", f"{c}*"), f"{b}*")
    labels = dict(edge_labels_of([s]))
    labels.update(edge_labels or {})
    for poly in polygons:
        for n, inputs, output in polygon_entries(poly, labels):
            maps.setdefault(n, GradedMapTable(n)).add(inputs, output)
    for n, inputs, output, sign in extra_entries:
        maps.setdefault(n, GradedMapTable(n)).entries[tuple(inputs)] = {output: sign}
    for n, m in maps.items():
        for inputs, outputs in m.entries.items():
            for name in (*inputs, *outputs):
                if name not in basis.degrees:
                    raise ValueError(f"m{n} entry uses {name!r}, which is not a cochain of {s.name or 'the surface'}")
    return AInfinityData(basis, maps, s, convention, group)


def probes(data: AInfinityData, polygons: Sequence[Sequence[int]] = (),
           edge_labels: Mapping[frozenset, str] | None = None) -> dict[str, tuple[tuple[str, ...], Chain]]:
    """Probe inputs and test chains: the first triangle for n1/n2, the whole surface for n3/n4."""
    s = data.ambient
    first = s.triangles[0]
    a, b, c = (f"{x}*" for x in first.labels)
    single = Chain(2, {first.id: 1}, data.group)
    out = {"n1": ((b,), single), "n2": ((a, c), single)}
    labels = dict(edge_labels_of([s]))
    labels.update(edge_labels or {})
    whole = s.fundamental_chain(data.group)
    for poly in polygons:
        vs = sorted(poly)
        if len(vs) in (4, 5):
            sides = [frozenset((vs[q], vs[q + 1])) for q in range(len(vs) - 1)]
            if all(e in labels for e in sides):
                x = tuple(f"{labels[e]}*" for e in reversed(sides))
                out.setdefault(f"n{len(vs) - 1}", (x, whole))
    return out
