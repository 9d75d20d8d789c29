"""Oriented simplices, chains with exact coefficients, and finite cell complexes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping


class DegreeError(ValueError):
    """Raised when chains of different degrees are combined."""


@dataclass(frozen=True)
class CoefficientGroup:
    """The integers (``modulus=None``) or the integers mod ``modulus``."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")

    @classmethod
    def parse(cls, text: str) -> "CoefficientGroup":
        text = text.strip().lower()
        if text == "z":
            return cls()
        if text.startswith("z") and text[1:].isdigit():
            return cls(int(text[1:]))
        raise ValueError(f"unknown coefficient group {text!r}")

    def reduce(self, value: int) -> int:
        return value if self.modulus is None else value % self.modulus

    def __str__(self):
        return "Z" if self.modulus is None else f"Z/{self.modulus}"


Z = CoefficientGroup()


def parity_by_swaps(vertices: Iterable[int]) -> int:
    """Sign of the sorting permutation, counted with bubble-sort swaps."""
    v = list(vertices)
    swaps = 0
    for i in range(len(v)):
        for j in range(len(v) - 1 - i):
            if v[j] > v[j + 1]:
                v[j], v[j + 1] = v[j + 1], v[j]
                swaps += 1
    return -1 if swaps % 2 else 1


def normalize_simplex(vertices: Iterable[int]) -> tuple[tuple[int, ...], int]:
    """Return the increasing vertex tuple and the orientation sign.

    The sign is 0 when a vertex repeats (the degenerate simplex is zero).

    >>> normalize_simplex([0, 2, 1])
    ((0, 1, 2), -1)
    """
    v = tuple(vertices)
    canon = tuple(sorted(v))
    if len(set(v)) != len(v):
        return canon, 0
    # parity from the cycle decomposition of the sorting permutation
    pos = {x: i for i, x in enumerate(canon)}
    perm = [pos[x] for x in v]
    seen = [False] * len(perm)
    transpositions = 0
    for i in range(len(perm)):
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length:
            transpositions += length - 1
    return canon, -1 if transpositions % 2 else 1


def _sort_key(key):
    if isinstance(key, tuple):
        return (0, len(key), tuple(_sort_key(k) for k in key))
    if isinstance(key, int):
        return (1, key, "")
    return (2, 0, str(key))


@dataclass(frozen=True, eq=False)
class Chain:
    """A finite formal sum of basis elements of one degree.

    Basis elements are oriented simplices (increasing vertex tuples) or any
    hashable cell name, e.g. an edge label ``"l"``.  Zero coefficients are
    never stored.
    """

    degree: int
    terms: Mapping[Hashable, int] = field(default_factory=dict)
    group: CoefficientGroup = Z

    def __post_init__(self):
        clean = {}
        for k, c in self.terms.items():
            c = self.group.reduce(c)
            if c:
                clean[k] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=lambda kv: _sort_key(kv[0]))))

    @classmethod
    def from_terms(cls, degree: int, items: Iterable[tuple[Hashable, int]], group: CoefficientGroup = Z) -> "Chain":
        acc: dict = {}
        for k, c in items:
            acc[k] = acc.get(k, 0) + c
        return cls(degree, acc, group)

    @classmethod
    def simplex(cls, vertices: Iterable[int], coeff: int = 1, group: CoefficientGroup = Z) -> "Chain":
        v = tuple(vertices)
        canon, sign = normalize_simplex(v)
        return cls(len(v) - 1, {canon: sign * coeff} if sign else {}, group)

    @classmethod
    def from_simplices(cls, simplices: Iterable[tuple[Iterable[int], int]], group: CoefficientGroup = Z) -> "Chain":
        """Sum of ``coeff * [v0..vn]``; all simplices must share a dimension."""
        items, degrees = [], set()
        for verts, coeff in simplices:
            verts = tuple(verts)
            degrees.add(len(verts) - 1)
            canon, sign = normalize_simplex(verts)
            if sign:
                items.append((canon, sign * coeff))
        if len(degrees) > 1:
            raise DegreeError(f"mixed simplex dimensions {sorted(degrees)}")
        return cls.from_terms(degrees.pop() if degrees else 0, items, group)

    @classmethod
    def zero(cls, degree: int, group: CoefficientGroup = Z) -> "Chain":
        return cls(degree, {}, group)

    def _check(self, other: "Chain"):
        if self.degree != other.degree:
            raise DegreeError(f"cannot add chains of degree {self.degree} and {other.degree}")
        if self.group != other.group:
            raise ValueError(f"coefficient groups differ: {self.group} vs {other.group}")

    def __add__(self, other: "Chain") -> "Chain":
        self._check(other)
        return Chain.from_terms(self.degree, itertools.chain(self.terms.items(), other.terms.items()), self.group)

    def __neg__(self) -> "Chain":
        return self.scale(-1)

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def scale(self, k: int) -> "Chain":
        return Chain(self.degree, {b: k * c for b, c in self.terms.items()}, self.group)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        if not self.terms and not other.terms:
            return self.group == other.group
        return self.degree == other.degree and self.group == other.group and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, self.group, tuple(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __getitem__(self, key) -> int:
        return self.terms.get(key, 0)

    def with_group(self, group: CoefficientGroup) -> "Chain":
        return Chain(self.degree, dict(self.terms), group)

    def format(self, star: bool = False) -> str:
        """Render as e.g. ``i+l+k-j``; ``0`` for the zero chain."""
        if not self.terms:
            return "0"
        out = []
        for k, c in self.terms.items():
            name = "[" + ",".join(map(str, k)) + "]" if isinstance(k, tuple) else str(k)
            if star:
                name += "*"
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}"
            out.append(f"{sign}{mag}{name}")
        text = "".join(out)
        return text[1:] if text.startswith("+") else text

    def __repr__(self):
        return f"Chain({self.degree}, {self.format()})"


def boundary(c: Chain) -> Chain:
    """Alternating-sum boundary of a chain of oriented simplices."""
    items = []
    for verts, coeff in c.terms.items():
        if not isinstance(verts, tuple):
            raise TypeError(f"{verts!r} is not a simplex; use CellComplex.boundary for labeled cells")
        for i in range(len(verts) if len(verts) > 1 else 0):
            face = verts[:i] + verts[i + 1:]
            items.append((face, (-1) ** i * coeff))
    return Chain.from_terms(c.degree - 1, items, c.group)


@dataclass
class CellComplex:
    """A finite chain complex with named cells.

    ``cells[n]`` fixes the basis order in degree n; ``boundaries[n][cell]`` is
    the boundary of that cell as an integer chain of degree n - 1.
    """

    cells: dict[int, list]
    boundaries: dict[int, dict]
    edge_ends: dict = field(default_factory=dict)

    @classmethod
    def from_simplices(cls, simplices: Iterable[Iterable[int]]) -> "CellComplex":
        """Simplicial closure of the given simplices."""
        faces: set[tuple[int, ...]] = set()
        for s in simplices:
            s = tuple(sorted(set(s)))
            for r in range(1, len(s) + 1):
                faces.update(itertools.combinations(s, r))
        cells: dict[int, list] = {}
        for f in sorted(faces, key=_sort_key):
            cells.setdefault(len(f) - 1, []).append(f)
        bounds = {n: {f: boundary(Chain(n, {f: 1})) for f in fs} for n, fs in cells.items()}
        return cls(cells, bounds)

    @property
    def dimension(self) -> int:
        return max((n for n, cs in self.cells.items() if cs), default=-1)

    def basis(self, n: int) -> list:
        return list(self.cells.get(n, []))

    def boundary(self, c: Chain) -> Chain:
        items = []
        table = self.boundaries.get(c.degree, {})
        for cell, coeff in c.terms.items():
            items.extend((k, coeff * v) for k, v in table[cell].terms.items())
        return Chain.from_terms(c.degree - 1, items, c.group)

    def cell_counts(self) -> list[int]:
        return [len(self.cells.get(n, [])) for n in range(self.dimension + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * k for n, k in enumerate(self.cell_counts()))

    def reordered(self, order) -> "CellComplex":
        """Same complex with each degree's basis permuted by ``order(n, cells)``."""
        return CellComplex({n: list(order(n, list(cs))) for n, cs in self.cells.items()}, self.boundaries, self.edge_ends)
