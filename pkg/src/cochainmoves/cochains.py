"""Cochains Hom(C_n, G), the evaluation pairing, and the coboundary."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping

from .chains import CellComplex, Chain, CoefficientGroup, Z
from .surfaces import LabeledSurface


@dataclass(frozen=True, eq=False)
class Cochain(Chain):
    """Finitely supported functional: ``terms[x]`` is the value on basis element x."""

    @classmethod
    def dual(cls, basis_element: Hashable, degree: int, group: CoefficientGroup = Z) -> "Cochain":
        """The dual basis element x*: 1 on x, 0 elsewhere."""
        return cls(degree, {basis_element: 1}, group)

    def __add__(self, other):
        return _as_cochain(Chain.__add__(self, other))

    def scale(self, k: int):
        return _as_cochain(Chain.scale(self, k))

    def __repr__(self):
        return f"Cochain({self.degree}, {self.format(star=True)})"


def _as_cochain(c: Chain) -> Cochain:
    return Cochain(c.degree, c.terms, c.group)


def evaluate(phi: Chain, c: Chain) -> int:
    """<phi, c>; zero whenever the degrees differ."""
    if phi.degree != c.degree:
        return 0
    group = phi.group if phi.group.modulus is not None else c.group
    return group.reduce(sum(v * c[k] for k, v in phi.terms.items()))


def _complex(ambient: CellComplex | LabeledSurface) -> CellComplex:
    return ambient.cell_complex() if isinstance(ambient, LabeledSurface) else ambient


def coboundary(phi: Chain, ambient: CellComplex | LabeledSurface) -> Cochain:
    """delta(phi) = phi o boundary, tabulated over the ambient (n+1)-cells."""
    cx = _complex(ambient)
    n = phi.degree + 1
    items = []
    for cell in cx.basis(n):
        items.append((cell, evaluate(phi, Chain(phi.degree, cx.boundaries[n][cell].terms, phi.group))))
    return Cochain.from_terms(n, items, phi.group)
