import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from cochainmoves.chains import CellComplex, CoefficientGroup
from cochainmoves.homology import (IntegerMatrix, boundary_matrix, determinant, format_homology,
                                   homology, kernel_image_ranks, smith_normal_form)
from helpers import random_complex

RP2 = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
       (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
TETRA = list(itertools.combinations(range(4), 3))

matrices = st.integers(0, 5).flatmap(lambda r: st.integers(0, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    .map(lambda rows: IntegerMatrix.from_rows(rows, c))))


def oracle_factors(m: IntegerMatrix) -> tuple[int, ...]:
    if not m.rows or not m.cols:
        return ()
    return tuple(abs(int(d)) for d in invariant_factors(Matrix(m.tolist()), domain=ZZ) if d != 0)


def rank_mod_p(rows, p):
    a = [[x % p for x in r] for r in rows]
    rank = 0
    for col in range(len(a[0]) if a else 0):
        piv = next((i for i in range(rank, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def test_sphere():
    cx = CellComplex.from_simplices(TETRA)
    assert format_homology(homology(cx)) == "H0=Z H1=0 H2=Z"
    assert kernel_image_ranks(cx, 1) == (3, 3)


def test_projective_plane_torsion():
    cx = CellComplex.from_simplices(RP2)
    assert cx.euler_characteristic() == 1
    assert format_homology(homology(cx)) == "H0=Z H1=Z/2 H2=0"
    assert format_homology(homology(cx, CoefficientGroup(2))) == "H0=Z/2 H1=Z/2 H2=Z/2"
    assert format_homology(homology(cx, CoefficientGroup(3))) == "H0=Z/3 H1=0 H2=0"


def test_two_points_and_circle():
    assert format_homology(homology(CellComplex.from_simplices([(0,), (1,)]))) == "H0=Z^2"
    circle = CellComplex.from_simplices([(0, 1), (1, 2), (0, 2)])
    assert format_homology(homology(circle)) == "H0=Z H1=Z"


def test_determinant_small():
    assert determinant(IntegerMatrix.from_rows([[2, 1], [7, 4]])) == 1
    assert determinant(IntegerMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])) == 0
    assert determinant(IntegerMatrix.from_rows([[0, 1], [1, 0]])) == -1


@settings(max_examples=120, deadline=None)
@given(matrices)
def test_smith_form_certificate(m):
    snf = smith_normal_form(m)
    assert snf.verify(m)
    assert snf.diagonal == oracle_factors(m)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_determinant_matches_oracle(m):
    if m.rows == m.cols and m.rows:
        assert determinant(m) == Matrix(m.tolist()).det()


def test_homology_matches_independent_ranks():
    rng = random.Random(11)
    for _ in range(60):
        cx = random_complex(rng, max_dim=4, max_vertices=7)
        for p in (2, 3):
            for i, g in enumerate(homology(cx, CoefficientGroup(p))):
                below = boundary_matrix(cx, i).tolist() if i else []
                above = boundary_matrix(cx, i + 1).tolist()
                expected = len(cx.basis(i)) - rank_mod_p(below, p) - rank_mod_p(above, p)
                assert g.free_rank == expected and not g.torsion


@pytest.mark.parametrize("order", [lambda n, cs: list(reversed(cs)), lambda n, cs: sorted(cs, key=hash)])
def test_homology_independent_of_basis_order(order):
    cx = CellComplex.from_simplices(RP2)
    assert homology(cx.reordered(order)) == homology(cx)
