import itertools

import pytest

from cochainmoves.chains import CoefficientGroup
from cochainmoves.moves import (check_cylinder, check_move_13, check_move_22, check_pentagon, fuse_13,
                                pentagon_states, split_13)
from cochainmoves.surfaces import LabeledSurface, LabeledTriangle, Orientation, T
from helpers import EXPECTED_LEFT, EXPECTED_RIGHT, bundled


@pytest.fixture
def square22():
    return bundled("square22.cplx").labeled_surfaces()


@pytest.fixture
def tri13():
    unsplit, split = bundled("tri13.cplx").labeled_surfaces()
    return unsplit.triangles[0], split


def test_move22_valid(square22):
    cert = check_move_22(*square22)
    assert cert.valid
    assert cert.boundary_labels_match
    assert not cert.total_dual_boundary
    assert cert.coefficient_index_count == 6
    assert cert.sphere_check


@pytest.mark.parametrize("modulus", [2, 3, 5])
def test_move22_valid_mod_m(square22, modulus):
    assert check_move_22(*square22, CoefficientGroup(modulus)).valid


def test_move22_swapped_labels_rejected(square22):
    left, right = square22
    t0, t1 = right.triangles
    swapped = LabeledSurface((t0, LabeledTriangle(("j", "k", "n"), t1.orientation, t1.vertices)), name="bad")
    cert = check_move_22(left, swapped)
    assert not cert.valid
    assert not cert.boundary_labels_match
    assert cert.mismatch_position is not None
    assert "BOUNDARY_MATCH=false" in cert.serialize()


def test_move22_symmetric(square22):
    left, right = square22
    assert check_move_22(right, left).valid


def test_move13_valid(tri13):
    unsplit, split = tri13
    cert = check_move_13(unsplit, split)
    assert cert.valid
    assert cert.checks["ROUTE_VALID"] and cert.checks["INTERIOR_CLOSED"]


def test_move13_flipped_rejected(tri13):
    unsplit, split = tri13
    tris = tuple(LabeledTriangle(t.labels, Orientation.PLUS, t.vertices) for t in split.triangles)
    cert = check_move_13(unsplit, LabeledSurface(tris))
    assert not cert.valid
    assert cert.total_dual_boundary


def test_split_then_fuse(tri13):
    unsplit, split = tri13
    again = split_13(unsplit, 0, {1: "i", 2: "n", 3: "j"})
    assert again.labeled_boundary() == split.labeled_boundary()
    assert check_move_13(unsplit, again).valid
    fused = fuse_13(again)
    assert (fused.labels, fused.orientation, fused.vertices) == (unsplit.labels, unsplit.orientation, unsplit.vertices)


def test_split_of_arbitrary_triangle_is_valid():
    t = LabeledTriangle(("x", "y", "z"), Orientation.OP, (4, 6, 9))
    split = split_13(t, 1, {4: "u", 6: "v", 9: "w"})
    assert check_move_13(t, split).valid


def test_cylinder_factor_default():
    c = bundled("cylinder.cplx").labeled_surfaces()[0]
    cert = check_cylinder(c)
    assert cert.details["FACTOR"] == "0"
    assert cert.details["EULER"] == "0"
    assert cert.details["TORUS"] == "H0=Z H1=Z^2 H2=Z"
    assert cert.valid


@pytest.mark.parametrize("ci,cj", list(itertools.product(range(3), repeat=2)))
def test_cylinder_factor_is_kronecker(ci, cj):
    c = bundled("cylinder.cplx").labeled_surfaces()[0]
    cert = check_cylinder(c, {"i": ci, "j": cj})
    assert cert.details["FACTOR"] == str(int(ci == cj))


def test_pentagon_has_five_states():
    states = pentagon_states()
    assert len(states) == 5
    assert all(len(s.triangles()) == 3 for s in states)


def test_pentagon_strings():
    result = check_pentagon()
    assert result.certificate.valid
    assert [len(result.left), len(result.right)] == [2, 3]
    assert result.left_string() == EXPECTED_LEFT
    assert result.right_string() == EXPECTED_RIGHT
    assert result.summation_indices == ("s",)


def test_pentagon_rejects_repeated_labels():
    with pytest.raises(ValueError):
        check_pentagon(("a", "a", "c", "d", "e"))


def test_cylinder_rejects_sphere():
    with pytest.raises(ValueError):
        check_cylinder(bundled("s4.cplx").labeled_surfaces()[0])


def test_certificate_serialization_is_stable(square22):
    assert check_move_22(*square22).serialize() == check_move_22(*square22).serialize()


def test_single_triangle_not_a_22_move():
    with pytest.raises(ValueError):
        check_move_22(LabeledSurface((T("a", "b", "c"),)), LabeledSurface((T("a", "b", "c"),)))
