import pytest

from cochainmoves.ainfinity import (Differential, SignConvention, apply_map, build_from_surface, degree_audit,
                                    derivation, edge_labels_of, koszul_apply, probes, relation_sides,
                                    relation_terms, stasheff_residual, tensor)
from cochainmoves.chains import CoefficientGroup
from cochainmoves.cochains import Cochain, coboundary
from helpers import bundled

PAPER, STANDARD = SignConvention.PAPER, SignConvention.STANDARD


def build(name, convention=PAPER, group=CoefficientGroup()):
    doc = bundled(name)
    surfaces = doc.labeled_surfaces()
    labels = edge_labels_of(surfaces)
    data = build_from_surface(surfaces[0], doc.polygons, labels, (), convention, group)
    return data, probes(data, doc.polygons, labels)


def single(name):
    return {((name, 0),): 1}


def test_m2_from_triangles():
    data, _ = build("square.cplx")
    m2 = data.maps[2]
    assert apply_map(data, m2, (("l*", 0), ("i*", 0))) == single("n*")
    assert apply_map(data, m2, (("k*", 0), ("n*", 0))) == single("j*")
    assert apply_map(data, m2, (("i*", 0), ("l*", 0))) == {}


def test_m3_on_square():
    data, _ = build("square.cplx")
    assert apply_map(data, data.maps[3], (("k*", 0), ("l*", 0), ("i*", 0))) == single("j*")


def test_m3_entries_on_pentagon():
    data, _ = build("pentagon.cplx")
    m3 = data.maps[3]
    expected = {("a*", "b*", "c*"): "q*", ("b*", "c*", "d*"): "r*", ("a*", "b*", "t*"): "e*",
                ("a*", "s*", "d*"): "e*", ("p*", "c*", "d*"): "e*"}
    for inputs, out in expected.items():
        assert apply_map(data, m3, tuple((x, 0) for x in inputs)) == single(out)
    assert apply_map(data, data.maps[4], tuple((x, 0) for x in ("a*", "b*", "c*", "d*"))) == single("e*")


def test_derivation_signs():
    data, _ = build("square.cplx")
    d = derivation(data, ("k*", "l*", "i*"))
    assert d == {(("k*", 1), ("l*", 0), ("i*", 0)): 1,
                 (("k*", 0), ("l*", 1), ("i*", 0)): -1,
                 (("k*", 0), ("l*", 0), ("i*", 1)): 1}


def test_koszul_identity_slots():
    data, _ = build("square.cplx")
    d = Differential()
    x = tensor("l*", "i*")
    assert koszul_apply(data, [d, None], x) == {(("l*", 1), ("i*", 0)): 1}
    assert koszul_apply(data, [None, d], x) == {(("l*", 0), ("i*", 1)): -1}


def test_differentials_anticommute():
    data, _ = build("square.cplx")
    d = Differential()
    x = tensor("l*", "i*")
    a = koszul_apply(data, [None, d], koszul_apply(data, [d, None], x))
    b = koszul_apply(data, [d, None], koszul_apply(data, [None, d], x))
    assert {k: a.get(k, 0) + b.get(k, 0) for k in set(a) | set(b)} == {k: 0 for k in set(a) | set(b)}


@pytest.mark.parametrize("name", ["square.cplx", "pentagon.cplx", "s4.cplx"])
def test_m1_squares_to_zero(name):
    s = bundled(name).labeled_surfaces()[0]
    for v in s.cell_complex().basis(0):
        assert not coboundary(coboundary(Cochain.dual(v, 0), s), s)


def test_relation_term_counts():
    for n in range(1, 6):
        assert len(relation_terms(n)) == n * (n + 1) // 2


def test_source_convention_flips_only_n3_differential_terms():
    for n in (1, 2, 4):
        assert relation_terms(n, PAPER) == relation_terms(n, STANDARD)
    flipped = [(a, b) for a, b in zip(relation_terms(3, PAPER), relation_terms(3, STANDARD)) if a != b]
    assert len(flipped) == 3
    assert all(a.s == 1 and a.sign == -b.sign for a, b in flipped)


@pytest.mark.parametrize("probe,expected", [("n1", (0, 0)), ("n2", (-1, -1)), ("n3", (0, 0))])
def test_square_probes_source_convention(probe, expected):
    data, table = build("square.cplx")
    x, chain = table[probe]
    assert relation_sides(data, int(probe[1]), x, chain) == expected


def test_square_n3_standard_convention_differs():
    data, table = build("square.cplx", STANDARD)
    x, chain = table["n3"]
    assert relation_sides(data, 3, x, chain) == (0, -2)
    assert stasheff_residual(data, 3, x, chain) == 2


def test_square_n3_standard_mod2_vanishes():
    data, table = build("square.cplx", STANDARD, CoefficientGroup(2))
    x, chain = table["n3"]
    assert stasheff_residual(data, 3, x, chain) == 0


@pytest.mark.parametrize("convention", [PAPER, STANDARD])
def test_pentagon_probes(convention):
    data, table = build("pentagon.cplx", convention)
    assert relation_sides(data, 2, *table["n2"]) == (-1, -1)
    assert relation_sides(data, 4, *table["n4"]) == (0, 0)
    assert table["n4"][0] == ("a*", "b*", "c*", "d*")


def test_degree_audit_reports_every_higher_entry():
    data, _ = build("square.cplx")
    warnings = degree_audit(data)
    assert len(warnings) == 5
    assert all("expected 2" in w for w in warnings)
