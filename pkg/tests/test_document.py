import pytest
from hypothesis import given, settings, strategies as st

from cochainmoves.cli import BUNDLED, bundled_path
from cochainmoves.document import ParseError, parse_document, serialize_document
from cochainmoves.surfaces import Orientation
from helpers import bundled


@pytest.mark.parametrize("name", BUNDLED)
def test_round_trip(name):
    doc = parse_document(bundled_path(name).read_text(encoding="utf-8"))
    again = parse_document(serialize_document(doc))
    assert again == doc
    assert serialize_document(again) == serialize_document(doc)


def test_square22_contents():
    doc = bundled("square22.cplx")
    surfaces = doc.labeled_surfaces()
    assert sum(len(s.triangles) for s in surfaces) == 4
    assert set().union(*(s.labels for s in surfaces)) == set("ijklmn")


def test_single_triangle_line():
    doc = parse_document("surface s\ntriangle 0 1 2 labels l n i orient +\n")
    (t,) = doc.labeled_surfaces()[0].triangles
    assert t.labels == ("l", "n", "i")
    assert t.vertices == (0, 1, 2)
    assert t.orientation is Orientation.PLUS


def test_comments_and_whitespace():
    text = "# header\n  surface   s  # trailing\n\ttriangle 0 1 2 labels a b c orient -\n\n"
    assert parse_document(text).labeled_surfaces()[0].triangles[0].is_op


def test_mtable_entries():
    doc = parse_document("surface s\ntriangle 0 1 2 labels a b c orient +\nmtable\nm3: a* b* c* -> d*\n"
                         "sign - m2: a* c* -> b*\n")
    assert [(e.arity, e.inputs, e.output, e.sign) for e in doc.mtable] == [
        (3, ("a*", "b*", "c*"), "d*", 1), (2, ("a*", "c*"), "b*", -1)]
    assert parse_document(serialize_document(doc)) == doc


@pytest.mark.parametrize("text,line,col,fragment", [
    ("", 1, 1, "empty"),
    ("# only a comment\n", 1, 1, "empty"),
    ("bogus 1", 1, 1, "unknown keyword"),
    ("surface s\ntriangle 0 1 2 labels a b orient +", 2, 1, "triangle takes"),
    ("surface s\ntriangle 0 1 2 labels a b c orient +\ntriangle 0 1 3 labels a d e orient +\n"
     "triangle 1 2 3 labels a f g orient +", 4, 23, "more than two"),
    ("surface s\nvertex 0 1 2\ntriangle 0 1 5 labels a b c orient +", 3, 14, "not declared"),
    ("surface s\nsurface s", 2, 9, "duplicate"),
    ("surface s\ntriangle 0 1 2 labels a b c orient x", 2, 36, "orientation"),
    ("mtable\nm3: a* b* -> c*", 2, 1, "takes 3 inputs"),
    ("triangle 0 1 2 labels a b c orient +", 1, 1, "outside"),
])
def test_diagnostics(text, line, col, fragment):
    with pytest.raises(ParseError) as info:
        parse_document(text)
    assert (info.value.line, info.value.col) == (line, col)
    assert fragment in str(info.value)


labels = st.sampled_from("abcdefgh")


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.permutations(range(4)).map(lambda p: p[:3]), st.permutations("abcdefgh"),
                          st.sampled_from("+-")), min_size=1, max_size=3))
def test_round_trip_generated(tris):
    lines = ["surface g"]
    for k, (vs, labs, o) in enumerate(tris):
        lab = [f"{x}{k}" for x in labs[:3]]
        lines.append(f"triangle {' '.join(map(str, vs))} labels {' '.join(lab)} orient {o}")
    doc = parse_document("\n".join(lines))
    assert parse_document(serialize_document(doc)) == doc
