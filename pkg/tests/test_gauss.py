import os
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DATA
from strongeom.errors import GaussSyntaxError, KindMismatch, ValidationError
from strongeom.gauss import (
    GRAPHOID,
    KNOT,
    KNOTOID,
    Entry,
    GaussDiagram,
    GraphEdge,
    canonical_form,
    diagrams_equal,
    parse,
    serialize,
)

FIVE2_MIXED = "knot: O+4 U+5 O+2 U+3 O+5 U+4 O-1 U+2 O+3 U-1"
FIVE2_POSITIVE = "knot: O+4 U+5 O+2 U+3 O+5 U+4 O+1 U+2 O+3 U+1"
SIX3 = "knot: U+1 O+2 U+4 O-6 U-5 O+1 U+2 O-3 U-6 O-5 U-3 O+4"


def nine_vertex_graphoid():
    with open(os.path.join(DATA, "graphoid_nine.gauss")) as fh:
        return fh.read()


@st.composite
def codes(draw, kind=None):
    kind = kind or draw(st.sampled_from([KNOT, KNOTOID]))
    m = draw(st.integers(0, 6))
    ids = draw(st.permutations(range(1, m + 1))) if m else []
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=m, max_size=m))
    entries = []
    for i, s in zip(ids, signs):
        entries += [Entry(i, "O", s), Entry(i, "U", s)]
    order = draw(st.permutations(range(len(entries)))) if entries else []
    return GaussDiagram(kind, tuple(entries[k] for k in order))


def test_parse_five2_mixed():
    G = parse(FIVE2_MIXED)
    assert G.kind == KNOT and len(G.crossings) == 5 and len(G.entries) == 10
    assert G.entries[6] == Entry(1, "O", -1)


def test_empty_knotoid():
    G = parse("knotoid:")
    assert G.kind == KNOTOID and G.entries == ()
    assert serialize(G) == "knotoid:"


def test_missing_under_occurrence():
    with pytest.raises(ValidationError) as exc:
        parse("knot: O+1 O+1")
    assert exc.value.ident == 1


def test_sign_mismatch():
    with pytest.raises(ValidationError):
        parse("knot: O+1 U-1")


@pytest.mark.parametrize("text,line,col", [
    ("knot: O+1  U+1", 1, 11),
    ("knot: X+1 U+1", 1, 7),
    ("knot:O+1 U+1", 1, 6),
    ("braid: O+1", 1, 1),
    ("knot: O+1 U+1\nknot:", 2, 1),
    ("graphoid\nvertex A: e1", 2, 8),
    ("graphoid\nfoo", 2, 1),
])
def test_syntax_errors(text, line, col):
    with pytest.raises(GaussSyntaxError) as exc:
        parse(text)
    assert (exc.value.line, exc.value.column) == (line, col)


def test_comments_and_blank_lines():
    G = parse("# a trefoil\n\nknot: O+1 U+2 O+3 U+1 O+2 U+3  # end\n")
    assert serialize(G) == "knot: O+1 U+2 O+3 U+1 O+2 U+3"


@pytest.mark.parametrize("text", [FIVE2_MIXED, FIVE2_POSITIVE, SIX3, "knotoid:", "knot:", "knotoid: O-1 U+2 U-1 O+2"])
def test_round_trip_verbatim(text):
    assert serialize(parse(text)) == text


def test_round_trip_nine_vertex_graphoid():
    text = nine_vertex_graphoid()
    G = parse(text)
    assert serialize(parse(serialize(G))) == serialize(G)
    body = [l for l in text.split("\n") if l and not l.startswith("#")]
    assert serialize(G).split("\n") == body
    assert G.edge("e1").entries == (Entry(1, "O", 1),)
    assert G.edge("e1").tail == "a" and G.edge("e1").head == "b"
    assert len(G.crossings) == 6
    assert G.distinguished == ("c", "e", "f", "g")


def test_graphoid_validation():
    with pytest.raises(ValidationError):
        parse("graphoid\nvertex a: e1\nvertex b:\nedge e1 = a->b:")
    with pytest.raises(ValidationError):
        parse("graphoid\nvertex a: e1\nedge e1 = a->z:")
    with pytest.raises(ValidationError):
        parse("graphoid\nvertex a: e1\nvertex b: e1\nedge e1 = a->b:\ndistinguished q")


@settings(max_examples=200, deadline=None)
@given(codes())
def test_round_trip_property(G):
    text = serialize(G)
    assert parse(text) == G
    assert serialize(parse(text)) == text


@settings(max_examples=200, deadline=None)
@given(codes())
def test_canonical_idempotent(G):
    C = canonical_form(G)
    assert canonical_form(C) == C
    assert diagrams_equal(G, C)


@settings(max_examples=150, deadline=None)
@given(codes(KNOT), st.integers(0, 20))
def test_knot_rotation_invariance(G, k):
    es = list(G.entries)
    if not es:
        return
    k %= len(es)
    R = GaussDiagram(KNOT, tuple(es[k:] + es[:k]))
    assert canonical_form(R) == canonical_form(G)


@settings(max_examples=100, deadline=None)
@given(codes())
def test_relabel_invariance(G):
    ids = G.crossings
    perm = {i: j for i, j in zip(ids, reversed(sorted(ids)))}
    R = GaussDiagram(G.kind, tuple(e.relabeled(perm) for e in G.entries))
    assert diagrams_equal(R, G)


def test_knotoid_canonical_is_first_appearance():
    G = parse("knotoid: U-3 O+1 U+1 O-3")
    assert serialize(canonical_form(G)) == "knotoid: U-1 O+2 U+2 O-1"
    H = parse("knotoid: U-1 O+2 U+2 O-1")
    assert canonical_form(H) == H


def test_graphoid_relabel_brute_force():
    G = parse(nine_vertex_graphoid())
    ref = serialize(canonical_form(G))
    ids = sorted(G.crossings)
    for k, perm in enumerate(permutations(ids)):
        if k % 37:
            continue
        m = dict(zip(ids, perm))
        edges = tuple(GraphEdge(ed.name, ed.tail, ed.head, tuple(e.relabeled(m) for e in ed.entries))
                      for ed in G.edges)
        verts = tuple((v, rot[1:] + rot[:1]) for v, rot in reversed(G.vertices))
        H = GaussDiagram(GRAPHOID, (), verts, edges, tuple(reversed(G.distinguished)))
        assert serialize(canonical_form(H)) == ref


def test_five2_vs_rotation_and_six3():
    G = parse(FIVE2_POSITIVE)
    es = list(G.entries)
    for k in range(len(es)):
        assert diagrams_equal(G, GaussDiagram(KNOT, tuple(es[k:] + es[:k])))
    assert not diagrams_equal(G, parse(SIX3))


def test_kind_mismatch():
    with pytest.raises(KindMismatch):
        diagrams_equal(parse("knot:"), parse("knotoid:"))
