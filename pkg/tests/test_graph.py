from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from g2rig.graph import (
    Graph,
    GraphFormatError,
    UnsupportedSizeError,
    canonical_form,
    canonical_key,
    enumerate_graphs,
    incident_edges,
    is_complete,
    is_isomorphic,
    isolated_vertices,
    parse_edge_shorthand,
    parse_graph6,
    serialize_graph6,
)

from oracles import burnside_graph_count


@st.composite
def graphs(draw, max_m=7):
    m = draw(st.integers(1, max_m))
    pairs = list(itertools.combinations(range(1, m + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(m, chosen)


def test_edges_are_normalised():
    g = Graph.from_edges(3, [(2, 1), (3, 2)])
    assert g.sorted_edges == [(1, 2), (2, 3)]
    assert g.degree(2) == 2


@pytest.mark.parametrize("m,edges", [(2, [(1, 1)]), (2, [(1, 3)]), (0, [])])
def test_bad_graphs_rejected(m, edges):
    with pytest.raises(ValueError):
        Graph.from_edges(m, edges)


def test_named_constructors():
    assert len(Graph.complete(5).edges) == 10
    assert Graph.path(4).sorted_edges == [(1, 2), (2, 3), (3, 4)]
    assert Graph.cycle(4).has_edge(1, 4)
    assert Graph.star(3).degree(1) == 3
    assert is_complete(Graph.complete(1))
    assert not is_complete(Graph.path(3))


def test_isolated_and_incident():
    g = Graph.from_edges(4, [(1, 2), (1, 3)])
    assert isolated_vertices(g) == {4}
    assert incident_edges(g, 1) == {(1, 2), (1, 3)}
    assert incident_edges(g, 4) == frozenset()


@pytest.mark.parametrize("text,m,edges", [
    ("A?", 2, []),
    ("A_", 2, [(1, 2)]),
    ("C~", 4, list(itertools.combinations(range(1, 5), 2))),
    ("Bw", 3, [(1, 2), (1, 3), (2, 3)]),
    ("CF", 4, [(1, 4), (2, 4), (3, 4)]),
    ("CC", 4, [(1, 4)]),
    ("CB", 4, [(2, 4), (3, 4)]),
    ("@", 1, []),
])
def test_graph6_hand_decoded(text, m, edges):
    g = parse_graph6(text)
    assert g == Graph.from_edges(m, edges)
    assert serialize_graph6(g) == text


@pytest.mark.parametrize("text,offset", [
    ("", 0),
    ("?", 0),
    ("A", 1),
    ("A__", 2),
    ("A`", 1),
    ("A\x7f", 1),
    ("~??", 0),
])
def test_graph6_errors_carry_offset(text, offset):
    with pytest.raises(GraphFormatError) as info:
        parse_graph6(text)
    assert info.value.offset == offset


@given(graphs())
def test_graph6_round_trip(g):
    assert parse_graph6(serialize_graph6(g)) == g


@given(graphs(), st.randoms(use_true_random=False))
@settings(max_examples=60)
def test_canonical_key_is_relabelling_invariant(g, rnd):
    perm = list(range(1, g.num_vertices + 1))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert canonical_key(h) == canonical_key(g)
    assert canonical_form(h) == canonical_form(g)
    assert is_isomorphic(g, h)


def test_canonical_form_is_idempotent():
    for g in enumerate_graphs(5):
        assert canonical_form(g) == g


def test_non_isomorphic_pairs():
    assert not is_isomorphic(Graph.path(4), Graph.star(3))
    assert not is_isomorphic(Graph.cycle(4), Graph.path(4))
    assert not is_isomorphic(Graph.complete(3), Graph.complete(4))


@pytest.mark.parametrize("m", range(1, 7))
def test_enumeration_matches_burnside(m):
    assert len(enumerate_graphs(m)) == burnside_graph_count(m)


def test_enumeration_m7_count():
    assert len(enumerate_graphs(7)) == 1044


def test_enumeration_is_distinct_and_sorted():
    gs = enumerate_graphs(5)
    keys = [canonical_key(g) for g in gs]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_enumeration_cap():
    with pytest.raises(UnsupportedSizeError):
        enumerate_graphs(9)
    with pytest.raises(UnsupportedSizeError):
        canonical_key(Graph.empty(9))


def test_enumeration_covers_random_graphs():
    rnd = random.Random(7)
    keys = {canonical_key(g) for g in enumerate_graphs(6)}
    pairs = list(itertools.combinations(range(1, 7), 2))
    for _ in range(50):
        g = Graph.from_edges(6, [p for p in pairs if rnd.random() < 0.5])
        assert canonical_key(g) in keys


def test_json_round_trip():
    g = Graph.cycle(5)
    assert Graph.from_json(g.to_json()) == g


@pytest.mark.parametrize("payload", ['{"vertices": 2}', '{"vertices": 2, "edges": [[1, 3]]}', "nope", '{"vertices": "x", "edges": []}'])
def test_json_errors(payload):
    with pytest.raises(GraphFormatError):
        Graph.from_json(payload)


def test_edge_shorthand():
    assert parse_edge_shorthand(4, "1-2, 3-4") == Graph.from_edges(4, [(1, 2), (3, 4)])
    assert parse_edge_shorthand(3, "") == Graph.empty(3)
    with pytest.raises(GraphFormatError):
        parse_edge_shorthand(3, "1-x")
