"""
Tests for graph and ordered-structure generators, chromatic number and girth
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import math

import pytest

from algebra.errors import CapExceededError, StructureError
from algebra.graphs import (CalculateChromaticNumber, CalculateGirth, Chain, CliqueNumber, Graph, GraphFromText,
                            GraphToText, IsPartialHomomorphism, LoadGraph, LoadOrderedStructure, ParseGraphSpec,
                            ParseOrderSpec, SaveGraph)


@pytest.mark.parametrize("spec,vertices,edges", [
    ("cliques:3:3", 9, 9),
    ("band:6:3", 6, 9),
    ("complete:5", 5, 10),
    ("cycle:5", 5, 5),
    ("path:4", 4, 3),
])
def test_graph_spec_sizes(spec, vertices, edges):
    """Test vertex and edge counts of each generator family"""
    G = ParseGraphSpec(spec)
    assert G.vertex_count == vertices
    assert len(G.edges) == edges


@pytest.mark.parametrize("spec", ["wheel:5", "cycle:2", "cliques:3", "complete:x"])
def test_bad_graph_specs(spec):
    with pytest.raises(StructureError):
        ParseGraphSpec(spec)


def test_graph_rejects_loops():
    with pytest.raises(StructureError):
        Graph(3, frozenset({(1, 1)}))


def test_edges_are_normalized():
    G = Graph(3, frozenset({(2, 0)}))
    assert G.edges == frozenset({(0, 2)})
    assert G.has_edge(2, 0)


@pytest.mark.parametrize("spec,expected", [
    ("cliques:3:3", 3),
    ("cycle:5", 3),
    ("cycle:6", 2),
    ("complete:6", 6),
    ("band:8:4", 4),
    ("path:1", 1),
])
def test_chromatic_numbers(spec, expected):
    """Test exact chromatic numbers of small graphs"""
    assert CalculateChromaticNumber(ParseGraphSpec(spec)) == expected


def test_chromatic_number_of_empty_graph():
    assert CalculateChromaticNumber(Graph(0)) == 0
    assert CalculateChromaticNumber(Graph(4)) == 1


def test_chromatic_number_respects_vertex_cap():
    """Test that graphs above the vertex cap are refused"""
    with pytest.raises(CapExceededError):
        CalculateChromaticNumber(ParseGraphSpec("path:10"), caps={'max_vertices': 5})


def test_clique_number():
    assert CliqueNumber(ParseGraphSpec("cliques:2:4")) == 4


def test_girth():
    """Test girth of cycles, cliques and forests"""
    assert CalculateGirth(ParseGraphSpec("cycle:7")) == 7
    assert CalculateGirth(ParseGraphSpec("complete:4")) == 3
    assert CalculateGirth(ParseGraphSpec("path:5")) == math.inf


def test_dimacs_text_round_trip():
    G = ParseGraphSpec("band:5:2")
    text = GraphToText(G)

    assert text.startswith("p 5 4")
    assert GraphFromText(text) == G


def test_dimacs_ignores_comments():
    G = GraphFromText("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    assert G == ParseGraphSpec("complete:3")


@pytest.mark.parametrize("text", ["e 1 2\n", "p 3\n", "x 1 2\n", ""])
def test_malformed_dimacs(text):
    with pytest.raises(StructureError):
        GraphFromText(text)


@pytest.mark.parametrize("suffix", [".json", ".txt"])
def test_save_and_load_graph(tmp_path, suffix):
    G = ParseGraphSpec("cycle:5")
    path = str(tmp_path / f"graph{suffix}")
    SaveGraph(G, path)
    assert LoadGraph(path) == G


# Ordered structures

def test_chain_relation():
    chain = Chain(3)
    assert chain.related(0, 2)
    assert not chain.related(2, 0)
    assert len(chain.less_than) == 3


@pytest.mark.parametrize("spec,size,pairs", [
    ("chain:3", 3, 3),
    ("complete:3", 3, 6),
    ("empty:2", 2, 0),
    ("mpI:1,chain:2", 3, 5),
    ("mpI:2,chain:1", 3, 6),
])
def test_order_specs(spec, size, pairs):
    """Test universe size and relation size of order specs"""
    structure = ParseOrderSpec(spec)
    assert len(structure) == size
    assert len(structure.less_than) == pairs


@pytest.mark.parametrize("spec", ["", "tree:3", "chain:2,chain:3", "chain:x"])
def test_bad_order_specs(spec):
    with pytest.raises(StructureError):
        ParseOrderSpec(spec)


def test_irreflexivity_enforced():
    from algebra.graphs import OrderedStructure
    with pytest.raises(StructureError):
        OrderedStructure((0, 1), frozenset({(0, 0)}))


def test_load_ordered_structure_from_json(tmp_path):
    import json
    path = tmp_path / "order.json"
    path.write_text(json.dumps(Chain(4).to_dict()))

    assert LoadOrderedStructure(str(path)) == Chain(4)
    assert LoadOrderedStructure("chain:4") == Chain(4)


def test_partial_homomorphism():
    """Test relation preservation and functionality of pebble maps"""
    A, B = Chain(3), Chain(2)

    assert IsPartialHomomorphism(A, B, [(0, 0), (1, 1)])
    assert not IsPartialHomomorphism(A, B, [(0, 1), (1, 0)])
    assert not IsPartialHomomorphism(A, B, [(0, 0), (0, 1)])
    assert IsPartialHomomorphism(A, B, [])
