"""
Tests for rainbow signatures, coloured graphs, forbidden triangles and the
rainbow cylindric atom structure
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from itertools import combinations, permutations, product

import pytest

from algebra.blowup import RED_INDEX_MATCH, BlowUp, BlurSchema
from algebra.embedding import EmbedByCopies
from algebra.errors import PreconditionError, StructureError
from algebra.graphs import Chain, ParseOrderSpec
from algebra.rainbow import (GREEN, GREEN0, RED, RHO, WHITE, WHITE_I, YELLOW, BuildRainbowCA, BuildRedRA,
                             CheckColouredGraph, ColouredGraph, ConeTints, EnumerateColouredGraphs, FixedOpening,
                             GraphToNetwork, NetworkToGraph, PairOrder, RainbowSignature, RestrictedGrowthStrings,
                             SplitReds, TriangleRule)
from algebra.validation import ValidateCA


def signature(A="complete:3", B="chain:2", n=3, **kwargs):
    return RainbowSignature(n, ParseOrderSpec(A), ParseOrderSpec(B), shade_family='full', **kwargs)


# Signatures

def test_colour_inventory():
    """Test greens, whites and reds of a small signature"""
    sig = signature(A="chain:2", B="chain:1")

    assert sig.greens() == [(GREEN, 1), (GREEN0, 0), (GREEN0, 1)]
    assert sig.whites() == [(WHITE,), (WHITE_I, 0)]
    assert sig.reds() == [(RED, 0, 0)]
    assert (RHO,) not in sig.edge_colours(include_rho=True)


def test_split_signature_adds_copies_and_rho():
    sig = SplitReds(signature(A="chain:2", B="chain:1"), 3)

    assert sig.split is True
    assert sig.reds() == [(RED, 0, 0, 0), (RED, 0, 0, 1), (RED, 0, 0, 2)]
    assert (RHO,) in sig.edge_colours(include_rho=True)
    assert (RHO,) not in sig.edge_colours()
    with pytest.raises(PreconditionError):
        SplitReds(sig, 2)


@pytest.mark.parametrize("kwargs", [{'n': 2}, {'copies': 0}, {'shade_family': 'some'}])
def test_signature_preconditions(kwargs):
    args = {'n': 3, 'A': Chain(2), 'B': Chain(1)}
    args.update(kwargs)
    with pytest.raises(PreconditionError):
        RainbowSignature(**args)


def test_empty_index_structure_rejected():
    with pytest.raises(PreconditionError):
        RainbowSignature(3, Chain(0), Chain(1))


def test_shade_families():
    """Test that 'all' lists every subset of A and 'full' only A itself"""
    A, B = Chain(2), Chain(1)
    assert len(RainbowSignature(3, A, B).shade_list) == 4
    assert RainbowSignature(3, A, B, shade_family='full').shade_list == (frozenset({0, 1}),)


def test_signature_dict_round_trip():
    sig = signature(A="chain:2", B="chain:1", copies=2)
    assert RainbowSignature.from_dict(sig.to_dict()) == sig


# Forbidden triangles

@pytest.mark.parametrize("edges,rule", [
    (((GREEN, 1), (GREEN0, 0), (GREEN, 1)), 'green_triangle'),
    (((GREEN, 1), (GREEN, 1), (WHITE,)), 'green_green_white'),
    (((GREEN0, 0), (WHITE_I, 0), (YELLOW,)), 'green_yellow_white'),
    (((GREEN0, 0), (WHITE_I, 0), (GREEN0, 1)), 'green_green_white0'),
    (((YELLOW,), (YELLOW,), (YELLOW,)), 'yellow_triangle'),
    (((RED, 0, 1), (RED, 0, 1), (RED, 0, 1)), 'red_mismatch'),
    (((RED, 0, 1, 0), (RHO,), (RHO,)), 'red_rho_rho'),
    (((RED, 0, 1, 0), (RED, 1, 0, 2), (RHO,)), 'red_red_rho'),
])
def test_forbidden_triangles(edges, rule):
    sig = SplitReds(signature(A="chain:2", B="chain:2"), 3)
    assert TriangleRule(sig, *edges) == rule


@pytest.mark.parametrize("edges", [
    ((GREEN, 1), (GREEN, 1), (YELLOW,)),
    ((RED, 0, 1), (RED, 1, 1), (RED, 0, 1)),
    ((RED, 0, 1, 0), (RED, 1, 1, 1), (RED, 0, 1, 2)),
    ((WHITE,), (YELLOW,), (YELLOW,)),
])
def test_allowed_triangles(edges):
    sig = SplitReds(signature(A="chain:2", B="chain:2"), 3)
    assert TriangleRule(sig, *edges) is None


def test_green_green_red_needs_partial_homomorphism():
    """Test that an apex with tints 0 < 1 cannot see a red r(0,0)"""
    sig = signature(A="chain:2", B="chain:1")

    assert TriangleRule(sig, (GREEN0, 0), (RED, 0, 0), (GREEN0, 1)) == 'green_green_red'
    assert TriangleRule(sig, (GREEN0, 0), (RED, 0, 0), (GREEN0, 0)) is None


# Coloured graphs

def test_graph_build_fills_converse_colours():
    graph = ColouredGraph.build(2, {(1, 0): (RED, 0, 1)})
    assert graph.colour(0, 1) == (RED, 1, 0)
    assert graph.colour(1, 0) == (RED, 0, 1)


def test_graph_build_needs_every_edge():
    with pytest.raises(StructureError):
        ColouredGraph.build(3, {(0, 1): (WHITE,)})


def test_fixed_opening_is_valid():
    """Test that the opening graph passes every rule"""
    sig = signature(A="chain:3", B="chain:1")
    opening = FixedOpening(sig)

    assert opening.size == 3
    assert opening.colour(1, 2) == (GREEN, 1)
    assert opening.colour(0, 2) == (GREEN0, 0)
    assert CheckColouredGraph(sig, opening).valid is True
    assert ConeTints(sig, opening, (0, 1)) == {0}


def test_missing_shade_reported():
    sig = signature(A="chain:3", B="chain:1")
    opening = FixedOpening(sig)
    bare = ColouredGraph(opening.size, opening.edges)
    report = CheckColouredGraph(sig, bare)

    assert report.valid is False
    assert report.rules == ['yellow']


def test_unknown_colour_reported():
    sig = signature(A="chain:2", B="chain:1")
    graph = ColouredGraph.build(2, {(0, 1): (RED, 5, 5)})
    assert CheckColouredGraph(sig, graph).rules == ['colour']


def test_rho_edges_only_in_split_signatures():
    sig = signature(A="chain:2", B="chain:1")
    graph = ColouredGraph.build(2, {(0, 1): (RHO,)})

    assert CheckColouredGraph(sig, graph).rules == ['colour']
    assert 'colour' not in CheckColouredGraph(SplitReds(sig, 2), graph).rules


def test_network_round_trip_of_opening():
    sig = signature(A="chain:3", B="chain:1")
    opening = FixedOpening(sig)
    network = GraphToNetwork(sig, opening)

    assert len(network) == 3 ** 3
    assert NetworkToGraph(sig, network) == opening


def test_network_of_invalid_graph_rejected():
    sig = signature(A="chain:2", B="chain:1")
    bad = ColouredGraph.build(3, {(0, 1): (YELLOW,), (1, 2): (YELLOW,), (0, 2): (YELLOW,)})
    with pytest.raises(StructureError):
        GraphToNetwork(sig, bad)


def forbidden(sig, colour, nodes):
    """Forbidden triangle on three nodes, read off the edge colours around each node"""
    x, y, z = nodes
    edges = [colour(x, y), colour(y, z), colour(x, z)]
    kinds = sorted(c[0] for c in edges)
    greens = [c for c in edges if c[0] in (GREEN, GREEN0)]
    if len(greens) == 3 or kinds.count(YELLOW) == 3:
        return True
    if WHITE in kinds and len(greens) == 2 and greens[0] == greens[1] and greens[0][0] == GREEN:
        return True
    if kinds == sorted([GREEN0, WHITE_I, YELLOW]):
        return True
    if kinds.count(GREEN0) == 2 and (WHITE_I, 0) in edges:
        return True
    for v in nodes:
        u, w = [p for p in nodes if p != v]
        if kinds.count(RED) == 3 and colour(v, u)[1] != colour(v, w)[1]:
            return True
        first, second, red = colour(v, u), colour(v, w), colour(u, w)
        if first[0] == second[0] == GREEN0 and red[0] == RED:
            i, j, k, l = first[1], second[1], red[1], red[2]
            if i == j and k != l:
                return True
            for a, b, c, d in ((i, k, j, l), (j, l, i, k), (i, k, i, k), (j, l, j, l)):
                if sig.A.related(a, c) and not sig.B.related(b, d):
                    return True
    return False


def brute_force_graph_count(sig, size):
    """Count valid graphs by colouring every edge and counting the shades allowed on each green-free tuple"""
    tints = sorted(sig.A.universe)
    if sig.shade_family == 'full':
        shades = [set(tints)]
    else:
        shades = [set(s) for k in range(len(tints) + 1) for s in combinations(tints, k)]
    count = 0
    for edges in product(sig.edge_colours(), repeat=len(PairOrder(size))):
        graph = ColouredGraph(size, edges)
        if any(forbidden(sig, graph.colour, nodes) for nodes in combinations(range(size), 3)):
            continue
        ways = 1
        if size >= sig.n - 1:
            for base in permutations(range(size), sig.n - 1):
                if any(graph.colour(a, b)[0] in (GREEN, GREEN0) for a, b in combinations(base, 2)):
                    continue
                cone = {graph.colour(apex, base[0])[1] for apex in range(size) if apex not in base
                        and graph.colour(apex, base[0])[0] == GREEN0
                        and all(graph.colour(apex, base[j]) == (GREEN, j) for j in range(1, len(base)))}
                ways *= sum(1 for shade in shades if cone <= shade)
        count += ways
    return count


@pytest.mark.parametrize("size,family", [(1, 'full'), (2, 'full'), (3, 'full'), (1, 'all'), (2, 'all')])
def test_graph_enumeration_matches_brute_force(size, family):
    sig = RainbowSignature(3, ParseOrderSpec("complete:3"), ParseOrderSpec("chain:2"), shade_family=family)
    assert len(EnumerateColouredGraphs(sig, size)) == brute_force_graph_count(sig, size)


def test_brute_force_counts_cone_tints():
    """Test that a cone over a tuple leaves only the shades containing its tint"""
    sig = RainbowSignature(3, Chain(1), Chain(1), shade_family='all')
    coned = ColouredGraph.build(3, {(0, 1): (WHITE,), (2, 0): (GREEN0, 0), (2, 1): (GREEN, 1)},
                                {(0, 1): [], (1, 0): [0]})

    assert CheckColouredGraph(sig, coned).rules == ['cone']
    assert brute_force_graph_count(sig, 3) == len(EnumerateColouredGraphs(sig, 3))


def test_restricted_growth_strings():
    assert RestrictedGrowthStrings(3, 2) == [(0, 0, 1), (0, 1, 0), (0, 1, 1)]
    assert len(RestrictedGrowthStrings(4, 2)) == 7
    assert RestrictedGrowthStrings(2, 3) == []


# Rainbow atom structure

@pytest.fixture(scope="module")
def rainbow():
    return BuildRainbowCA(signature())


def test_rainbow_atom_count(rainbow):
    """Test that atoms are surjection kernels times valid graphs on each node count"""
    sig = signature()
    counts = [brute_force_graph_count(sig, k) for k in (1, 2, 3)]

    assert len(rainbow.atoms) == counts[0] + 3 * counts[1] + counts[2]
    assert rainbow.atoms[0] == 'a0'


def test_rainbow_structure_is_valid(rainbow):
    assert ValidateCA(rainbow).valid is True


def test_more_reds_give_more_atoms():
    small = BuildRainbowCA(signature(B="chain:1"))
    large = BuildRainbowCA(signature(B="chain:2"))
    assert len(large.atoms) > len(small.atoms)


def test_split_structure_embeds_by_copies():
    """Test that erasing red copies gives an embedding of the unsplit structure"""
    from algebra.rainbow import SplitCopyMap

    sig = signature(A="chain:2", B="chain:1")
    unsplit = BuildRainbowCA(sig)
    split = BuildRainbowCA(SplitReds(sig, 3))
    report = EmbedByCopies(unsplit, split, SplitCopyMap(unsplit, split))

    assert report.holds is True
    assert len(split.atoms) > len(unsplit.atoms)


# Red relation algebra

def test_red_ra_atoms():
    R = BuildRedRA(Chain(2))

    assert len(R.atoms) == 5
    assert R.converse['r(0,1)'] == 'r(1,0)'
    assert ('r(0,1)', 'r(1,0)', 'r(0,0)') in R.cycles
    assert ('r(0,1)', 'r(0,1)', 'r(0,1)') not in R.cycles


def test_red_index_blowup_keeps_matching_triples():
    blown = BlowUp(BuildRedRA(Chain(1)), BlurSchema(2, rule=RED_INDEX_MATCH))

    assert len(blown.atoms) == 3
    assert ('r(0,0)^0', 'r(0,0)^1', 'r(0,0)^0') in blown.cycles
    assert blown.provenance['red_indices']['r(0,0)^1'] == [0, 0]


def test_red_index_rule_needs_red_provenance():
    from algebra.monk import BuildMaddux
    with pytest.raises(PreconditionError):
        BlowUp(BuildMaddux(3, 1, 3), BlurSchema(1, rule=RED_INDEX_MATCH))
