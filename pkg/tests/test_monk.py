"""
Tests for the Monk and Maddux constructions, blow-ups and blur adequacy
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import pytest

from algebra.atoms import IDENTITY
from algebra.blowup import (BlowUp, BlurSchema, BlurSets, CheckCollapseMap, CollapseCopyMap, CopiesOf, FLMuSchema,
                            IsAdequateBlurSet, RedIndicesMatch, SplitPartition)
from algebra.errors import CapExceededError, PreconditionError
from algebra.fincof import COFINITE, FINITE
from algebra.graphs import GenerateDisjointCliques, ParseGraphSpec
from algebra.monk import BuildAlpha, BuildMaddux, BuildMonkRho, WFilterMatrices
from algebra.validation import ValidateRA


# Alpha

def test_alpha_atom_count():
    """Test that alpha(G, n) has 1 + |V|*n atoms, all self-converse"""
    R = BuildAlpha(GenerateDisjointCliques(3, 3), 3)

    assert len(R.atoms) == 28
    assert R.atoms[0] == IDENTITY
    assert all(R.converse[a] == a for a in R.atoms)


def test_alpha_monochromatic_triples_need_an_edge():
    R = BuildAlpha(GenerateDisjointCliques(3, 3), 3)

    assert ('(0,0)', '(3,0)', '(6,0)') not in R.cycles
    assert ('(0,0)', '(1,0)', '(6,0)') in R.cycles
    assert ('(0,0)', '(1,1)', '(2,2)') in R.cycles


@pytest.mark.parametrize("spec", ["cliques:2:3", "cycle:5", "band:5:2"])
def test_alpha_is_a_relation_algebra(spec):
    """Test that alpha passes the RA laws on several graphs"""
    assert ValidateRA(BuildAlpha(ParseGraphSpec(spec), 3)).valid is True


def test_alpha_preconditions():
    with pytest.raises(PreconditionError):
        BuildAlpha(ParseGraphSpec("complete:3"), 2)
    from algebra.graphs import Graph
    with pytest.raises(PreconditionError):
        BuildAlpha(Graph(0), 3)


# Rho structure

def test_monk_rho_consistency_rules():
    """Test the extra-point rules of the rho structure"""
    R = BuildMonkRho(ParseGraphSpec("complete:3"), 3)

    assert len(R.atoms) == 13
    assert ('(rho,0)', '(rho,0)', '(0,0)') in R.cycles
    assert ('(rho,0)', '(0,0)', '(1,0)') in R.cycles
    assert ('(rho,0)', '(0,0)', '(0,0)') not in R.cycles


def test_w_filter_drops_rho_entries():
    R = BuildMonkRho(ParseGraphSpec("complete:3"), 3)
    matrices = WFilterMatrices(R, 3)

    assert matrices
    assert all(not entry.startswith("(rho,") for M in matrices for row in M.entries for entry in row)


# Maddux

def test_maddux_atom_count():
    """Test that A(n, r) with psi copies has 1 + (n-1)*r*psi atoms"""
    assert len(BuildMaddux(3, 1, 3).atoms) == 7
    assert len(BuildMaddux(4, 2, 4).atoms) == 25


def test_maddux_forbidden_triples():
    R = BuildMaddux(3, 1, 3)

    assert ('a0(0,0)', 'a1(0,0)', 'a2(0,0)') not in R.cycles
    assert ('a0(0,0)', 'a0(1,0)', 'a0(0,0)') in R.cycles
    assert ('id', 'a0(0,0)', 'a0(0,0)') in R.cycles
    assert ('id', 'a0(0,0)', 'a1(0,0)') not in R.cycles


def test_maddux_small_instance_is_not_associative():
    assert 'associativity' in ValidateRA(BuildMaddux(3, 1, 3)).violations


def test_maddux_larger_instance_is_valid():
    assert ValidateRA(BuildMaddux(4, 1, 4)).valid is True


@pytest.mark.parametrize("args", [(2, 1, 3), (3, -1, 3), (4, 1, 3), (3, 4, 3)])
def test_maddux_preconditions(args):
    with pytest.raises(PreconditionError):
        BuildMaddux(*args)


# Blow-ups

def test_blowup_atom_ids_and_count():
    """Test that K copies replace each non-identity atom"""
    base = BuildMaddux(3, 1, 3)
    blown = BlowUp(base, BlurSchema(2))

    assert len(blown.atoms) == 1 + 6 * 2
    assert 'a0(0,0)^1' in blown.atoms
    assert blown.converse['a0(0,0)^1'] == 'a0(0,0)^1'


def test_blowup_identity_triples_keep_copies_apart():
    blown = BlowUp(BuildMaddux(3, 1, 3), BlurSchema(2))

    assert ('id', 'a0(0,0)^0', 'a0(0,0)^0') in blown.cycles
    assert ('id', 'a0(0,0)^0', 'a0(0,0)^1') not in blown.cycles


def test_collapse_map_embeds_base():
    """Test that each atom going to the join of its copies is an embedding"""
    base = BuildAlpha(ParseGraphSpec("complete:3"), 3)
    blown = BlowUp(base, BlurSchema(3))
    report = CheckCollapseMap(blown, base)

    assert report.holds is True
    assert report.checks_run[0] == 'covering'


def test_collapse_map_rejects_foreign_base():
    blown = BlowUp(BuildMaddux(3, 1, 3), BlurSchema(2))
    with pytest.raises(PreconditionError):
        CheckCollapseMap(blown, BuildMaddux(4, 1, 4))


def test_split_partition_and_copies():
    """Test term-algebra classes of a blow-up"""
    blown = BlowUp(BuildMaddux(3, 1, 3), BlurSchema(2))
    classes = SplitPartition(blown)

    assert len(classes) == 6
    assert 'id' not in classes
    copies = CopiesOf(blown, 'a0(0,0)')
    assert copies.mode('a0(0,0)') == COFINITE
    assert copies.mode('a1(0,0)') == FINITE
    assert CollapseCopyMap(blown)['a0(0,0)'] == {'a0(0,0)^0', 'a0(0,0)^1'}


def test_blowup_with_blurs():
    blown = BlowUp(BuildMaddux(3, 1, 3), BlurSchema(1, ('x', 'y')))
    groups = BlurSets(blown)

    assert len(blown.atoms) == 13
    assert sorted(groups) == ['x', 'y']
    assert len(groups['x']) == 6
    assert 'a0(0,0)^0/x' in groups['x']


def test_blowup_respects_atom_cap():
    with pytest.raises(CapExceededError):
        BlowUp(BuildMaddux(3, 1, 3), BlurSchema(4), caps={'max_atoms': 10})


@pytest.mark.parametrize("kwargs", [{'copy_count': 0}, {'copy_count': 1, 'blurs': ('x', 'x')},
                                    {'copy_count': 1, 'rule': 'nearest'}])
def test_bad_blur_schemas(kwargs):
    with pytest.raises(PreconditionError):
        BlurSchema(**kwargs)


def test_fl_mu_blur_count():
    """Test that the blur family has C(|I|, l) * mu members"""
    schema = FLMuSchema(tuple("abcdef"), 2, 1)

    assert schema.blur_count == 15
    assert len(schema.to_blur_schema(2).blurs) == 15
    assert FLMuSchema(tuple("abcdef"), 2, 3).blur_count == 45


@pytest.mark.parametrize("l,size", [(1, 6), (2, 5)])
def test_fl_mu_preconditions(l, size):
    with pytest.raises(PreconditionError):
        FLMuSchema(tuple("abcdefgh"[:size]), l)


def test_red_indices_match():
    assert RedIndicesMatch((0, 1), (1, 2), (0, 2))
    assert not RedIndicesMatch((0, 1), (2, 1), (0, 1))


# Blur adequacy

def single_blurs():
    return {'p': ['(0,0)'], 'q': ['(4,1)']}


def test_adequacy_for_two_indices():
    """Test that every pair of blurs has some composable target"""
    R = BuildAlpha(GenerateDisjointCliques(3, 3), 3)
    assert IsAdequateBlurSet(R, single_blurs(), 2).holds is True


def test_adequacy_fails_for_three_indices():
    """Test that (p;p) and (q;q) have no common target"""
    R = BuildAlpha(GenerateDisjointCliques(3, 3), 3)
    report = IsAdequateBlurSet(R, single_blurs(), 3)

    assert report.holds is False
    assert report.witness['pairs']


def test_strong_adequacy_fails():
    R = BuildAlpha(GenerateDisjointCliques(3, 3), 3)
    report = IsAdequateBlurSet(R, single_blurs(), 2, strong=True)

    assert report.holds is False
    assert set(report.witness) == {'V', 'W', 'T'}


def test_adequacy_needs_blurs():
    R = BuildAlpha(GenerateDisjointCliques(3, 3), 3)
    with pytest.raises(PreconditionError):
        IsAdequateBlurSet(R, {}, 3)
