"""
Tests for basic matrices, cylindric bases, hypernetworks and hyperbases
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import pytest

from algebra.errors import CapExceededError, PreconditionError, StructureError
from algebra.graphs import ParseGraphSpec
from algebra.hyper import (BuildPEAFromHyperbasis, CheckHyperbasis, EnumerateHypernetworks, IsHypernetwork,
                           IsSymmetric, Restrict, TupleSpace)
from algebra.matrices import BuildCAFromMatrices, CheckCylindricBasis, EnumerateBasicMatrices, IsBasicMatrix
from algebra.monk import BuildAlpha, BuildMaddux
from algebra.validation import ValidateCA


@pytest.fixture(scope="module")
def alpha():
    return BuildAlpha(ParseGraphSpec("cliques:2:3"), 3)


@pytest.fixture(scope="module")
def alpha_matrices(alpha):
    return EnumerateBasicMatrices(alpha, 3)


def test_matrices_are_basic(alpha, alpha_matrices):
    """Test that every enumerated matrix has identity diagonal and consistent triangles"""
    assert alpha_matrices
    for M in alpha_matrices[:50]:
        assert IsBasicMatrix(alpha, M.entries)
        assert all(M[i, i] == "1'" for i in range(3))


def test_matrices_are_sorted_and_distinct(alpha_matrices):
    assert len(set(alpha_matrices)) == len(alpha_matrices)


def test_full_matrix_set_is_a_basis(alpha, alpha_matrices):
    """Test that Mat_3 of a Monk structure is a cylindric basis"""
    report = CheckCylindricBasis(alpha, 3, alpha_matrices)

    assert report.holds is True
    assert report.failed_conditions == []


@pytest.mark.parametrize("index", [0, 1, 7, -2, -1])
def test_missing_matrix_breaks_witnesses(alpha, alpha_matrices, index):
    """Test that every matrix is the only witness for its own triangle"""
    kept = alpha_matrices[:index] + alpha_matrices[index:][1:]
    report = CheckCylindricBasis(alpha, 3, kept)

    assert len(kept) == len(alpha_matrices) - 1
    assert report.holds is False
    assert 'witness' in report.failed_conditions


def test_missing_identity_matrix_breaks_amalgamation(alpha, alpha_matrices):
    """Test that the all-identity matrix is the only amalgam of two identity edges"""
    kept = [M for M in alpha_matrices if any(M[x, y] != "1'" for x in range(3) for y in range(3))]
    report = CheckCylindricBasis(alpha, 3, kept)

    assert len(kept) == len(alpha_matrices) - 1
    assert 'amalgamation' in report.failed_conditions
    assert 'coverage' not in report.failed_conditions


def test_empty_set_fails_coverage(alpha):
    report = CheckCylindricBasis(alpha, 3, [])
    assert 'coverage' in report.failed_conditions


def test_missing_atom_fails_coverage(alpha, alpha_matrices):
    atom = alpha.atoms[-1]
    report = CheckCylindricBasis(alpha, 3, [M for M in alpha_matrices if M[0, 1] != atom])

    assert 'coverage' in report.failed_conditions
    assert report.to_dict()['holds'] is False


def test_ca_from_basis(alpha, alpha_matrices):
    """Test that the induced cylindric structure is valid and carries substitutions"""
    C = BuildCAFromMatrices(alpha, 3, alpha_matrices)

    assert C.dimension == 3
    assert len(C.atoms) == len(alpha_matrices)
    assert C.atoms[0] == 'm0'
    assert C.pij is not None
    assert ValidateCA(C).valid is True


def test_ca_from_non_basis_rejected(alpha, alpha_matrices):
    with pytest.raises(PreconditionError):
        BuildCAFromMatrices(alpha, 3, alpha_matrices[:-1])


def test_matrices_need_three_nodes(alpha):
    with pytest.raises(PreconditionError):
        EnumerateBasicMatrices(alpha, 2)


def test_matrix_search_space_cap(alpha):
    with pytest.raises(CapExceededError):
        EnumerateBasicMatrices(alpha, 4, caps={'max_matrices': 1000})


def test_transpose_swaps_nodes(alpha_matrices):
    M = alpha_matrices[-1]
    T = M.transpose(0, 1)

    assert T[0, 2] == M[1, 2]
    assert T.transpose(0, 1) == M


# Hypernetworks

def test_tuple_space_size():
    assert len(TupleSpace(3, 2)) == 3 + 9
    assert len(TupleSpace(3, 3)) == 3 + 9 + 27


@pytest.fixture(scope="module")
def maddux():
    return BuildMaddux(3, 1, 3)


@pytest.fixture(scope="module")
def maddux_networks(maddux):
    return EnumerateHypernetworks(maddux, 3, 4, ('0',))


def test_single_label_gives_one_network_per_matrix(maddux, maddux_networks):
    assert len(maddux_networks) == len(EnumerateBasicMatrices(maddux, 3))
    assert all(IsHypernetwork(maddux, N, ('0',)) for N in maddux_networks)


def test_hyperbasis_holds(maddux, maddux_networks):
    """Test coverage, witness, amalgamation and symmetry on all networks"""
    report = CheckHyperbasis(maddux, 3, 4, ('0',), maddux_networks)

    assert report.holds is True
    assert 'symmetry' in report.conditions


def test_hyperbasis_is_symmetric(maddux_networks):
    symmetric, witness = IsSymmetric(maddux_networks)
    assert symmetric is True
    assert witness is None


def test_pea_from_hyperbasis(maddux, maddux_networks):
    """Test that the polyadic structure has one atom per network and validates"""
    C = BuildPEAFromHyperbasis(maddux, 3, 4, ('0',), maddux_networks)

    assert len(C.atoms) == len(maddux_networks)
    assert C.atoms[0] == 'h0'
    assert ValidateCA(C).valid is True


def test_dropping_a_network_breaks_symmetry(maddux, maddux_networks):
    report = CheckHyperbasis(maddux, 3, 4, ('0',), maddux_networks[1:])
    assert report.holds is False


def test_restrict_shortens_tuples(maddux_networks):
    N = maddux_networks[0]
    short = Restrict(N, 3, 2)

    assert short.n_wide == 2
    assert short.atom(0, 1) == N.atom(0, 1)
    with pytest.raises(StructureError):
        Restrict(N, 3, 5)


@pytest.mark.parametrize("n_wide,labels", [(1, ('0',)), (3, ())])
def test_hypernetwork_preconditions(maddux, n_wide, labels):
    with pytest.raises(PreconditionError):
        EnumerateHypernetworks(maddux, 3, n_wide, labels)
