"""
Tests for the game solvers: pebble games, atomic network games, coloured
graph games, canonical forms and the experiments built on them
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from functools import lru_cache
from itertools import product

import pytest

from algebra.atoms import CAAtomStructure
from algebra.errors import CapExceededError, PreconditionError
from algebra.graphs import Chain, ParseGraphSpec, ParseOrderSpec
from algebra.matrices import BuildCAFromMatrices, EnumerateBasicMatrices
from algebra.monk import BuildAlpha
from algebra.rainbow import FixedOpening, RainbowSignature, SplitReds
from algebra.samples import OneAtomCA, RandomMicroCA
from games.arena import EXISTS, FORALL, OMEGA, ParseRounds
from games.canonical import AreIsomorphic, CanonicalForm, CanonicalLabelling
from games.ef import EFArena, EFConfig, SolveEF
from games.experiments import (AtomicGameConfig, BuildAtomicArena, MaxSurvivableRounds, SolveAtomicGame,
                               TransferExperiment)
from games.graph_game import GraphArena, IsConeDemand
from games.solver import BoundedSolver, FixpointSolver, SolveGame, SurvivableRounds


# Rounds

@pytest.mark.parametrize("text", ["inf", "omega", "w", "Infinity", None])
def test_parse_unbounded_rounds(text):
    assert ParseRounds(text) is OMEGA


def test_parse_finite_rounds():
    assert ParseRounds("3") == 3
    assert ParseRounds(0) == 0


@pytest.mark.parametrize("text", ["-1", "two", "1.5"])
def test_parse_bad_rounds(text):
    with pytest.raises(PreconditionError):
        ParseRounds(text)


# Pebble games

def ef(A, B, pebbles, rounds=OMEGA):
    return EFConfig(ParseOrderSpec(A), ParseOrderSpec(B), pebbles, rounds)


def test_long_chain_beats_short_chain():
    """Test that two pebbles separate a 3-chain from a 2-chain in two rounds"""
    outcome = SolveEF(ef("chain:3", "chain:2", 2))

    assert outcome.winner == FORALL
    assert outcome.horizon == 2
    assert outcome.rounds is OMEGA


@pytest.mark.parametrize("rounds,winner,horizon", [(1, EXISTS, None), (2, FORALL, 2), (5, FORALL, 2)])
def test_bounded_chain_game(rounds, winner, horizon):
    outcome = SolveEF(ef("chain:3", "chain:2", 2, rounds))

    assert outcome.winner == winner
    assert outcome.horizon == horizon


def test_zero_round_game_is_won_by_exists():
    assert SolveEF(ef("chain:3", "chain:1", 2, 0)).winner == EXISTS


@pytest.mark.parametrize("spec", ["chain:2", "complete:2"])
def test_identical_structures(spec):
    """Test that EXISTS copies FORALL when both structures are equal"""
    assert SolveEF(ef(spec, spec, 2)).winner == EXISTS


def test_one_pebble_never_loses():
    assert SolveEF(ef("chain:3", "chain:1", 1)).winner == EXISTS


def test_ef_preconditions():
    with pytest.raises(PreconditionError):
        ef("chain:2", "chain:2", 0)
    with pytest.raises(PreconditionError):
        ef("chain:2", "chain:2", 1, -1)


def test_ef_position_cap():
    with pytest.raises(CapExceededError):
        EFArena(ef("chain:6", "chain:6", 3), caps={'max_states': 100})


def test_ef_challenges_place_before_lifting():
    arena = EFArena(ef("chain:3", "chain:2", 2))

    assert list(arena.challenges(())) == [('place', 0), ('place', 1), ('place', 2)]
    assert list(arena.challenges(((0, 0), (1, 1)))) == [('lift', 0, 2), ('lift', 1, 2)]


@lru_cache(maxsize=None)
def pebble_horizon(A_spec, B_spec, pebbles):
    """
    Rounds FORALL needs in the pebble slots game, None when EXISTS survives forever

    FORALL moves any slot to any element of A, EXISTS answers in B. Layer k
    holds the positions FORALL wins within k rounds; layers grow until stable.
    """
    A, B = ParseOrderSpec(A_spec), ParseOrderSpec(B_spec)

    def consistent(slots):
        pairs = [s for s in slots if s is not None]
        for a, b in pairs:
            for a2, b2 in pairs:
                if a == a2 and b != b2:
                    return False
                if A.related(a, a2) and not B.related(b, b2):
                    return False
        return True

    cells = [None] + list(product(A.universe, B.universe))
    positions = {slots for slots in product(cells, repeat=pebbles) if consistent(slots)}
    start = (None,) * pebbles
    losing, layer = set(), 0
    while start not in losing:
        grown = set()
        for slots in positions:
            for k in range(pebbles):
                if any(all(moved not in positions or moved in losing
                           for moved in (slots[:k] + ((a, b),) + slots[k + 1:] for b in B.universe))
                       for a in A.universe):
                    grown.add(slots)
                    break
        if grown == losing:
            return None
        losing, layer = grown, layer + 1
    return layer


def expected_outcome(horizon, rounds):
    if horizon is None or (rounds is not OMEGA and horizon > rounds):
        return EXISTS, None
    return FORALL, horizon


SMALL_ORDERS = ["chain:1", "chain:2", "chain:3", "complete:2", "complete:3", "empty:2"]


@pytest.mark.parametrize("A", SMALL_ORDERS)
@pytest.mark.parametrize("B", SMALL_ORDERS)
def test_pebble_game_matches_oracle(A, B):
    """Test the solver against exhaustive search over pebble slots"""
    for pebbles in (1, 2):
        for rounds in (0, 1, 2, 3, OMEGA):
            outcome = SolveEF(ef(A, B, pebbles, rounds))
            assert (outcome.winner, outcome.horizon) == expected_outcome(pebble_horizon(A, B, pebbles), rounds), \
                (pebbles, rounds)


CHAINS = ["chain:1", "chain:2", "chain:3", "chain:4"]


@pytest.mark.parametrize("A", CHAINS)
@pytest.mark.parametrize("B", CHAINS)
@pytest.mark.parametrize("pebbles", [2, 3])
def test_chain_games_match_oracle(A, B, pebbles):
    """Test winner and horizon on chains up to four elements, finite and unbounded"""
    horizon = pebble_horizon(A, B, pebbles)
    for rounds in (1, 2, 3, 4, OMEGA):
        outcome = SolveEF(ef(A, B, pebbles, rounds))
        assert (outcome.winner, outcome.horizon) == expected_outcome(horizon, rounds), rounds


def test_lifting_pebbles_extends_the_horizon():
    """Test that two pebbles need lifts to separate a 4-chain from a 3-chain"""
    outcome = SolveEF(ef("chain:4", "chain:3", 2), strategy_limit=1000)

    assert outcome.winner == FORALL
    assert outcome.horizon > 2
    assert any(move.startswith("move pebble #") for move in outcome.strategy.values())
    assert outcome.horizon == pebble_horizon("chain:4", "chain:3", 2)


def test_fixpoint_and_bounded_agree_on_horizon():
    arena = EFArena(ef("chain:3", "chain:2", 2))
    unbounded = FixpointSolver(arena).solve()
    bounded = BoundedSolver(arena).solve(10)

    assert unbounded.horizon == bounded.horizon == 2
    assert bounded.survived == 1


def test_fixpoint_horizon_of_start():
    solver = FixpointSolver(EFArena(ef("chain:3", "chain:2", 2)))
    assert solver.horizon_of(()) == 2
    with pytest.raises(PreconditionError):
        solver.horizon_of(((7, 7),))


def test_survivable_rounds():
    arena = EFArena(ef("chain:3", "chain:2", 2))

    assert SurvivableRounds(arena, 5) == 1
    assert SurvivableRounds(EFArena(ef("chain:2", "chain:2", 2)), 4) == 4


def test_round_cap_enforced():
    with pytest.raises(CapExceededError):
        SolveGame(EFArena(ef("chain:2", "chain:2", 1)), 100)


def test_outcome_dict_names_omega():
    data = SolveEF(ef("chain:2", "chain:2", 2)).to_dict()

    assert data['rounds'] == 'omega'
    assert data['winner'] == EXISTS


# Canonical forms

def test_relabelled_structures_are_isomorphic():
    first = {(0, 1): 'r', (1, 2): 'g'}
    second = {(2, 1): 'r', (1, 0): 'g'}

    assert AreIsomorphic(3, first, second)
    assert CanonicalForm(3, first) == CanonicalForm(3, second)


def test_direction_matters():
    assert not AreIsomorphic(3, {(0, 1): 'r', (1, 2): 'r'}, {(0, 1): 'r', (2, 1): 'r'})
    assert not AreIsomorphic(3, {(0, 1): 'r', (1, 2): 'r'}, {(0, 1): 'r', (1, 2): 'g'})


def test_canonical_labelling_is_a_permutation():
    relabel = CanonicalLabelling(4, {(0, 1): 'a', (2, 3): 'b', (1, 3): 'c'})
    assert sorted(relabel) == [0, 1, 2, 3]


def test_empty_structure_form():
    assert CanonicalForm(0, {}) == (0, ())


# Atomic games on networks

def test_one_atom_structure_survives():
    """Test that EXISTS survives the unbounded game on the one-atom structure"""
    outcome = SolveAtomicGame(AtomicGameConfig(OneAtomCA(3), 4))

    assert outcome.winner == EXISTS
    assert outcome.rounds is OMEGA
    assert outcome.survived is None


def test_one_atom_structure_with_reuse():
    outcome = SolveAtomicGame(AtomicGameConfig(OneAtomCA(2), 2, reuse=True))
    assert outcome.winner == EXISTS


def test_max_survivable_rounds_hits_cap():
    assert MaxSurvivableRounds(AtomicGameConfig(OneAtomCA(3), 4), cap=3) == 3
    with pytest.raises(PreconditionError):
        MaxSurvivableRounds(AtomicGameConfig(OneAtomCA(3), 4))


def test_invalid_structure_rejected():
    atoms = ['u', 'v']
    full = {x: set(atoms) for x in atoms}
    eij = {(0, 0): ['u'], (1, 1): atoms, (0, 1): ['u'], (1, 0): ['u']}
    C = CAAtomStructure(2, atoms, [full, full], eij)
    with pytest.raises(PreconditionError):
        SolveAtomicGame(AtomicGameConfig(C, 2, 1))


def test_atomic_config_preconditions():
    with pytest.raises(PreconditionError):
        AtomicGameConfig(OneAtomCA(3), 2)
    with pytest.raises(PreconditionError):
        AtomicGameConfig(OneAtomCA(3), 3, fixed_opening=True)
    with pytest.raises(PreconditionError):
        AtomicGameConfig(OneAtomCA(3), 3, rounds=-2)


def test_micro_structures_are_seeded():
    assert RandomMicroCA(3).fingerprint() == RandomMicroCA(3).fingerprint()


def assert_unbounded_is_limit(arena, cap=5):
    """The unbounded outcome agrees with the survivable finite rounds up to cap"""
    unbounded = SolveGame(arena, OMEGA)
    survived = SurvivableRounds(arena, cap)
    if unbounded.winner == EXISTS:
        assert survived == cap
    else:
        assert survived == max(min(unbounded.horizon - 1, cap), 0)
        assert (survived == cap) == (unbounded.horizon > cap)


@pytest.mark.parametrize("seed", range(20))
def test_micro_games_are_coherent(seed):
    """Test round monotonicity, worker independence, budget monotonicity and the unbounded limit"""
    C = RandomMicroCA(seed)
    one = SolveAtomicGame(AtomicGameConfig(C, 4, 1))
    two = SolveAtomicGame(AtomicGameConfig(C, 4, 2))
    parallel = SolveAtomicGame(AtomicGameConfig(C, 4, 2), workers=3)
    small = SolveAtomicGame(AtomicGameConfig(C, 3, 2))

    if two.winner == EXISTS:
        assert one.winner == EXISTS
    assert (parallel.winner, parallel.horizon) == (two.winner, two.horizon)
    if two.winner == EXISTS:
        assert small.winner == EXISTS
    assert_unbounded_is_limit(BuildAtomicArena(AtomicGameConfig(C, 3, reuse=True)))
    assert_unbounded_is_limit(BuildAtomicArena(AtomicGameConfig(C, 4)))


def monk_basis_ca():
    alpha = BuildAlpha(ParseGraphSpec("complete:2"), 3)
    return BuildCAFromMatrices(alpha, 3, EnumerateBasicMatrices(alpha, 3))


CONSTRUCTED = {
    'one_atom_2': lambda: AtomicGameConfig(OneAtomCA(2), 2, reuse=True),
    'one_atom_3': lambda: AtomicGameConfig(OneAtomCA(3), 4),
    'monk_basis': lambda: AtomicGameConfig(monk_basis_ca(), 3, reuse=True),
    'split_reds': lambda: AtomicGameConfig(SplitReds(chain_signature("chain:2", "chain:1"), 2), 3, reuse=True),
}


@pytest.mark.parametrize("name", sorted(CONSTRUCTED))
def test_constructed_games_reach_their_limit(name):
    """Test the unbounded game against finite rounds on built structures and signatures"""
    cfg = CONSTRUCTED[name]()
    assert_unbounded_is_limit(BuildAtomicArena(cfg))
    assert_unbounded_is_limit(BuildAtomicArena(cfg), cap=2)


# Coloured graph games

def chain_signature(A="chain:3", B="chain:1"):
    return RainbowSignature(3, ParseOrderSpec(A), ParseOrderSpec(B), shade_family='full')


def test_fixed_opening_is_a_cone():
    sig = chain_signature()
    assert IsConeDemand(sig, FixedOpening(sig)) is True


def test_graph_arena_budget():
    with pytest.raises(PreconditionError):
        GraphArena(chain_signature(), 2)


@pytest.mark.parametrize("rounds,winner,horizon", [(1, EXISTS, None), (2, FORALL, 2)])
def test_graph_game_from_fixed_opening(rounds, winner, horizon):
    """Test that three tints against one red index lose in two rounds"""
    cfg = AtomicGameConfig(chain_signature(), 5, rounds, fixed_opening=True)
    outcome = SolveAtomicGame(cfg)

    assert outcome.winner == winner
    assert outcome.horizon == horizon


def test_graph_game_is_stable_across_runs():
    cfg = AtomicGameConfig(chain_signature(), 5, 2, fixed_opening=True)
    first, second = SolveAtomicGame(cfg), SolveAtomicGame(cfg)

    assert (first.winner, first.horizon, first.states_explored) == \
        (second.winner, second.horizon, second.states_explored)


def test_transfer_row_fields():
    row = TransferExperiment(Chain(2), Chain(1), 1, 1)

    assert row['ef_winner'] == EXISTS
    assert row['claim_holds'] is True
    assert row['rounds'] == 1
    assert {'graph_winner', 'graph_horizon', 'agree'} <= set(row)
