"""
Pebble Games
Ehrenfeucht-Fraisse pebble game between two ordered structures: FORALL
pebbles elements of A, EXISTS answers in B and must keep the pebbled pairs
a partial homomorphism
"""

from dataclasses import dataclass
from math import comb
from typing import Any, Dict, Iterable, Optional, Tuple

from algebra.errors import CapExceededError, PreconditionError
from algebra.graphs import IsPartialHomomorphism, OrderedStructure
from games.arena import OMEGA, Arena, GameOutcome
from games.solver import SolveGame
from utils.config import GetCaps

Pairs = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class EFConfig:
    A: OrderedStructure
    B: OrderedStructure
    pebbles: int
    rounds: Optional[int] = OMEGA

    def __post_init__(self):
        if self.pebbles < 1:
            raise PreconditionError("the pebble game needs at least one pebble pair")
        if self.rounds is not OMEGA and self.rounds < 0:
            raise PreconditionError("rounds must be non-negative")

    def to_dict(self) -> Dict[str, Any]:
        return {'A': self.A.to_dict(), 'B': self.B.to_dict(), 'pebbles': self.pebbles,
                'rounds': 'omega' if self.rounds is OMEGA else self.rounds}


class EFArena(Arena):
    """
    Positions are the pebbled pairs, sorted

    FORALL places a new pebble while fewer than p are down and only then
    lifts one; placing on an already pebbled element is never offered.
    """

    def __init__(self, cfg: EFConfig, caps: Optional[Dict[str, int]] = None):
        self.cfg = cfg
        self.caps = caps or GetCaps()
        self.name = f"ef(|A|={len(cfg.A)},|B|={len(cfg.B)},p={cfg.pebbles})"
        bound = sum(comb(len(cfg.A), k) * len(cfg.B) ** k for k in range(min(cfg.pebbles, len(cfg.A)) + 1))
        if bound > self.caps['max_states']:
            raise CapExceededError('pebble positions', bound, self.caps['max_states'])

    def openings(self):
        return [('start', [()])]

    def challenges(self, state: Pairs) -> Iterable[Tuple]:
        pebbled = {a for a, _ in state}
        free = [a for a in self.cfg.A.universe if a not in pebbled]
        if len(state) < self.cfg.pebbles:
            for a in free:
                yield ('place', a)
        else:
            for k in range(len(state)):
                for a in free:
                    yield ('lift', k, a)

    def responses(self, state: Pairs, challenge: Tuple) -> Iterable[Tuple[int, Pairs]]:
        if challenge[0] == 'lift':
            kept = state[:challenge[1]] + state[challenge[1] + 1:]
        else:
            kept = state
        a = challenge[-1]
        for b in self.cfg.B.universe:
            pairs = kept + ((a, b),)
            if IsPartialHomomorphism(self.cfg.A, self.cfg.B, pairs):
                yield b, tuple(sorted(pairs))

    def canonical(self, state: Pairs) -> Pairs:
        return state

    def describe_state(self, state: Pairs) -> str:
        return "{" + ", ".join(f"{a}->{b}" for a, b in state) + "}"

    def describe_move(self, move) -> str:
        if isinstance(move, tuple) and move and move[0] == 'place':
            return f"pebble {move[1]}"
        if isinstance(move, tuple) and move and move[0] == 'lift':
            return f"move pebble #{move[1]} to {move[2]}"
        return str(move)


def SolveEF(cfg: EFConfig, caps: Optional[Dict[str, int]] = None, workers: int = 1,
            strategy_limit: Optional[int] = None) -> GameOutcome:
    """
    Decide the pebble game

    Args:
        cfg: Structures, pebble pairs and rounds (OMEGA for the unbounded game)

    Returns:
        GameOutcome; FORALL wins once the pebbled pairs stop being a partial homomorphism
    """
    return SolveGame(EFArena(cfg, caps), cfg.rounds, caps, workers, strategy_limit)
