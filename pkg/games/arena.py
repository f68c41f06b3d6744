"""
Game Arenas
Common interface for the two-player games: the universal player (FORALL)
opens and then challenges every round, the existential player (EXISTS)
answers; EXISTS loses a round when a challenge has no legal answer
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, Iterable, List, Optional, Tuple

from algebra.errors import PreconditionError

EXISTS = "exists"
FORALL = "forall"

# rounds value for the unbounded game
OMEGA = None


class Arena(ABC):
    """
    A game as seen by the solvers

    Play starts with an opening: FORALL picks one of openings(), EXISTS picks
    one of its answer states (no answer means FORALL wins before round 1).
    Each later round FORALL picks a challenge and EXISTS one of its responses.
    """

    name = "game"

    @abstractmethod
    def openings(self) -> List[Tuple[Any, List[Any]]]:
        """(opening move, states EXISTS may answer with) in a fixed order"""

    @abstractmethod
    def challenges(self, state) -> Iterable[Any]:
        """FORALL's moves from a state, in a fixed order"""

    @abstractmethod
    def responses(self, state, challenge) -> Iterable[Tuple[Any, Any]]:
        """(answer, next state) pairs for EXISTS, in a fixed order"""

    @abstractmethod
    def canonical(self, state) -> Hashable:
        """Key shared by every state with the same game value"""

    def describe_state(self, state) -> str:
        return repr(state)

    def describe_move(self, move) -> str:
        return str(move)


@dataclass
class GameOutcome:
    """
    Solved game

    horizon is the number of rounds FORALL needs to force a win, or None when
    EXISTS survives every round asked for (all rounds for the unbounded game).
    """

    game: str
    winner: str
    rounds: Optional[int]
    horizon: Optional[int] = None
    survived: Optional[int] = None
    states_explored: int = 0
    duration: float = 0.0
    opening: Optional[str] = None
    strategy: Dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'game': self.game,
            'winner': self.winner,
            'rounds': 'omega' if self.rounds is None else self.rounds,
            'horizon': self.horizon,
            'survived': 'omega' if self.survived is None else self.survived,
            'states_explored': self.states_explored,
            'duration': round(self.duration, 4),
            'opening': self.opening,
            'strategy': dict(self.strategy)
        }


def ParseRounds(value) -> Optional[int]:
    """'inf', 'omega', 'w' or None mean the unbounded game"""
    if value is None:
        return OMEGA
    text = str(value).strip().lower()
    if text in ('inf', 'omega', 'w', 'infinity'):
        return OMEGA
    try:
        rounds = int(text)
    except ValueError:
        raise PreconditionError(f"rounds must be an integer or inf, got '{value}'") from None
    if rounds < 0:
        raise PreconditionError("rounds must be non-negative")
    return rounds
