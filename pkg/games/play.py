"""
Game Play
Sessions that step through a game move by move, an engine that plays
either side optimally, and JSON transcripts that replay exactly
"""

import json
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional, Tuple

from algebra.errors import PreconditionError, StructureError
from games.arena import EXISTS, FORALL, OMEGA, Arena
from games.solver import BoundedSolver, FixpointSolver
from utils.config import GetCaps
from utils.logging_config import get_logger

logger = get_logger('games')

# Phases of a session
OPEN = "open"
ANSWER = "answer"
CHALLENGE = "challenge"
RESPOND = "respond"
OVER = "over"

MOVER = {OPEN: FORALL, ANSWER: EXISTS, CHALLENGE: FORALL, RESPOND: EXISTS}


@dataclass
class Transcript:
    """Moves as indices into each position's option list, plus their descriptions"""

    game: str
    rounds: Optional[int]
    moves: List[int] = field(default_factory=list)
    log: List[str] = field(default_factory=list)
    winner: Optional[str] = None
    created: str = field(default_factory=lambda: datetime.now().isoformat(timespec='seconds'))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'game': self.game,
            'rounds': 'omega' if self.rounds is OMEGA else self.rounds,
            'moves': list(self.moves),
            'log': list(self.log),
            'winner': self.winner,
            'created': self.created
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Transcript':
        try:
            rounds = data['rounds']
            return cls(data['game'], None if rounds == 'omega' else int(rounds), [int(m) for m in data['moves']],
                       list(data.get('log', [])), data.get('winner'), data.get('created', ''))
        except (KeyError, TypeError, ValueError) as e:
            raise StructureError(f"malformed transcript: {e}") from None

    def save(self, path: str):
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(self.to_dict(), f, indent=2)

    @classmethod
    def load(cls, path: str) -> 'Transcript':
        try:
            with open(path, 'r', encoding='utf-8') as f:
                return cls.from_dict(json.load(f))
        except (OSError, json.JSONDecodeError) as e:
            raise StructureError(f"cannot read transcript {path}: {e}") from None


class GameSession:
    """
    A game in progress

    A round is one challenge and its response. The session is over when the
    player to move has no option (that player loses) or the rounds run out
    (EXISTS wins).
    """

    def __init__(self, arena: Arena, rounds: Optional[int]):
        self.arena = arena
        self.rounds = rounds
        self._openings = arena.openings()
        self.reset()

    def reset(self):
        self.phase = OPEN
        self.state = None
        self.challenge = None
        self.answers: List[Any] = []
        self.rounds_played = 0
        self.transcript = Transcript(self.arena.name, self.rounds)
        self.movers: List[str] = []
        self._options: Optional[List[Tuple[Any, Any]]] = None
        self._settle()

    @property
    def to_move(self) -> Optional[str]:
        return MOVER.get(self.phase)

    @property
    def rounds_left(self) -> Optional[int]:
        return None if self.rounds is OMEGA else self.rounds - self.rounds_played

    def options(self) -> List[Tuple[Any, Any]]:
        """(move, resulting position data) for the player to move"""
        if self._options is None:
            if self.phase == OPEN:
                self._options = list(self._openings)
            elif self.phase == ANSWER:
                self._options = [(f"answer #{k}", state) for k, state in enumerate(self.answers)]
            elif self.phase == CHALLENGE:
                self._options = [(c, None) for c in self.arena.challenges(self.state)]
            elif self.phase == RESPOND:
                self._options = list(self.arena.responses(self.state, self.challenge))
            else:
                self._options = []
        return self._options

    def describe_option(self, k: int) -> str:
        move, _ = self.options()[k]
        if self.phase == ANSWER:
            return self.arena.describe_state(self.answers[k])
        return self.arena.describe_move(move)

    def _settle(self):
        """End the game when the player to move is stuck or the rounds are used up"""
        self._options = None
        if self.phase == CHALLENGE and self.rounds is not OMEGA and self.rounds_played >= self.rounds:
            self._finish(EXISTS, f"EXISTS survived {self.rounds} rounds")
        elif self.phase != OVER and not self.options():
            loser = self.to_move
            winner = EXISTS if loser == FORALL else FORALL
            self._finish(winner, f"{loser} has no legal move")

    def _finish(self, winner: str, reason: str):
        self.phase = OVER
        self.transcript.winner = winner
        self.transcript.log.append(f"{winner} wins: {reason}")
        self._options = []

    @property
    def winner(self) -> Optional[str]:
        return self.transcript.winner

    def play(self, k: int):
        options = self.options()
        if self.phase == OVER:
            raise PreconditionError("the game is over")
        if not 0 <= k < len(options):
            raise PreconditionError(f"move {k} is not one of the {len(options)} legal moves")
        text = f"{self.to_move}: {self.describe_option(k)}"
        self.movers.append(self.to_move)
        move, result = options[k]
        if self.phase == OPEN:
            self.answers = list(result)
            self.phase = ANSWER
        elif self.phase == ANSWER:
            self.state = self.answers[k]
            self.phase = CHALLENGE
        elif self.phase == CHALLENGE:
            self.challenge = move
            self.phase = RESPOND
        else:
            self.state = result
            self.challenge = None
            self.rounds_played += 1
            self.phase = CHALLENGE
        self.transcript.moves.append(k)
        self.transcript.log.append(text)
        self._settle()

    def undo(self, count: int = 1):
        """Replay all but the last count moves"""
        moves = self.transcript.moves[:max(0, len(self.transcript.moves) - count)]
        self.reset()
        for k in moves:
            self.play(k)


def ReplayTranscript(arena: Arena, transcript: Transcript) -> GameSession:
    """Replay a saved transcript; raises PreconditionError when a move no longer exists"""
    if transcript.game != arena.name:
        raise PreconditionError(f"transcript is for '{transcript.game}', not '{arena.name}'")
    session = GameSession(arena, transcript.rounds)
    for k in transcript.moves:
        session.play(k)
    return session


class Engine:
    """Optimal move choice from the bounded or the fixed-point solver"""

    def __init__(self, arena: Arena, rounds: Optional[int], caps: Optional[Dict[str, int]] = None,
                 workers: int = 1):
        self.arena = arena
        self.rounds = rounds
        if rounds is OMEGA:
            self.fixpoint: Optional[FixpointSolver] = FixpointSolver(arena, caps)
            self.bounded: Optional[BoundedSolver] = None
        else:
            self.fixpoint = None
            self.bounded = BoundedSolver(arena, caps or GetCaps(), workers)

    def value(self, state, left: Optional[int]) -> float:
        """Rounds EXISTS survives from state; larger is better for EXISTS"""
        if self.bounded is not None:
            return self.bounded.rank(state, left)
        horizon = self.fixpoint.horizon_of(state)
        return float('inf') if horizon is None else horizon - 1

    def _after(self, session: GameSession, state) -> float:
        left = session.rounds_left
        return self.value(state, None if left is None else left - 1)

    def choose(self, session: GameSession) -> int:
        """Index of the first best option for the player to move"""
        options = session.options()
        if not options:
            raise PreconditionError("no legal move to choose from")
        left = session.rounds_left
        if session.phase == OPEN:
            scores = [max((self.value(s, left) for s in answers), default=-1) for _, answers in options]
            return scores.index(min(scores))
        if session.phase == ANSWER:
            scores = [self.value(s, left) for s in session.answers]
            return scores.index(max(scores))
        if session.phase == RESPOND:
            scores = [self._after(session, state) for _, state in options]
            return scores.index(max(scores))
        scores = []
        for challenge, _ in options:
            scores.append(max((1 + self._after(session, state)
                               for _, state in self.arena.responses(session.state, challenge)), default=0))
        return scores.index(min(scores))

    def hint(self, session: GameSession) -> str:
        k = self.choose(session)
        return f"[{k}] {session.describe_option(k)}"


def PlayGame(arena: Arena, rounds: Optional[int], human_role: Optional[str] = None,
             input_func: Callable[[str], str] = input, output_func: Callable[[str], None] = print,
             caps: Optional[Dict[str, int]] = None, workers: int = 1) -> Transcript:
    """
    Play a game at the terminal

    The human plays human_role (EXISTS, FORALL or None to watch) and the
    engine the other side. At the human's turn: a move number, or one of
    'moves', 'hint', 'undo', 'save FILE', 'quit'.
    """
    if human_role not in (EXISTS, FORALL, None):
        raise PreconditionError(f"unknown role '{human_role}' (use {EXISTS} or {FORALL})")
    engine = Engine(arena, rounds, caps, workers)
    session = GameSession(arena, rounds)
    output_func(f"Game {arena.name}, rounds: {'omega' if rounds is OMEGA else rounds}")

    def show_moves():
        for k in range(len(session.options())):
            output_func(f"  [{k}] {session.describe_option(k)}")

    while session.phase != OVER:
        if session.state is not None and session.phase == CHALLENGE:
            output_func(f"Position after {session.rounds_played} rounds: {arena.describe_state(session.state)}")
        if session.to_move != human_role:
            k = engine.choose(session)
            output_func(f"{session.to_move} plays {session.describe_option(k)}")
            session.play(k)
            continue

        output_func(f"Your move as {human_role} ({len(session.options())} options)")
        show_moves()
        while True:
            command = input_func("> ").strip()
            if command == 'quit':
                output_func("Game abandoned")
                return session.transcript
            if command == 'moves':
                show_moves()
            elif command == 'hint':
                output_func(f"Engine suggests {engine.hint(session)}")
            elif command == 'undo':
                mine = [m for m, role in enumerate(session.movers) if role == human_role]
                if not mine:
                    output_func("Nothing to undo")
                else:
                    session.undo(len(session.movers) - mine[-1])
                    output_func("Undone")
                    break
            elif command.startswith('save '):
                path = command[5:].strip()
                session.transcript.save(path)
                output_func(f"Transcript saved to {path}")
            elif command.isdigit() and int(command) < len(session.options()):
                session.play(int(command))
                break
            else:
                output_func("Not a legal move; type a move number, moves, hint, undo, save FILE or quit")

    output_func(session.transcript.log[-1])
    logger.info(f"{arena.name}: game over, {session.winner} wins after {session.rounds_played} rounds")
    return session.transcript
