"""
Game Solvers
Memoised minimax for games with a round bound and a retrograde fixed point
for unbounded games, both over canonical states
"""

import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, Hashable, List, Optional, Tuple

from algebra.errors import CapExceededError, PreconditionError
from games.arena import EXISTS, FORALL, OMEGA, Arena, GameOutcome
from utils.config import DEFAULT_CONFIG, GetCaps
from utils.logging_config import get_logger, log_cap_usage, log_solve_complete, log_solve_start

logger = get_logger('games')


class BoundedSolver:
    """
    Exact values of the k-round game

    rank(state, limit) is the number of rounds EXISTS survives from state,
    capped at limit. Values are memoised per canonical state as
    (value, limit): value < limit is exact, value == limit means "at least".
    """

    def __init__(self, arena: Arena, caps: Optional[Dict[str, int]] = None, workers: int = 1):
        self.arena = arena
        self.caps = caps or GetCaps()
        self.workers = max(1, int(workers))
        self.memo: Dict[Hashable, Tuple[int, int]] = {}

    @property
    def states_explored(self) -> int:
        return len(self.memo)

    def rank(self, state, limit: int) -> int:
        if limit <= 0:
            return 0
        key = self.arena.canonical(state)
        cached = self.memo.get(key)
        if cached is not None:
            value, bound = cached
            if value < bound:
                return min(value, limit)
            if limit <= bound:
                return limit

        best = limit
        for challenge in self.arena.challenges(state):
            survive = 0
            for _, following in self.arena.responses(state, challenge):
                survive = max(survive, 1 + self.rank(following, best - 1))
                if survive >= best:
                    break
            if survive < best:
                best = survive
                if best == 0:
                    break

        self.memo[key] = (best, limit)
        if len(self.memo) > self.caps['max_states']:
            raise CapExceededError('game states', len(self.memo), self.caps['max_states'])
        return best

    def _opening_value(self, answers: List[Any], limit: int) -> int:
        """Best answer to one opening; -1 when EXISTS has none"""
        best = -1
        for state in answers:
            best = max(best, self.rank(state, limit))
            if best >= limit:
                break
        return best

    def survival(self, limit: int) -> Tuple[int, Optional[Any]]:
        """
        Rounds EXISTS survives from the start (capped at limit) and FORALL's
        best opening; -1 when some opening cannot be answered at all
        """
        openings = self.arena.openings()
        if not openings:
            return limit, None

        if self.workers > 1 and len(openings) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                values = list(pool.map(lambda item: self._opening_value(item[1], limit), openings))
            worst = min(range(len(values)), key=lambda k: (values[k], k))
            return values[worst], openings[worst][0]

        best, chosen = limit, openings[0][0]
        for move, answers in openings:
            value = self._opening_value(answers, best)
            if value < best:
                best, chosen = value, move
                if best < 0:
                    break
        return best, chosen

    def challenge_value(self, state, challenge, limit: int) -> int:
        """Rounds EXISTS survives after this challenge, counting the round itself"""
        survive = 0
        for _, following in self.arena.responses(state, challenge):
            survive = max(survive, 1 + self.rank(following, limit - 1))
            if survive >= limit:
                return limit
        return survive

    def best_challenge(self, state, limit: int) -> Tuple[Optional[Any], int]:
        """FORALL's first challenge that minimises EXISTS's survival"""
        best, chosen = limit, None
        for challenge in self.arena.challenges(state):
            value = self.challenge_value(state, challenge, best)
            if chosen is None or value < best:
                best, chosen = value, challenge
                if best == 0:
                    break
        return chosen, best

    def best_response(self, state, challenge, limit: int) -> Tuple[Optional[Any], Optional[Any], int]:
        """EXISTS's first answer that maximises her survival; (None, None, 0) when there is none"""
        best, chosen, chosen_state = -1, None, None
        for answer, following in self.arena.responses(state, challenge):
            value = 1 + self.rank(following, limit - 1) if limit > 0 else 0
            if value > best:
                best, chosen, chosen_state = value, answer, following
                if best >= limit:
                    break
        return chosen, chosen_state, max(best, 0)

    def best_answer(self, answers: List[Any], limit: int) -> Tuple[Optional[int], int]:
        """Index of EXISTS's best answer to an opening"""
        best, chosen = -1, None
        for k, state in enumerate(answers):
            value = self.rank(state, limit)
            if value > best:
                best, chosen = value, k
                if best >= limit:
                    break
        return chosen, best

    def solve(self, rounds: int, strategy_limit: Optional[int] = None) -> GameOutcome:
        if rounds is OMEGA or rounds < 0:
            raise PreconditionError("the bounded solver needs a finite, non-negative number of rounds")
        start = time.time()
        log_solve_start(self.arena.name, self.caps['max_states'], self.workers)
        survived, opening = self.survival(rounds)
        outcome = GameOutcome(game=self.arena.name, winner=EXISTS if survived >= rounds else FORALL,
                              rounds=rounds)
        if outcome.winner == EXISTS:
            outcome.survived = rounds
        else:
            outcome.horizon = survived + 1
            outcome.survived = max(survived, 0)
        outcome.opening = None if opening is None else self.arena.describe_move(opening)
        outcome.strategy = ExtractStrategy(self, rounds, strategy_limit)
        outcome.states_explored = self.states_explored
        outcome.duration = time.time() - start
        log_cap_usage(f"{self.arena.name} states", len(self.memo), self.caps['max_states'])
        log_solve_complete(self.arena.name, outcome.winner, outcome.states_explored, outcome.duration)
        return outcome


def ExtractStrategy(solver: BoundedSolver, rounds: int, max_entries: Optional[int] = None) -> Dict[str, str]:
    """
    Winner's moves along every play consistent with them

    FORALL's table maps states to challenges; EXISTS's maps
    "state | challenge" to answers. At most max_entries entries.
    """
    arena = solver.arena
    if max_entries is None:
        max_entries = DEFAULT_CONFIG['solver']['strategy_limit']
    survived, chosen = solver.survival(rounds)
    forall_wins = survived < rounds
    strategy: Dict[str, str] = {}
    frontier: deque = deque()

    for move, answers in arena.openings():
        if forall_wins:
            if move != chosen:
                continue
            strategy['opening'] = arena.describe_move(move)
            frontier.extend((state, rounds) for state in answers)
        else:
            k, _ = solver.best_answer(answers, rounds)
            strategy[f"opening {arena.describe_move(move)}"] = arena.describe_state(answers[k])
            frontier.append((answers[k], rounds))

    seen = set()
    while frontier and len(strategy) < max_entries:
        state, left = frontier.popleft()
        key = (arena.canonical(state), left)
        if left <= 0 or key in seen:
            continue
        seen.add(key)
        if forall_wins:
            challenge, value = solver.best_challenge(state, left)
            if challenge is None or value >= left:
                continue
            strategy[arena.describe_state(state)] = arena.describe_move(challenge)
            frontier.extend((following, left - 1) for _, following in arena.responses(state, challenge))
        else:
            for challenge in arena.challenges(state):
                answer, following, _ = solver.best_response(state, challenge, left)
                if answer is None:
                    continue
                strategy[f"{arena.describe_state(state)} | {arena.describe_move(challenge)}"] = arena.describe_move(answer)
                frontier.append((following, left - 1))
                if len(strategy) >= max_entries:
                    break
    return strategy


class FixpointSolver:
    """
    Unbounded game over the finite reachable state graph

    FORALL's attractor is built in layers: a state joins layer k+1 when one
    of its challenges has every response in layers 1..k (a challenge with
    no response puts it in layer 1). EXISTS wins exactly outside the attractor.
    """

    def __init__(self, arena: Arena, caps: Optional[Dict[str, int]] = None):
        self.arena = arena
        self.caps = caps or GetCaps()
        self.index: Dict[Hashable, int] = {}
        self.states: List[Any] = []
        self.moves: List[List[List[int]]] = []
        self.opening_answers: List[List[int]] = []
        self.layer: List[Optional[int]] = []
        self._explored = False

    def _intern(self, state, queue: deque) -> int:
        key = self.arena.canonical(state)
        sid = self.index.get(key)
        if sid is None:
            sid = len(self.states)
            self.index[key] = sid
            self.states.append(state)
            self.moves.append([])
            queue.append(sid)
            if len(self.states) > self.caps['max_states']:
                raise CapExceededError('game states', len(self.states), self.caps['max_states'])
        return sid

    def explore(self):
        if self._explored:
            return
        queue: deque = deque()
        self.openings = self.arena.openings()
        self.opening_answers = [[self._intern(s, queue) for s in answers] for _, answers in self.openings]
        while queue:
            sid = queue.popleft()
            state = self.states[sid]
            self.moves[sid] = [sorted({self._intern(following, queue)
                                       for _, following in self.arena.responses(state, challenge)})
                               for challenge in self.arena.challenges(state)]
        self._retrograde()
        self._explored = True
        logger.debug(f"{self.arena.name}: {len(self.states)} canonical states, "
                     f"{sum(1 for layer in self.layer if layer is not None)} in FORALL's attractor")

    def _retrograde(self):
        count = len(self.states)
        self.layer = [None] * count
        pending: List[List[int]] = []
        preds: List[List[Tuple[int, int]]] = [[] for _ in range(count)]
        queue: deque = deque()
        for sid, challenges in enumerate(self.moves):
            pending.append([len(responses) for responses in challenges])
            for c, responses in enumerate(challenges):
                for target in responses:
                    preds[target].append((sid, c))
                if not responses and self.layer[sid] is None:
                    self.layer[sid] = 1
                    queue.append(sid)
        while queue:
            target = queue.popleft()
            for sid, c in preds[target]:
                pending[sid][c] -= 1
                if pending[sid][c] == 0 and self.layer[sid] is None:
                    self.layer[sid] = self.layer[target] + 1
                    queue.append(sid)

    def horizon_of(self, state) -> Optional[int]:
        """Rounds FORALL needs from this state, None when EXISTS survives forever"""
        self.explore()
        key = self.arena.canonical(state)
        if key not in self.index:
            raise PreconditionError("state is not reachable in this game")
        return self.layer[self.index[key]]

    def _answer_value(self, sid: int) -> float:
        layer = self.layer[sid]
        return float('inf') if layer is None else layer

    def solve(self, strategy_limit: Optional[int] = None) -> GameOutcome:
        start = time.time()
        log_solve_start(self.arena.name, self.caps['max_states'])
        self.explore()

        values = []
        for answers in self.opening_answers:
            values.append(max((self._answer_value(sid) for sid in answers), default=0))
        outcome = GameOutcome(game=self.arena.name, winner=EXISTS, rounds=OMEGA)
        if values:
            worst = min(range(len(values)), key=lambda k: (values[k], k))
            if values[worst] != float('inf'):
                outcome.winner = FORALL
                outcome.horizon = int(values[worst])
                outcome.survived = max(outcome.horizon - 1, 0)
                outcome.opening = self.arena.describe_move(self.openings[worst][0])
        outcome.strategy = self.strategy_table(strategy_limit)
        outcome.states_explored = len(self.states)
        outcome.duration = time.time() - start
        log_cap_usage(f"{self.arena.name} states", outcome.states_explored, self.caps['max_states'])
        log_solve_complete(self.arena.name, outcome.winner, outcome.states_explored, outcome.duration)
        return outcome

    def strategy_table(self, max_entries: Optional[int] = None) -> Dict[str, str]:
        """FORALL's fastest challenge inside the attractor, a safe answer for EXISTS outside it"""
        if max_entries is None:
            max_entries = DEFAULT_CONFIG['solver']['strategy_limit']
        self.explore()
        table: Dict[str, str] = {}
        for sid, state in enumerate(self.states):
            if len(table) >= max_entries:
                break
            challenges = list(self.arena.challenges(state))
            if self.layer[sid] is not None:
                for c, responses in enumerate(self.moves[sid]):
                    if all(self.layer[t] is not None and self.layer[t] < self.layer[sid] for t in responses):
                        table[self.arena.describe_state(state)] = self.arena.describe_move(challenges[c])
                        break
                continue
            for challenge in challenges:
                for answer, following in self.arena.responses(state, challenge):
                    if self.layer[self.index[self.arena.canonical(following)]] is None:
                        key = f"{self.arena.describe_state(state)} | {self.arena.describe_move(challenge)}"
                        table[key] = self.arena.describe_move(answer)
                        break
                if len(table) >= max_entries:
                    break
        return table


def SolveGame(arena: Arena, rounds: Optional[int], caps: Optional[Dict[str, int]] = None,
              workers: int = 1, strategy_limit: Optional[int] = None) -> GameOutcome:
    """Bounded minimax for finite rounds, the fixed point for the unbounded game"""
    caps = caps or GetCaps()
    if rounds is OMEGA:
        return FixpointSolver(arena, caps).solve(strategy_limit)
    if rounds > caps['max_rounds']:
        raise CapExceededError('rounds', rounds, caps['max_rounds'])
    return BoundedSolver(arena, caps, workers).solve(rounds, strategy_limit)


def SurvivableRounds(arena: Arena, cap: int, caps: Optional[Dict[str, int]] = None, workers: int = 1) -> int:
    """Largest k <= cap such that EXISTS wins the k-round game"""
    caps = caps or GetCaps()
    if cap < 0:
        raise PreconditionError("the round cap must be non-negative")
    if cap > caps['max_rounds']:
        raise CapExceededError('rounds', cap, caps['max_rounds'])
    survived, _ = BoundedSolver(arena, caps, workers).survival(cap)
    return max(survived, 0)
