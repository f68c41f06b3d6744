"""
Network Games
Atomic networks over a finite cylindric atom structure: FORALL demands
cylindrifier witnesses, EXISTS adds a node and labels every new tuple
"""

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from algebra.atoms import CAAtomStructure
from algebra.errors import CapExceededError, PreconditionError
from games.arena import Arena
from games.canonical import CanonicalForm
from utils.config import GetCaps
from utils.logging_config import get_logger

logger = get_logger('games')


@dataclass(frozen=True)
class NetworkState:
    """Atom on every n-tuple of nodes 0..size-1, tuples in lexicographic order"""

    size: int
    labels: Tuple[str, ...]

    def as_dict(self, n: int) -> Dict[Tuple[int, ...], str]:
        return dict(zip(product(range(self.size), repeat=n), self.labels))


def _pattern(t: Sequence[int]) -> Tuple[bool, ...]:
    return tuple(t[i] == t[j] for i in range(len(t)) for j in range(i + 1, len(t)))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class NetworkArena(Arena):
    """
    Atomic game on networks of a CA atom structure

    Without reuse every witness goes to a fresh node while fewer than
    node_budget nodes exist. With reuse FORALL may also name an existing node
    outside the demand; it is dropped and replaced by the witness.
    """

    def __init__(self, structure: CAAtomStructure, node_budget: int, reuse: bool = False,
                 caps: Optional[Dict[str, int]] = None):
        if node_budget < structure.dimension:
            raise PreconditionError(f"node budget {node_budget} is below the dimension {structure.dimension}")
        self.C = structure
        self.n = structure.dimension
        self.budget = node_budget
        self.reuse = reuse
        self.caps = caps or GetCaps()
        self.name = f"{'F' if reuse else 'G'}[{structure.name or 'CA'},nodes={node_budget}]"

        self._by_pattern: Dict[Tuple[bool, ...], int] = {}
        for k, atom in enumerate(structure.atoms):
            key = tuple(atom in structure.eij[(i, j)] for i in range(self.n) for j in range(i + 1, self.n))
            self._by_pattern[key] = self._by_pattern.get(key, 0) | 1 << k
        self._class_bits = [{atom: structure.class_bits(i, atom) for atom in structure.atoms}
                            for i in range(self.n)]

    # Completion

    def _complete(self, size: int, fixed: Dict[Tuple[int, ...], str],
                  forced: Dict[Tuple[int, ...], str]) -> Iterator[NetworkState]:
        """Every consistent labelling of the tuples missing from fixed"""
        n = self.n
        open_tuples = sorted((t for t in product(range(size), repeat=n) if t not in fixed),
                             key=lambda t: (t not in forced, t))
        labels = dict(fixed)
        atoms = self.C.atoms

        def candidates(t: Tuple[int, ...]) -> int:
            mask = self._by_pattern.get(_pattern(t), 0)
            if t in forced:
                mask &= 1 << self.C.index[forced[t]]
            for i in range(n):
                for x in range(size):
                    if mask and x != t[i]:
                        other = labels.get(t[:i] + (x,) + t[i + 1:])
                        if other is not None:
                            mask &= self._class_bits[i][other]
            return mask

        def extend(k: int) -> Iterator[NetworkState]:
            if k == len(open_tuples):
                yield NetworkState(size, tuple(labels[t] for t in product(range(size), repeat=n)))
                return
            t = open_tuples[k]
            for index in _bits(candidates(t)):
                labels[t] = atoms[index]
                yield from extend(k + 1)
            labels.pop(t, None)

        yield from extend(0)

    # Arena interface

    def openings(self):
        openings = []
        for atom in self.C.atoms:
            classes: List[int] = []
            for i in range(self.n):
                same = next((j for j in range(i) if atom in self.C.eij[(i, j)]), None)
                classes.append(len(set(classes)) if same is None else classes[same])
            seed = tuple(classes)
            answers = list(self._complete(len(set(classes)), {}, {seed: atom}))
            if len(answers) > self.caps['max_states']:
                raise CapExceededError('opening networks', len(answers), self.caps['max_states'])
            openings.append((('atom', atom), answers))
        return openings

    def challenges(self, state: NetworkState) -> Iterable[Tuple]:
        network = state.as_dict(self.n)
        seen = set()
        for t, label in network.items():
            for i in range(self.n):
                for b in sorted(self.C.ti[i][label], key=self.C.index.__getitem__):
                    demand = (t[:i] + (-1,) + t[i + 1:], i, b)
                    if demand in seen:
                        continue
                    seen.add(demand)
                    if any(network[t[:i] + (x,) + t[i + 1:]] == b for x in range(state.size)):
                        continue
                    if state.size < self.budget:
                        yield ('witness', t, i, b, None)
                    if self.reuse:
                        others = {t[j] for j in range(self.n) if j != i}
                        for node in range(state.size):
                            if node not in others:
                                yield ('witness', t, i, b, node)

    def responses(self, state: NetworkState, challenge: Tuple) -> Iterator[Tuple[Tuple, NetworkState]]:
        _, t, i, b, dropped = challenge
        network = state.as_dict(self.n)
        keep = [v for v in range(state.size) if v != dropped]
        position = {v: k for k, v in enumerate(keep)}
        fixed = {tuple(position[v] for v in u): label for u, label in network.items()
                 if all(v in position for v in u)}
        fresh = len(keep)
        target = tuple(position[v] for v in t[:i]) + (fresh,) + tuple(position[v] for v in t[i + 1:])
        for k, completed in enumerate(self._complete(fresh + 1, fixed, {target: b})):
            yield ('complete', k), completed

    def canonical(self, state: NetworkState):
        return CanonicalForm(state.size, state.as_dict(self.n))

    def describe_state(self, state: NetworkState) -> str:
        shown = [f"{''.join(map(str, t))}={label}" for t, label in state.as_dict(self.n).items()
                 if list(t) == sorted(t)]
        return f"[{state.size} nodes] " + " ".join(shown)

    def describe_move(self, move) -> str:
        if not isinstance(move, tuple):
            return str(move)
        if move[0] == 'atom':
            return f"atom {move[1]}"
        if move[0] == 'witness':
            _, t, i, b, node = move
            where = "a fresh node" if node is None else f"node {node} (reused)"
            return f"witness {b} for position {i} of {t} at {where}"
        if move[0] == 'complete':
            return f"completion #{move[1]}"
        return str(move)
