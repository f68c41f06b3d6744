"""
Canonical Forms
Isomorphism-invariant keys for labelled finite structures: colour refinement
splits the nodes into ordered cells, then every relabelling that respects the
cells is tried and the least encoding wins
"""

from itertools import permutations, product
from typing import Dict, List, Mapping, Sequence, Tuple

Items = Mapping[Tuple[int, ...], str]


def _initial_colours(size: int, items: Items) -> List[Tuple]:
    """Colour of a node: sorted (label, positions it occupies) over the tuples it appears in"""
    seen: List[List[Tuple]] = [[] for _ in range(size)]
    for t, label in items.items():
        for v in set(t):
            seen[v].append((label, tuple(k for k, u in enumerate(t) if u == v)))
    return [tuple(sorted(entries)) for entries in seen]


def _compress(signatures: Sequence[Tuple]) -> List[int]:
    ranks = {sig: rank for rank, sig in enumerate(sorted(set(signatures)))}
    return [ranks[sig] for sig in signatures]


def RefineColours(size: int, items: Items, rounds: int = 8) -> List[int]:
    """
    Colour refinement on a tuple-labelled structure

    Each round a node's new colour is its old colour plus the multiset of
    (label, colours along the tuple) for the tuples containing it; stops when
    the number of colour classes no longer grows.
    """
    colours = _compress(_initial_colours(size, items))
    for _ in range(rounds):
        signatures: List[List[Tuple]] = [[] for _ in range(size)]
        for t, label in items.items():
            pattern = tuple(colours[u] for u in t)
            for v in set(t):
                signatures[v].append((label, pattern, tuple(k for k, u in enumerate(t) if u == v)))
        refined = _compress([(colours[v], tuple(sorted(signatures[v]))) for v in range(size)])
        if len(set(refined)) == len(set(colours)):
            return refined
        colours = refined
    return colours


def _cells(colours: Sequence[int]) -> List[List[int]]:
    cells: Dict[int, List[int]] = {}
    for v, c in enumerate(colours):
        cells.setdefault(c, []).append(v)
    return [cells[c] for c in sorted(cells)]


def _encode(items: Items, relabel: Sequence[int]) -> Tuple:
    return tuple(sorted((tuple(relabel[v] for v in t), label) for t, label in items.items()))


def _search(size: int, items: Items) -> Tuple[Tuple, List[int]]:
    cells = _cells(RefineColours(size, items))
    best, best_relabel = None, list(range(size))
    for orders in product(*(permutations(cell) for cell in cells)):
        relabel = [0] * size
        position = 0
        for order in orders:
            for v in order:
                relabel[v] = position
                position += 1
        code = _encode(items, relabel)
        if best is None or code < best:
            best, best_relabel = code, relabel
    return best, best_relabel


def CanonicalForm(size: int, items: Items) -> Tuple:
    """
    Least encoding of the structure over relabellings that respect the refined cells

    Args:
        size: Number of nodes (nodes are 0..size-1)
        items: Label of every labelled tuple of nodes

    Returns:
        Hashable key equal for two structures iff they are isomorphic
    """
    if size == 0:
        return (0, ())
    return (size, _search(size, items)[0])


def CanonicalLabelling(size: int, items: Items) -> List[int]:
    """Relabelling (node -> new node) achieving CanonicalForm"""
    return _search(size, items)[1]


def AreIsomorphic(size: int, first: Items, second: Items) -> bool:
    return CanonicalForm(size, first) == CanonicalForm(size, second)
