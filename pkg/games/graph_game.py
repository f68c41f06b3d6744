"""
Coloured Graph Games
The atomic game played directly on rainbow coloured graphs: FORALL names a
base of at most n-1 nodes and the graph a new node should form over it,
EXISTS colours the remaining edges of the new node and shades its tuples
"""

from itertools import combinations, permutations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from algebra.errors import CapExceededError, PreconditionError
from algebra.rainbow import (GREEN, GREEN0, Colour, ColouredGraph, ColourName, ConverseColour,
                             RainbowSignature, CheckColouredGraph, EnumerateColouredGraphs,
                             ShadeTuples, TriangleRule, ConeTints)
from games.arena import Arena
from games.canonical import CanonicalForm
from utils.config import GetCaps
from utils.logging_config import get_logger

logger = get_logger('games')


def IsConeDemand(sig: RainbowSignature, demand: ColouredGraph) -> bool:
    """The new node (last) sees the base in one g0 and g_1..g_(n-2)"""
    apex = demand.size - 1
    colours = [demand.colour(apex, v) for v in range(apex)]
    if len(colours) != sig.n - 1:
        return False
    greens = sorted(c[1] for c in colours if c[0] == GREEN)
    return sum(1 for c in colours if c[0] == GREEN0) == 1 and greens == list(range(1, sig.n - 1))


class GraphArena(Arena):
    """
    Atomic game on coloured graphs of a rainbow signature

    FORALL opens with the given opening graph, or with any valid graph of at
    most n nodes. A demand is offered only when no node outside its base
    already realises it; cone demands come first.
    """

    def __init__(self, sig: RainbowSignature, node_budget: int, reuse: bool = False,
                 opening: Optional[ColouredGraph] = None, caps: Optional[Dict[str, int]] = None):
        if node_budget < sig.n:
            raise PreconditionError(f"node budget {node_budget} is below the dimension {sig.n}")
        self.sig = sig
        self.budget = node_budget
        self.reuse = reuse
        self.opening = opening
        self.caps = caps or GetCaps()
        self.colours = sig.edge_colours()
        self.name = f"{'F' if reuse else 'G'}[{sig.label},nodes={node_budget}]"
        self._demands: Dict[ColouredGraph, List[ColouredGraph]] = {}

        space = len(self.colours) ** (sig.n - 1)
        if space > self.caps['max_graphs']:
            raise CapExceededError('demand colourings', space, self.caps['max_graphs'])
        if opening is not None:
            report = CheckColouredGraph(sig, opening)
            if not report.valid:
                raise PreconditionError(f"opening graph is not valid: {', '.join(report.rules)}")
            if opening.size > node_budget:
                raise PreconditionError("opening graph is larger than the node budget")

    def _valid_triangles(self, colour, nodes: Sequence[int], new: int) -> bool:
        for a, b in combinations(nodes, 2):
            x, y, z = sorted((a, b, new))
            if TriangleRule(self.sig, colour(x, y), colour(y, z), colour(x, z)) is not None:
                return False
        return True

    def _shadings(self, graph: ColouredGraph, new: int,
                  fixed: Sequence[Tuple[Tuple[int, ...], frozenset]]) -> Iterator[ColouredGraph]:
        """Every way to shade the green-free tuples through new that fixed leaves open"""
        if graph.size < self.sig.n - 1:
            yield graph
            return
        known = dict(fixed)
        open_tuples = [t for t in ShadeTuples(self.sig, graph) if new in t and t not in known]
        options = []
        for t in open_tuples:
            tints = ConeTints(self.sig, graph, t)
            allowed = [s for s in self.sig.shade_list if tints <= s]
            if not allowed:
                return
            options.append(allowed)
        for choice in product(*options):
            shades = dict(known)
            shades.update(zip(open_tuples, choice))
            yield ColouredGraph(graph.size, graph.edges, tuple(sorted(shades.items())))

    def demands(self, base: ColouredGraph) -> List[ColouredGraph]:
        """Valid graphs on base plus one new node (the last one) that restrict to base"""
        cached = self._demands.get(base)
        if cached is not None:
            return cached
        k = base.size
        found: List[ColouredGraph] = []
        for choice in product(self.colours, repeat=k):
            colours = {(x, y): base.colour(x, y) for x, y in combinations(range(k), 2)}
            colours.update({(k, v): c for v, c in enumerate(choice)})
            bare = ColouredGraph.build(k + 1, colours)
            if not self._valid_triangles(bare.colour, range(k), k):
                continue
            for shaded in self._shadings(bare, k, base.shades):
                if CheckColouredGraph(self.sig, shaded).valid:
                    found.append(shaded)
        self._demands[base] = found
        return found

    def openings(self):
        if self.opening is not None:
            return [(('graph', self.opening), [self.opening])]
        seen = set()
        openings = []
        for size in range(1, self.sig.n + 1):
            for graph in EnumerateColouredGraphs(self.sig, size, self.caps):
                key = self.canonical(graph)
                if key not in seen:
                    seen.add(key)
                    openings.append((('graph', graph), [graph]))
        return openings

    def challenges(self, state: ColouredGraph):
        width = min(self.sig.n - 1, state.size)
        cones, others = [], []
        for base in combinations(range(state.size), width):
            outside = [z for z in range(state.size) if z not in base]
            targets: List[Optional[int]] = [None] if state.size < self.budget else []
            if self.reuse:
                targets.extend(outside)
            if not targets:
                continue
            realised = {state.restrict(base + (z,)) for z in outside}
            for demand in self.demands(state.restrict(base)):
                if demand in realised:
                    continue
                bucket = cones if IsConeDemand(self.sig, demand) else others
                bucket.extend(('demand', base, demand, node) for node in targets)
        return cones + others

    def responses(self, state: ColouredGraph, challenge: Tuple) -> Iterator[Tuple[str, ColouredGraph]]:
        _, base, demand, dropped = challenge
        keep = [v for v in range(state.size) if v != dropped]
        position = {v: k for k, v in enumerate(keep)}
        current = state.restrict(keep)
        new = len(keep)
        apex = len(base)
        base_nodes = [position[v] for v in base]
        rest = [position[v] for v in keep if v not in base]

        colours: Dict[Tuple[int, int], Colour] = {(x, y): current.colour(x, y)
                                                  for x, y in combinations(range(new), 2)}
        for k, v in enumerate(base_nodes):
            colours[(new, v)] = demand.colour(apex, k)
        fixed = list(current.shades)
        for t, s in demand.shades:
            if apex in t:
                fixed.append((tuple(new if u == apex else base_nodes[u] for u in t), s))

        def colour(x: int, y: int) -> Colour:
            if (x, y) in colours:
                return colours[(x, y)]
            return ConverseColour(colours[(y, x)])

        def extend(k: int) -> Iterator[ColouredGraph]:
            if k == len(rest):
                bare = ColouredGraph.build(new + 1, colours)
                for shaded in self._shadings(bare, new, fixed):
                    if CheckColouredGraph(self.sig, shaded).valid:
                        yield shaded
                return
            r = rest[k]
            for c in self.colours:
                colours[(new, r)] = c
                if self._valid_triangles(colour, base_nodes + rest[:k] + [r], new):
                    yield from extend(k + 1)
            colours.pop((new, r), None)

        for graph in extend(0):
            edges = [f"{v}:{ColourName(graph.colour(new, v))}" for v in rest]
            shades = [f"{t}:y{{{','.join(map(str, sorted(s)))}}}" for t, s in graph.shades if new in t]
            yield " ".join(edges + shades) or "no choice", graph

    def canonical(self, state: ColouredGraph):
        items = {(x, y): ColourName(state.colour(x, y)) for x, y in permutations(range(state.size), 2)}
        for t, s in state.shades:
            items[t] = "y{" + ",".join(map(str, sorted(s))) + "}"
        return CanonicalForm(state.size, items)

    def describe_state(self, state: ColouredGraph) -> str:
        return state.describe()

    def describe_move(self, move) -> str:
        if not isinstance(move, tuple):
            return str(move)
        if move[0] == 'graph':
            return f"open with {move[1].describe()}"
        if move[0] == 'demand':
            _, base, demand, node = move
            apex = demand.size - 1
            edges = ", ".join(f"{v}:{ColourName(demand.colour(apex, k))}" for k, v in enumerate(base))
            where = "a fresh node" if node is None else f"node {node} (reused)"
            return f"new node at {where} over {list(base)} with {edges}"
        return str(move)
