"""
Graph Library
Undirected graphs and irreflexive ordered structures, their generators,
exact chromatic number and girth
"""

import json
import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

import networkx as nx

from algebra.errors import CapExceededError, StructureError
from utils.config import GetCaps
from utils.logging_config import get_logger

logger = get_logger('algebra')


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..vertex_count-1"""

    vertex_count: int
    edges: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise StructureError("vertex count must be non-negative")
        normalized = set()
        for edge in self.edges:
            u, v = (int(x) for x in edge)
            if u == v:
                raise StructureError(f"loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise StructureError(f"edge ({u},{v}) out of range")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, 'edges', frozenset(normalized))

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def adjacency(self) -> List[set]:
        adj = [set() for _ in self.vertices]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def max_degree(self) -> int:
        return max((len(n) for n in self.adjacency()), default=0)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph

    def disjoint_union(self, other: 'Graph') -> 'Graph':
        shift = self.vertex_count
        edges = set(self.edges) | {(u + shift, v + shift) for u, v in other.edges}
        return Graph(self.vertex_count + other.vertex_count, frozenset(edges))

    def to_dict(self) -> Dict:
        return {'vertex_count': self.vertex_count, 'edges': [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_dict(cls, data: Dict) -> 'Graph':
        try:
            return cls(int(data['vertex_count']), frozenset(tuple(e) for e in data.get('edges', [])))
        except (KeyError, TypeError, ValueError) as e:
            raise StructureError(f"malformed graph document: {e}") from None


@dataclass(frozen=True)
class OrderedStructure:
    """Finite universe with an irreflexive binary relation"""

    universe: Tuple[int, ...]
    less_than: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        universe = tuple(self.universe)
        if len(set(universe)) != len(universe):
            raise StructureError("universe elements must be distinct")
        members = set(universe)
        relation = frozenset((int(a), int(b)) for a, b in self.less_than)
        for a, b in relation:
            if a == b:
                raise StructureError(f"relation is not irreflexive at {a}")
            if a not in members or b not in members:
                raise StructureError(f"pair ({a},{b}) outside the universe")
        object.__setattr__(self, 'universe', universe)
        object.__setattr__(self, 'less_than', relation)

    def __len__(self):
        return len(self.universe)

    def related(self, a: int, b: int) -> bool:
        return (a, b) in self.less_than

    def to_dict(self) -> Dict:
        return {'universe': list(self.universe), 'less_than': [list(p) for p in sorted(self.less_than)]}

    @classmethod
    def from_dict(cls, data: Dict) -> 'OrderedStructure':
        try:
            return cls(tuple(data['universe']), frozenset(tuple(p) for p in data.get('less_than', [])))
        except (KeyError, TypeError, ValueError) as e:
            raise StructureError(f"malformed ordered structure: {e}") from None


def IsPartialHomomorphism(A: OrderedStructure, B: OrderedStructure, pairs: Iterable[Tuple[int, int]]) -> bool:
    """The pairs form a function from A to B that preserves the relation"""
    pairs = list(pairs)
    mapping: Dict[int, int] = {}
    for a, b in pairs:
        if mapping.setdefault(a, b) != b:
            return False
    for a, b in pairs:
        for a2, b2 in pairs:
            if A.related(a, a2) and not B.related(b, b2):
                return False
    return True


# Graph generators

def GenerateDisjointCliques(count: int, size: int) -> Graph:
    """count disjoint copies of K_size"""
    if count < 1 or size < 1:
        raise StructureError("count and size must be at least 1")
    edges = set()
    for block in range(count):
        base = block * size
        for u in range(size):
            for v in range(u + 1, size):
                edges.add((base + u, base + v))
    return Graph(count * size, frozenset(edges))


def GenerateBand(length: int, width: int) -> Graph:
    """Vertices 0..length-1, edge iff 0 < |i - j| < width"""
    if length < 1 or width < 1:
        raise StructureError("length and width must be at least 1")
    edges = {(i, j) for i in range(length) for j in range(i + 1, min(length, i + width))}
    return Graph(length, frozenset(edges))


def GenerateComplete(size: int) -> Graph:
    return GenerateDisjointCliques(1, size)


def GenerateCycle(length: int) -> Graph:
    if length < 3:
        raise StructureError("a cycle needs at least 3 vertices")
    return Graph(length, frozenset((i, (i + 1) % length) for i in range(length)))


def GeneratePath(length: int) -> Graph:
    if length < 1:
        raise StructureError("a path needs at least 1 vertex")
    return Graph(length, frozenset((i, i + 1) for i in range(length - 1)))


# Ordered structure generators

def Chain(size: int) -> OrderedStructure:
    return OrderedStructure(tuple(range(size)), frozenset((i, j) for i in range(size) for j in range(i + 1, size)))


def CompleteIrreflexive(size: int) -> OrderedStructure:
    return OrderedStructure(tuple(range(size)), frozenset((i, j) for i in range(size) for j in range(size) if i != j))


def EmptyOrder(size: int = 0) -> OrderedStructure:
    return OrderedStructure(tuple(range(size)))


def GenerateMpI(p: int, base: OrderedStructure) -> OrderedStructure:
    """Disjoint union of base and K_p, related both ways across the two parts"""
    if p < 0:
        raise StructureError("p must be non-negative")
    start = max(base.universe, default=-1) + 1
    clique = tuple(range(start, start + p))
    relation = set(base.less_than)
    relation |= {(x, y) for x in clique for y in clique if x != y}
    relation |= {(x, y) for x in base.universe for y in clique}
    relation |= {(y, x) for x in base.universe for y in clique}
    return OrderedStructure(base.universe + clique, frozenset(relation))


ORDER_GENERATORS = {
    'chain': Chain,
    'complete': CompleteIrreflexive,
    'empty': EmptyOrder
}

GRAPH_GENERATORS = {
    'cliques': GenerateDisjointCliques,
    'band': GenerateBand,
    'complete': GenerateComplete,
    'cycle': GenerateCycle,
    'path': GeneratePath
}


def _spec_ints(token: str, text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(':') if x != '']
    except ValueError:
        raise StructureError(f"bad numeric arguments in '{token}'") from None


def ParseOrderSpec(spec: str) -> OrderedStructure:
    """
    Build an ordered structure from text like "chain:3" or "mpI:1,chain:2"

    Leading mpI:p tokens wrap the structure described by the rest, innermost last.
    """
    tokens = [t.strip() for t in spec.split(',') if t.strip()]
    if not tokens:
        raise StructureError("empty ordered-structure spec")
    kind, _, args = tokens[-1].partition(':')
    if kind not in ORDER_GENERATORS:
        raise StructureError(f"unknown ordered structure '{kind}' (use {', '.join(ORDER_GENERATORS)})")
    numbers = _spec_ints(tokens[-1], args)
    result = ORDER_GENERATORS[kind](*(numbers or [0]))
    for token in reversed(tokens[:-1]):
        kind, _, args = token.partition(':')
        if kind != 'mpI':
            raise StructureError(f"only mpI:p may wrap a structure, got '{token}'")
        result = GenerateMpI(_spec_ints(token, args)[0], result)
    return result


def ParseGraphSpec(spec: str) -> Graph:
    """Build a graph from text like "cliques:3:3", "band:6:3", "complete:5", "cycle:5"""
    kind, _, args = spec.strip().partition(':')
    if kind not in GRAPH_GENERATORS:
        raise StructureError(f"unknown graph family '{kind}' (use {', '.join(GRAPH_GENERATORS)})")
    try:
        return GRAPH_GENERATORS[kind](*_spec_ints(spec, args))
    except TypeError:
        raise StructureError(f"wrong number of arguments in '{spec}'") from None


# Invariants

def CliqueNumber(G: Graph) -> int:
    if G.vertex_count == 0:
        return 0
    return max(len(c) for c in nx.find_cliques(G.to_networkx()))


def _k_colourable(adj: List[set], order_hint: List[int], k: int) -> bool:
    """DSATUR backtracking: most saturated vertex first, colours tried with symmetry breaking"""
    n = len(adj)
    colour = [-1] * n

    def pick() -> int:
        best, best_key = -1, None
        for v in range(n):
            if colour[v] != -1:
                continue
            saturation = len({colour[u] for u in adj[v] if colour[u] != -1})
            key = (saturation, len(adj[v]), -order_hint[v])
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def solve(coloured: int, used: int) -> bool:
        if coloured == n:
            return True
        v = pick()
        blocked = {colour[u] for u in adj[v]}
        for c in range(min(k, used + 1)):
            if c in blocked:
                continue
            colour[v] = c
            if solve(coloured + 1, max(used, c + 1)):
                return True
            colour[v] = -1
        return False

    return solve(0, 0)


def CalculateChromaticNumber(G: Graph, caps: Optional[Dict[str, int]] = None) -> int:
    """
    Exact chromatic number by branch and bound

    Args:
        G: Graph to colour
        caps: Cap table (default: configured caps)

    Returns:
        chi(G)

    Raises:
        CapExceededError: vertex count above caps['max_vertices']
    """
    caps = caps or GetCaps()
    if G.vertex_count > caps['max_vertices']:
        raise CapExceededError('graph vertices', G.vertex_count, caps['max_vertices'])
    if G.vertex_count == 0:
        return 0
    if not G.edges:
        return 1

    graph = G.to_networkx()
    lower = CliqueNumber(G)
    greedy = nx.coloring.greedy_color(graph, strategy='DSATUR')
    upper = max(greedy.values()) + 1

    adj = G.adjacency()
    rank = list(range(G.vertex_count))
    k = lower
    while k < upper and not _k_colourable(adj, rank, k):
        k += 1
    logger.debug(f"chromatic number of {G.vertex_count}-vertex graph: {k} (bounds {lower}..{upper})")
    return k


def CalculateGirth(G: Graph) -> Union[int, float]:
    """Length of a shortest cycle, math.inf for forests"""
    value = nx.girth(G.to_networkx())
    return math.inf if value == math.inf else int(value)


# Text and JSON IO

def GraphToText(G: Graph) -> str:
    """DIMACS-like edge list with 1-based vertex numbers"""
    lines = [f"p {G.vertex_count} {len(G.edges)}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in sorted(G.edges))
    return "\n".join(lines) + "\n"


def GraphFromText(text: str) -> Graph:
    vertex_count = None
    expected = None
    edges = set()
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith('c'):
            continue
        parts = line.split()
        if parts[0] == 'p':
            numbers = [p for p in parts[1:] if p != 'edge']
            if len(numbers) != 2:
                raise StructureError(f"line {number}: expected 'p <n> <m>'")
            vertex_count, expected = int(numbers[0]), int(numbers[1])
        elif parts[0] == 'e':
            if vertex_count is None:
                raise StructureError(f"line {number}: edge before problem line")
            if len(parts) != 3:
                raise StructureError(f"line {number}: expected 'e <u> <v>'")
            edges.add((int(parts[1]) - 1, int(parts[2]) - 1))
        else:
            raise StructureError(f"line {number}: unknown record '{parts[0]}'")
    if vertex_count is None:
        raise StructureError("missing problem line 'p <n> <m>'")
    graph = Graph(vertex_count, frozenset(edges))
    if len(graph.edges) != expected:
        logger.warning(f"problem line declares {expected} edges, found {len(graph.edges)}")
    return graph


def LoadGraph(path: str) -> Graph:
    """Read a graph from a .json document or DIMACS-like text"""
    with open(path, 'r', encoding='utf-8') as f:
        text = f.read()
    if path.endswith('.json'):
        try:
            return Graph.from_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise StructureError(f"invalid JSON: {e}") from None
    return GraphFromText(text)


def SaveGraph(G: Graph, path: str):
    with open(path, 'w', encoding='utf-8') as f:
        if path.endswith('.json'):
            json.dump(G.to_dict(), f, indent=2)
        else:
            f.write(GraphToText(G))


def LoadOrderedStructure(path_or_spec: str) -> OrderedStructure:
    """Ordered structure from a JSON file, or from a generator spec string"""
    if path_or_spec.endswith('.json'):
        with open(path_or_spec, 'r', encoding='utf-8') as f:
            try:
                return OrderedStructure.from_dict(json.load(f))
            except json.JSONDecodeError as e:
                raise StructureError(f"invalid JSON: {e}") from None
    return ParseOrderSpec(path_or_spec)
