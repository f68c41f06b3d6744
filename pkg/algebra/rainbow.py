"""
Rainbow Atom Structures
Coloured graphs over a green index structure A and a red index structure B,
their forbidden triangles, cones and shades of yellow, and the cylindric atom
structure of surjections onto them
"""

import time
from dataclasses import dataclass, replace
from functools import cached_property, lru_cache
from itertools import chain, combinations, permutations, product
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from algebra.atoms import IDENTITY, CAAtomStructure, RAAtomStructure
from algebra.blowup import RedIndicesMatch
from algebra.errors import CapExceededError, PreconditionError, StructureError
from algebra.graphs import IsPartialHomomorphism, OrderedStructure
from utils.config import DEFAULT_CONFIG, GetCaps
from utils.logging_config import get_logger

logger = get_logger('algebra')

# Colour kinds; a colour is a tuple headed by its kind
GREEN = 'g'
GREEN0 = 'g0'
WHITE = 'w'
WHITE_I = 'wi'
YELLOW = 'y'
RED = 'r'
RHO = 'rho'

SHADE_FAMILIES = ('all', 'full')

Colour = Tuple[Any, ...]
Shade = FrozenSet[int]


def IsGreen(colour: Colour) -> bool:
    return colour[0] in (GREEN, GREEN0)


def IsRed(colour: Colour) -> bool:
    return colour[0] == RED


def ConverseColour(colour: Colour) -> Colour:
    """Reds flip their indices; every other colour is self-converse"""
    if colour[0] == RED:
        return (RED, colour[2], colour[1]) + tuple(colour[3:])
    return colour


def ColourName(colour: Colour) -> str:
    kind = colour[0]
    if kind == GREEN:
        return f"g{colour[1]}"
    if kind == GREEN0:
        return f"g0^{colour[1]}"
    if kind == WHITE_I:
        return f"w{colour[1]}"
    if kind == RED:
        return f"r({colour[1]},{colour[2]})" + (f"^{colour[3]}" if len(colour) > 3 else "")
    return kind


@dataclass(frozen=True)
class RainbowSignature:
    """
    Colour inventory of a rainbow structure

    Greens g_i (1 <= i <= n-2) and g0^a (a in A), whites w and w_i (i < n-2),
    yellow y, reds r(b,b') for b, b' in B. A split signature carries K copies
    of every red plus the shade of red rho.
    """

    n: int
    A: OrderedStructure
    B: OrderedStructure
    copies: Optional[int] = None
    shade_family: str = 'all'

    def __post_init__(self):
        if self.n < 3:
            raise PreconditionError("rainbow structures need n >= 3")
        if len(self.A) == 0 or len(self.B) == 0:
            raise PreconditionError("rainbow structures need nonempty A and B")
        if self.copies is not None and self.copies < 1:
            raise PreconditionError("the number of red copies K must be at least 1")
        if self.shade_family not in SHADE_FAMILIES:
            raise PreconditionError(f"unknown shade family '{self.shade_family}' (use {', '.join(SHADE_FAMILIES)})")

    @property
    def split(self) -> bool:
        return self.copies is not None

    def greens(self) -> List[Colour]:
        return [(GREEN, i) for i in range(1, self.n - 1)] + [(GREEN0, a) for a in self.A.universe]

    def whites(self) -> List[Colour]:
        return [(WHITE,)] + [(WHITE_I, i) for i in range(self.n - 2)]

    def reds(self) -> List[Colour]:
        pairs = product(self.B.universe, repeat=2)
        if self.split:
            return [(RED, b, c, l) for b, c in pairs for l in range(self.copies)]
        return [(RED, b, c) for b, c in pairs]

    def edge_colours(self, include_rho: bool = False) -> List[Colour]:
        colours = self.greens() + self.whites() + [(YELLOW,)] + self.reds()
        if include_rho and self.split:
            colours.append((RHO,))
        return colours

    @cached_property
    def _palette(self) -> FrozenSet[Colour]:
        return frozenset(self.edge_colours(include_rho=True))

    def is_colour(self, colour: Colour) -> bool:
        return tuple(colour) in self._palette

    @property
    def full_shade(self) -> Shade:
        return frozenset(self.A.universe)

    @cached_property
    def shade_list(self) -> Tuple[Shade, ...]:
        if self.shade_family == 'full':
            return (self.full_shade,)
        tints = sorted(self.A.universe)
        return tuple(frozenset(s) for s in chain.from_iterable(combinations(tints, k) for k in range(len(tints) + 1)))

    @property
    def label(self) -> str:
        text = f"rainbow(n={self.n},|A|={len(self.A)},|B|={len(self.B)}"
        if self.split:
            text += f",K={self.copies}"
        return text + f",{self.shade_family})"

    def to_dict(self) -> Dict[str, Any]:
        return {'n': self.n, 'A': self.A.to_dict(), 'B': self.B.to_dict(),
                'copies': self.copies, 'shade_family': self.shade_family}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'RainbowSignature':
        try:
            return cls(int(data['n']), OrderedStructure.from_dict(data['A']), OrderedStructure.from_dict(data['B']),
                       data.get('copies'), data.get('shade_family', 'all'))
        except (KeyError, TypeError) as e:
            raise StructureError(f"malformed rainbow signature: {e}") from None


def SplitReds(sig: RainbowSignature, K: int) -> RainbowSignature:
    """Same signature with every red split into K copies and the shade of red rho added"""
    if K < 1:
        raise PreconditionError("the number of red copies K must be at least 1")
    if sig.split:
        raise PreconditionError("signature is already split")
    return replace(sig, copies=K)


@lru_cache(maxsize=32)
def PairOrder(size: int) -> Tuple[Tuple[int, int], ...]:
    """Node pairs x < y ordered so that every triangle is complete at its last pair"""
    return tuple((x, y) for y in range(size) for x in range(y))


@dataclass(frozen=True)
class ColouredGraph:
    """
    Complete coloured graph on nodes 0..size-1

    edges[k] is the colour of x -> y for the k-th pair of PairOrder(size);
    shades maps (n-1)-tuples of distinct nodes to subsets of A.
    """

    size: int
    edges: Tuple[Colour, ...] = ()
    shades: Tuple[Tuple[Tuple[int, ...], Shade], ...] = ()

    @classmethod
    def build(cls, size: int, colours: Mapping[Tuple[int, int], Colour],
              shades: Optional[Mapping[Tuple[int, ...], Iterable[int]]] = None) -> 'ColouredGraph':
        edges = []
        for x, y in PairOrder(size):
            if (x, y) in colours:
                edges.append(tuple(colours[(x, y)]))
            elif (y, x) in colours:
                edges.append(ConverseColour(tuple(colours[(y, x)])))
            else:
                raise StructureError(f"edge ({x},{y}) has no colour")
        table = tuple(sorted((tuple(t), frozenset(s)) for t, s in (shades or {}).items()))
        return cls(size, tuple(edges), table)

    @cached_property
    def _edge_map(self) -> Dict[Tuple[int, int], Colour]:
        table = {}
        for (x, y), colour in zip(PairOrder(self.size), self.edges):
            table[(x, y)] = colour
            table[(y, x)] = ConverseColour(colour)
        return table

    @cached_property
    def _shade_map(self) -> Dict[Tuple[int, ...], Shade]:
        return dict(self.shades)

    def colour(self, x: int, y: int) -> Colour:
        try:
            return self._edge_map[(x, y)]
        except KeyError:
            raise StructureError(f"no edge ({x},{y}) in a {self.size}-node graph") from None

    def shade(self, nodes: Sequence[int]) -> Optional[Shade]:
        return self._shade_map.get(tuple(nodes))

    def restrict(self, nodes: Sequence[int]) -> 'ColouredGraph':
        """Induced subgraph; nodes[k] becomes node k"""
        position = {v: k for k, v in enumerate(nodes)}
        edges = tuple(self.colour(nodes[x], nodes[y]) for x, y in PairOrder(len(nodes)))
        shades = tuple(sorted((tuple(position[v] for v in t), s) for t, s in self.shades
                              if all(v in position for v in t)))
        return ColouredGraph(len(nodes), edges, shades)

    def relabel(self, perm: Sequence[int]) -> 'ColouredGraph':
        """Node x becomes perm[x]"""
        inverse = [0] * self.size
        for x, image in enumerate(perm):
            inverse[image] = x
        return self.restrict(inverse)

    def sort_key(self) -> Tuple:
        return (self.size, self.edges, tuple((t, tuple(sorted(s))) for t, s in self.shades))

    def to_dict(self) -> Dict[str, Any]:
        matrix = [[None if x == y else list(self.colour(x, y)) for y in range(self.size)] for x in range(self.size)]
        return {'nodes': self.size, 'colours': matrix,
                'yellow': [[list(t), sorted(s)] for t, s in self.shades]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'ColouredGraph':
        try:
            size = int(data['nodes'])
            matrix = data['colours']
            colours = {(x, y): tuple(matrix[x][y]) for x, y in PairOrder(size)}
            shades = {tuple(t): s for t, s in data.get('yellow', [])}
        except (KeyError, TypeError, ValueError, IndexError) as e:
            raise StructureError(f"malformed coloured graph: {e}") from None
        graph = cls.build(size, colours, shades)
        for x, y in PairOrder(size):
            if matrix[y][x] is not None and tuple(matrix[y][x]) != graph.colour(y, x):
                raise StructureError(f"colours of ({x},{y}) and ({y},{x}) are not converse")
        return graph

    def describe(self) -> str:
        parts = [f"{x}-{y}:{ColourName(self.colour(x, y))}" for x, y in PairOrder(self.size)]
        parts += [f"y{{{','.join(map(str, sorted(s)))}}}@{t}" for t, s in self.shades]
        return f"[{self.size}] " + " ".join(parts)


# Forbidden triangles

def _green_red_allowed(sig: RainbowSignature, xy: Colour, yz: Colour, xz: Colour) -> bool:
    """Red r(k,l) on u -> v with apex greens g0^i to u and g0^j to v needs {(i,k),(j,l)} a partial homomorphism"""
    if IsRed(xy):
        to_u, to_v, red = xz, yz, xy
    elif IsRed(yz):
        to_u, to_v, red = xy, xz, yz
    else:
        to_u, to_v, red = xy, yz, xz
    return IsPartialHomomorphism(sig.A, sig.B, [(to_u[1], red[1]), (to_v[1], red[2])])


def TriangleRule(sig: RainbowSignature, xy: Colour, yz: Colour, xz: Colour) -> Optional[str]:
    """Name of the forbidden pattern on edges x->y, y->z, x->z, or None"""
    edges = (xy, yz, xz)
    kinds = [c[0] for c in edges]
    if all(IsGreen(c) for c in edges):
        return 'green_triangle'
    if kinds.count(GREEN) == 2 and WHITE in kinds:
        first, second = (c for c in edges if c[0] == GREEN)
        if first == second:
            return 'green_green_white'
    if sorted(kinds) == [GREEN0, WHITE_I, YELLOW]:
        return 'green_yellow_white'
    if kinds.count(GREEN0) == 2:
        if (WHITE_I, 0) in edges:
            return 'green_green_white0'
        if RED in kinds and not _green_red_allowed(sig, xy, yz, xz):
            return 'green_green_red'
    if kinds.count(YELLOW) == 3:
        return 'yellow_triangle'
    reds = kinds.count(RED)
    if reds == 3 and not RedIndicesMatch(xy[1:3], yz[1:3], xz[1:3]):
        return 'red_mismatch'
    rhos = kinds.count(RHO)
    if reds == 2 and rhos == 1:
        return 'red_red_rho'
    if reds == 1 and rhos == 2:
        return 'red_rho_rho'
    return None


def ShadeTuples(sig: RainbowSignature, graph: ColouredGraph) -> List[Tuple[int, ...]]:
    """Ordered (n-1)-tuples of distinct nodes with no green edge among them"""
    tuples = []
    for nodes in permutations(range(graph.size), sig.n - 1):
        if not any(IsGreen(graph.colour(a, b)) for a, b in combinations(nodes, 2)):
            tuples.append(nodes)
    return tuples


def ConeTint(sig: RainbowSignature, graph: ColouredGraph, apex: int, base: Sequence[int]) -> Optional[int]:
    """Tint t when apex sees base[0] in g0^t and base[j] in g_j, else None"""
    first = graph.colour(apex, base[0])
    if first[0] != GREEN0:
        return None
    for j in range(1, len(base)):
        if graph.colour(apex, base[j]) != (GREEN, j):
            return None
    return first[1]


def ConeTints(sig: RainbowSignature, graph: ColouredGraph, base: Sequence[int]) -> set:
    tints = set()
    for apex in range(graph.size):
        if apex not in base:
            tint = ConeTint(sig, graph, apex, base)
            if tint is not None:
                tints.add(tint)
    return tints


class GraphReport:
    """Violations found in a coloured graph, first max_witnesses kept per rule"""

    def __init__(self, subject: str, max_witnesses: Optional[int] = None):
        self.subject = subject
        self.max_witnesses = DEFAULT_CONFIG['report']['max_witnesses'] if max_witnesses is None else max_witnesses
        self.counts: Dict[str, int] = {}
        self.violations: List[Dict[str, Any]] = []

    def add(self, rule: str, message: str, **witness):
        self.counts[rule] = self.counts.get(rule, 0) + 1
        if self.counts[rule] <= self.max_witnesses:
            self.violations.append({'rule': rule, 'message': message, **witness})

    @property
    def valid(self) -> bool:
        return not self.counts

    @property
    def rules(self) -> List[str]:
        return sorted(self.counts)

    def to_dict(self) -> Dict[str, Any]:
        return {'subject': self.subject, 'valid': self.valid, 'counts': dict(self.counts),
                'violations': self.violations}


def CheckColouredGraph(sig: RainbowSignature, graph: ColouredGraph,
                       max_witnesses: Optional[int] = None) -> GraphReport:
    """
    Check colours, forbidden triangles, the yellow clause and the cone rule

    Args:
        sig: Rainbow signature
        graph: Coloured graph to check

    Returns:
        GraphReport listing violations with witnesses
    """
    report = GraphReport(graph.describe(), max_witnesses)
    if len(graph.edges) != len(PairOrder(graph.size)):
        raise StructureError(f"a {graph.size}-node graph needs {len(PairOrder(graph.size))} edge colours")

    for (x, y), colour in zip(PairOrder(graph.size), graph.edges):
        if not sig.is_colour(colour):
            report.add('colour', f"{colour} is not a colour of {sig.label}", edge=[x, y])
    if not report.valid:
        return report

    for x, y, z in combinations(range(graph.size), 3):
        rule = TriangleRule(sig, graph.colour(x, y), graph.colour(y, z), graph.colour(x, z))
        if rule is not None:
            report.add(rule, f"forbidden triangle on {x},{y},{z}", nodes=[x, y, z])

    needed = set(ShadeTuples(sig, graph))
    for nodes, shade in graph.shades:
        if nodes not in needed:
            report.add('yellow', f"tuple {nodes} must not carry a shade", nodes=list(nodes))
        elif shade not in sig.shade_list:
            report.add('yellow', f"shade {sorted(shade)} is outside the {sig.shade_family} family", nodes=list(nodes))
        else:
            missing = ConeTints(sig, graph, nodes) - shade
            if missing:
                report.add('cone', f"cone over {nodes} with tint {min(missing)} outside its shade",
                           nodes=list(nodes), tint=min(missing))
    for nodes in sorted(needed - set(graph._shade_map)):
        report.add('yellow', f"green-free tuple {nodes} has no shade", nodes=list(nodes))
    return report


# Enumeration

def _shadings(sig: RainbowSignature, size: int, edges: Tuple[Colour, ...]) -> Iterable[ColouredGraph]:
    bare = ColouredGraph(size, edges)
    if size < sig.n - 1:
        yield bare
        return
    tuples = ShadeTuples(sig, bare)
    options = []
    for nodes in tuples:
        tints = ConeTints(sig, bare, nodes)
        allowed = [s for s in sig.shade_list if tints <= s]
        if not allowed:
            return
        options.append(allowed)
    for choice in product(*options):
        yield ColouredGraph(size, edges, tuple(zip(tuples, choice)))


def EnumerateColouredGraphs(sig: RainbowSignature, size: int,
                            caps: Optional[Dict[str, int]] = None) -> List[ColouredGraph]:
    """All valid coloured graphs on nodes 0..size-1 with no rho edge"""
    caps = caps or GetCaps()
    colours = sig.edge_colours()
    pairs = PairOrder(size)
    position = {pair: k for k, pair in enumerate(pairs)}
    assigned: List[Optional[Colour]] = [None] * len(pairs)
    found: List[ColouredGraph] = []

    def colour(x: int, y: int) -> Colour:
        return assigned[position[(x, y)]]

    def extend(k: int):
        if k == len(pairs):
            for graph in _shadings(sig, size, tuple(assigned)):
                found.append(graph)
                if len(found) > caps['max_graphs']:
                    raise CapExceededError('coloured graphs', len(found), caps['max_graphs'])
            return
        x, y = pairs[k]
        for c in colours:
            assigned[k] = c
            if all(TriangleRule(sig, colour(w, x), c, colour(w, y)) is None for w in range(x)):
                extend(k + 1)
        assigned[k] = None

    extend(0)
    return found


def RestrictedGrowthStrings(length: int, blocks: int) -> List[Tuple[int, ...]]:
    """Kernels of surjections from length positions onto blocks nodes, nodes numbered by first use"""
    out = []

    def grow(prefix: List[int], used: int):
        if len(prefix) == length:
            if used == blocks:
                out.append(tuple(prefix))
            return
        if blocks - used > length - len(prefix):
            return
        for v in range(min(used + 1, blocks)):
            grow(prefix + [v], max(used, v + 1))

    grow([], 0)
    return out


@dataclass(frozen=True)
class RainbowAtom:
    """Canonical surjection from n positions onto a coloured graph: position i goes to node pattern[i]"""

    pattern: Tuple[int, ...]
    graph: ColouredGraph

    def sort_key(self) -> Tuple:
        return (self.graph.size, self.pattern, self.graph.sort_key())

    def key_avoiding(self, i: int) -> Tuple:
        """Everything the surjection says about positions other than i"""
        s = self.pattern
        positions = [p for p in range(len(s)) if p != i]
        kernel = tuple(s[p] == s[q] for p, q in product(positions, repeat=2))
        edges = tuple(self.graph.colour(s[p], s[q]) if s[p] != s[q] else None
                      for p, q in product(positions, repeat=2))
        shades = tuple(self.graph.shade(tuple(s[p] for p in seq))
                       for seq in product(positions, repeat=len(s) - 1))
        return kernel, edges, shades

    def swap(self, i: int, j: int) -> 'RainbowAtom':
        nodes = list(self.pattern)
        nodes[i], nodes[j] = nodes[j], nodes[i]
        return AtomOfTuple(self.graph, nodes)

    def to_dict(self) -> Dict[str, Any]:
        return {'pattern': list(self.pattern), 'graph': self.graph.to_dict()}


def AtomOfTuple(graph: ColouredGraph, nodes: Sequence[int]) -> RainbowAtom:
    """Atom of the map i -> nodes[i] onto the subgraph it spans"""
    order: List[int] = []
    index: Dict[int, int] = {}
    pattern = []
    for v in nodes:
        if v not in index:
            index[v] = len(order)
            order.append(v)
        pattern.append(index[v])
    return RainbowAtom(tuple(pattern), graph.restrict(order))


def EnumerateAtoms(sig: RainbowSignature, caps: Optional[Dict[str, int]] = None) -> List[RainbowAtom]:
    """
    All atoms of the rainbow structure, in canonical order

    An atom is a surjection from n positions onto a valid coloured graph of at
    most n nodes, up to renaming nodes; graphs with a rho edge are excluded.

    Args:
        sig: Rainbow signature
        caps: Cap table (default: configured caps)

    Returns:
        Sorted list of RainbowAtom
    """
    caps = caps or GetCaps()
    start = time.time()
    atoms: List[RainbowAtom] = []
    for size in range(1, sig.n + 1):
        graphs = EnumerateColouredGraphs(sig, size, caps)
        for pattern in RestrictedGrowthStrings(sig.n, size):
            atoms.extend(RainbowAtom(pattern, graph) for graph in graphs)
            if len(atoms) > caps['max_atoms']:
                raise CapExceededError('rainbow atoms', len(atoms), caps['max_atoms'])
    atoms.sort(key=RainbowAtom.sort_key)
    logger.debug(f"{sig.label}: {len(atoms)} atoms in {time.time() - start:.2f}s")
    return atoms


def BuildRainbowCA(sig: RainbowSignature, caps: Optional[Dict[str, int]] = None) -> CAAtomStructure:
    """
    Cylindric atom structure of a rainbow signature

    Atoms a0, a1, ... in canonical order; ti by agreement off position i; eij
    when positions i and j meet the same node; pij by swapping positions.
    """
    atoms = EnumerateAtoms(sig, caps)
    ids = {atom: f"a{k}" for k, atom in enumerate(atoms)}
    n = sig.n
    keys = [{ids[atom]: atom.key_avoiding(i) for atom in atoms} for i in range(n)]
    eij = {(i, j): [ids[atom] for atom in atoms if atom.pattern[i] == atom.pattern[j]]
           for i in range(n) for j in range(n)}
    pij = {(i, j): {ids[atom]: ids[atom.swap(i, j)] for atom in atoms}
           for i in range(n) for j in range(n) if i != j}
    structure = CAAtomStructure.from_partitions(
        n, [ids[atom] for atom in atoms], keys, eij, pij,
        name=sig.label,
        provenance={'construction': 'rainbow', 'signature': sig.to_dict()},
        labels={ids[atom]: atom for atom in atoms}
    )
    logger.info(f"Built {sig.label}: {len(atoms)} atoms")
    return structure


def _erase_copies(colour: Colour) -> Colour:
    return colour[:3] if IsRed(colour) else colour


def EraseCopies(atom: RainbowAtom) -> RainbowAtom:
    """Forget the copy index of every red"""
    graph = atom.graph
    return RainbowAtom(atom.pattern, ColouredGraph(graph.size, tuple(_erase_copies(c) for c in graph.edges),
                                                   graph.shades))


def SplitCopyMap(unsplit: CAAtomStructure, split: CAAtomStructure) -> Dict[str, set]:
    """Every unsplit atom goes to the split atoms that erase to it"""
    by_atom = {atom: atom_id for atom_id, atom in unsplit.labels.items()}
    copy_map: Dict[str, set] = {atom_id: set() for atom_id in unsplit.atoms}
    for atom_id, atom in split.labels.items():
        if not isinstance(atom, RainbowAtom):
            raise PreconditionError("split structure carries no rainbow atoms")
        origin = by_atom.get(EraseCopies(atom))
        if origin is None:
            raise PreconditionError(f"split atom {atom_id} erases to no unsplit atom")
        copy_map[origin].add(atom_id)
    return copy_map


# Graphs and networks

def GraphToNetwork(sig: RainbowSignature, graph: ColouredGraph) -> Dict[Tuple[int, ...], RainbowAtom]:
    """Atomic network on the graph's nodes: every n-tuple labelled by the atom it spans"""
    report = CheckColouredGraph(sig, graph)
    if not report.valid:
        raise StructureError(f"invalid coloured graph: {', '.join(report.rules)}")
    return {nodes: AtomOfTuple(graph, nodes) for nodes in product(range(graph.size), repeat=sig.n)}


def NetworkToGraph(sig: RainbowSignature, network: Mapping[Tuple[int, ...], RainbowAtom]) -> ColouredGraph:
    """Coloured graph read off an atomic network; nodes are renumbered in sorted order"""
    nodes = sorted({v for t in network for v in t})
    number = {v: k for k, v in enumerate(nodes)}
    colours: Dict[Tuple[int, int], Colour] = {}
    shades: Dict[Tuple[int, ...], Shade] = {}

    def put(table, key, value, what):
        if table.setdefault(key, value) != value:
            raise StructureError(f"network disagrees on the {what} of {key}")

    for t, atom in network.items():
        if len(t) != sig.n or len(atom.pattern) != sig.n:
            raise StructureError(f"network tuple {t} does not match dimension {sig.n}")
        s = atom.pattern
        for i, j in product(range(sig.n), repeat=2):
            if (t[i] == t[j]) != (s[i] == s[j]):
                raise StructureError(f"atom at {t} disagrees with the tuple on positions {i},{j}")
            if t[i] != t[j]:
                put(colours, (number[t[i]], number[t[j]]), atom.graph.colour(s[i], s[j]), 'colour')
        for seq in product(range(sig.n), repeat=sig.n - 1):
            shade = atom.graph.shade(tuple(s[p] for p in seq))
            if shade is not None:
                put(shades, tuple(number[t[p]] for p in seq), shade, 'shade')

    graph = ColouredGraph.build(len(nodes), colours, shades)
    report = CheckColouredGraph(sig, graph)
    if not report.valid:
        raise StructureError(f"network yields an invalid coloured graph: {', '.join(report.rules)}")
    return graph


def FixedOpening(sig: RainbowSignature) -> ColouredGraph:
    """
    Opening graph on n nodes: whites on the base 0..n-2, g_i from node i to
    node n-1, g0 of the least tint from node 0, full yellow on the base
    """
    n = sig.n
    colours: Dict[Tuple[int, int], Colour] = {}
    for i, j in combinations(range(n - 1), 2):
        colours[(i, j)] = (WHITE,)
    for i in range(1, n - 1):
        colours[(i, n - 1)] = (GREEN, i)
    colours[(0, n - 1)] = (GREEN0, min(sig.A.universe))
    shades = {nodes: sig.full_shade for nodes in permutations(range(n - 1))}
    return ColouredGraph.build(n, colours, shades)


def BuildRedRA(B: OrderedStructure) -> RAAtomStructure:
    """
    Relation algebra of the reds alone

    Atoms 1' and r(b,b'); r(b,b') has converse r(b',b). A red triangle is
    consistent exactly when its indices match around the triangle.
    """
    if len(B) == 0:
        raise PreconditionError("the red index structure must be nonempty")
    pairs = list(product(B.universe, repeat=2))
    ids = {pair: ColourName((RED,) + pair) for pair in pairs}
    atoms = [IDENTITY] + [ids[p] for p in pairs]
    converse = {IDENTITY: IDENTITY}
    converse.update({ids[(b, c)]: ids[(c, b)] for b, c in pairs})

    cycles = {(IDENTITY, IDENTITY, IDENTITY)}
    for p in pairs:
        a, conv = ids[p], converse[ids[p]]
        cycles.update({(IDENTITY, a, a), (a, IDENTITY, a), (a, conv, IDENTITY)})
    for x, y, z in product(pairs, repeat=3):
        if RedIndicesMatch(x, y, z):
            cycles.add((ids[x], ids[y], ids[z]))

    return RAAtomStructure(atoms, [IDENTITY], converse, cycles,
                           name=f"reds(|B|={len(B)})",
                           provenance={'construction': 'reds', 'B': B.to_dict(),
                                       'red_indices': {ids[p]: list(p) for p in pairs}})
