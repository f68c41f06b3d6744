"""
Monk Constructions
Graph-based Monk atom structures, the rho-labelled variant and Maddux-style A(n, r)
"""

from itertools import product
from typing import Callable, Dict, List, Optional, Tuple

from algebra.atoms import IDENTITY, RAAtomStructure
from algebra.errors import PreconditionError
from algebra.graphs import Graph
from utils.logging_config import get_logger

logger = get_logger('algebra')

RHO = "rho"


def AtomId(vertex, colour: int) -> str:
    return f"({vertex},{colour})"


def _identity_cycles(atoms: List[str], identity: str) -> set:
    """All permutations of (1', a, a), all atoms self-converse"""
    cycles = set()
    for atom in atoms:
        cycles.add((identity, atom, atom))
        cycles.add((atom, identity, atom))
        cycles.add((atom, atom, identity))
    return cycles


def _coloured_structure(points: List, colours: int, consistent: Callable, name: str,
                        provenance: Dict) -> RAAtomStructure:
    """Atoms 1' and (p, i); diversity triple consistent by colours or by the point rule"""
    diversity = [(p, i) for i in range(colours) for p in points]
    ids = [AtomId(p, i) for p, i in diversity]
    atoms = [IDENTITY] + ids
    cycles = _identity_cycles(atoms, IDENTITY)
    for (x, ix), (y, iy), (z, iz) in product(diversity, repeat=3):
        if ix != iy or iy != iz or consistent(x, y, z):
            cycles.add((AtomId(x, ix), AtomId(y, iy), AtomId(z, iz)))
    return RAAtomStructure(
        atoms=atoms,
        identity=[IDENTITY],
        converse={a: a for a in atoms},
        cycles=cycles,
        name=name,
        provenance=provenance
    )


def BuildAlpha(G: Graph, n: int) -> RAAtomStructure:
    """
    Monk atom structure of a graph

    Atoms are 1' and (v, i) for vertices v and colours i < n, all self-converse.
    A monochromatic triple is consistent iff its vertices span a graph edge.

    Args:
        G: Nonempty graph
        n: Number of colours (at least 3)

    Returns:
        RAAtomStructure
    """
    if n < 3:
        raise PreconditionError("alpha needs at least 3 colours")
    if G.vertex_count < 1:
        raise PreconditionError("alpha needs a nonempty graph")

    def spans_edge(x, y, z):
        return G.has_edge(x, y) or G.has_edge(y, z) or G.has_edge(x, z)

    structure = _coloured_structure(
        list(G.vertices), n, spans_edge,
        name=f"alpha(G{G.vertex_count},{n})",
        provenance={'construction': 'alpha', 'graph': G.to_dict(), 'n': n})
    logger.debug(f"built {structure.name}: {len(structure.atoms)} atoms, {len(structure.cycles)} cycles")
    return structure


def BuildMonkRho(G: Graph, n: int) -> RAAtomStructure:
    """
    Monk structure over V(G) plus an extra point rho

    Monochromatic triples are consistent if their graph points span an edge,
    if exactly one point is rho and the other two are adjacent, or if at least
    two points are rho.
    """
    if n < 3:
        raise PreconditionError("the rho structure needs at least 3 colours")
    if G.vertex_count < 1:
        raise PreconditionError("the rho structure needs a nonempty graph")

    def consistent(x, y, z):
        triple = (x, y, z)
        rhos = sum(1 for p in triple if p == RHO)
        if rhos >= 2:
            return True
        plain = [p for p in triple if p != RHO]
        if rhos == 1:
            return G.has_edge(plain[0], plain[1]) if plain[0] != plain[1] else False
        return G.has_edge(x, y) or G.has_edge(y, z) or G.has_edge(x, z)

    return _coloured_structure(
        list(G.vertices) + [RHO], n, consistent,
        name=f"monk_rho(G{G.vertex_count},{n})",
        provenance={'construction': 'monk_rho', 'graph': G.to_dict(), 'n': n})


def WFilterMatrices(R: RAAtomStructure, n: int, caps=None) -> list:
    """Basic matrices of a rho structure with no rho-labelled entry"""
    from algebra.matrices import EnumerateBasicMatrices

    rho_atoms = {a for a in R.atoms if a.startswith(f"({RHO},")}
    return [M for M in EnumerateBasicMatrices(R, n, caps)
            if not any(entry in rho_atoms for row in M.entries for entry in row)]


def MadduxAtomId(k: int, i: int, j: int) -> str:
    return f"a{k}({i},{j})"


MADDUX_IDENTITY = "id"


def BuildMaddux(n: int, r: int, psi: int) -> RAAtomStructure:
    """
    Maddux-style structure A(n, r) with psi copies per (i, j)

    Atoms are id and a^k(i, j) for i < n-1, j < r, k < psi, all self-converse.
    Forbidden: permutations of (id, s, t) with s != t, and permutations of
    (a^k(i,j), a^k'(i,j), a^k''(i,j')) with j <= j'. Everything else is consistent.
    """
    if n < 3:
        raise PreconditionError("A(n,r) needs n >= 3")
    if r < 0:
        raise PreconditionError("A(n,r) needs r >= 0")
    if not (n <= psi and r <= psi):
        raise PreconditionError(f"need n, r <= psi (got n={n}, r={r}, psi={psi})")

    diversity = [(k, i, j) for i in range(n - 1) for j in range(r) for k in range(psi)]
    ids = {d: MadduxAtomId(*d) for d in diversity}
    atoms = [MADDUX_IDENTITY] + [ids[d] for d in diversity]

    def forbidden(x, y, z) -> bool:
        if not (x[1] == y[1] == z[1]):
            return False
        js = (x[2], y[2], z[2])
        # some pair shares j and the remaining entry has j' >= j
        for p, q, rest in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            if js[p] == js[q] and js[rest] >= js[p]:
                return True
        return False

    cycles = _identity_cycles(atoms, MADDUX_IDENTITY)
    for x, y, z in product(diversity, repeat=3):
        if not forbidden(x, y, z):
            cycles.add((ids[x], ids[y], ids[z]))

    structure = RAAtomStructure(
        atoms=atoms,
        identity=[MADDUX_IDENTITY],
        converse={a: a for a in atoms},
        cycles=cycles,
        name=f"A({n},{r},{psi})",
        provenance={'construction': 'maddux', 'n': n, 'r': r, 'psi': psi}
    )
    logger.debug(f"built {structure.name}: {len(atoms)} atoms, {len(cycles)} cycles")
    return structure
