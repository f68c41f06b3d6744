"""
Hypernetworks
Labelled short tuples over a basic matrix, hyperbasis checks and the polyadic
atom structure they induce
"""

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from algebra.atoms import CAAtomStructure, RAAtomStructure
from algebra.errors import CapExceededError, PreconditionError, StructureError
from algebra.matrices import BasicMatrix, BasisReport, EnumerateBasicMatrices, IsBasicMatrix
from utils.config import GetCaps
from utils.logging_config import get_logger, log_cap_usage, log_enumeration

logger = get_logger('algebra')

DEFAULT_LAMBDA = ('0',)


@lru_cache(maxsize=64)
def TupleSpace(m: int, n_wide: int) -> Tuple[Tuple[int, ...], ...]:
    """All tuples over range(m) of length 1..n_wide, shortest first"""
    tuples = []
    for length in range(1, n_wide + 1):
        tuples.extend(product(range(m), repeat=length))
    return tuple(tuples)


@lru_cache(maxsize=64)
def _tuple_index(m: int, n_wide: int) -> Dict[Tuple[int, ...], int]:
    return {t: i for i, t in enumerate(TupleSpace(m, n_wide))}


@lru_cache(maxsize=256)
def _avoiding_positions(m: int, n_wide: int, avoid: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(i for i, t in enumerate(TupleSpace(m, n_wide)) if not set(t) & set(avoid))


@dataclass(frozen=True)
class Hypernetwork:
    """Labels for every tuple in TupleSpace(m, n_wide); pairs carry atoms, other lengths hyperlabels"""

    m: int
    n_wide: int
    labels: Tuple[str, ...]

    def __getitem__(self, t: Tuple[int, ...]) -> str:
        return self.labels[_tuple_index(self.m, self.n_wide)[tuple(t)]]

    def atom(self, x: int, y: int) -> str:
        return self[(x, y)]

    def matrix(self) -> BasicMatrix:
        return BasicMatrix(tuple(tuple(self.atom(x, y) for y in range(self.m)) for x in range(self.m)))

    def key_avoiding(self, *nodes: int) -> Tuple[str, ...]:
        positions = _avoiding_positions(self.m, self.n_wide, tuple(sorted(nodes)))
        return tuple(self.labels[i] for i in positions)

    def compose(self, tau: Sequence[int]) -> 'Hypernetwork':
        """N o tau: label of x becomes label of tau(x)"""
        index = _tuple_index(self.m, self.n_wide)
        return Hypernetwork(self.m, self.n_wide, tuple(
            self.labels[index[tuple(tau[v] for v in t)]] for t in TupleSpace(self.m, self.n_wide)))

    def transpose(self, i: int, j: int) -> 'Hypernetwork':
        tau = list(range(self.m))
        tau[i], tau[j] = j, i
        return self.compose(tau)

    def to_dict(self) -> Dict:
        return {'m': self.m, 'n_wide': self.n_wide,
                'labels': {','.join(map(str, t)): label for t, label in zip(TupleSpace(self.m, self.n_wide), self.labels)}}


def Restrict(N: Hypernetwork, m: int, n_wide: int) -> Hypernetwork:
    """Restriction of N to tuples of length <= n_wide over the first m nodes"""
    if not (1 <= m <= N.m and 2 <= n_wide <= N.n_wide):
        raise StructureError(f"cannot restrict ({N.m},{N.n_wide}) to ({m},{n_wide})")
    return Hypernetwork(m, n_wide, tuple(N[t] for t in TupleSpace(m, n_wide)))


def _identity_reps(R: RAAtomStructure, matrix: BasicMatrix) -> List[int]:
    """Least node identified with each node through identity entries"""
    reps = list(range(matrix.n))
    for x in range(matrix.n):
        for y in range(x):
            if matrix[x, y] in R.identity:
                reps[x] = reps[y]
                break
    return reps


def IsHypernetwork(R: RAAtomStructure, N: Hypernetwork, labels: Iterable[str] = DEFAULT_LAMBDA) -> bool:
    labels = set(labels)
    matrix = N.matrix()
    if not IsBasicMatrix(R, matrix.entries):
        return False
    for t, label in zip(TupleSpace(N.m, N.n_wide), N.labels):
        if len(t) != 2 and label not in labels:
            return False
    tuples = TupleSpace(N.m, N.n_wide)
    for s in tuples:
        for t in tuples:
            if len(s) != len(t) or s >= t:
                continue
            if all(matrix[a, b] in R.identity for a, b in zip(s, t)) and N[s] != N[t]:
                return False
    return True


def _labellings(R: RAAtomStructure, matrix: BasicMatrix, m: int, n_wide: int,
                labels: Sequence[str]) -> Iterable[Hypernetwork]:
    reps = _identity_reps(R, matrix)
    tuples = TupleSpace(m, n_wide)
    classes: Dict[Tuple[int, ...], int] = {}
    slot = []
    for t in tuples:
        if len(t) == 2:
            slot.append(None)
        else:
            slot.append(classes.setdefault(tuple(reps[v] for v in t), len(classes)))
    for choice in product(labels, repeat=len(classes)):
        yield Hypernetwork(m, n_wide, tuple(
            matrix[t] if s is None else choice[s] for t, s in zip(tuples, slot)))


def EnumerateHypernetworks(R: RAAtomStructure, m: int, n_wide: int,
                           labels: Sequence[str] = DEFAULT_LAMBDA,
                           caps: Optional[Dict[str, int]] = None) -> List[Hypernetwork]:
    """
    All n_wide-wide m-dimensional hypernetworks over R with hyperlabels from labels

    Args:
        R: RA atom structure
        m: Number of nodes (at least 3)
        n_wide: Longest labelled tuple (at least 2)
        labels: Finite hyperlabel set
        caps: Cap table (default: configured caps)

    Returns:
        List of Hypernetwork in canonical order
    """
    if n_wide < 2:
        raise PreconditionError("hypernetworks need n_wide >= 2")
    labels = tuple(sorted(set(str(label) for label in labels)))
    if not labels:
        raise PreconditionError("the hyperlabel set must be nonempty")
    caps = caps or GetCaps()
    start = time.time()

    found: List[Hypernetwork] = []
    for matrix in EnumerateBasicMatrices(R, m, caps):
        for network in _labellings(R, matrix, m, n_wide, labels):
            found.append(network)
            if len(found) > caps['max_hypernetworks']:
                raise CapExceededError('hypernetworks', len(found), caps['max_hypernetworks'])
    log_enumeration(f"H_{m}^{n_wide}", len(found), time.time() - start)
    log_cap_usage('hypernetworks', len(found), caps['max_hypernetworks'])
    return found


def IsSymmetric(H: Iterable[Hypernetwork]) -> Tuple[bool, Optional[Tuple[Hypernetwork, Tuple[int, ...]]]]:
    """Closed under N -> N o sigma for every map sigma: m -> m"""
    members = set(H)
    if not members:
        return True, None
    m = next(iter(members)).m
    maps = list(product(range(m), repeat=m))
    for N in sorted(members, key=lambda h: h.labels):
        for sigma in maps:
            if N.compose(sigma) not in members:
                return False, (N, sigma)
    return True, None


def CheckHyperbasis(R: RAAtomStructure, m: int, n_wide: int, labels: Sequence[str],
                    H: Iterable[Hypernetwork], check_symmetry: bool = True,
                    max_witnesses: Optional[int] = None) -> BasisReport:
    """Coverage, witness and amalgamation clauses, plus symmetry when requested"""
    networks = sorted(set(H), key=lambda h: h.labels)
    for N in networks:
        if N.m != m or N.n_wide != n_wide:
            raise StructureError(f"hypernetwork of shape ({N.m},{N.n_wide}) in a ({m},{n_wide}) set")
    conditions = ['coverage', 'witness', 'amalgamation'] + (['symmetry'] if check_symmetry else [])
    report = BasisReport(f"H_{m}^{n_wide}({R.name or 'R'})", conditions, max_witnesses)
    start = time.time()

    seen = {N.atom(0, 1) for N in networks}
    for atom in R.atoms:
        if atom not in seen:
            report.fail('coverage', f"no hypernetwork has {atom} at (0,1)", atom=atom)

    for z in range(m):
        groups: Dict[Tuple, List[Hypernetwork]] = {}
        for N in networks:
            groups.setdefault(N.key_avoiding(z), []).append(N)
        for members in groups.values():
            N = members[0]
            for x in range(m):
                for y in range(m):
                    if z in (x, y):
                        continue
                    present = {(M.atom(x, z), M.atom(z, y)) for M in members}
                    needed = R.factorizations(N.atom(x, y))
                    if len(present) == len(needed):
                        continue
                    for a, b in needed:
                        if (a, b) not in present:
                            report.fail('witness', f"no witness for {N.atom(x, y)} <= {a};{b} at z={z}",
                                        x=x, y=y, z=z, a=a, b=b)

    for x in range(m):
        for y in range(x + 1, m):
            groups = {}
            for N in networks:
                groups.setdefault(N.key_avoiding(x, y), []).append(N)
            for members in groups.values():
                keys_x = {N.key_avoiding(x) for N in members}
                keys_y = {N.key_avoiding(y) for N in members}
                pairs = {(N.key_avoiding(x), N.key_avoiding(y)) for N in members}
                if len(pairs) != len(keys_x) * len(keys_y):
                    report.fail('amalgamation', f"missing amalgam over x={x}, y={y}",
                                x=x, y=y, missing=len(keys_x) * len(keys_y) - len(pairs))

    if check_symmetry:
        symmetric, witness = IsSymmetric(networks)
        if not symmetric:
            N, sigma = witness
            report.fail('symmetry', f"image under {sigma} is missing", sigma=tuple(sigma))

    report.duration = time.time() - start
    logger.info(f"Hyperbasis check {report.subject}: {'holds' if report.holds else report.failed_conditions}")
    return report


def BuildPEAFromHyperbasis(R: RAAtomStructure, m: int, n_wide: int, labels: Sequence[str],
                           H: Iterable[Hypernetwork]) -> CAAtomStructure:
    """
    Polyadic-equality atom structure on a symmetric hyperbasis

    Atoms h0, h1, ... in canonical order; ti by agreement off i; eij by
    identity at (i, j); pij by composition with the transposition [i, j].
    """
    networks = sorted(set(H), key=lambda h: h.labels)
    report = CheckHyperbasis(R, m, n_wide, labels, networks, check_symmetry=True)
    if 'symmetry' in report.failed_conditions:
        raise PreconditionError("the polyadic construction needs a symmetric hyperbasis")
    if not report.holds:
        raise PreconditionError(f"not a hyperbasis: {', '.join(report.failed_conditions)} fail")

    ids = {N: f"h{i}" for i, N in enumerate(networks)}
    atoms = [ids[N] for N in networks]
    keys = [{ids[N]: N.key_avoiding(i) for N in networks} for i in range(m)]
    eij = {(i, j): [ids[N] for N in networks if N.atom(i, j) in R.identity] for i in range(m) for j in range(m)}
    pij = {(i, j): {ids[N]: ids[N.transpose(i, j)] for N in networks}
           for i in range(m) for j in range(m) if i != j}
    return CAAtomStructure.from_partitions(
        m, atoms, keys, eij, pij,
        name=f"Ca(H_{m}^{n_wide}({R.name or 'R'}))",
        provenance={'construction': 'hyperbasis', 'base': R.fingerprint(), 'm': m, 'n_wide': n_wide,
                    'labels': list(labels)},
        labels={ids[N]: N.matrix().to_list() for N in networks}
    )
