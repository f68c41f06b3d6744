"""
Basic Matrices
Enumeration of basic matrices over an RA atom structure, cylindric-basis checks
and the induced cylindric atom structure
"""

import time
from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from algebra.atoms import CAAtomStructure, RAAtomStructure
from algebra.errors import CapExceededError, PreconditionError
from utils.config import DEFAULT_CONFIG, GetCaps
from utils.logging_config import get_logger, log_cap_usage, log_enumeration

logger = get_logger('algebra')

Entries = Tuple[Tuple[str, ...], ...]


@dataclass(frozen=True)
class BasicMatrix:
    """n x n atom-valued matrix; entries[i][j] is the atom on edge i -> j"""

    entries: Entries

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, pair: Tuple[int, int]) -> str:
        i, j = pair
        return self.entries[i][j]

    def key_avoiding(self, *indices: int) -> Tuple[str, ...]:
        """Entries whose row and column both avoid the given indices"""
        n = self.n
        return tuple(self.entries[a][b] for a in range(n) for b in range(n)
                     if a not in indices and b not in indices)

    def permute(self, sigma: Sequence[int]) -> 'BasicMatrix':
        """M o sigma: entry (x, y) becomes M(sigma x, sigma y)"""
        n = self.n
        return BasicMatrix(tuple(tuple(self.entries[sigma[x]][sigma[y]] for y in range(n)) for x in range(n)))

    def transpose(self, i: int, j: int) -> 'BasicMatrix':
        sigma = list(range(self.n))
        sigma[i], sigma[j] = j, i
        return self.permute(sigma)

    def to_list(self) -> List[List[str]]:
        return [list(row) for row in self.entries]


def IsBasicMatrix(R: RAAtomStructure, entries: Sequence[Sequence[str]]) -> bool:
    """Identity diagonal, converse symmetry and the triangle law on all index triples"""
    n = len(entries)
    cycles = R.cycles
    for i in range(n):
        if len(entries[i]) != n or entries[i][i] not in R.identity:
            return False
        for j in range(n):
            if entries[j][i] != R.converse.get(entries[i][j]):
                return False
    for i, k, j in product(range(n), repeat=3):
        if (entries[i][k], entries[k][j], entries[i][j]) not in cycles:
            return False
    return True


def _matrix_order(R: RAAtomStructure):
    index = R.index
    return lambda M: tuple(index[a] for row in M.entries for a in row)


def _check_space(R: RAAtomStructure, n: int, caps: Dict[str, int]):
    pairs = n * (n - 1) // 2
    space = len(R.atoms) ** pairs * max(1, len(R.identity)) ** n
    if space > caps['max_matrices']:
        raise CapExceededError('basic matrix search space', space, caps['max_matrices'])


def _enumerate(R: RAAtomStructure, n: int, limit: int) -> List[BasicMatrix]:
    conv = R.converse
    all_atoms = sorted(R.atoms, key=R.index.get)
    order = [(i, j) for j in range(1, n) for i in range(j)]
    found: List[BasicMatrix] = []

    M: List[List[Optional[str]]] = [[None] * n for _ in range(n)]

    def candidates(i: int, j: int) -> List[str]:
        allowed = None
        for k in range(n):
            if k in (i, j) or M[i][k] is None or M[k][j] is None:
                continue
            products = R.compose_atoms(M[i][k], M[k][j])
            allowed = products if allowed is None else allowed & products
            if not allowed:
                return []
        if allowed is None:
            return all_atoms
        return sorted(allowed, key=R.index.get)

    def extend(position: int):
        if position == len(order):
            entries = tuple(tuple(row) for row in M)
            if IsBasicMatrix(R, entries):
                found.append(BasicMatrix(entries))
                if len(found) > limit:
                    raise CapExceededError('basic matrices', len(found), limit)
            return
        i, j = order[position]
        for atom in candidates(i, j):
            M[i][j], M[j][i] = atom, conv[atom]
            extend(position + 1)
        M[i][j] = M[j][i] = None

    identities = sorted(R.identity, key=R.index.get)
    for diagonal in product(identities, repeat=n):
        for i, atom in enumerate(diagonal):
            M[i][i] = atom
        extend(0)

    found.sort(key=_matrix_order(R))
    return found


def EnumerateBasicMatrices(R: RAAtomStructure, n: int, caps: Optional[Dict[str, int]] = None) -> List[BasicMatrix]:
    """
    All n x n basic matrices over R, in canonical order

    Args:
        R: RA atom structure
        n: Dimension (at least 3)
        caps: Cap table (default: configured caps)

    Returns:
        Sorted list of BasicMatrix
    """
    if n < 3:
        raise PreconditionError("basic matrices need n >= 3")
    caps = caps or GetCaps()
    _check_space(R, n, caps)
    start = time.time()
    found = _enumerate(R, n, caps['max_matrices'])
    log_enumeration(f"Mat_{n}({R.name or 'R'})", len(found), time.time() - start)
    log_cap_usage('basic matrices', len(found), caps['max_matrices'])
    return found


class BasisReport:
    """Per-condition outcome of a basis or hyperbasis check"""

    def __init__(self, subject: str, conditions: Iterable[str], max_witnesses: Optional[int] = None):
        self.subject = subject
        self.max_witnesses = DEFAULT_CONFIG['report']['max_witnesses'] if max_witnesses is None else max_witnesses
        self.conditions: Dict[str, Dict[str, Any]] = {
            name: {'holds': True, 'count': 0, 'witnesses': []} for name in conditions
        }
        self.duration = 0.0

    def fail(self, condition: str, message: str, **witness):
        entry = self.conditions[condition]
        entry['holds'] = False
        entry['count'] += 1
        if len(entry['witnesses']) < self.max_witnesses:
            entry['witnesses'].append({'message': message, **{k: _plain(v) for k, v in witness.items()}})

    @property
    def holds(self) -> bool:
        return all(entry['holds'] for entry in self.conditions.values())

    @property
    def failed_conditions(self) -> List[str]:
        return [name for name, entry in self.conditions.items() if not entry['holds']]

    def to_dict(self) -> Dict[str, Any]:
        return {'subject': self.subject, 'holds': self.holds, 'conditions': self.conditions,
                'duration': round(self.duration, 4)}


def _plain(value):
    if isinstance(value, BasicMatrix):
        return value.to_list()
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    return value


def CheckCylindricBasis(R: RAAtomStructure, n: int, B: Iterable[BasicMatrix],
                        max_witnesses: Optional[int] = None) -> BasisReport:
    """
    Check the three cylindric-basis conditions on a set of basic matrices

    coverage: every atom occurs as some M(0,1).
    witness: for M, x, y, z (z not in {x, y}) and every factorisation a;b of
        M(x,y) there is N with N agreeing with M off z, N(x,z)=a, N(z,y)=b.
    amalgamation: if M and N agree off {x, y}, some L agrees with M off x and
        with N off y.
    """
    matrices = sorted(set(B), key=_matrix_order(R))
    report = BasisReport(f"Mat_{n}({R.name or 'R'})", ('coverage', 'witness', 'amalgamation'), max_witnesses)
    start = time.time()

    seen = {M[0, 1] for M in matrices}
    for atom in R.atoms:
        if atom not in seen:
            report.fail('coverage', f"no matrix has {atom} at (0,1)", atom=atom)

    for z in range(n):
        groups: Dict[Tuple, List[BasicMatrix]] = {}
        for M in matrices:
            groups.setdefault(M.key_avoiding(z), []).append(M)
        for members in groups.values():
            M = members[0]
            for x in range(n):
                for y in range(n):
                    if z in (x, y):
                        continue
                    present = {(N[x, z], N[z, y]) for N in members}
                    needed = R.factorizations(M[x, y])
                    if len(present) == len(needed):
                        continue
                    for a, b in needed:
                        if (a, b) not in present:
                            report.fail('witness', f"no witness for {M[x, y]} <= {a};{b} at z={z}",
                                        matrix=M, x=x, y=y, z=z, a=a, b=b)

    for x in range(n):
        for y in range(x + 1, n):
            groups = {}
            for M in matrices:
                groups.setdefault(M.key_avoiding(x, y), []).append(M)
            for members in groups.values():
                by_x = {M.key_avoiding(x): M for M in members}
                by_y = {M.key_avoiding(y): M for M in members}
                pairs = {(M.key_avoiding(x), M.key_avoiding(y)) for M in members}
                if len(pairs) == len(by_x) * len(by_y):
                    continue
                for kx, M in by_x.items():
                    for ky, N in by_y.items():
                        if (kx, ky) not in pairs:
                            report.fail('amalgamation', f"no amalgam of two matrices over x={x}, y={y}",
                                        first=M, second=N, x=x, y=y)

    report.duration = time.time() - start
    logger.info(f"Basis check {report.subject}: {'holds' if report.holds else report.failed_conditions}")
    return report


def _closed_under_transpositions(members: set, matrices: List[BasicMatrix], n: int) -> bool:
    return all(M.transpose(i, j) in members for M in matrices for i in range(n) for j in range(i + 1, n))


def BuildCAFromMatrices(R: RAAtomStructure, n: int, B: Iterable[BasicMatrix],
                        check: bool = True) -> CAAtomStructure:
    """
    Cylindric atom structure on a cylindric basis

    Atoms are the matrices (ids m0, m1, ... in canonical order); M ti N iff they
    agree off i; eij holds identity entries at (i, j); pij swaps i and j when B
    is closed under transpositions.
    """
    matrices = sorted(set(B), key=_matrix_order(R))
    if check:
        report = CheckCylindricBasis(R, n, matrices)
        if not report.holds:
            raise PreconditionError(f"not a cylindric basis: {', '.join(report.failed_conditions)} fail")
    ids = {M: f"m{i}" for i, M in enumerate(matrices)}
    atoms = [ids[M] for M in matrices]
    by_id = {ids[M]: M for M in matrices}

    keys = [{ids[M]: M.key_avoiding(i) for M in matrices} for i in range(n)]
    eij = {(i, j): [ids[M] for M in matrices if M[i, j] in R.identity] for i in range(n) for j in range(n)}

    pij = None
    members = set(matrices)
    if _closed_under_transpositions(members, matrices, n):
        pij = {}
        for i in range(n):
            for j in range(n):
                if i != j:
                    pij[(i, j)] = {ids[M]: ids[M.transpose(i, j)] for M in matrices}

    return CAAtomStructure.from_partitions(
        n, atoms, keys, eij, pij,
        name=f"Ca(Mat_{n}({R.name or 'R'}))",
        provenance={'construction': 'matrices', 'base': R.fingerprint(), 'n': n},
        labels={atom: by_id[atom].to_list() for atom in atoms}
    )
