"""
Atom Structures
Relation-algebra and cylindric-algebra atom structures and the complex-algebra
operations over them. A cycle (a, b, c) always reads "c <= a;b".
"""

from __future__ import annotations

import hashlib
import json
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from algebra.errors import OwnershipError, StructureError

IDENTITY = "1'"

Cycle = Tuple[str, str, str]


class CmElement:
    """Element of a complex algebra: a bit set over the owner's atoms"""

    __slots__ = ('owner', 'bits')

    def __init__(self, owner, bits: int = 0):
        self.owner = owner
        self.bits = bits

    def _same_owner(self, other: 'CmElement'):
        if not isinstance(other, CmElement) or other.owner is not self.owner:
            raise OwnershipError("elements belong to different atom structures")

    @property
    def size(self) -> int:
        return len(self.owner.atoms)

    def __or__(self, other):
        self._same_owner(other)
        return CmElement(self.owner, self.bits | other.bits)

    def __and__(self, other):
        self._same_owner(other)
        return CmElement(self.owner, self.bits & other.bits)

    def __sub__(self, other):
        self._same_owner(other)
        return CmElement(self.owner, self.bits & ~other.bits)

    def complement(self) -> 'CmElement':
        return CmElement(self.owner, ((1 << self.size) - 1) & ~self.bits)

    def __le__(self, other) -> bool:
        self._same_owner(other)
        return self.bits & ~other.bits == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, CmElement) and other.owner is self.owner and other.bits == self.bits

    def __hash__(self):
        return hash((id(self.owner), self.bits))

    def __contains__(self, atom) -> bool:
        return bool(self.bits >> self.owner.idx(atom) & 1)

    def indices(self) -> List[int]:
        bits, out, i = self.bits, [], 0
        while bits:
            if bits & 1:
                out.append(i)
            bits >>= 1
            i += 1
        return out

    def __iter__(self):
        atoms = self.owner.atoms
        return iter([atoms[i] for i in self.indices()])

    def __len__(self) -> int:
        return bin(self.bits).count('1')

    def is_empty(self) -> bool:
        return self.bits == 0

    def __repr__(self):
        return f"CmElement({{{', '.join(self)}}})"


def BitsOf(indices: Iterable[int]) -> int:
    bits = 0
    for i in indices:
        bits |= 1 << int(i)
    return bits


class _AtomSet:
    """Shared atom bookkeeping for both structure kinds"""

    kind = ""

    def _init_atoms(self, atoms: Iterable[str]):
        self.atoms = tuple(atoms)
        for atom in self.atoms:
            if not isinstance(atom, str):
                raise StructureError(f"atom ids must be strings, got {atom!r}")
        self.index = {atom: i for i, atom in enumerate(self.atoms)}
        if len(self.index) != len(self.atoms):
            raise StructureError("duplicate atom ids")

    def idx(self, atom: str) -> int:
        try:
            return self.index[atom]
        except KeyError:
            raise StructureError(f"unknown atom id: {atom!r}") from None

    def element(self, atoms: Iterable[str] = ()) -> CmElement:
        return CmElement(self, BitsOf(self.idx(a) for a in atoms))

    def top(self) -> CmElement:
        return CmElement(self, (1 << len(self.atoms)) - 1)

    def bottom(self) -> CmElement:
        return CmElement(self, 0)

    def fingerprint(self) -> str:
        from algebra.serialize import StructureToDict
        text = json.dumps(StructureToDict(self, include_meta=False), sort_keys=True)
        return hashlib.sha256(text.encode('utf-8')).hexdigest()

    def __len__(self):
        return len(self.atoms)


class RAAtomStructure(_AtomSet):
    """Finite relation-algebra atom structure"""

    kind = "RA"

    def __init__(self, atoms: Iterable[str], identity: Iterable[str], converse: Mapping[str, str],
                 cycles: Iterable[Sequence[str]], name: str = "", provenance: Optional[Dict[str, Any]] = None):
        self._init_atoms(atoms)
        self.identity = frozenset(identity)
        self.converse = dict(converse)
        self.cycles = frozenset(tuple(c) for c in cycles)
        self.name = name
        self.provenance = dict(provenance or {})

        self._check_structure()

        self._tensor = None
        self._products = None
        self._factors = None

    def _check_structure(self):
        for atom in self.identity:
            self.idx(atom)
        for atom in self.atoms:
            if atom not in self.converse:
                raise StructureError(f"converse is not total: missing {atom!r}")
        for atom, image in self.converse.items():
            self.idx(atom)
            self.idx(image)
        for cycle in self.cycles:
            if len(cycle) != 3:
                raise StructureError(f"cycle {cycle!r} is not a triple")
            for atom in cycle:
                self.idx(atom)

    def tensor(self) -> np.ndarray:
        """Boolean array T[a, b, c] = (a, b, c) is a cycle"""
        if self._tensor is None:
            k = len(self.atoms)
            tensor = np.zeros((k, k, k), dtype=bool)
            if self.cycles:
                ids = np.array([[self.index[x] for x in cycle] for cycle in self.cycles])
                tensor[ids[:, 0], ids[:, 1], ids[:, 2]] = True
            self._tensor = tensor
        return self._tensor

    def converse_index(self) -> np.ndarray:
        return np.array([self.index[self.converse[a]] for a in self.atoms], dtype=int)

    def identity_indices(self) -> List[int]:
        return sorted(self.index[a] for a in self.identity)

    def compose_atoms(self, a: str, b: str) -> frozenset:
        """Atoms c with c <= a;b"""
        if self._products is None:
            products = {}
            for x, y, z in self.cycles:
                products.setdefault((x, y), set()).add(z)
            self._products = {key: frozenset(value) for key, value in products.items()}
        return self._products.get((a, b), frozenset())

    def factorizations(self, c: str) -> List[Tuple[str, str]]:
        """Pairs (a, b) with c <= a;b, in atom order"""
        if self._factors is None:
            factors: Dict[str, List[Tuple[str, str]]] = {atom: [] for atom in self.atoms}
            for x, y, z in self.cycles:
                factors[z].append((x, y))
            for atom in factors:
                factors[atom].sort(key=lambda pair: (self.index[pair[0]], self.index[pair[1]]))
            self._factors = factors
        return self._factors[c]

    def identity_element(self) -> CmElement:
        return self.element(self.identity)

    def __repr__(self):
        return f"RAAtomStructure({self.name or 'unnamed'}, {len(self.atoms)} atoms, {len(self.cycles)} cycles)"


class CAAtomStructure(_AtomSet):
    """Finite n-dimensional cylindric atom structure, optionally with substitutions"""

    kind = "CA"

    def __init__(self, dimension: int, atoms: Iterable[str], ti: Sequence[Mapping[str, Iterable[str]]],
                 eij: Mapping[Tuple[int, int], Iterable[str]],
                 pij: Optional[Mapping[Tuple[int, int], Mapping[str, str]]] = None,
                 name: str = "", provenance: Optional[Dict[str, Any]] = None,
                 labels: Optional[Dict[str, Any]] = None):
        if dimension < 1:
            raise StructureError("dimension must be positive")
        self.dimension = int(dimension)
        self._init_atoms(atoms)
        # frozenset() of a frozenset is the same object, so shared classes stay shared
        self.ti = [{a: frozenset(related) for a, related in relation.items()} for relation in ti]
        self.eij = {(int(i), int(j)): frozenset(members) for (i, j), members in eij.items()}
        self.pij = None
        if pij is not None:
            self.pij = {(int(i), int(j)): dict(mapping) for (i, j), mapping in pij.items()}
        self.name = name
        self.provenance = dict(provenance or {})
        self.labels = dict(labels or {})

        self._check_structure()

        self._pred = {}

    @classmethod
    def from_partitions(cls, dimension: int, atoms: Sequence[str],
                        keys: Sequence[Union[Callable[[str], Any], Mapping[str, Any]]],
                        eij, pij=None, **kwargs) -> 'CAAtomStructure':
        """Build ti as equivalences given one class key per atom and index"""
        ti = []
        for key in keys:
            lookup = key if callable(key) else key.__getitem__
            groups: Dict[Any, List[str]] = {}
            for atom in atoms:
                groups.setdefault(lookup(atom), []).append(atom)
            classes = {group_key: frozenset(members) for group_key, members in groups.items()}
            ti.append({atom: classes[lookup(atom)] for atom in atoms})
        return cls(dimension, atoms, ti, eij, pij, **kwargs)

    def _check_structure(self):
        n = self.dimension
        if len(self.ti) != n:
            raise StructureError(f"expected {n} ti relations, got {len(self.ti)}")
        for i, relation in enumerate(self.ti):
            for atom in self.atoms:
                if atom not in relation:
                    raise StructureError(f"t{i} does not cover atom {atom!r}")
            for atom, related in relation.items():
                self.idx(atom)
                for other in related:
                    if other not in self.index:
                        raise StructureError(f"t{i} mentions unknown atom {other!r}")
        for i in range(n):
            for j in range(n):
                if (i, j) not in self.eij:
                    raise StructureError(f"missing diagonal e{i}{j}")
        for (i, j), members in self.eij.items():
            if not (0 <= i < n and 0 <= j < n):
                raise StructureError(f"diagonal index ({i},{j}) out of range")
            for atom in members:
                self.idx(atom)
        if self.pij is not None:
            for (i, j), mapping in self.pij.items():
                if not (0 <= i < n and 0 <= j < n):
                    raise StructureError(f"substitution index ({i},{j}) out of range")
                for atom, image in mapping.items():
                    self.idx(atom)
                    self.idx(image)

    def check_index(self, i: int):
        if not 0 <= i < self.dimension:
            raise StructureError(f"index {i} out of range for dimension {self.dimension}")

    def pred_masks(self, i: int) -> List[int]:
        """pred_masks(i)[b] = bits of atoms a with b in ti[a]"""
        if i not in self._pred:
            masks = [0] * len(self.atoms)
            for atom, related in self.ti[i].items():
                bit = 1 << self.index[atom]
                for other in related:
                    masks[self.index[other]] |= bit
            self._pred[i] = masks
        return self._pred[i]

    def class_bits(self, i: int, atom: str) -> int:
        return BitsOf(self.index[b] for b in self.ti[i][atom])

    def diagonal(self, i: int, j: int) -> CmElement:
        self.check_index(i)
        self.check_index(j)
        return self.element(self.eij[(i, j)])

    def __repr__(self):
        return f"CAAtomStructure({self.name or 'unnamed'}, dim {self.dimension}, {len(self.atoms)} atoms)"


def _owned(structure, *elements: CmElement):
    for element in elements:
        if not isinstance(element, CmElement) or element.owner is not structure:
            raise OwnershipError("element does not belong to this atom structure")


def ComposeRA(R: RAAtomStructure, X: CmElement, Y: CmElement) -> CmElement:
    """Complex-algebra composition: atoms c with (a, b, c) a cycle for some a in X, b in Y"""
    _owned(R, X, Y)
    if X.is_empty() or Y.is_empty():
        return R.bottom()
    tensor = R.tensor()
    block = tensor[np.ix_(X.indices(), Y.indices())]
    hits = np.nonzero(block.any(axis=(0, 1)))[0]
    return CmElement(R, BitsOf(hits))


def ConverseRA(R: RAAtomStructure, X: CmElement) -> CmElement:
    _owned(R, X)
    return R.element(R.converse[R.atoms[i]] for i in X.indices())


def Cylindrify(C: CAAtomStructure, i: int, X: CmElement) -> CmElement:
    """ti-saturation: atoms a with (a, b) in ti for some b in X"""
    C.check_index(i)
    _owned(C, X)
    masks = C.pred_masks(i)
    bits = 0
    for b in X.indices():
        bits |= masks[b]
    return CmElement(C, bits)


def Substitute(C: CAAtomStructure, i: int, j: int, X: CmElement) -> CmElement:
    """Image of X under the substitution map pij"""
    C.check_index(i)
    C.check_index(j)
    _owned(C, X)
    if C.pij is None or (i, j) not in C.pij:
        raise StructureError(f"structure has no substitution p{i}{j}")
    mapping = C.pij[(i, j)]
    return C.element(mapping[C.atoms[b]] for b in X.indices() if C.atoms[b] in mapping)
