"""
Finite-Cofinite Sets
Elements of the term algebra over a split atom structure: per partition class,
either a finite set of copy indices or the complement of one.
"""

from typing import Dict, Iterable, Mapping, Optional, Set, Tuple

from algebra.errors import PreconditionError, StructureError

FINITE = "FINITE"
COFINITE = "COFINITE"

MODES = (FINITE, COFINITE)


class FinCofSet:
    """Per-class finite or cofinite subset of a countable family of copies"""

    def __init__(self, classes: Iterable[str], per_class: Optional[Mapping[str, Tuple[str, Iterable[int]]]] = None):
        self.classes = tuple(classes)
        if len(set(self.classes)) != len(self.classes):
            raise StructureError("partition classes must be distinct")
        per_class = dict(per_class or {})
        for name in per_class:
            if name not in self.classes:
                raise StructureError(f"unknown partition class: {name}")
        self.per_class: Dict[str, Tuple[str, frozenset]] = {}
        for name in self.classes:
            mode, indices = per_class.get(name, (FINITE, ()))
            if mode not in MODES:
                raise StructureError(f"unknown mode {mode!r} for class {name}")
            indices = frozenset(int(i) for i in indices)
            if any(i < 0 for i in indices):
                raise StructureError(f"negative copy index in class {name}")
            self.per_class[name] = (mode, indices)

    @classmethod
    def empty(cls, classes: Iterable[str]) -> 'FinCofSet':
        return cls(classes)

    @classmethod
    def full(cls, classes: Iterable[str]) -> 'FinCofSet':
        classes = tuple(classes)
        return cls(classes, {name: (COFINITE, ()) for name in classes})

    def mode(self, name: str) -> str:
        return self._entry(name)[0]

    def indices(self, name: str) -> frozenset:
        """Included indices (FINITE) or excluded indices (COFINITE)"""
        return self._entry(name)[1]

    def _entry(self, name: str) -> Tuple[str, frozenset]:
        try:
            return self.per_class[name]
        except KeyError:
            raise StructureError(f"unknown partition class: {name}") from None

    def contains(self, name: str, index: int) -> bool:
        mode, indices = self._entry(name)
        return (index in indices) if mode == FINITE else (index not in indices)

    def is_finite(self) -> bool:
        return all(mode == FINITE for mode, _ in self.per_class.values())

    def materialize(self, prefix: int) -> Set[Tuple[str, int]]:
        """Explicit members with copy index below prefix"""
        return {(name, i) for name in self.classes for i in range(prefix) if self.contains(name, i)}

    def max_index(self) -> int:
        """Largest index mentioned anywhere, -1 when none"""
        return max((max(indices) for _, indices in self.per_class.values() if indices), default=-1)

    def __eq__(self, other) -> bool:
        return isinstance(other, FinCofSet) and self.classes == other.classes and self.per_class == other.per_class

    def __hash__(self):
        return hash((self.classes, tuple(sorted(self.per_class.items()))))

    def to_dict(self) -> Dict:
        return {name: {'mode': mode, 'indices': sorted(indices)} for name, (mode, indices) in self.per_class.items()}

    def __repr__(self):
        parts = []
        for name in self.classes:
            mode, indices = self.per_class[name]
            shown = ','.join(str(i) for i in sorted(indices))
            parts.append(f"{name}: {'{' + shown + '}' if mode == FINITE else 'all but {' + shown + '}'}")
        return f"FinCofSet({'; '.join(parts)})"


def _union(left, right):
    (m1, s1), (m2, s2) = left, right
    if m1 == FINITE and m2 == FINITE:
        return FINITE, s1 | s2
    if m1 == COFINITE and m2 == COFINITE:
        return COFINITE, s1 & s2
    finite, excluded = (s1, s2) if m1 == FINITE else (s2, s1)
    return COFINITE, excluded - finite


def _intersect(left, right):
    (m1, s1), (m2, s2) = left, right
    if m1 == FINITE and m2 == FINITE:
        return FINITE, s1 & s2
    if m1 == COFINITE and m2 == COFINITE:
        return COFINITE, s1 | s2
    finite, excluded = (s1, s2) if m1 == FINITE else (s2, s1)
    return FINITE, finite - excluded


def _complement(entry, _unused=None):
    mode, indices = entry
    return (COFINITE if mode == FINITE else FINITE), indices


FINCOF_OPS = {
    'union': _union,
    'intersect': _intersect,
    'complement': _complement
}


def FinCofOp(a: FinCofSet, b: Optional[FinCofSet], op: str) -> FinCofSet:
    """
    Class-wise finite/cofinite arithmetic

    Args:
        a: First operand
        b: Second operand (ignored by 'complement', which complements a)
        op: One of 'union', 'intersect', 'complement'

    Returns:
        New FinCofSet over the same partition classes
    """
    if op not in FINCOF_OPS:
        raise PreconditionError(f"unknown fincof operation: {op}")
    if b is not None and a.classes != b.classes:
        raise PreconditionError(f"partition schemas differ: {a.classes} vs {b.classes}")
    if b is None and op != 'complement':
        raise PreconditionError(f"'{op}' needs two operands")

    combine = FINCOF_OPS[op]
    per_class = {}
    for name in a.classes:
        right = b.per_class[name] if b is not None else None
        per_class[name] = combine(a.per_class[name], right)
    return FinCofSet(a.classes, per_class)


def CopiesElement(classes: Iterable[str], name: str) -> FinCofSet:
    """All copies of one split atom: cofinite in its class, empty elsewhere"""
    classes = tuple(classes)
    if name not in classes:
        raise StructureError(f"unknown partition class: {name}")
    return FinCofSet(classes, {name: (COFINITE, ())})
