"""
Embedding Check
Does sending each atom to the join of its copies extend to a homomorphism of
complex algebras?
"""

import time
from typing import Any, Dict, Iterable, Mapping, Optional

from algebra.atoms import BitsOf, CmElement, ComposeRA, ConverseRA, Cylindrify, Substitute
from algebra.errors import PreconditionError, StructureError
from utils.logging_config import get_logger

logger = get_logger('algebra')


class EmbeddingReport:
    """Outcome of an embedding check; first counterexample only"""

    def __init__(self, small_name: str, big_name: str):
        self.small = small_name
        self.big = big_name
        self.checks_run = []
        self.items_checked = 0
        self.counterexample: Optional[Dict[str, Any]] = None
        self.duration = 0.0

    @property
    def holds(self) -> bool:
        return self.counterexample is None

    def fail(self, check: str, detail: str, **witness):
        self.counterexample = {'check': check, 'detail': detail, 'witness': {k: str(v) for k, v in witness.items()}}

    def to_dict(self) -> Dict[str, Any]:
        return {
            'small': self.small,
            'big': self.big,
            'holds': self.holds,
            'checks_run': list(self.checks_run),
            'items_checked': self.items_checked,
            'counterexample': self.counterexample,
            'duration': round(self.duration, 4)
        }


class _CopyMap:
    def __init__(self, small, big, copy_map: Mapping[str, Iterable[str]]):
        self.small = small
        self.big = big
        self.images: Dict[str, int] = {}
        claimed = 0
        for atom in small.atoms:
            if atom not in copy_map:
                raise PreconditionError(f"copy map has no image for atom {atom!r}")
        for atom, targets in copy_map.items():
            small.idx(atom)
            bits = BitsOf(big.idx(t) for t in targets)
            if bits == 0:
                raise PreconditionError(f"copy map image of {atom!r} is empty")
            if bits & claimed:
                raise PreconditionError(f"copy map images overlap at {atom!r}")
            claimed |= bits
            self.images[atom] = bits
        self.claimed = claimed

    def image(self, element: CmElement) -> CmElement:
        bits = 0
        for i in element.indices():
            bits |= self.images[self.small.atoms[i]]
        return CmElement(self.big, bits)

    def atom_image(self, atom: str) -> CmElement:
        return CmElement(self.big, self.images[atom])


def _check_ra(h: _CopyMap, report: EmbeddingReport) -> None:
    small, big = h.small, h.big

    report.checks_run.append('identity')
    if h.image(small.identity_element()) != big.identity_element():
        report.fail('identity', "image of the identity is not the identity")
        return

    report.checks_run.append('converse')
    for atom in small.atoms:
        report.items_checked += 1
        lhs = h.image(ConverseRA(small, small.element([atom])))
        rhs = ConverseRA(big, h.atom_image(atom))
        if lhs != rhs:
            report.fail('converse', f"converse not preserved at {atom}", atom=atom)
            return

    report.checks_run.append('composition')
    for a in small.atoms:
        for b in small.atoms:
            report.items_checked += 1
            lhs = h.image(ComposeRA(small, small.element([a]), small.element([b])))
            rhs = ComposeRA(big, h.atom_image(a), h.atom_image(b))
            if lhs != rhs:
                extra = list(rhs - lhs)[:3]
                missing = list(lhs - rhs)[:3]
                report.fail('composition', f"h({a};{b}) != h({a});h({b})",
                            a=a, b=b, only_in_big=extra, only_in_image=missing)
                return


def _check_ca(h: _CopyMap, report: EmbeddingReport) -> None:
    small, big = h.small, h.big
    if small.dimension != big.dimension:
        raise PreconditionError(f"dimensions differ: {small.dimension} vs {big.dimension}")
    n = small.dimension

    report.checks_run.append('diagonal')
    for i in range(n):
        for j in range(n):
            report.items_checked += 1
            if h.image(small.diagonal(i, j)) != big.diagonal(i, j):
                report.fail('diagonal', f"image of e{i}{j} is not e{i}{j}", i=i, j=j)
                return

    report.checks_run.append('cylindrification')
    for atom in small.atoms:
        single = small.element([atom])
        for i in range(n):
            report.items_checked += 1
            lhs = h.image(Cylindrify(small, i, single))
            rhs = Cylindrify(big, i, h.atom_image(atom))
            if lhs != rhs:
                report.fail('cylindrification', f"c{i} not preserved at {atom}", atom=atom, i=i,
                            only_in_big=list(rhs - lhs)[:3], only_in_image=list(lhs - rhs)[:3])
                return

    if small.pij is not None and big.pij is not None:
        report.checks_run.append('substitution')
        for (i, j) in sorted(small.pij):
            if (i, j) not in big.pij:
                continue
            for atom in small.atoms:
                report.items_checked += 1
                lhs = h.image(Substitute(small, i, j, small.element([atom])))
                rhs = Substitute(big, i, j, h.atom_image(atom))
                if lhs != rhs:
                    report.fail('substitution', f"p{i}{j} not preserved at {atom}", atom=atom, i=i, j=j)
                    return


def EmbedByCopies(small, big, copy_map: Mapping[str, Iterable[str]]) -> EmbeddingReport:
    """
    Check that a -> join(copy_map[a]) is an embedding of complex algebras

    Args:
        small: Source atom structure
        big: Target atom structure of the same kind
        copy_map: Atom of small -> nonempty set of atoms of big, pairwise disjoint

    Returns:
        EmbeddingReport with the first counterexample, if any
    """
    if small.kind != big.kind:
        raise PreconditionError(f"cannot embed {small.kind} into {big.kind}")
    if small.kind not in ("RA", "CA"):
        raise StructureError(f"unknown structure kind: {small.kind}")

    h = _CopyMap(small, big, copy_map)
    report = EmbeddingReport(small.name or small.kind, big.name or big.kind)
    start = time.time()

    report.checks_run.append('covering')
    if h.claimed != big.top().bits:
        uncovered = list(CmElement(big, big.top().bits & ~h.claimed))[:3]
        report.fail('covering', "copy images do not cover the target atoms", uncovered=uncovered)
    elif small.kind == "RA":
        _check_ra(h, report)
    else:
        _check_ca(h, report)

    report.duration = time.time() - start
    logger.info(f"Embedding {report.small} -> {report.big}: "
                f"{'holds' if report.holds else 'fails at ' + report.counterexample['check']} "
                f"({report.items_checked} item(s), {report.duration:.2f}s)")
    return report


def IdentityCopyMap(structure) -> Dict[str, set]:
    return {atom: {atom} for atom in structure.atoms}
