"""
Blow Up and Blur
Split the non-identity atoms of a finite RA atom structure into copies and
blurs, with pluggable triple-consistency rules
"""

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, product
from math import comb
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from algebra.atoms import RAAtomStructure
from algebra.embedding import EmbedByCopies, EmbeddingReport
from algebra.errors import CapExceededError, PreconditionError
from algebra.fincof import CopiesElement, FinCofSet
from utils.config import GetCaps
from utils.logging_config import get_logger

logger = get_logger('algebra')

COPY_AGNOSTIC = "copy-agnostic"
RED_INDEX_MATCH = "red-index-match"


@dataclass(frozen=True)
class BlurSchema:
    """K copies of every non-identity atom, each optionally tagged with a blur label"""

    copy_count: int
    blurs: Tuple[str, ...] = ()
    rule: str = COPY_AGNOSTIC
    base_atoms: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if self.copy_count < 1:
            raise PreconditionError("copy count K must be at least 1")
        if len(set(self.blurs)) != len(self.blurs):
            raise PreconditionError("blur labels must be distinct")
        if self.rule not in BLOWUP_RULES:
            raise PreconditionError(f"unknown blow-up rule '{self.rule}' (use {', '.join(BLOWUP_RULES)})")


@dataclass(frozen=True)
class FLMuSchema:
    """Blur family {(X, t) : X a subset of I of size l, t < mu}"""

    I: Tuple[str, ...]
    l: int
    mu: int = 1

    def __post_init__(self):
        if self.l < 2:
            raise PreconditionError("l must be at least 2")
        if self.mu < 1:
            raise PreconditionError("mu must be at least 1")
        if len(self.I) < 3 * self.l:
            raise PreconditionError(f"need |I| >= 3l (|I|={len(self.I)}, l={self.l})")

    @property
    def blur_count(self) -> int:
        return comb(len(self.I), self.l) * self.mu

    def blur_members(self) -> List[Tuple[Tuple[str, ...], int]]:
        return [(X, t) for X in combinations(self.I, self.l) for t in range(self.mu)]

    def blur_labels(self) -> Tuple[str, ...]:
        return tuple(f"{'+'.join(X)}#{t}" for X, t in self.blur_members())

    def to_blur_schema(self, copy_count: int, rule: str = COPY_AGNOSTIC) -> BlurSchema:
        return BlurSchema(copy_count, self.blur_labels(), rule)


@dataclass(frozen=True)
class BlownAtom:
    base: str
    copy: int = 0
    blur: Optional[str] = None

    @property
    def id(self) -> str:
        return f"{self.base}^{self.copy}" + (f"/{self.blur}" if self.blur is not None else "")


def RedIndicesMatch(first: Sequence, second: Sequence, third: Sequence) -> bool:
    """Reds on x->y, y->z, x->z with indices (i,j), (j',k'), (i*,k*): need i=i*, j=j', k'=k*"""
    return first[0] == third[0] and first[1] == second[0] and second[1] == third[1]


def _copy_agnostic(base: RAAtomStructure, triple: Tuple, base_triple: Tuple[str, str, str]) -> bool:
    return base_triple in base.cycles


def _red_index_match(base: RAAtomStructure, triple: Tuple, base_triple: Tuple[str, str, str]) -> bool:
    reds = base.provenance.get('red_indices')
    if reds is None:
        raise PreconditionError("red-index-match needs a base whose provenance lists red_indices")
    if all(b in reds for b in base_triple):
        return RedIndicesMatch(*(reds[b] for b in base_triple))
    return base_triple in base.cycles


# Rule registry: (base, blown triple, base triple) -> consistent for diversity triples
BLOWUP_RULES: Dict[str, Callable] = {
    COPY_AGNOSTIC: _copy_agnostic,
    RED_INDEX_MATCH: _red_index_match
}


def GetRule(name: str) -> Callable:
    if name not in BLOWUP_RULES:
        raise PreconditionError(f"unknown blow-up rule '{name}' (use {', '.join(BLOWUP_RULES)})")
    return BLOWUP_RULES[name]


def BlowUp(base: RAAtomStructure, schema: BlurSchema, caps: Optional[Dict[str, int]] = None) -> RAAtomStructure:
    """
    Blow up a finite RA atom structure

    Identity atoms stay single. Every other atom a becomes (a, l, beta) for
    l < K and beta in the blur set (a single unblurred copy when it is empty).
    Triples containing an identity atom need a consistent base triple and equal
    copy and blur on the non-identity entries; other triples follow the rule.

    Args:
        base: Finite RA atom structure
        schema: Copies, blurs and rule name

    Returns:
        Blown-up RAAtomStructure with the collapse map in its provenance
    """
    caps = caps or GetCaps()
    rule = GetRule(schema.rule)
    if schema.base_atoms is not None and tuple(schema.base_atoms) != tuple(base.atoms):
        raise PreconditionError("schema base atoms do not match the base structure")

    blurs: Sequence[Optional[str]] = schema.blurs or (None,)
    identity = [a for a in base.atoms if a in base.identity]
    split = [a for a in base.atoms if a not in base.identity]
    size = len(identity) + len(split) * schema.copy_count * len(blurs)
    if size > caps['max_atoms']:
        raise CapExceededError('blown-up atoms', size, caps['max_atoms'])

    blown = [BlownAtom(a, l, beta) for a in split for l in range(schema.copy_count) for beta in blurs]
    ids = [a for a in identity] + [b.id for b in blown]
    record = {b.id: b for b in blown}
    collapse = {a: a for a in identity}
    collapse.update({b.id: b.base for b in blown})

    converse = {a: base.converse[a] for a in identity}
    for b in blown:
        converse[b.id] = BlownAtom(base.converse[b.base], b.copy, b.blur).id

    by_base: Dict[str, List[str]] = {a: [a] for a in identity}
    for b in blown:
        by_base.setdefault(b.base, []).append(b.id)

    cycles = set()
    for x, y, z in base.cycles:
        involves_identity = x in base.identity or y in base.identity or z in base.identity
        for triple in product(by_base[x], by_base[y], by_base[z]):
            if involves_identity:
                tags = {(record[t].copy, record[t].blur) for t in triple if t in record}
                if len(tags) <= 1:
                    cycles.add(triple)
            elif rule(base, triple, (x, y, z)):
                cycles.add(triple)

    if schema.rule == RED_INDEX_MATCH:
        # red triples are decided by indices even when the base table omits them
        reds = base.provenance['red_indices']
        red_atoms = [a for a in split if a in reds]
        for x, y, z in product(red_atoms, repeat=3):
            if (x, y, z) not in base.cycles and RedIndicesMatch(reds[x], reds[y], reds[z]):
                cycles.update(product(by_base[x], by_base[y], by_base[z]))

    provenance: Dict[str, Any] = {
        'construction': 'blowup',
        'base': base.fingerprint(),
        'base_name': base.name,
        'rule': schema.rule,
        'copy_count': schema.copy_count,
        'blurs': list(schema.blurs),
        'collapse': collapse
    }
    if 'red_indices' in base.provenance:
        provenance['red_indices'] = {b.id: base.provenance['red_indices'][b.base]
                                     for b in blown if b.base in base.provenance['red_indices']}

    structure = RAAtomStructure(ids, identity, converse, cycles,
                                name=f"{base.name or 'R'}[K={schema.copy_count},J={len(schema.blurs)}]",
                                provenance=provenance)
    logger.debug(f"blew up {base.name}: {len(ids)} atoms, {len(cycles)} cycles ({schema.rule})")
    return structure


def CollapseCopyMap(blown: RAAtomStructure) -> Dict[str, set]:
    collapse = blown.provenance.get('collapse')
    if collapse is None:
        raise PreconditionError("structure carries no collapse map")
    copy_map: Dict[str, set] = {}
    for atom, origin in collapse.items():
        copy_map.setdefault(origin, set()).add(atom)
    return copy_map


def CheckCollapseMap(blown: RAAtomStructure, base: RAAtomStructure) -> EmbeddingReport:
    """Embed base into blown by sending every atom to the join of its copies"""
    if blown.provenance.get('construction') != 'blowup' or blown.provenance.get('base') != base.fingerprint():
        raise PreconditionError("provenance mismatch: structure was not blown up from this base")
    return EmbedByCopies(base, blown, CollapseCopyMap(blown))


def SplitPartition(blown: RAAtomStructure) -> Tuple[str, ...]:
    """Partition classes of the term algebra: one per split base atom"""
    copy_map = CollapseCopyMap(blown)
    identity = blown.identity
    return tuple(origin for origin, copies in copy_map.items() if not copies <= identity)


def CopiesOf(blown: RAAtomStructure, base_atom: str) -> FinCofSet:
    """The image of a split atom as a term-algebra element: cofinite in its own class"""
    return CopiesElement(SplitPartition(blown), base_atom)


def BlurSets(blown: RAAtomStructure) -> Dict[str, set]:
    """Blown atoms grouped by blur label"""
    collapse = blown.provenance.get('collapse', {})
    groups: Dict[str, set] = {}
    for atom in blown.atoms:
        if atom in blown.identity or atom not in collapse:
            continue
        _, _, blur = atom.partition('/')
        if blur:
            groups.setdefault(blur, set()).add(atom)
    return groups


class AdequacyReport:
    def __init__(self, strong: bool):
        self.strong = strong
        self.holds = True
        self.witness: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {'strong': self.strong, 'holds': self.holds, 'witness': self.witness}


def IsAdequateBlurSet(R: RAAtomStructure, blurs: Mapping[str, Iterable[str]], n: int,
                      strong: bool = False) -> AdequacyReport:
    """
    For all V_2..V_n, W_2..W_n in J there is a T in J (every T when strong)
    with a <= b;c for all i, a in V_i, b in W_i, c in T.
    """
    if n < 2:
        raise PreconditionError("adequacy needs n >= 2")
    labels = sorted(blurs)
    if not labels:
        raise PreconditionError("the blur set J is empty")
    members = {label: sorted(set(blurs[label])) for label in labels}
    for label in labels:
        for atom in members[label]:
            R.idx(atom)

    def good(v: str, w: str, t: str) -> bool:
        return all((b, c, a) in R.cycles for a in members[v] for b in members[w] for c in members[t])

    full = (1 << len(labels)) - 1
    masks: Dict[int, Tuple[str, str]] = {}
    for v in labels:
        for w in labels:
            mask = 0
            for bit, t in enumerate(labels):
                if good(v, w, t):
                    mask |= 1 << bit
            masks.setdefault(mask, (v, w))

    report = AdequacyReport(strong)
    if strong:
        for mask, (v, w) in masks.items():
            if mask != full:
                bad = next(labels[b] for b in range(len(labels)) if not mask >> b & 1)
                report.holds = False
                report.witness = {'V': v, 'W': w, 'T': bad}
                return report
        return report

    for chosen in combinations_with_replacement(sorted(masks), n - 1):
        common = full
        for mask in chosen:
            common &= mask
        if common == 0:
            report.holds = False
            report.witness = {'pairs': [list(masks[mask]) for mask in chosen]}
            return report
    return report
