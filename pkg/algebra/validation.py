"""
Structure Validator
Exhaustive law checks for relation-algebra and cylindric-algebra atom structures
"""

import time
from typing import Any, Callable, Dict, List, Optional, Tuple

import networkx as nx
import numpy as np

from algebra.atoms import CAAtomStructure, Cylindrify, RAAtomStructure
from algebra.errors import StructureError
from utils.config import DEFAULT_CONFIG
from utils.logging_config import log_validation


class ValidationReport:
    """Violations grouped by law, with capped witness lists and full counts"""

    def __init__(self, subject: str, kind: str, max_witnesses: Optional[int] = None):
        self.subject = subject
        self.kind = kind
        self.max_witnesses = DEFAULT_CONFIG['report']['max_witnesses'] if max_witnesses is None else max_witnesses
        self.laws_checked: List[str] = []
        self.counts: Dict[str, int] = {}
        self.witnesses: Dict[str, List[Dict[str, Any]]] = {}
        self.duration = 0.0

    def add(self, law: str, message: str, witness: Tuple = ()):
        self.counts[law] = self.counts.get(law, 0) + 1
        entries = self.witnesses.setdefault(law, [])
        if len(entries) < self.max_witnesses:
            entries.append({'message': message, 'witness': [str(w) for w in witness]})

    def add_many(self, law: str, total: int, examples: List[Tuple[str, Tuple]]):
        """Record a block of violations found by a vectorised check"""
        if total == 0:
            return
        self.counts[law] = self.counts.get(law, 0) + total
        entries = self.witnesses.setdefault(law, [])
        for message, witness in examples:
            if len(entries) >= self.max_witnesses:
                break
            entries.append({'message': message, 'witness': [str(w) for w in witness]})

    @property
    def violations(self) -> List[str]:
        """Names of violated laws, in check order"""
        return [law for law in self.laws_checked if self.counts.get(law)]

    @property
    def valid(self) -> bool:
        return not any(self.counts.values())

    def violation_count(self) -> int:
        return sum(self.counts.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            'subject': self.subject,
            'kind': self.kind,
            'valid': self.valid,
            'laws_checked': list(self.laws_checked),
            'violations': {
                law: {'count': self.counts[law], 'witnesses': self.witnesses.get(law, [])}
                for law in self.violations
            },
            'duration': round(self.duration, 4)
        }


class LawCheck:
    """Individual law of an atom-structure signature"""

    def __init__(self, name: str, description: str, checker: Callable):
        """
        Initialize a law check

        Args:
            name: Law name used as the report key
            description: Human readable statement of the law
            checker: Function (structure, report) that records violations
        """
        self.name = name
        self.description = description
        self.checker = checker

    def run(self, structure, report: ValidationReport):
        report.laws_checked.append(self.name)
        try:
            self.checker(structure, report)
        except StructureError:
            raise
        except Exception as e:
            report.add(self.name, f"check error: {e}")


class StructureValidator:
    """Ordered collection of law checks"""

    def __init__(self, name: str, kind: str):
        self.name = name
        self.kind = kind
        self.checks: List[LawCheck] = []

    def add_check(self, check: LawCheck):
        self.checks.append(check)
        return self

    def add_law(self, name: str, description: str, checker: Callable):
        return self.add_check(LawCheck(name, description, checker))

    def validate(self, structure, max_witnesses: Optional[int] = None) -> ValidationReport:
        if structure.kind != self.kind:
            raise StructureError(f"{self.name} expects a {self.kind} structure, got {structure.kind}")
        report = ValidationReport(structure.name or structure.kind, structure.kind, max_witnesses)
        start = time.time()
        for check in self.checks:
            check.run(structure, report)
        report.duration = time.time() - start
        log_validation(report.subject, report.violation_count(), report.duration)
        return report

    def get_laws(self) -> List[str]:
        return [check.description for check in self.checks]


# Relation-algebra laws

def _check_involution(R: RAAtomStructure, report: ValidationReport):
    for atom in R.atoms:
        back = R.converse[R.converse[atom]]
        if back != atom:
            report.add('involution', f"converse(converse({atom})) = {back}", (atom,))


def _argwhere_examples(mask: np.ndarray, atoms, limit: int, fmt: Callable) -> Tuple[int, List]:
    total = int(mask.sum())
    examples = []
    if total:
        for hit in np.argwhere(mask)[:limit]:
            triple = tuple(atoms[int(i)] for i in hit)
            examples.append((fmt(triple), triple))
    return total, examples


def _check_peircean(R: RAAtomStructure, report: ValidationReport):
    T = R.tensor()
    C = R.converse_index()
    # first[a, b, c] = T[conv a, c, b]; second[a, b, c] = T[c, conv b, a]
    first = T[C].transpose(0, 2, 1)
    second = T[:, C, :].transpose(2, 1, 0)
    total, examples = _argwhere_examples(
        T & ~first, R.atoms, report.max_witnesses,
        lambda t: f"({t[0]},{t[1]},{t[2]}) without ({R.converse[t[0]]},{t[2]},{t[1]})")
    report.add_many('peircean', total, examples)
    total, examples = _argwhere_examples(
        T & ~second, R.atoms, report.max_witnesses,
        lambda t: f"({t[0]},{t[1]},{t[2]}) without ({t[2]},{R.converse[t[1]]},{t[0]})")
    report.add_many('peircean', total, examples)


def _check_identity(R: RAAtomStructure, report: ValidationReport):
    T = R.tensor()
    k = len(R.atoms)
    ids = R.identity_indices()
    eye = np.eye(k, dtype=bool)
    if ids:
        left = np.any(T[ids, :, :], axis=0)
        right = np.any(T[:, ids, :], axis=1)
    else:
        left = right = np.zeros((k, k), dtype=bool)
    for side, table in (('left', left), ('right', right)):
        bad = np.argwhere(table != eye)
        examples = []
        for a, c in bad[:report.max_witnesses]:
            a, c = R.atoms[int(a)], R.atoms[int(c)]
            if side == 'left':
                message = f"1';{a} {'contains' if a != c else 'misses'} {c}"
            else:
                message = f"{a};1' {'contains' if a != c else 'misses'} {c}"
            examples.append((message, (a, c)))
        report.add_many('identity', len(bad), examples)


def _check_associativity(R: RAAtomStructure, report: ValidationReport):
    """(a;b);c = a;(b;c) on all atom triples, one numpy slab per a"""
    T = R.tensor().astype(np.float32)
    k = len(R.atoms)
    flat_right = T.reshape(k, k * k)
    flat_left = T.reshape(k * k, k)
    total = 0
    examples = []
    for a in range(k):
        # lhs[b, c, d] = exists e: T[a,b,e] and T[e,c,d]
        lhs = (T[a] @ flat_right).reshape(k, k, k) > 0
        # rhs[b, c, d] = exists f: T[b,c,f] and T[a,f,d]
        rhs = (flat_left @ T[a]).reshape(k, k, k) > 0
        diff = lhs != rhs
        count = int(diff.sum())
        if not count:
            continue
        total += count
        for b, c, d in np.argwhere(diff)[:max(0, report.max_witnesses - len(examples))]:
            quad = (R.atoms[a], R.atoms[int(b)], R.atoms[int(c)], R.atoms[int(d)])
            side = "(a;b);c" if lhs[b, c, d] else "a;(b;c)"
            examples.append((f"{quad[3]} only in {side} for a={quad[0]}, b={quad[1]}, c={quad[2]}", quad))
    report.add_many('associativity', total, examples)


# Cylindric laws

def _is_equivalence(relation: Dict[str, frozenset], atoms) -> Tuple[bool, Optional[Tuple[str, str]]]:
    for a in atoms:
        cls = relation[a]
        if a not in cls:
            return False, (a, a)
        for b in cls:
            other = relation[b]
            if other is not cls and other != cls:
                return False, (a, b)
    return True, None


def _check_equivalence(C: CAAtomStructure, report: ValidationReport):
    for i in range(C.dimension):
        ok, witness = _is_equivalence(C.ti[i], C.atoms)
        if not ok:
            a, b = witness
            if a == b:
                report.add('equivalence', f"t{i} is not reflexive at {a}", witness)
            else:
                report.add('equivalence', f"t{i} classes of {a} and {b} differ", witness)


def _commutation_witness(C: CAAtomStructure, i: int, j: int) -> Optional[Tuple[str, str]]:
    """Bipartite class graph: equivalences commute iff every component is complete"""
    graph = nx.Graph()
    class_id_i: Dict[int, int] = {}
    class_id_j: Dict[int, int] = {}
    edge_atom = {}
    for atom in C.atoms:
        x = ('i', class_id_i.setdefault(id(C.ti[i][atom]), len(class_id_i)))
        y = ('j', class_id_j.setdefault(id(C.ti[j][atom]), len(class_id_j)))
        graph.add_edge(x, y)
        edge_atom.setdefault((x, y), atom)
    for component in nx.connected_components(graph):
        left = [v for v in component if v[0] == 'i']
        right = [v for v in component if v[0] == 'j']
        edges = graph.subgraph(component).number_of_edges()
        if edges == len(left) * len(right):
            continue
        for x in left:
            for y in right:
                if not graph.has_edge(x, y):
                    path = nx.shortest_path(graph, x, y)
                    # x - y1 - x1 - y2 with x, y2 non-adjacent
                    x0, y1, x1, y2 = path[:4]
                    return edge_atom[(x0, y1)], edge_atom[(x1, y2)]
    return None


def _shared_classes(relation: Dict[str, frozenset]) -> bool:
    return all(relation[b] is cls for cls in relation.values() for b in cls)


def _check_commutation(C: CAAtomStructure, report: ValidationReport):
    n = C.dimension
    for i in range(n):
        for j in range(i + 1, n):
            if _shared_classes(C.ti[i]) and _shared_classes(C.ti[j]):
                witness = _commutation_witness(C, i, j)
                if witness:
                    report.add('commutation', f"{witness[0]} t{j};t{i} {witness[1]} but not t{i};t{j}", witness)
                continue
            succ_i = [C.class_bits(i, a) for a in C.atoms]
            succ_j = [C.class_bits(j, a) for a in C.atoms]
            for x, a in enumerate(C.atoms):
                via_i = 0
                for b in C.ti[i][a]:
                    via_i |= succ_j[C.index[b]]
                via_j = 0
                for b in C.ti[j][a]:
                    via_j |= succ_i[C.index[b]]
                if via_i != via_j:
                    report.add('commutation', f"t{i};t{j} and t{j};t{i} differ at {a}", (a,))


def _check_diagonal(C: CAAtomStructure, report: ValidationReport):
    n = C.dimension
    everything = frozenset(C.atoms)
    for i in range(n):
        if C.eij[(i, i)] != everything:
            missing = sorted(everything - C.eij[(i, i)], key=C.index.get)
            report.add('diagonal', f"e{i}{i} misses {len(missing)} atom(s)", tuple(missing[:3]))
    for i in range(n):
        for j in range(n):
            if i != j and C.eij[(i, j)] != C.eij[(j, i)]:
                report.add('diagonal', f"e{i}{j} differs from e{j}{i}", (i, j))
    top = C.top()
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            covered = Cylindrify(C, i, C.diagonal(i, j))
            if covered != top:
                missing = list((top - covered))[:3]
                report.add('diagonal', f"c{i}(e{i}{j}) is not the top element", tuple(missing))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if i in (j, k):
                    continue
                expected = Cylindrify(C, i, C.diagonal(j, i) & C.diagonal(i, k))
                if expected != C.diagonal(j, k):
                    odd = list((C.diagonal(j, k) - expected) | (expected - C.diagonal(j, k)))[:3]
                    report.add('diagonal', f"e{j}{k} != c{i}(e{j}{i}.e{i}{k})", tuple(odd))


def _check_uniqueness(C: CAAtomStructure, report: ValidationReport):
    """Each ti class meets eij in at most one atom (i != j)"""
    n = C.dimension
    for i in range(n):
        seen = set()
        for a in C.atoms:
            cls = C.ti[i][a]
            if id(cls) in seen:
                continue
            seen.add(id(cls))
            for j in range(n):
                if i == j:
                    continue
                hits = cls & C.eij[(i, j)]
                if len(hits) > 1:
                    pair = tuple(sorted(hits, key=C.index.get)[:2])
                    report.add('uniqueness', f"t{i} class of {a} meets e{i}{j} twice", pair)


def _check_substitutions(C: CAAtomStructure, report: ValidationReport):
    if C.pij is None:
        return
    n = C.dimension
    for (i, j), mapping in sorted(C.pij.items()):
        missing = [a for a in C.atoms if a not in mapping]
        if missing:
            report.add('substitution', f"p{i}{j} is not total", tuple(missing[:3]))
            continue
        if i == j:
            for a in C.atoms:
                if mapping[a] != a:
                    report.add('substitution', f"p{i}{i} moves {a}", (a, mapping[a]))
            continue
        for a in C.atoms:
            if mapping[mapping[a]] != a:
                report.add('substitution', f"p{i}{j} is not an involution at {a}", (a,))
        mirror = C.pij.get((j, i))
        if mirror is not None and mirror != mapping:
            report.add('substitution', f"p{i}{j} differs from p{j}{i}", (i, j))

        def swap(k):
            return j if k == i else i if k == j else k

        for k in range(n):
            for l in range(n):
                image = frozenset(mapping[a] for a in C.eij[(k, l)])
                if image != C.eij[(swap(k), swap(l))]:
                    report.add('substitution', f"p{i}{j} does not carry e{k}{l} to e{swap(k)}{swap(l)}", (k, l))
        for k in range(n):
            target = C.ti[swap(k)]
            images: Dict[int, frozenset] = {}
            for a in C.atoms:
                cls = C.ti[k][a]
                image = images.get(id(cls))
                if image is None:
                    image = images[id(cls)] = frozenset(mapping[b] for b in cls)
                if image != target[mapping[a]]:
                    report.add('substitution', f"p{i}{j} does not carry t{k} to t{swap(k)} at {a}", (a,))


# Preset validators

def get_ra_validator() -> StructureValidator:
    validator = StructureValidator("RA_LAWS", "RA")
    validator.add_law('involution', "converse is an involution", _check_involution)
    validator.add_law('peircean', "cycles are closed under the Peircean transforms", _check_peircean)
    validator.add_law('identity', "composition with the identity element is the identity map", _check_identity)
    validator.add_law('associativity', "composition is associative on all atom triples", _check_associativity)
    return validator


def get_ca_validator() -> StructureValidator:
    validator = StructureValidator("CA_LAWS", "CA")
    validator.add_law('equivalence', "each ti is an equivalence relation", _check_equivalence)
    validator.add_law('commutation', "ti and tj commute", _check_commutation)
    validator.add_law('diagonal', "diagonal correspondents hold", _check_diagonal)
    validator.add_law('uniqueness', "ti classes meet eij in at most one atom", _check_uniqueness)
    validator.add_law('substitution', "pij are involutions compatible with ti and eij", _check_substitutions)
    return validator


VALIDATOR_PRESETS = {
    'RA': get_ra_validator,
    'CA': get_ca_validator
}


def ValidateRA(R: RAAtomStructure, max_witnesses: Optional[int] = None) -> ValidationReport:
    """Check converse, Peircean, identity and associativity laws of R"""
    return get_ra_validator().validate(R, max_witnesses)


def ValidateCA(C: CAAtomStructure, max_witnesses: Optional[int] = None) -> ValidationReport:
    """Check the cylindric correspondents (and substitution laws when pij is present)"""
    return get_ca_validator().validate(C, max_witnesses)


def Validate(structure, max_witnesses: Optional[int] = None) -> ValidationReport:
    if structure.kind not in VALIDATOR_PRESETS:
        raise StructureError(f"unknown structure kind: {structure.kind}")
    return VALIDATOR_PRESETS[structure.kind]().validate(structure, max_witnesses)
