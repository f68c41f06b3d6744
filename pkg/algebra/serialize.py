"""
Structure Serialization
JSON documents for RA and CA atom structures
"""

import json
from typing import Any, Dict, Union

from algebra.atoms import CAAtomStructure, RAAtomStructure
from algebra.errors import StructureError

Structure = Union[RAAtomStructure, CAAtomStructure]


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((_jsonable(v) for v in value), key=repr)
    if hasattr(value, 'to_dict'):
        return _jsonable(value.to_dict())
    return value


def _pair_key(i: int, j: int) -> str:
    return f"{i},{j}"


def _parse_pair(key: str):
    try:
        i, j = key.split(',')
        return int(i), int(j)
    except ValueError:
        raise StructureError(f"bad index pair key: {key!r}") from None


def _relation_to_json(C: CAAtomStructure, relation):
    """Equivalences are written as class lists, anything else as an adjacency map"""
    order = C.index
    shared = all(relation[b] is cls for cls in relation.values() for b in cls)
    if shared:
        classes, seen = [], set()
        for atom in C.atoms:
            cls = relation[atom]
            if id(cls) not in seen:
                seen.add(id(cls))
                classes.append(sorted(cls, key=order.get))
        return classes
    return {atom: sorted(relation[atom], key=order.get) for atom in C.atoms}


def StructureToDict(structure: Structure, include_meta: bool = True) -> Dict[str, Any]:
    """Canonical JSON-ready document for an atom structure"""
    order = structure.index
    if structure.kind == "RA":
        data = {
            'kind': 'RA',
            'atoms': list(structure.atoms),
            'identity': sorted(structure.identity, key=order.get),
            'converse': {atom: structure.converse[atom] for atom in structure.atoms},
            'cycles': [list(c) for c in sorted(structure.cycles, key=lambda c: tuple(order[x] for x in c))]
        }
    elif structure.kind == "CA":
        data = {
            'kind': 'CA',
            'dimension': structure.dimension,
            'atoms': list(structure.atoms),
            'ti': [_relation_to_json(structure, relation) for relation in structure.ti],
            'eij': {_pair_key(i, j): sorted(structure.eij[(i, j)], key=order.get)
                    for (i, j) in sorted(structure.eij)}
        }
        if structure.pij is not None:
            data['pij'] = {_pair_key(i, j): {atom: mapping[atom] for atom in structure.atoms if atom in mapping}
                           for (i, j), mapping in sorted(structure.pij.items())}
    else:
        raise StructureError(f"unknown structure kind: {structure.kind}")

    if include_meta:
        data['name'] = structure.name
        data['provenance'] = _jsonable(structure.provenance)
        if getattr(structure, 'labels', None):
            data['labels'] = _jsonable(structure.labels)
    return data


def _relation_from_json(atoms, raw):
    if isinstance(raw, list):
        relation = {}
        for members in raw:
            cls = frozenset(members)
            for atom in members:
                if atom in relation:
                    raise StructureError(f"atom {atom!r} appears in two classes")
                relation[atom] = cls
        return relation
    if isinstance(raw, dict):
        return {atom: frozenset(related) for atom, related in raw.items()}
    raise StructureError("ti entries must be class lists or adjacency maps")


def StructureFromDict(data: Dict[str, Any]) -> Structure:
    """Rebuild an atom structure; malformed documents raise StructureError"""
    if not isinstance(data, dict):
        raise StructureError("structure document must be a JSON object")
    kind = data.get('kind')
    try:
        if kind == 'RA':
            return RAAtomStructure(
                atoms=data['atoms'],
                identity=data['identity'],
                converse=data['converse'],
                cycles=data['cycles'],
                name=data.get('name', ''),
                provenance=data.get('provenance')
            )
        if kind == 'CA':
            atoms = data['atoms']
            pij = None
            if 'pij' in data:
                pij = {_parse_pair(key): mapping for key, mapping in data['pij'].items()}
            return CAAtomStructure(
                dimension=int(data['dimension']),
                atoms=atoms,
                ti=[_relation_from_json(atoms, raw) for raw in data['ti']],
                eij={_parse_pair(key): members for key, members in data['eij'].items()},
                pij=pij,
                name=data.get('name', ''),
                provenance=data.get('provenance'),
                labels=data.get('labels')
            )
    except KeyError as e:
        raise StructureError(f"structure document is missing field {e}") from None
    except TypeError as e:
        raise StructureError(f"malformed structure document: {e}") from None
    raise StructureError(f"unknown structure kind: {kind!r}")


def DumpStructure(structure: Structure, indent: int = 2) -> str:
    return json.dumps(StructureToDict(structure), indent=indent)


def LoadsStructure(text: str) -> Structure:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise StructureError(f"invalid JSON: {e}") from None
    return StructureFromDict(data)


def SaveStructure(structure: Structure, path: str):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(DumpStructure(structure))


def LoadStructure(path: str) -> Structure:
    with open(path, 'r', encoding='utf-8') as f:
        return LoadsStructure(f.read())
