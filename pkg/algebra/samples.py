"""
Sample Structures
Seeded micro atom structures for sweeps: small integral relation algebras
and the cylindric structures their 3 x 3 basic matrices form
"""

import random
from itertools import product
from typing import Dict, Mapping, Optional, Set, Tuple

from algebra.atoms import IDENTITY, CAAtomStructure, RAAtomStructure
from algebra.errors import CapExceededError, PreconditionError
from algebra.matrices import BuildCAFromMatrices, CheckCylindricBasis, EnumerateBasicMatrices
from algebra.validation import ValidateCA, ValidateRA
from utils.config import GetCaps
from utils.logging_config import get_logger

logger = get_logger('algebra')

MAX_ATTEMPTS = 200

Triple = Tuple[str, str, str]


def PeirceanOrbit(converse: Mapping[str, str], triple: Triple) -> Set[Triple]:
    """Closure of one cycle under (a,b,c) -> (conv a, c, b) and (a,b,c) -> (c, conv b, a)"""
    orbit = {tuple(triple)}
    frontier = [tuple(triple)]
    while frontier:
        a, b, c = frontier.pop()
        for image in ((converse[a], c, b), (c, converse[b], a)):
            if image not in orbit:
                orbit.add(image)
                frontier.append(image)
    return orbit


def IdentityCycles(atoms, converse: Mapping[str, str]) -> Set[Triple]:
    cycles = set()
    for a in atoms:
        cycles.update({(IDENTITY, a, a), (a, IDENTITY, a), (a, converse[a], IDENTITY)})
    return cycles


def RandomIntegralRA(rng: random.Random) -> RAAtomStructure:
    """Integral atom structure with one or two diversity atoms and random diversity cycles"""
    if rng.random() < 0.5:
        diversity = ['a']
        converse = {IDENTITY: IDENTITY, 'a': 'a'}
    elif rng.random() < 0.5:
        diversity = ['a', 'b']
        converse = {IDENTITY: IDENTITY, 'a': 'a', 'b': 'b'}
    else:
        diversity = ['a', 'b']
        converse = {IDENTITY: IDENTITY, 'a': 'b', 'b': 'a'}
    atoms = [IDENTITY] + diversity
    cycles = IdentityCycles(atoms, converse)
    orbits = []
    for triple in product(diversity, repeat=3):
        orbit = PeirceanOrbit(converse, triple)
        if orbit not in orbits:
            orbits.append(orbit)
    for orbit in orbits:
        if rng.random() < 0.6:
            cycles |= orbit
    return RAAtomStructure(atoms, [IDENTITY], converse, cycles, name="micro",
                           provenance={'construction': 'sample'})


def RandomMicroCA(seed: int, max_atoms: int = 12, caps: Optional[Dict[str, int]] = None) -> CAAtomStructure:
    """
    Seeded 3-dimensional cylindric atom structure with at most max_atoms atoms

    Draws integral relation algebras until one is valid and its 3 x 3 basic
    matrices form a cylindric basis of the requested size.
    """
    caps = caps or GetCaps()
    rng = random.Random(seed)
    for attempt in range(MAX_ATTEMPTS):
        R = RandomIntegralRA(rng)
        if not ValidateRA(R).valid:
            continue
        matrices = EnumerateBasicMatrices(R, 3, caps)
        if len(matrices) > max_atoms or not CheckCylindricBasis(R, 3, matrices).holds:
            continue
        structure = BuildCAFromMatrices(R, 3, matrices, check=False)
        if not ValidateCA(structure).valid:
            continue
        structure.name = f"micro#{seed}"
        structure.provenance.update({'seed': seed, 'attempt': attempt, 'cycles': sorted(R.cycles)})
        logger.debug(f"micro structure #{seed}: {len(structure.atoms)} atoms after {attempt + 1} draws")
        return structure
    raise CapExceededError('sample draws', MAX_ATTEMPTS, MAX_ATTEMPTS)


def OneAtomCA(n: int) -> CAAtomStructure:
    """n-dimensional structure with a single atom, every ti total and every diagonal full"""
    if n < 1:
        raise PreconditionError("dimension must be positive")
    atom = "u"
    return CAAtomStructure(n, [atom], [{atom: {atom}} for _ in range(n)],
                           {(i, j): [atom] for i in range(n) for j in range(n)},
                           {(i, j): {atom: atom} for i in range(n) for j in range(n) if i != j},
                           name=f"one-atom[{n}]", provenance={'construction': 'sample'})
