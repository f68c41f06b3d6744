"""
Experiment Grids
Run one experiment kind over every point of a parameter grid, in parallel,
reusing rows already present in the output file
"""

import json
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Dict, List, Optional, Tuple

from algebra.errors import ArcadeError, PreconditionError, StructureError
from algebra.graphs import CalculateChromaticNumber, ParseGraphSpec, ParseOrderSpec
from algebra.monk import BuildAlpha
from algebra.rainbow import RainbowSignature, SplitReds
from algebra.samples import OneAtomCA, RandomMicroCA
from algebra.serialize import LoadStructure
from algebra.validation import ValidateRA
from games.arena import ParseRounds
from games.ef import EFConfig, SolveEF
from games.experiments import AtomicGameConfig, MaxSurvivableRounds, SolveAtomicGame, TransferExperiment
from utils.config import DEFAULT_CONFIG, ENGINE_VERSION, GetCaps
from utils.logging_config import get_logger

logger = get_logger('grid')

ROW_COLUMNS = ('index', 'params', 'outcome', 'horizon', 'seconds', 'error')


@dataclass
class ExperimentGrid:
    """
    kind names the experiment; params are fixed for every row, ranges vary
    (rows run over their product, first range outermost)
    """

    kind: str
    params: Dict[str, Any] = field(default_factory=dict)
    ranges: Dict[str, List[Any]] = field(default_factory=dict)
    output: Optional[str] = None

    def __post_init__(self):
        if self.kind not in GRID_KINDS:
            raise PreconditionError(f"unknown grid kind '{self.kind}' (use {', '.join(GRID_KINDS)})")
        if not self.ranges:
            raise PreconditionError("a grid needs at least one parameter range")
        for name, values in self.ranges.items():
            if not isinstance(values, list) or not values:
                raise PreconditionError(f"range '{name}' is empty")

    def points(self) -> List[Dict[str, Any]]:
        names = list(self.ranges)
        return [dict(zip(names, values)) for values in product(*(self.ranges[n] for n in names))]

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'params': dict(self.params), 'ranges': {k: list(v) for k, v in self.ranges.items()},
                'output': self.output}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ExperimentGrid':
        if not isinstance(data, dict) or 'kind' not in data:
            raise StructureError("grid document needs a 'kind'")
        return cls(data['kind'], dict(data.get('params', {})), dict(data.get('ranges', {})), data.get('output'))

    @classmethod
    def load(cls, path: str) -> 'ExperimentGrid':
        try:
            with open(path, 'r', encoding='utf-8') as f:
                return cls.from_dict(json.load(f))
        except (OSError, json.JSONDecodeError) as e:
            raise StructureError(f"cannot read grid file {path}: {e}") from None


@dataclass
class Report:
    """Rows in grid order plus the metadata that produced them"""

    kind: str
    rows: List[Dict[str, Any]] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return all(row is not None for row in self.rows)

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'metadata': self.metadata, 'rows': self.rows}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Report':
        try:
            return cls(data['kind'], list(data['rows']), dict(data.get('metadata', {})))
        except (KeyError, TypeError) as e:
            raise StructureError(f"malformed report: {e}") from None

    def save(self, path: str):
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=True)


# Row runners: merged params -> (outcome, horizon)

def _rounds(params: Dict[str, Any], key: str = 'rounds'):
    return ParseRounds(params.get(key, 'inf'))


def BuildGameStructure(params: Dict[str, Any]):
    """
    Structure named by grid params

    structure = "rainbow" (default; uses n, A, B, K, shade_family),
    "micro:SEED", "one:N", or a path to a saved CA structure.
    """
    spec = str(params.get('structure', 'rainbow'))
    if spec == 'rainbow':
        sig = RainbowSignature(int(params.get('n', 3)), ParseOrderSpec(params['A']), ParseOrderSpec(params['B']),
                               shade_family=params.get('shade_family', 'all'))
        copies = params.get('K')
        return SplitReds(sig, int(copies)) if copies else sig
    kind, _, arg = spec.partition(':')
    if kind == 'micro':
        return RandomMicroCA(int(arg or 0))
    if kind == 'one':
        return OneAtomCA(int(arg or 3))
    return LoadStructure(spec)


def _run_alpha_validate(params, caps) -> Tuple[Any, Optional[int]]:
    report = ValidateRA(BuildAlpha(ParseGraphSpec(params['graph']), int(params.get('n', 3))))
    return ('valid' if report.valid else 'invalid:' + '+'.join(report.violations)), None


def _run_chromatic(params, caps):
    return CalculateChromaticNumber(ParseGraphSpec(params['graph']), caps), None


def _run_ef(params, caps):
    cfg = EFConfig(ParseOrderSpec(params['A']), ParseOrderSpec(params['B']), int(params.get('pebbles', 2)),
                   _rounds(params))
    outcome = SolveEF(cfg, caps)
    return outcome.winner, outcome.horizon


def _atomic_config(params, rounds) -> AtomicGameConfig:
    return AtomicGameConfig(BuildGameStructure(params), int(params['node_budget']), rounds,
                            bool(params.get('reuse', False)), bool(params.get('fixed_opening', False)))


def _run_atomic(params, caps):
    outcome = SolveAtomicGame(_atomic_config(params, _rounds(params)), caps)
    return outcome.winner, outcome.horizon


def _run_split_horizon(params, caps):
    cap = int(params.get('cap', 4))
    survived = MaxSurvivableRounds(_atomic_config(params, cap), cap, caps)
    return survived, (None if survived >= cap else survived + 1)


def _run_transfer(params, caps):
    row = TransferExperiment(ParseOrderSpec(params['A']), ParseOrderSpec(params['B']), int(params['pebbles']),
                             _rounds(params), caps, reuse=bool(params.get('reuse', True)))
    return ('agree' if row['agree'] else 'disagree'), row['graph_horizon']


GRID_KINDS: Dict[str, Callable] = {
    'alpha_validate': _run_alpha_validate,
    'chromatic': _run_chromatic,
    'ef': _run_ef,
    'atomic': _run_atomic,
    'split_horizon': _run_split_horizon,
    'transfer': _run_transfer
}


def RunPoint(grid: ExperimentGrid, index: int, point: Dict[str, Any], caps: Dict[str, int],
             include_timing: bool = True) -> Dict[str, Any]:
    """One grid row; errors from the engine are recorded in the row"""
    params = dict(grid.params)
    params.update(point)
    start = time.time()
    outcome, horizon, error = None, None, None
    try:
        outcome, horizon = GRID_KINDS[grid.kind](params, caps)
    except (ArcadeError, KeyError, ValueError) as e:
        error = f"{type(e).__name__}: {e}"
        logger.warning(f"grid row {index} {point}: {error}")
    seconds = round(time.time() - start, 3) if include_timing else None
    return {'index': index, 'params': point, 'outcome': outcome, 'horizon': horizon,
            'seconds': seconds, 'error': error}


def _reusable_rows(grid: ExperimentGrid, points: List[Dict[str, Any]]) -> Dict[int, Dict[str, Any]]:
    """Error-free rows of an earlier run of the same grid"""
    if not grid.output or not os.path.exists(grid.output):
        return {}
    try:
        with open(grid.output, 'r', encoding='utf-8') as f:
            previous = Report.from_dict(json.load(f))
    except (OSError, json.JSONDecodeError, StructureError) as e:
        logger.warning(f"ignoring unreadable report {grid.output}: {e}")
        return {}
    if previous.kind != grid.kind or previous.metadata.get('params') != grid.params:
        return {}
    reused = {}
    for row in previous.rows:
        if not row or row.get('error') is not None:
            continue
        index = row.get('index')
        if isinstance(index, int) and 0 <= index < len(points) and row.get('params') == points[index]:
            reused[index] = row
    return reused


def RunGrid(grid: ExperimentGrid, caps: Optional[Dict[str, int]] = None, max_workers: Optional[int] = None,
            include_timing: Optional[bool] = None) -> Report:
    """
    Run every grid point and assemble the rows by index

    Rows found in grid.output from an earlier run with the same kind and
    params are kept; the report is rewritten after every finished row.

    Args:
        grid: Kind, fixed params and ranges
        caps: Cap table (default: configured caps)
        max_workers: Thread count (default: performance.grid_workers)

    Returns:
        Report with one row per grid point
    """
    caps = caps or GetCaps()
    if max_workers is None:
        max_workers = DEFAULT_CONFIG['performance']['grid_workers']
    if include_timing is None:
        include_timing = DEFAULT_CONFIG['report']['include_timing']

    points = grid.points()
    report = Report(grid.kind, [None] * len(points), {
        'engine_version': ENGINE_VERSION,
        'kind': grid.kind,
        'params': grid.params,
        'ranges': grid.ranges,
        'caps': dict(caps)
    })
    for index, row in _reusable_rows(grid, points).items():
        report.rows[index] = row
    pending = [k for k, row in enumerate(report.rows) if row is None]
    logger.info(f"Grid {grid.kind}: {len(points)} point(s), {len(points) - len(pending)} reused")

    lock = threading.Lock()

    def finish(index: int, row: Dict[str, Any]):
        with lock:
            report.rows[index] = row
            if grid.output:
                report.save(grid.output)

    if max_workers <= 1 or len(pending) <= 1:
        for index in pending:
            finish(index, RunPoint(grid, index, points[index], caps, include_timing))
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            future_to_index = {
                executor.submit(RunPoint, grid, index, points[index], caps, include_timing): index
                for index in pending
            }
            for future in as_completed(future_to_index):
                finish(future_to_index[future], future.result())

    if grid.output:
        report.save(grid.output)
    return report
