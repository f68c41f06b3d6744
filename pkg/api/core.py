"""
arcade Core API
Object-oriented facade over constructions, validation, bases and games
"""

from typing import Any, Dict, List, Optional, Sequence, Union

from algebra.atoms import CAAtomStructure, RAAtomStructure
from algebra.blowup import COPY_AGNOSTIC, BlowUp, BlurSchema, CheckCollapseMap
from algebra.graphs import CalculateChromaticNumber, CalculateGirth, Graph, LoadOrderedStructure, OrderedStructure
from algebra.hyper import DEFAULT_LAMBDA, CheckHyperbasis, EnumerateHypernetworks
from algebra.matrices import BasisReport, BuildCAFromMatrices, CheckCylindricBasis, EnumerateBasicMatrices
from algebra.monk import BuildAlpha, BuildMaddux, BuildMonkRho
from algebra.rainbow import BuildRainbowCA, RainbowSignature, SplitReds
from algebra.validation import Validate, ValidationReport
from games.arena import OMEGA, GameOutcome
from games.ef import EFConfig, SolveEF
from games.experiments import AtomicGameConfig, MaxSurvivableRounds, SolveAtomicGame, TransferExperiment
from utils.config import GetCaps, LoadConfig
from utils.export import Emit
from utils.grid import ExperimentGrid, Report, RunGrid

Orderish = Union[OrderedStructure, str]


class ArcadeAPI:
    """
    Main API class for arcade

    Usage:
        api = ArcadeAPI()
        alpha = api.construct_alpha(GenerateDisjointCliques(3, 3), n=3)
        report = api.validate(alpha)
        outcome = api.solve_ef("chain:3", "chain:2", pebbles=2)
    """

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """
        Initialize the API

        Args:
            config: Optional configuration dictionary. If None, loads from config file.
        """
        self.config = config if config is not None else LoadConfig()
        self.caps = GetCaps(self.config)
        solver = self.config.get('solver', {})
        self.workers = int(solver.get('workers', 1))
        self.strategy_limit = int(solver.get('strategy_limit', 5000))

    @staticmethod
    def order_structure(value: Orderish) -> OrderedStructure:
        return value if isinstance(value, OrderedStructure) else LoadOrderedStructure(value)

    # Constructions

    def construct_alpha(self, G: Graph, n: int) -> RAAtomStructure:
        return BuildAlpha(G, n)

    def construct_monk_rho(self, G: Graph, n: int) -> RAAtomStructure:
        return BuildMonkRho(G, n)

    def construct_maddux(self, n: int, r: int, psi: int) -> RAAtomStructure:
        return BuildMaddux(n, r, psi)

    def blow_up(self, base: RAAtomStructure, copies: int, rule: str = COPY_AGNOSTIC,
                blurs: Sequence[str] = ()) -> RAAtomStructure:
        """Blow up every non-identity atom of base into copies copies and check the collapse map"""
        blown = BlowUp(base, BlurSchema(copies, tuple(blurs), rule), self.caps)
        collapse = CheckCollapseMap(blown, base)
        blown.provenance['collapse_map_holds'] = collapse.holds
        return blown

    def rainbow_signature(self, n: int, A: Orderish, B: Orderish, split: Optional[int] = None,
                          shade_family: str = 'all') -> RainbowSignature:
        sig = RainbowSignature(n, self.order_structure(A), self.order_structure(B), shade_family=shade_family)
        return SplitReds(sig, split) if split else sig

    def rainbow_ca(self, sig: RainbowSignature) -> CAAtomStructure:
        return BuildRainbowCA(sig, self.caps)

    # Checks

    def validate(self, structure: Union[RAAtomStructure, CAAtomStructure]) -> ValidationReport:
        """Validate an RA or CA atom structure against its laws"""
        return Validate(structure, self.config.get('report', {}).get('max_witnesses'))

    def cylindric_basis(self, R: RAAtomStructure, n: int) -> Dict[str, Any]:
        """
        Basic matrices of R, the basis check on them and, when it holds, the
        cylindric atom structure they form

        Returns:
            Dictionary with 'matrices', 'report' and 'structure' (None on failure)
        """
        matrices = EnumerateBasicMatrices(R, n, self.caps)
        report = CheckCylindricBasis(R, n, matrices)
        structure = BuildCAFromMatrices(R, n, matrices, check=False) if report.holds else None
        return {'matrices': matrices, 'report': report, 'structure': structure}

    def hyperbasis(self, R: RAAtomStructure, m: int, n_wide: int,
                   labels: Sequence[str] = DEFAULT_LAMBDA) -> BasisReport:
        H = EnumerateHypernetworks(R, m, n_wide, labels, self.caps)
        return CheckHyperbasis(R, m, n_wide, labels, H)

    def chromatic_number(self, G: Graph) -> int:
        return CalculateChromaticNumber(G, self.caps)

    def girth(self, G: Graph):
        return CalculateGirth(G)

    # Games

    def solve_ef(self, A: Orderish, B: Orderish, pebbles: int, rounds: Optional[int] = OMEGA) -> GameOutcome:
        cfg = EFConfig(self.order_structure(A), self.order_structure(B), pebbles, rounds)
        return SolveEF(cfg, self.caps, self.workers, self.strategy_limit)

    def solve_atomic(self, structure: Union[CAAtomStructure, RainbowSignature], node_budget: int,
                     rounds: Optional[int] = OMEGA, reuse: bool = False,
                     fixed_opening: bool = False) -> GameOutcome:
        cfg = AtomicGameConfig(structure, node_budget, rounds, reuse, fixed_opening)
        return SolveAtomicGame(cfg, self.caps, self.workers, self.strategy_limit)

    def survivable_rounds(self, structure: Union[CAAtomStructure, RainbowSignature], node_budget: int,
                          cap: int, reuse: bool = False, fixed_opening: bool = False) -> int:
        cfg = AtomicGameConfig(structure, node_budget, cap, reuse, fixed_opening)
        return MaxSurvivableRounds(cfg, cap, self.caps, self.workers)

    def transfer(self, A: Orderish, B: Orderish, pebbles: int, rounds: Optional[int] = OMEGA) -> Dict[str, Any]:
        return TransferExperiment(self.order_structure(A), self.order_structure(B), pebbles, rounds,
                                  self.caps, self.workers)

    # Grids

    def run_grid(self, grid: Union[ExperimentGrid, Dict[str, Any]]) -> Report:
        if isinstance(grid, dict):
            grid = ExperimentGrid.from_dict(grid)
        performance = self.config.get('performance', {})
        include_timing = self.config.get('report', {}).get('include_timing', True)
        return RunGrid(grid, self.caps, performance.get('grid_workers', 4), include_timing)

    def emit(self, report: Report, fmt: str = 'json') -> str:
        return Emit(report, fmt)

    def grid_kinds(self) -> List[str]:
        from utils.grid import GRID_KINDS
        return list(GRID_KINDS)
