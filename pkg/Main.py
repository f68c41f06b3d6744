import argparse
import os
import sys

from algebra.blowup import BLOWUP_RULES, COPY_AGNOSTIC, BlurSets, FLMuSchema, IsAdequateBlurSet
from algebra.errors import ArcadeError, PreconditionError
from algebra.graphs import CalculateGirth, LoadGraph, ParseGraphSpec
from algebra.rainbow import SHADE_FAMILIES
from algebra.serialize import DumpStructure, LoadStructure, SaveStructure
from api import ArcadeAPI, __version__
from games.arena import EXISTS, FORALL, ParseRounds
from games.ef import EFArena, EFConfig
from games.experiments import AtomicGameConfig, BuildAtomicArena
from games.play import PlayGame, ReplayTranscript, Transcript
from utils.config import InitializeConfig, LoadConfig, ResetConfig, ShowConfig, UpdateConfigValue
from utils.export import EMIT_FORMATS, Emit, IngestReport
from utils.export_pdf import ExportToPDF
from utils.grid import BuildGameStructure, ExperimentGrid
from utils.logging_config import init_default_logger, log_error
from utils.output_formatter import (DisplayConditionReport, DisplayGameOutcome, DisplayGridReport, DisplayJSON,
                                    DisplayStructureSummary, DisplayValidationReport)

EXIT_OK = 0
EXIT_ERROR = 2


def AddStructureArgs(parser):
    """Options naming the structure an atomic game is played on"""
    parser.add_argument(
        "--structure",
        default="rainbow",
        help="rainbow (default), micro:SEED, one:N, or a CA structure JSON file"
        )
    parser.add_argument("--n", type=int, default=3, help="Rainbow dimension (default: 3)")
    parser.add_argument("--A", default="chain:2", help="Rainbow tint structure (default: chain:2)")
    parser.add_argument("--B", default="chain:1", help="Rainbow red structure (default: chain:1)")
    parser.add_argument("--split", type=int, metavar="K", help="Split every red into K copies")
    parser.add_argument("--shades", choices=SHADE_FAMILIES, default="all", help="Shade family (default: all)")
    parser.add_argument("--nodes", type=int, required=True, help="Node budget")
    parser.add_argument("--rounds", default="inf", help="Rounds, a number or inf (default: inf)")
    parser.add_argument("--reuse", action="store_true", help="Allow challenges on occupied nodes")
    parser.add_argument("--fixed-opening", action="store_true", help="Start from the fixed rainbow opening graph")


def AddEFArgs(parser):
    parser.add_argument("--A", required=True, help="Structure A: spec like chain:3 or a JSON file")
    parser.add_argument("--B", required=True, help="Structure B: spec like chain:2 or a JSON file")
    parser.add_argument("--pebbles", type=int, default=2, help="Number of pebble pairs (default: 2)")
    parser.add_argument("--rounds", default="inf", help="Rounds, a number or inf (default: inf)")


def Parser():
    parser = argparse.ArgumentParser(
        prog="arcade",
        description="Finite relation and cylindric algebra constructions, checks and games")

    parser.add_argument("--version", action="version", version=f"arcade {__version__}")

    parser.add_argument(
        "-j", "--json",
        action="store_true",
        help="Output results in JSON format"
        )

    parser.add_argument(
        "-w", "--workers",
        type=int,
        help="Solver worker threads (default: solver.workers)"
        )

    # Config options
    parser.add_argument(
        "--config-show",
        action="store_true",
        help="Show current configuration"
        )

    parser.add_argument(
        "--config-init",
        action="store_true",
        help="Initialize default configuration file"
        )

    parser.add_argument(
        "--config-reset",
        action="store_true",
        help="Reset configuration to defaults"
        )

    parser.add_argument(
        "--config-set",
        nargs=3,
        metavar=("SECTION", "KEY", "VALUE"),
        help="Set a configuration value"
        )

    commands = parser.add_subparsers(dest="command")

    construct = commands.add_parser("construct", help="Build a relation algebra atom structure")
    construct.add_argument("family", choices=["alpha", "rho", "maddux"])
    construct.add_argument("--graph", help="Graph file or generator spec like cliques:3:3")
    construct.add_argument("--n", type=int, default=3, help="Dimension n (default: 3)")
    construct.add_argument("--r", type=int, default=1, help="Maddux r (default: 1)")
    construct.add_argument("--psi", type=int, default=3, help="Maddux copies psi (default: 3)")
    construct.add_argument("-o", "--output", help="Save the structure as JSON")

    blowup = commands.add_parser("blowup", help="Blow up and blur an atom structure")
    blowup.add_argument("--base", required=True, help="Base RA structure JSON file")
    blowup.add_argument("--copies", type=int, required=True, help="Copies K of every non-identity atom")
    blowup.add_argument("--rule", choices=sorted(BLOWUP_RULES), default=COPY_AGNOSTIC)
    blowup.add_argument("--blurs", help="Comma-separated blur labels")
    blowup.add_argument("--flmu", metavar="I:L:MU", help="Blur family over I = {0..I-1}, subsets of size L, MU tags")
    blowup.add_argument("--adequacy", type=int, metavar="N", help="Check the blur set for adequacy at dimension N")
    blowup.add_argument("--strong", action="store_true", help="Check strong adequacy")
    blowup.add_argument("-o", "--output", help="Save the blown-up structure as JSON")

    rainbow = commands.add_parser("rainbow", help="Build a rainbow cylindric atom structure")
    rainbow.add_argument("--n", type=int, default=3)
    rainbow.add_argument("--A", required=True, help="Tint structure, e.g. mpI:1,chain:2")
    rainbow.add_argument("--B", required=True, help="Red structure, e.g. chain:2")
    rainbow.add_argument("--split", type=int, metavar="K", help="Split every red into K copies")
    rainbow.add_argument("--shades", choices=SHADE_FAMILIES, default="all")
    rainbow.add_argument("--validate", action="store_true", help="Validate the built structure")
    rainbow.add_argument("-o", "--output", help="Save the structure as JSON")

    basis = commands.add_parser("basis", help="Basic matrices, cylindric bases and hyperbases")
    basis.add_argument("--structure", required=True, help="RA structure JSON file")
    basis.add_argument("--n", type=int, default=3, help="Matrix size / hypernetwork dimension (default: 3)")
    basis.add_argument("--hyper", action="store_true", help="Check hypernetworks instead of matrices")
    basis.add_argument("--wide", type=int, default=4, help="Hyperedge width bound (default: 4)")
    basis.add_argument("--labels", default="0", help="Comma-separated hyperlabels (default: 0)")
    basis.add_argument("-o", "--output", help="Save the cylindric structure as JSON when the basis holds")

    validate = commands.add_parser("validate", help="Validate an RA or CA atom structure")
    validate.add_argument("--structure", required=True, help="Structure JSON file")

    chromatic = commands.add_parser("chromatic", help="Chromatic number and girth of a graph")
    chromatic.add_argument("--graph", required=True, help="Graph file or generator spec")

    solve = commands.add_parser("solve", help="Decide a game")
    games = solve.add_subparsers(dest="game", required=True)
    ef = games.add_parser("ef", help="Pebble game between two ordered structures")
    AddEFArgs(ef)
    ef.add_argument("--strategy", action="store_true", help="Print the winning strategy table")
    atomic = games.add_parser("atomic", help="Atomic game on networks or coloured graphs")
    AddStructureArgs(atomic)
    atomic.add_argument("--survive", type=int, metavar="CAP", help="Report the most rounds EXISTS survives up to CAP")
    atomic.add_argument("--strategy", action="store_true", help="Print the winning strategy table")
    transfer = games.add_parser("transfer", help="Pebble game win against the rainbow graph game")
    AddEFArgs(transfer)

    play = commands.add_parser("play", help="Play a game at the terminal")
    play_games = play.add_subparsers(dest="game")
    play_ef = play_games.add_parser("ef")
    AddEFArgs(play_ef)
    play_atomic = play_games.add_parser("atomic")
    AddStructureArgs(play_atomic)
    for sub in (play_ef, play_atomic):
        sub.add_argument("--role", choices=["exists", "forall", "watch"], default="exists")
        sub.add_argument("--replay", metavar="FILE", help="Replay a saved transcript instead of playing")
        sub.add_argument("--save", metavar="FILE", help="Save the transcript when the game ends")

    grid = commands.add_parser("grid", help="Run an experiment grid")
    grid.add_argument("grid_file", help="Grid JSON file")
    grid.add_argument("--output", help="Report path (overrides the grid file)")
    grid.add_argument("--no-timing", action="store_true", help="Leave timings out of the rows")
    grid.add_argument("--format", choices=EMIT_FORMATS, help="Print the report in this format")
    grid.add_argument("--pdf", metavar="FILE", help="Export the report to PDF")

    emit = commands.add_parser("emit", help="Render a saved grid report")
    emit.add_argument("report", help="Report JSON file")
    emit.add_argument("--format", choices=EMIT_FORMATS, default="csv")
    emit.add_argument("-o", "--output", help="Write to a file instead of stdout")
    emit.add_argument("--pdf", metavar="FILE", help="Export the report to PDF")

    return parser


def LoadGraphArg(text):
    """Graph from a file when the path exists, otherwise from a generator spec"""
    if os.path.exists(text):
        return LoadGraph(text)
    return ParseGraphSpec(text)


def StructureParams(args):
    params = {'structure': args.structure, 'n': args.n, 'A': args.A, 'B': args.B, 'shade_family': args.shades}
    if args.split:
        params['K'] = args.split
    return params


def ShowStructure(structure, args, output=None):
    if output:
        SaveStructure(structure, output)
    if args.json:
        print(DumpStructure(structure))
        return
    DisplayStructureSummary(structure)
    if output:
        print(f"\nSaved to {output}")


def RunConstruct(api, args):
    if args.family == "maddux":
        structure = api.construct_maddux(args.n, args.r, args.psi)
    else:
        if not args.graph:
            raise PreconditionError(f"construct {args.family} needs --graph")
        G = LoadGraphArg(args.graph)
        build = api.construct_alpha if args.family == "alpha" else api.construct_monk_rho
        structure = build(G, args.n)
    ShowStructure(structure, args, args.output)


def RunBlowup(api, args):
    base = LoadStructure(args.base)
    blurs = tuple(b.strip() for b in args.blurs.split(',') if b.strip()) if args.blurs else ()
    if args.flmu:
        size, l, mu = (int(x) for x in args.flmu.split(':'))
        blurs = FLMuSchema(tuple(str(i) for i in range(size)), l, mu).blur_labels()
    blown = api.blow_up(base, args.copies, args.rule, blurs)
    ShowStructure(blown, args, args.output)
    if args.adequacy:
        report = IsAdequateBlurSet(blown, BlurSets(blown), args.adequacy, args.strong)
        DisplayConditionReport(report, args.json)


def RunRainbow(api, args):
    sig = api.rainbow_signature(args.n, args.A, args.B, args.split, args.shades)
    structure = api.rainbow_ca(sig)
    ShowStructure(structure, args, args.output)
    if args.validate:
        DisplayValidationReport(api.validate(structure), args.json)


def RunBasis(api, args):
    R = LoadStructure(args.structure)
    if args.hyper:
        labels = tuple(x.strip() for x in args.labels.split(',') if x.strip())
        DisplayConditionReport(api.hyperbasis(R, args.n, args.wide, labels), args.json)
        return
    result = api.cylindric_basis(R, args.n)
    if not args.json:
        print(f"{len(result['matrices'])} basic {args.n}x{args.n} matrices")
    DisplayConditionReport(result['report'], args.json)
    if result['structure'] is not None and args.output:
        SaveStructure(result['structure'], args.output)
        print(f"Cylindric structure saved to {args.output}")


def RunChromatic(api, args):
    G = LoadGraphArg(args.graph)
    result = {'vertices': G.vertex_count, 'edges': len(G.edges),
              'chromatic_number': api.chromatic_number(G), 'girth': CalculateGirth(G)}
    if result['girth'] == float('inf'):
        result['girth'] = 'inf'
    if args.json:
        DisplayJSON(result)
        return
    for key, value in result.items():
        print(f"{key.replace('_', ' ').capitalize()}: {value}")


def RunSolve(api, args):
    if args.game == "ef":
        DisplayGameOutcome(api.solve_ef(args.A, args.B, args.pebbles, ParseRounds(args.rounds)),
                           args.json, args.strategy)
    elif args.game == "transfer":
        row = api.transfer(args.A, args.B, args.pebbles, ParseRounds(args.rounds))
        if args.json:
            DisplayJSON(row)
        else:
            for key, value in row.items():
                print(f"{key}: {value}")
    else:
        structure = BuildGameStructure(StructureParams(args))
        if args.survive is not None:
            survived = api.survivable_rounds(structure, args.nodes, args.survive, args.reuse, args.fixed_opening)
            if args.json:
                DisplayJSON({'survived': survived, 'cap': args.survive})
            else:
                print(f"EXISTS survives {survived} of at most {args.survive} round(s)")
            return
        outcome = api.solve_atomic(structure, args.nodes, ParseRounds(args.rounds), args.reuse, args.fixed_opening)
        DisplayGameOutcome(outcome, args.json, args.strategy)


def RunPlay(api, args):
    if not args.game:
        from cli.interactive import InteractiveCLI
        InteractiveCLI(api).run()
        return

    rounds = ParseRounds(args.rounds)
    if args.game == "ef":
        cfg = EFConfig(api.order_structure(args.A), api.order_structure(args.B), args.pebbles, rounds)
        arena = EFArena(cfg, api.caps)
    else:
        structure = BuildGameStructure(StructureParams(args))
        arena = BuildAtomicArena(AtomicGameConfig(structure, args.nodes, rounds, args.reuse, args.fixed_opening),
                                 api.caps)

    if args.replay:
        session = ReplayTranscript(arena, Transcript.load(args.replay))
        for line in session.transcript.log:
            print(line)
        return

    role = {'exists': EXISTS, 'forall': FORALL, 'watch': None}[args.role]
    transcript = PlayGame(arena, rounds, role, caps=api.caps, workers=api.workers)
    if args.save:
        transcript.save(args.save)
        print(f"Transcript saved to {args.save}")


def ShowReport(report, fmt, pdf, json_output):
    if fmt:
        print(Emit(report, fmt), end='')
    else:
        DisplayGridReport(report, json_output)
    if pdf:
        ExportToPDF(report, pdf)


def RunGridCommand(api, args):
    grid = ExperimentGrid.load(args.grid_file)
    if args.output:
        grid.output = args.output
    if args.no_timing:
        api.config.setdefault('report', {})['include_timing'] = False
    report = api.run_grid(grid)
    ShowReport(report, args.format, args.pdf, args.json)


def RunEmit(api, args):
    with open(args.report, 'r', encoding='utf-8') as f:
        report = IngestReport(f.read(), 'json')
    text = Emit(report, args.format)
    if args.output:
        with open(args.output, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        print(f"[SUCCESS] {args.format.upper()} report written to: {args.output}")
    else:
        print(text, end='')
    if args.pdf:
        ExportToPDF(report, args.pdf)


COMMANDS = {
    'construct': RunConstruct,
    'blowup': RunBlowup,
    'rainbow': RunRainbow,
    'basis': RunBasis,
    'validate': lambda api, args: DisplayValidationReport(api.validate(LoadStructure(args.structure)), args.json),
    'chromatic': RunChromatic,
    'solve': RunSolve,
    'play': RunPlay,
    'grid': RunGridCommand,
    'emit': RunEmit
}


def Main(argv=None):
    parser = Parser()
    args = parser.parse_args(argv)

    # Handle config commands (these exit early)
    if args.config_show:
        ShowConfig()
        return EXIT_OK

    if args.config_init:
        InitializeConfig()
        return EXIT_OK

    if args.config_reset:
        ResetConfig()
        return EXIT_OK

    if args.config_set:
        section, key, value = args.config_set
        return EXIT_OK if UpdateConfigValue(section, key, value) else EXIT_ERROR

    if not args.command:
        parser.print_help()
        return EXIT_OK

    try:
        config = LoadConfig()
        init_default_logger(config)
        if args.workers is not None:
            config['solver']['workers'] = args.workers
        api = ArcadeAPI(config)
        COMMANDS[args.command](api, args)
    except (ArcadeError, OSError, ValueError) as e:
        log_error(f"arcade {args.command}", e)
        print(f"[ERROR] {e}")
        return EXIT_ERROR
    except KeyboardInterrupt:
        print("\nInterrupted")
        return EXIT_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(Main())
