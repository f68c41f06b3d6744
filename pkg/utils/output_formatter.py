import json

# Try to import colorama for colored output
try:
    from colorama import Fore, Style, init as colorama_init
    colorama_init(autoreset=True)
    COLORAMA_AVAILABLE = True
except ImportError:
    COLORAMA_AVAILABLE = False

    class Fore:
        RED = ''
        YELLOW = ''
        GREEN = ''
        CYAN = ''
        MAGENTA = ''
        WHITE = ''

    class Style:
        BRIGHT = ''
        RESET_ALL = ''

from games.arena import EXISTS


def DisplayJSON(data):
    """Print any result with a to_dict() (or a plain dict) as JSON"""
    payload = data.to_dict() if hasattr(data, 'to_dict') else data
    print(json.dumps(payload, indent=2, sort_keys=True, default=str))


def PassFail(ok):
    if ok:
        return f"{Fore.GREEN}[PASS]{Style.RESET_ALL}"
    return f"{Fore.RED}[FAIL]{Style.RESET_ALL}"


def DisplayValidationReport(report, json_output=False):
    """Laws in check order with their first witnesses"""
    if json_output:
        DisplayJSON(report)
        return

    print("=" * 60)
    print(f"{Style.BRIGHT}{report.kind} VALIDATION: {report.subject}{Style.RESET_ALL}")
    print("=" * 60)
    print()

    for law in report.laws_checked:
        count = report.counts.get(law, 0)
        print(f"  {PassFail(count == 0)} {law}" + (f" ({count} violation(s))" if count else ""))
        for entry in report.witnesses.get(law, []):
            witness = ', '.join(entry['witness'])
            print(f"      - {entry['message']}" + (f" [{witness}]" if witness else ""))
    print()

    if report.valid:
        print(f"{Fore.GREEN}{Style.BRIGHT}All {len(report.laws_checked)} laws hold{Style.RESET_ALL}")
    else:
        print(f"{Fore.RED}{Style.BRIGHT}{report.violation_count()} violation(s) in "
              f"{len(report.violations)} law(s){Style.RESET_ALL}")
    print(f"Checked in {report.duration:.3f}s")
    print("=" * 60)


def DisplayConditionReport(report, json_output=False):
    """Basis, hyperbasis or embedding style reports: named conditions that hold or fail"""
    if json_output:
        DisplayJSON(report)
        return

    data = report.to_dict()
    print("=" * 60)
    print(f"{Style.BRIGHT}{data.get('subject') or data.get('small', '')}{Style.RESET_ALL}")
    print("=" * 60)
    for name, entry in data.get('conditions', {}).items():
        print(f"  {PassFail(entry['holds'])} {name}" + (f" ({entry['count']})" if entry['count'] else ""))
        for witness in entry['witnesses']:
            print(f"      - {witness['message']}")
    if data.get('counterexample'):
        print(f"  {PassFail(False)} {data['counterexample']['check']}: {data['counterexample']['detail']}")
    if data.get('witness'):
        print(f"  Failing choice: {data['witness']}")
    print()
    print("Holds" if data['holds'] else f"{Fore.RED}Does not hold{Style.RESET_ALL}")
    print("=" * 60)


def DisplayGameOutcome(outcome, json_output=False, show_strategy=False):
    """Winner, horizon and search size of a solved game"""
    if json_output:
        DisplayJSON(outcome)
        return

    rounds = 'omega' if outcome.rounds is None else outcome.rounds
    color = Fore.GREEN if outcome.winner == EXISTS else Fore.RED
    print("=" * 60)
    print(f"{Style.BRIGHT}GAME {outcome.game}{Style.RESET_ALL}")
    print("=" * 60)
    print(f"Rounds: {rounds}")
    print(f"Winner: {color}{Style.BRIGHT}{outcome.winner}{Style.RESET_ALL}")
    if outcome.horizon is not None:
        print(f"Horizon: forall wins within {outcome.horizon} round(s)")
    else:
        survived = 'every' if outcome.survived is None else outcome.survived
        print(f"Horizon: none (exists survives {survived} round(s))")
    if outcome.opening:
        print(f"Opening: {outcome.opening}")
    print(f"States explored: {outcome.states_explored:,}")
    print(f"Solved in {outcome.duration:.3f}s")

    if show_strategy and outcome.strategy:
        print()
        print(f"Strategy ({len(outcome.strategy)} entries):")
        for position, move in list(outcome.strategy.items())[:40]:
            print(f"  {Fore.CYAN}{position}{Style.RESET_ALL} -> {move}")
        if len(outcome.strategy) > 40:
            print(f"  ... {len(outcome.strategy) - 40} more")
    print("=" * 60)


def DisplayStructureSummary(structure):
    """One-screen summary of a constructed atom structure"""
    print(f"{Style.BRIGHT}{structure.name or 'structure'}{Style.RESET_ALL}")
    dimension = getattr(structure, 'dimension', None)
    print(f"  Kind: {'CA' if dimension is not None else 'RA'}" + (f" (dimension {dimension})" if dimension else ""))
    print(f"  Atoms: {len(structure.atoms)}")
    if hasattr(structure, 'cycles'):
        print(f"  Consistent triples: {len(structure.cycles)}")
    for key, value in sorted((structure.provenance or {}).items()):
        if key != 'cycles':
            print(f"  {key}: {value}")


def DisplayGridReport(report, json_output=False):
    """Rows of a grid report as a table"""
    if json_output:
        DisplayJSON(report)
        return

    from utils.export import FlatRows, FormatCell, ReportColumns

    columns = ReportColumns(report)
    entries = FlatRows(report)
    widths = {c: max([len(c)] + [len(FormatCell(e.get(c))) for e in entries]) for c in columns}
    widths = {c: min(w, 28) for c, w in widths.items()}

    print("=" * 80)
    print(f"{Style.BRIGHT}GRID {report.kind}{Style.RESET_ALL} "
          f"({len(entries)} of {len(report.rows)} rows, engine {report.metadata.get('engine_version', '?')})")
    print("=" * 80)
    print(' '.join(f"{c:<{widths[c]}}" for c in columns))
    print("-" * 80)
    for entry in entries:
        cells = []
        for c in columns:
            text = FormatCell(entry.get(c))[:widths[c]]
            if c == 'error' and text:
                text = f"{Fore.RED}{text}{Style.RESET_ALL}"
            cells.append(f"{text:<{widths[c]}}")
        print(' '.join(cells))
    print("-" * 80)

    errors = sum(1 for e in entries if e.get('error'))
    if errors:
        print(f"{Fore.YELLOW}{errors} row(s) recorded errors{Style.RESET_ALL}")
    print("=" * 80)
