"""
Interactive CLI Mode
Menu-driven interface for setting up, playing, solving and replaying games
"""

import json
import os
import sys
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from algebra.errors import ArcadeError
from algebra.graphs import ParseOrderSpec
from algebra.rainbow import RainbowSignature, SplitReds
from algebra.serialize import LoadStructure
from api import ArcadeAPI
from games.arena import EXISTS, FORALL, ParseRounds
from games.ef import EFArena, EFConfig
from games.experiments import AtomicGameConfig, BuildAtomicArena
from games.play import PlayGame, ReplayTranscript, Transcript
from utils.config import ShowConfig
from utils.logging_config import log_error
from utils.output_formatter import DisplayGameOutcome

ROLES = {'exists': EXISTS, 'forall': FORALL, 'watch': None}


class InteractiveCLI:
    """Interactive command-line interface for arcade games"""

    def __init__(self, api: Optional[ArcadeAPI] = None, input_func: Callable[[str], str] = input):
        """Initialize interactive CLI"""
        self.api = api or ArcadeAPI()
        self.input_func = input_func
        self.session_history: List[Dict[str, Any]] = []
        self.game: Optional[Dict[str, Any]] = None
        self.running = True

    def clear_screen(self):
        """Clear the terminal screen"""
        if self.input_func is input:
            os.system('cls' if os.name == 'nt' else 'clear')

    def print_header(self):
        print("\n" + "=" * 70)
        print(" " * 22 + "arcade - Interactive Mode")
        print("=" * 70)

    def print_menu(self):
        print("\n" + "-" * 70)
        print("MAIN MENU")
        print("-" * 70)
        current = self.game['arena'].name if self.game else 'none'
        print(f"  Current game: {current}")
        print()
        print("  1. Set Up Pebble Game (EF)")
        print("  2. Set Up Rainbow Graph Game")
        print("  3. Set Up Network Game on a Saved Structure")
        print("  4. Play Current Game")
        print("  5. Solve Current Game")
        print("  6. Replay Transcript")
        print("  7. View Configuration")
        print("  8. View Session History")
        print("  0. Exit")
        print("-" * 70)

    def get_input(self, prompt: str, default: Optional[str] = None) -> str:
        """Get user input with optional default value"""
        if default:
            prompt = f"{prompt} [{default}]: "
        else:
            prompt = f"{prompt}: "

        value = self.input_func(prompt).strip()
        return value if value else (default or "")

    def get_flag(self, prompt: str, default: bool = False) -> bool:
        return self.get_input(f"{prompt} (y/n)", 'y' if default else 'n').lower() == 'y'

    def record(self, action: str, **details):
        self.session_history.append({'timestamp': datetime.now().isoformat(), 'action': action, **details})

    def set_game(self, arena, rounds, solve: Callable[[], Any], setup: Dict[str, Any]):
        self.game = {'arena': arena, 'rounds': rounds, 'solve': solve}
        print(f"\n[OK] Game ready: {arena.name}")
        self.record('setup', game=arena.name, **setup)

    def setup_ef(self):
        """Option 1: EF pebble game between two ordered structures"""
        print("\n--- Pebble Game ---\n")
        A = ParseOrderSpec(self.get_input("Structure A", "chain:3"))
        B = ParseOrderSpec(self.get_input("Structure B", "chain:2"))
        pebbles = int(self.get_input("Pebbles", "2"))
        rounds = ParseRounds(self.get_input("Rounds (number or inf)", "inf"))
        cfg = EFConfig(A, B, pebbles, rounds)
        arena = EFArena(cfg, self.api.caps)
        self.set_game(arena, rounds, lambda: self.api.solve_ef(A, B, pebbles, rounds), cfg.to_dict())

    def setup_rainbow(self):
        """Option 2: coloured-graph game on a rainbow signature"""
        print("\n--- Rainbow Graph Game ---\n")
        n = int(self.get_input("Dimension n", "3"))
        A = ParseOrderSpec(self.get_input("Tint structure A", "chain:2"))
        B = ParseOrderSpec(self.get_input("Red structure B", "chain:1"))
        shade_family = self.get_input("Shade family (all/full)", "full")
        copies = self.get_input("Red copies K (blank for unsplit)", "")
        sig = RainbowSignature(n, A, B, shade_family=shade_family)
        if copies:
            sig = SplitReds(sig, int(copies))
        self._setup_atomic(sig, default_nodes=str(n + 1), allow_opening=True)

    def setup_network(self):
        """Option 3: network game on a saved CA atom structure"""
        print("\n--- Network Game ---\n")
        structure = LoadStructure(self.get_input("Structure file (JSON)"))
        if getattr(structure, 'dimension', None) is None:
            print("\n[ERROR] Network games need a CA atom structure")
            return
        self._setup_atomic(structure, default_nodes=str(structure.dimension + 1), allow_opening=False)

    def _setup_atomic(self, structure, default_nodes: str, allow_opening: bool):
        nodes = int(self.get_input("Node budget", default_nodes))
        rounds = ParseRounds(self.get_input("Rounds (number or inf)", "3"))
        reuse = self.get_flag("Allow node reuse?")
        opening = allow_opening and self.get_flag("Start from the fixed opening graph?")
        cfg = AtomicGameConfig(structure, nodes, rounds, reuse, opening)
        arena = BuildAtomicArena(cfg, self.api.caps)
        self.set_game(arena, rounds,
                      lambda: self.api.solve_atomic(structure, nodes, rounds, reuse, opening),
                      {'nodes': nodes, 'rounds': 'omega' if rounds is None else rounds, 'reuse': reuse})

    def play_current(self):
        """Option 4: play the current game against the engine"""
        if not self._require_game():
            return
        role = self.get_input("Play as (exists/forall/watch)", "exists").lower()
        if role not in ROLES:
            print(f"\n[ERROR] Unknown role '{role}'")
            return
        transcript = PlayGame(self.game['arena'], self.game['rounds'], ROLES[role],
                              input_func=self.input_func, caps=self.api.caps, workers=self.api.workers)
        self.record('play', game=transcript.game, role=role, winner=transcript.winner,
                    moves=len(transcript.moves))

    def solve_current(self):
        """Option 5: decide the current game"""
        if not self._require_game():
            return
        print("\nSolving...")
        outcome = self.game['solve']()
        DisplayGameOutcome(outcome)
        self.record('solve', game=outcome.game, winner=outcome.winner, horizon=outcome.horizon)

    def replay_transcript(self):
        """Option 6: replay a saved transcript on the current game"""
        if not self._require_game():
            return
        transcript = Transcript.load(self.get_input("Transcript file"))
        session = ReplayTranscript(self.game['arena'], transcript)
        for line in session.transcript.log:
            print(f"  {line}")
        print(f"\nReplayed {len(transcript.moves)} move(s); winner: {session.winner or 'undecided'}")
        self.record('replay', game=transcript.game, winner=session.winner)

    def view_config(self):
        """Option 7"""
        ShowConfig()

    def view_session_history(self):
        """Option 8"""
        print("\n--- Session History ---\n")
        if not self.session_history:
            print("No actions in this session yet")
            return
        print(f"Session started at: {self.session_history[0]['timestamp']}")
        print(f"Total actions: {len(self.session_history)}\n")
        for idx, item in enumerate(self.session_history, 1):
            details = {k: v for k, v in item.items() if k not in ('timestamp', 'action')}
            print(f"  {idx}. [{item['timestamp'][11:19]}] {item['action']} {details}")

    def exit_cli(self):
        """Option 0"""
        if self.session_history:
            print(f"\nSession summary:\n  Total actions: {len(self.session_history)}")
            if self.get_flag("\nSave session history?"):
                filename = self.get_input("Filename", "arcade_session.json")
                try:
                    with open(filename, 'w', encoding='utf-8') as f:
                        json.dump(self.session_history, f, indent=2, default=str)
                    print(f"\n[OK] Session history saved to: {filename}")
                except OSError as e:
                    print(f"\n[ERROR] Failed to save: {e}")
        print("\nGoodbye.")
        self.running = False

    def _require_game(self) -> bool:
        if self.game is None:
            print("\n[ERROR] Set up a game first (options 1-3)")
            return False
        return True

    def run(self):
        """Main interactive loop"""
        actions = {
            '1': self.setup_ef,
            '2': self.setup_rainbow,
            '3': self.setup_network,
            '4': self.play_current,
            '5': self.solve_current,
            '6': self.replay_transcript,
            '7': self.view_config,
            '8': self.view_session_history,
            '0': self.exit_cli
        }
        self.clear_screen()
        self.print_header()

        while self.running:
            self.print_menu()
            choice = self.get_input("\nSelect an option (0-8)")
            action = actions.get(choice)
            if action is None:
                print("\n[ERROR] Invalid option. Please select 0-8.")
                continue
            try:
                action()
            except (ArcadeError, OSError, ValueError) as e:
                log_error(f"interactive option {choice}", e)
                print(f"\n[ERROR] {e}")


def main():
    """Entry point for interactive CLI"""
    try:
        cli = InteractiveCLI()
        cli.run()
    except KeyboardInterrupt:
        print("\n\nInterrupted by user. Exiting...")
        sys.exit(0)


if __name__ == "__main__":
    main()
