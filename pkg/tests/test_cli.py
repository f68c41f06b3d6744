"""
Tests for the command line and the interactive menu
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import json

import pytest

from Main import EXIT_ERROR, EXIT_OK, Main
from algebra.graphs import ParseOrderSpec
from api import ArcadeAPI
from cli.interactive import InteractiveCLI
from games.arena import FORALL
from games.ef import EFArena, EFConfig
from games.play import GameSession
from utils.config import CAPS_ENV, LoadConfig


@pytest.fixture(autouse=True)
def home(tmp_path, monkeypatch):
    """Keep config and log files out of the real home directory"""
    monkeypatch.setenv('HOME', str(tmp_path))
    monkeypatch.delenv(CAPS_ENV, raising=False)
    return tmp_path


def test_chromatic_command(capsys):
    assert Main(['chromatic', '--graph', 'cycle:5']) == EXIT_OK
    out = capsys.readouterr().out

    assert "Chromatic number: 3" in out
    assert "Girth: 5" in out


def test_bad_graph_spec_fails(capsys):
    assert Main(['chromatic', '--graph', 'wheel:5']) == EXIT_ERROR
    assert "[ERROR]" in capsys.readouterr().out


def test_construct_needs_a_graph():
    assert Main(['construct', 'alpha']) == EXIT_ERROR


def test_solve_ef_as_json(capsys):
    assert Main(['--json', 'solve', 'ef', '--A', 'chain:3', '--B', 'chain:2']) == EXIT_OK
    data = json.loads(capsys.readouterr().out)

    assert data['winner'] == FORALL
    assert data['horizon'] == 2


def test_construct_then_validate(tmp_path, capsys):
    path = str(tmp_path / "maddux.json")

    assert Main(['construct', 'maddux', '--n', '4', '--r', '1', '--psi', '4', '-o', path]) == EXIT_OK
    assert os.path.exists(path)
    assert Main(['--json', 'validate', '--structure', path]) == EXIT_OK
    assert '"valid": true' in capsys.readouterr().out


def test_config_set(home):
    assert Main(['--config-set', 'caps', 'max_atoms', '500']) == EXIT_OK
    assert LoadConfig()['caps']['max_atoms'] == 500


def test_grid_command_prints_csv(tmp_path, capsys):
    grid_file = tmp_path / "grid.json"
    grid_file.write_text(json.dumps({'kind': 'ef', 'params': {'A': 'chain:3', 'B': 'chain:2'},
                                     'ranges': {'rounds': [1, 2]}}))

    assert Main(['grid', str(grid_file), '--no-timing', '--format', 'csv']) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'index,rounds,outcome,horizon,seconds,error'
    assert len(lines) == 3


def test_replay_command(tmp_path, capsys):
    """Test that a saved transcript replays through the play command"""
    arena = EFArena(EFConfig(ParseOrderSpec('chain:3'), ParseOrderSpec('chain:2'), 2, 2))
    session = GameSession(arena, 2)
    for k in [0, 0, 1, 0, 0]:
        session.play(k)
    path = str(tmp_path / "game.json")
    session.transcript.save(path)

    assert Main(['play', 'ef', '--A', 'chain:3', '--B', 'chain:2', '--rounds', '2', '--replay', path]) == EXIT_OK
    assert "forall wins" in capsys.readouterr().out


def test_interactive_setup_and_solve():
    """Test a pebble game set up and solved from the menu"""
    answers = iter(['1', 'chain:3', 'chain:2', '2', 'inf', '5', '0', 'n'])
    cli = InteractiveCLI(ArcadeAPI(), input_func=lambda prompt: next(answers))
    cli.run()

    assert [item['action'] for item in cli.session_history] == ['setup', 'solve']
    assert cli.session_history[1]['winner'] == FORALL
    assert cli.running is False


def test_interactive_needs_a_game(capsys):
    answers = iter(['5', '9', '0'])
    cli = InteractiveCLI(ArcadeAPI(), input_func=lambda prompt: next(answers))
    cli.run()
    out = capsys.readouterr().out

    assert "Set up a game first" in out
    assert "Invalid option" in out
    assert cli.session_history == []
