"""
Performance tests for arcade
Tests timing of constructions, validation and game solving on small inputs
"""

import sys
import os
import time
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from algebra.graphs import CalculateChromaticNumber, GenerateDisjointCliques, ParseGraphSpec, ParseOrderSpec
from algebra.monk import BuildAlpha
from algebra.validation import ValidateRA
from games.ef import EFConfig, SolveEF


def test_alpha_validation_performance():
    """Test that a 28-atom structure validates quickly"""
    R = BuildAlpha(GenerateDisjointCliques(3, 3), 3)
    start = time.time()

    report = ValidateRA(R)

    duration = time.time() - start
    assert report.valid
    # Should be well under 10 seconds
    assert duration < 10, f"Validation too slow: {duration:.2f}s"


def test_chromatic_number_performance():
    """Test chromatic number on a 20-vertex band graph"""
    G = ParseGraphSpec("band:20:4")
    start = time.time()

    for _ in range(10):
        CalculateChromaticNumber(G)

    avg_time = (time.time() - start) / 10 * 1000
    assert avg_time < 500, f"Chromatic number too slow: {avg_time:.2f}ms"


def test_pebble_game_performance():
    """Test an unbounded pebble game on 5- and 4-chains"""
    cfg = EFConfig(ParseOrderSpec("chain:5"), ParseOrderSpec("chain:4"), 3)
    start = time.time()

    outcome = SolveEF(cfg)

    duration = time.time() - start
    assert outcome.winner is not None
    assert duration < 10, f"Pebble game too slow: {duration:.2f}s"
