"""
Tests for experiment grids, report reuse and report export
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import pytest

from algebra.errors import PreconditionError, StructureError
from games.arena import EXISTS, FORALL
from utils.export import Emit, ExportReport, IngestReport, ReportColumns
from utils.grid import ExperimentGrid, RunGrid


def ef_grid(output=None):
    return ExperimentGrid('ef', {'A': 'chain:3', 'B': 'chain:2', 'pebbles': 2}, {'rounds': [1, 2, 'inf']}, output)


@pytest.fixture
def ef_report():
    return RunGrid(ef_grid(), max_workers=2, include_timing=False)


def test_ef_grid_rows(ef_report):
    """Test rows in grid order with outcome and horizon per round count"""
    assert ef_report.complete
    assert [row['outcome'] for row in ef_report.rows] == [EXISTS, FORALL, FORALL]
    assert [row['horizon'] for row in ef_report.rows] == [None, 2, 2]
    assert [row['params'] for row in ef_report.rows] == [{'rounds': 1}, {'rounds': 2}, {'rounds': 'inf'}]
    assert all(row['seconds'] is None for row in ef_report.rows)


def test_grid_points_product():
    grid = ExperimentGrid('chromatic', {}, {'graph': ['cycle:5', 'cycle:6'], 'n': [1, 2]})
    assert grid.points()[1] == {'graph': 'cycle:5', 'n': 2}
    assert len(grid.points()) == 4


def test_chromatic_grid():
    grid = ExperimentGrid('chromatic', {}, {'graph': ['cycle:5', 'cycle:6', 'complete:4']})
    report = RunGrid(grid, max_workers=1)
    assert [row['outcome'] for row in report.rows] == [3, 2, 4]


def test_row_errors_are_recorded():
    grid = ExperimentGrid('chromatic', {}, {'graph': ['cycle:5', 'wheel:5']})
    report = RunGrid(grid, max_workers=1)

    assert report.rows[0]['error'] is None
    assert report.rows[1]['outcome'] is None
    assert report.rows[1]['error'].startswith('StructureError')


@pytest.mark.parametrize("kind,ranges", [('ef', {}), ('ef', {'rounds': []}), ('dance', {'x': [1]})])
def test_bad_grids(kind, ranges):
    with pytest.raises(PreconditionError):
        ExperimentGrid(kind, {}, ranges)


def test_rerun_reuses_rows(tmp_path):
    """Test that a second run with the same output file gives the same report"""
    output = str(tmp_path / "reports" / "ef.json")
    first = RunGrid(ef_grid(output), include_timing=False)
    second = RunGrid(ef_grid(output), include_timing=False)

    assert first.to_dict() == second.to_dict()
    assert os.path.exists(output)


def test_changed_params_are_not_reused(tmp_path):
    output = str(tmp_path / "ef.json")
    RunGrid(ef_grid(output), include_timing=False)
    other = ExperimentGrid('ef', {'A': 'chain:2', 'B': 'chain:2', 'pebbles': 2}, {'rounds': [1, 2, 'inf']}, output)
    report = RunGrid(other, include_timing=False)

    assert [row['outcome'] for row in report.rows] == [EXISTS, EXISTS, EXISTS]


def test_grid_file_round_trip(tmp_path):
    path = tmp_path / "grid.json"
    path.write_text('{"kind": "ef", "params": {"A": "chain:3", "B": "chain:2"}, "ranges": {"rounds": [2]}}')

    grid = ExperimentGrid.load(str(path))
    assert grid.to_dict()['ranges'] == {'rounds': [2]}
    with pytest.raises(StructureError):
        ExperimentGrid.from_dict({'params': {}})


def test_split_horizon_rows():
    """Test that survivable rounds do not drop as red copies grow, and horizons stop at the cap"""
    grid = ExperimentGrid('split_horizon', {'A': 'chain:2', 'B': 'chain:1', 'node_budget': 4, 'cap': 3,
                                            'shade_family': 'full'}, {'K': [1, 2, 3]})
    report = RunGrid(grid, max_workers=1, include_timing=False)
    outcomes = [row['outcome'] for row in report.rows]

    assert all(row['error'] is None for row in report.rows)
    assert outcomes == sorted(outcomes)
    for row in report.rows:
        assert 0 <= row['outcome'] <= 3
        assert (row['horizon'] is None) == (row['outcome'] >= 3)


# Export

def test_columns_follow_ranges(ef_report):
    assert ReportColumns(ef_report) == ['index', 'rounds', 'outcome', 'horizon', 'seconds', 'error']


def test_csv_round_trip(ef_report):
    ingested = IngestReport(Emit(ef_report, 'csv'), 'csv')

    assert ingested.kind == 'csv'
    assert [row['horizon'] for row in ingested.rows] == [None, 2, 2]
    assert [row['params'] for row in ingested.rows] == [{'rounds': 1}, {'rounds': 2}, {'rounds': 'inf'}]


def test_json_round_trip(ef_report):
    assert IngestReport(Emit(ef_report, 'json')).to_dict() == ef_report.to_dict()


def test_markdown_table(ef_report):
    lines = Emit(ef_report, 'markdown').splitlines()

    assert lines[0].startswith('| index | rounds |')
    assert set(lines[1]) <= {'|', '-'}
    assert len(lines) == 2 + len(ef_report.rows)


def test_unknown_formats(ef_report):
    with pytest.raises(PreconditionError):
        Emit(ef_report, 'yaml')
    with pytest.raises(PreconditionError):
        IngestReport('', 'markdown')
    with pytest.raises(StructureError):
        IngestReport('{oops', 'json')


def test_export_to_file(ef_report, tmp_path):
    path = tmp_path / "report.csv"

    assert ExportReport(ef_report, str(path), 'csv') is True
    assert path.read_text().startswith('index,rounds')


def test_export_to_pdf(ef_report, tmp_path):
    from utils.export_pdf import ExportToPDF
    path = tmp_path / "report.pdf"

    assert ExportToPDF(ef_report, str(path)) is True
    assert path.read_bytes().startswith(b'%PDF')
