import csv
import io
import json
from typing import Any, Dict, List

from algebra.errors import PreconditionError, StructureError
from utils.grid import Report

EMIT_FORMATS = ('json', 'csv', 'markdown')


def ReportColumns(report: Report) -> List[str]:
    """index, the varying parameters in grid order, then the result columns"""
    names: List[str] = list(report.metadata.get('ranges', {}))
    for row in report.rows:
        for name in (row or {}).get('params', {}):
            if name not in names:
                names.append(name)
    return ['index'] + names + ['outcome', 'horizon', 'seconds', 'error']


def FlatRows(report: Report) -> List[Dict[str, Any]]:
    flat = []
    for row in report.rows:
        if row is None:
            continue
        entry = {'index': row['index']}
        entry.update(row.get('params', {}))
        for key in ('outcome', 'horizon', 'seconds', 'error'):
            entry[key] = row.get(key)
        flat.append(entry)
    return flat


def FormatCell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def EmitJSON(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True)


def EmitCSV(report: Report) -> str:
    columns = ReportColumns(report)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator='\n')
    writer.writeheader()
    for entry in FlatRows(report):
        writer.writerow({c: FormatCell(entry.get(c)) for c in columns})
    return buffer.getvalue()


def EmitMarkdown(report: Report) -> str:
    columns = ReportColumns(report)
    lines = ['| ' + ' | '.join(columns) + ' |', '|' + '|'.join('---' for _ in columns) + '|']
    for entry in FlatRows(report):
        lines.append('| ' + ' | '.join(FormatCell(entry.get(c)).replace('|', '\\|') for c in columns) + ' |')
    return '\n'.join(lines) + '\n'


def Emit(report: Report, fmt: str) -> str:
    """Render a report as json, csv or a markdown table"""
    emitters = {'json': EmitJSON, 'csv': EmitCSV, 'markdown': EmitMarkdown}
    if fmt not in emitters:
        raise PreconditionError(f"unknown format '{fmt}' (use {', '.join(EMIT_FORMATS)})")
    return emitters[fmt](report)


def _number(text: str):
    if text == '':
        return None
    for kind in (int, float):
        try:
            return kind(text)
        except ValueError:
            pass
    return text


def IngestReport(text: str, fmt: str = 'json') -> Report:
    """
    Read an emitted report back

    json restores the report exactly; csv restores the flat rows with
    numbers parsed and parameters taken from the non-result columns.
    """
    if fmt == 'json':
        try:
            return Report.from_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise StructureError(f"report is not valid JSON: {e}") from None
    if fmt == 'csv':
        reader = csv.DictReader(io.StringIO(text))
        result_columns = {'index', 'outcome', 'horizon', 'seconds', 'error'}
        rows = []
        for entry in reader:
            rows.append({
                'index': int(entry['index']),
                'params': {k: _number(v) for k, v in entry.items() if k not in result_columns},
                'outcome': _number(entry.get('outcome', '')),
                'horizon': _number(entry.get('horizon', '')),
                'seconds': _number(entry.get('seconds', '')),
                'error': entry.get('error') or None
            })
        return Report('csv', rows, {})
    raise PreconditionError(f"cannot ingest format '{fmt}' (use json or csv)")


def ExportReport(report: Report, output_path: str, fmt: str = 'json') -> bool:
    """Write an emitted report to a file"""
    try:
        text = Emit(report, fmt)
        with open(output_path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        print(f"\n[SUCCESS] {fmt.upper()} report exported to: {output_path}")
        return True

    except (OSError, PreconditionError) as e:
        print(f"\n[ERROR] Error exporting {fmt} report: {e}")
        return False
