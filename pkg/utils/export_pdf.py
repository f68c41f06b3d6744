"""
PDF Export Module
Experiment grid reports as PDF documents using ReportLab
"""

from collections import Counter
from typing import List

from reportlab.lib import colors
from reportlab.lib.enums import TA_CENTER
from reportlab.lib.pagesizes import A4, landscape
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.lib.units import inch
from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

from games.arena import EXISTS, FORALL
from utils.export import FlatRows, FormatCell, ReportColumns
from utils.grid import Report

MAX_CELL = 40
HEADER = colors.HexColor('#3498db')
OUTCOME_COLOURS = {EXISTS: colors.HexColor('#d5f5e3'), FORALL: colors.HexColor('#fadbd8')}


def _clip(text: str) -> str:
    return text if len(text) <= MAX_CELL else text[:MAX_CELL - 3] + '...'


def _table_style(header_size: int, body_size: int, align: str, grid_width: float) -> List[tuple]:
    return [
        ('BACKGROUND', (0, 0), (-1, 0), HEADER),
        ('TEXTCOLOR', (0, 0), (-1, 0), colors.whitesmoke),
        ('ALIGN', (0, 0), (-1, -1), align),
        ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
        ('FONTSIZE', (0, 0), (-1, 0), header_size),
        ('GRID', (0, 0), (-1, -1), grid_width, colors.grey),
        ('FONTNAME', (0, 1), (-1, -1), 'Helvetica'),
        ('FONTSIZE', (0, 1), (-1, -1), body_size),
    ]


def _summary_rows(report: Report) -> List[List[str]]:
    rows = [r for r in report.rows if r is not None]
    outcomes = Counter(str(r.get('outcome')) for r in rows if r.get('error') is None)
    errors = sum(1 for r in rows if r.get('error') is not None)
    summary = [
        ['Item', 'Value'],
        ['Experiment', report.kind],
        ['Engine version', str(report.metadata.get('engine_version', ''))],
        ['Grid points', f"{len(rows)} of {len(report.rows)}"],
        ['Rows with errors', str(errors)]
    ]
    for outcome, count in sorted(outcomes.items()):
        summary.append([f"Outcome {outcome}", str(count)])
    for name, value in sorted(report.metadata.get('params', {}).items()):
        summary.append([f"Param {name}", _clip(FormatCell(value))])
    return summary


def _rows_table(report: Report) -> Table:
    """Grid rows; outcome cells tinted by winner, error rows greyed out"""
    columns = ReportColumns(report)
    outcome_col = columns.index('outcome')
    table_data = [columns]
    style = _table_style(9, 8, 'CENTER', 0.5)
    for i, entry in enumerate(FlatRows(report), start=1):
        table_data.append([_clip(FormatCell(entry.get(c))) for c in columns])
        if entry.get('error') is not None:
            style.append(('TEXTCOLOR', (0, i), (-1, i), colors.grey))
        elif entry.get('outcome') in OUTCOME_COLOURS:
            style.append(('BACKGROUND', (outcome_col, i), (outcome_col, i), OUTCOME_COLOURS[entry['outcome']]))
    table = Table(table_data, repeatRows=1)
    table.setStyle(TableStyle(style))
    return table


def ExportToPDF(report: Report, output_path: str) -> bool:
    """
    Export a grid report to a PDF document

    Args:
        report: Report from RunGrid or IngestReport
        output_path: Path to save PDF file

    Returns:
        True if successful, False otherwise
    """
    try:
        doc = SimpleDocTemplate(output_path, pagesize=landscape(A4), rightMargin=48, leftMargin=48,
                                topMargin=48, bottomMargin=48)
        styles = getSampleStyleSheet()
        title_style = ParagraphStyle('ReportTitle', parent=styles['Heading1'], fontSize=22,
                                     textColor=colors.HexColor('#2c3e50'), spaceAfter=24, alignment=TA_CENTER)
        heading_style = ParagraphStyle('ReportHeading', parent=styles['Heading2'], fontSize=14,
                                       textColor=colors.HexColor('#34495e'), spaceAfter=12, spaceBefore=12)

        summary_table = Table(_summary_rows(report), colWidths=[3 * inch, 4 * inch])
        summary_table.setStyle(TableStyle(_table_style(12, 10, 'LEFT', 1)))

        footer_text = (
            "<para align=center><font size=8 color='#95a5a6'>"
            f"Generated by arcade {report.metadata.get('engine_version', '')}"
            "</font></para>"
        )
        story = [
            Paragraph(f"Experiment Report: {report.kind}", title_style),
            Paragraph("Summary", heading_style),
            summary_table,
            Spacer(1, 0.3 * inch),
            Paragraph("Rows", heading_style),
            _rows_table(report),
            Spacer(1, 0.4 * inch),
            Paragraph(footer_text, styles['Normal'])
        ]
        doc.build(story)

        print(f"PDF report saved to: {output_path}")
        return True

    except OSError as e:
        print(f"Error creating PDF report: {e}")
        return False
