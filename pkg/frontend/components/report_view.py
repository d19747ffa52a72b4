# report_view.py - console tables and JSON / markdown writers for suite reports
from pathlib import Path

import jinja2
from rich.console import Console
from rich.table import Table
from rich.text import Text

from backend.app_logging import get_logger
from backend.dm_weights import render_markdown_rows
from backend.file_paths import get_templates_directory
from backend.models import FAIL, PASS, SKIP

logger = get_logger(__name__)

STATUS_STYLES = {
    PASS: "bold green",
    FAIL: "bold red",
    SKIP: "yellow",
}


def _template_env():
    return jinja2.Environment(
        loader=jinja2.FileSystemLoader(str(get_templates_directory())),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
        autoescape=False,
    )


def render_template(name, **context):
    return _template_env().get_template(name).render(**context)


def build_report_table(report, show_timing=False):
    """
    Build the console table for a report.

    Args:
        report: Report from backend.suites.run
        show_timing: add a wall-time column

    Returns:
        rich Table, one row per check in id order
    """
    table = Table(title=f"Suite: {report.suite}", show_lines=False, expand=False)
    table.add_column("Check", style="cyan", no_wrap=True)
    table.add_column("Status", justify="center")
    table.add_column("Detail", overflow="fold")
    if show_timing:
        table.add_column("Time (s)", justify="right")

    for check in report.checks:
        row = [check.id, Text(check.status.upper(), style=STATUS_STYLES[check.status]), check.detail]
        if show_timing:
            row.append(f"{check.elapsed:.3f}")
        table.add_row(*row)
    return table


def build_summary(report):
    s = report.summary()
    text = Text()
    text.append(f"{s['total']} checks: ")
    text.append(f"{s[PASS]} passed", style=STATUS_STYLES[PASS])
    text.append(", ")
    text.append(f"{s[FAIL]} failed", style=STATUS_STYLES[FAIL] if s[FAIL] else "")
    text.append(", ")
    text.append(f"{s[SKIP]} skipped", style=STATUS_STYLES[SKIP] if s[SKIP] else "")
    return text


def print_report(report, console=None, show_timing=False):
    console = console or Console()
    console.print(build_report_table(report, show_timing))
    console.print(build_summary(report))


def _dm_entries(report):
    """Table rows of the dm-tables checks, in table order"""
    rows = [c for c in report.checks
            if c.id.startswith(("dm-tables/eisenstein-", "dm-tables/gaussian-")) and c.data]
    return [c.data for c in rows]


def render_markdown(report):
    """Markdown report; dm-tables rows are laid out like the published tables"""
    dm_rows = _dm_entries(report)
    return render_template(
        "report.md.j2",
        report=report,
        summary=report.summary(),
        dm_tables=render_markdown_rows(dm_rows) if dm_rows else "",
    )


def write_json(report, path, include_timing=True):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.to_json(include_timing) + "\n", encoding='utf-8')
    logger.info(f"Wrote JSON report to {path}")
    return path


def write_markdown(report, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_markdown(report), encoding='utf-8')
    logger.info(f"Wrote markdown report to {path}")
    return path
