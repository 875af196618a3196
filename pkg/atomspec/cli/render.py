"""Report renderers: text, structured JSON and DOT."""

import json
from typing import Any, Dict, List

from rich.console import Console
from rich.markup import escape
from rich.table import Table

from atomspec.cli.router import Graph
from atomspec.schemas.common import Report


def render_json(report: Report) -> str:
    """Sorted-key JSON; identical reports give identical bytes."""
    return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


def _quote(text: str) -> str:
    """Quote a DOT identifier."""
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(graph: Graph) -> str:
    """Hasse diagram as a DOT digraph, edges pointing from smaller to larger."""
    lines = [f"digraph {_quote(graph.name)} {{", "  rankdir=BT;"]
    for node in graph.nodes:
        lines.append(f"  {_quote(node['id'])} [label={_quote(node['label'])}];")
    for low, high in graph.edges:
        lines.append(f"  {_quote(str(low))} -> {_quote(str(high))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cell(value: Any) -> str:
    """Format one table cell."""
    if isinstance(value, list):
        return "{" + ", ".join(_cell(v) for v in value) + "}"
    if value is None:
        return "-"
    return escape(str(value))


def _table(title: str, rows: List[Dict[str, Any]]) -> Table:
    """Build a rich table from rows of dicts."""
    table = Table(title=title, show_lines=False)
    columns = list(rows[0])
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(_cell(row.get(column)) for column in columns))
    return table


def render_text(report: Report, console: Console) -> None:
    """Human-readable rendering of the same payload as the JSON form."""
    if report.ring is not None:
        console.print(f"[bold]{report.verb}[/bold] {escape(report.ring.label or 'ring')} (order {report.ring.order})")
    if not report.success:
        error = report.error
        console.print(f"[red]{error.code if error else 'failed'}[/red]: {escape(report.message)}")
        if error and error.detail:
            for key, value in sorted(error.detail.items()):
                console.print(f"  {key}: {_cell(value)}")
    for key, value in (report.data or {}).items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            console.print(_table(key, value))
        else:
            console.print(f"{key}: {_cell(value)}")
    for warning in report.warnings:
        console.print(f"[yellow]warning[/yellow] {escape(warning)}")
    if report.timing_ms is not None:
        console.print(f"elapsed: {report.timing_ms} ms")
