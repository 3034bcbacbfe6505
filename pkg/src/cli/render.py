"""Rendering of job results: canonical JSON or rich tables."""
import json
from typing import Any, Dict, List

from pydantic import BaseModel
from rich.console import Console
from rich.table import Table

from src.report import Report


def jsonable(value: Any) -> Any:
    """Reports and pydantic models to dicts, recursively."""
    if isinstance(value, Report):
        return value.to_dict()
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def to_json(result: Dict[str, Any]) -> str:
    """Sorted keys and fixed indentation so identical jobs give identical bytes."""
    return json.dumps(jsonable(result), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _report_table(report: Report) -> Table:
    table = Table(title=f"{report.title}: {'PASS' if report.passed else 'FAIL'}")
    table.add_column("check")
    table.add_column("result")
    table.add_column("detail")
    for check in report.checks:
        table.add_row(check.name, "[green]pass[/green]" if check.passed else "[red]FAIL[/red]", check.detail)
    return table


def _mapping_table(name: str, mapping: Dict[str, Any]) -> Table:
    table = Table(title=name)
    table.add_column("key")
    table.add_column("value")
    for key in sorted(mapping, key=_degree_order):
        table.add_row(str(key), str(mapping[key]))
    return table


def _rows_table(name: str, rows: List[Dict[str, Any]]) -> Table:
    table = Table(title=name)
    columns = list(rows[0])
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(str(row.get(c, "")) for c in columns))
    return table


def _degree_order(key: Any) -> Any:
    text = str(key)
    return (0, int(text), "") if text.lstrip("-").isdigit() else (1, 0, text)


def render_text(result: Dict[str, Any], console: Console) -> None:
    """Scalars first, then one table per mapping, list of records or report."""
    header = [f"{k}: {v}" for k, v in sorted(result.items()) if not isinstance(v, (dict, list, Report))]
    for line in header:
        console.print(line)
    for key in sorted(result):
        value = result[key]
        if isinstance(value, Report):
            console.print(_report_table(value))
        elif isinstance(value, dict) and value:
            console.print(_mapping_table(key, value))
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            console.print(_rows_table(key, value))
        elif isinstance(value, list):
            console.print(f"{key}: {value}")
