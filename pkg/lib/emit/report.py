import io

from rich import box
from rich.console import Console
from rich.table import Table

from lib.emit.models import RunStats

FORMATS = ("text", "json")


def format_event_count(events: int, events_with_cutoffs: int) -> str:
    return f"{events} ({events_with_cutoffs})"


def _table(stats: RunStats) -> Table:
    table = Table(box=box.SIMPLE_HEAD)
    table.add_column("Model")
    table.add_column("Nodes", justify="right")
    table.add_column("# events (incl. cut-offs)", justify="right")
    table.add_column("Conditions", justify="right")
    table.add_column("Reachable states", justify="right")
    row = [
        stats.model or "-",
        str(stats.nodes),
        format_event_count(stats.events, stats.events_with_cutoffs),
        str(stats.conditions),
        str(stats.reachable_states),
    ]
    if stats.runtime_ms is not None:
        table.add_column("Runtime (ms)", justify="right")
        row.append(str(stats.runtime_ms))
    if not stats.complete:
        table.add_column("Status")
        row.append(f"incomplete: {stats.reason}")
    table.add_row(*row)
    return table


def emit_report(stats: RunStats, format: str = "text") -> str:
    if format == "json":
        return stats.json(exclude_none=True, indent=2) + "\n"
    if format == "text":
        console = Console(file=io.StringIO(), width=160, color_system=None, force_terminal=False)
        console.print(_table(stats))
        return console.file.getvalue()
    raise ValueError(f"Unknown report format {format!r}, expected one of {FORMATS}")
