__all__ = [
    "emit_dot",
    "emit_report",
    "format_event_count",
    "RunStats",
]
from lib.emit.dot import emit_dot
from lib.emit.report import emit_report, format_event_count
from lib.emit.models import RunStats
