from typing import Iterator

from lib.unfolding import OccurrenceNet, condition_label, event_label


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace('"', r"\""))


def _dot_lines(net: OccurrenceNet, name: str) -> Iterator[str]:
    yield f"digraph {_gvquote(name)} {{\n"
    yield "  rankdir=TB;\n"
    for c in net.conditions:
        attributes = ["shape=circle", f"label={_gvquote(condition_label(net, c))}"]
        if c.parent is None:
            attributes += ["style=filled", 'fillcolor="lightblue"']
        yield f"  c{c.id} [{' '.join(attributes)}];\n"
    for e in net.events:
        attributes = ["shape=box", f"label={_gvquote(event_label(net, e))}"]
        if e.is_cutoff:
            attributes.append("style=dashed")
        yield f"  e{e.id} [{' '.join(attributes)}];\n"
    for source_kind, source, target_kind, target in net.flow():
        yield f"  {source_kind}{source} -> {target_kind}{target};\n"
    yield "}\n"


def emit_dot(net: OccurrenceNet, name: str = "prefix") -> str:
    """
    Graphviz rendering of a prefix: conditions are circles labelled "node value" (initial ones
    filled light blue), events are boxes labelled "node+" or "node-", cut-offs are dashed.
    """
    return "".join(_dot_lines(net, name))
