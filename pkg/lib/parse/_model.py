from typing import Any, NamedTuple, Optional

import structlog
from lark import Transformer, UnexpectedInput, v_args
from pydantic import ValidationError

from lib.constraints import ConstraintKind, InfluenceConstraint
from lib.model import MAX_DOMAIN, InfluenceGraph, Prn
from lib.parse._common import _make_parser
from lib.parse.exceptions import ModelParsingError
from lib.parse.models import ModelFile

log = structlog.get_logger(__name__)

model_parser = _make_parser("model")

KNOWN_OPTIONS = ("minmax",)


class Directive(NamedTuple):
    kind: str
    line: Optional[int]
    payload: Any


class ModelTransformer(Transformer):
    @v_args(meta=True)
    def node(self, meta, v):
        name, maximum = v
        return Directive("node", meta.line, (str(name), int(maximum)))

    def sign(self, v):
        (polarity,) = v
        return Directive("sign", polarity.line, str(polarity))

    def observable(self, v):
        return Directive("observable", None, None)

    @v_args(meta=True)
    def edge(self, meta, v):
        regulator, target, *attributes = v
        return Directive("edge", meta.line, (str(regulator), str(target), attributes))

    def assignment(self, v):
        name, value = v
        return Directive("assignment", name.line, (str(name), int(value)))

    @v_args(meta=True)
    def init(self, meta, v):
        return Directive("init", meta.line, v)

    @v_args(meta=True)
    def option(self, meta, v):
        (name,) = v
        return Directive("option", meta.line, str(name))

    def start(self, v):
        return list(v)


def _build(directives: list[Directive], name: Optional[str]) -> ModelFile:
    names: list[str] = []
    maxima: list[int] = []
    edges: dict[tuple[str, str], tuple[Optional[str], bool]] = {}
    init: dict[str, int] = {}
    minmax = False

    def declared(node: str, line: Optional[int]) -> int:
        if node not in names:
            raise ModelParsingError(f"node {node!r} is used before it is declared", line)
        return names.index(node)

    for d in directives:
        if d.kind == "node":
            node, maximum = d.payload
            if node in names:
                raise ModelParsingError(f"node {node!r} is declared twice", d.line)
            if maximum > MAX_DOMAIN:
                raise ModelParsingError(f"maximum {maximum} exceeds {MAX_DOMAIN}", d.line)
            names.append(node)
            maxima.append(maximum)
        elif d.kind == "edge":
            regulator, target, attributes = d.payload
            declared(regulator, d.line)
            declared(target, d.line)
            if (regulator, target) in edges:
                raise ModelParsingError(f"edge {regulator} -> {target} is declared twice", d.line)
            signs = {a.payload for a in attributes if a.kind == "sign"}
            if len(signs) > 1:
                raise ModelParsingError(
                    f"edge {regulator} -> {target} is both positive and negative", d.line
                )
            observable = any(a.kind == "observable" for a in attributes)
            edges[regulator, target] = (signs.pop() if signs else None, observable)
        elif d.kind == "init":
            for assignment in d.payload:
                node, value = assignment.payload
                v = declared(node, assignment.line)
                if node in init:
                    raise ModelParsingError(f"{node} is initialised twice", assignment.line)
                if value > maxima[v]:
                    raise ModelParsingError(
                        f"initial value {node}={value} is outside 0..{maxima[v]}", assignment.line
                    )
                init[node] = value
        elif d.kind == "option":
            if d.payload not in KNOWN_OPTIONS:
                raise ModelParsingError(f"unknown option {d.payload!r}", d.line)
            minmax = minmax or d.payload == "minmax"

    if not names:
        raise ModelParsingError("the model declares no node")

    constraints = []
    for (regulator, target), (sign, observable) in edges.items():
        u, v = names.index(regulator), names.index(target)
        if sign is not None:
            constraints.append(InfluenceConstraint(u, v, ConstraintKind(sign)))
        if observable:
            constraints.append(InfluenceConstraint(u, v, ConstraintKind.OBSERVABLE))
    try:
        graph = InfluenceGraph(
            node_names=tuple(names),
            influences=tuple((names.index(u), names.index(v)) for u, v in edges),
        )
        return ModelFile(
            prn=Prn(graph=graph, max_values=tuple(maxima)),
            constraints=tuple(constraints),
            minmax=minmax,
            x0=tuple(init.get(node, 0) for node in names),
            name=name,
        )
    except ValidationError as err:
        raise ModelParsingError(str(err)) from err


def parse_model(text: str, name: Optional[str] = None) -> ModelFile:
    if not text.endswith("\n"):
        text += "\n"
    try:
        tree = model_parser.parse(text)
    except UnexpectedInput as err:
        line = getattr(err, "line", None)
        log.debug("Model syntax error", line=line, error=str(err))
        raise ModelParsingError(str(err).splitlines()[0], line if line and line > 0 else None)
    model = _build(ModelTransformer().transform(tree), name)
    log.info(
        "Model parsed",
        model=name,
        nodes=model.prn.node_count,
        influences=len(model.prn.graph.influences),
        constraints=len(model.constraints),
    )
    return model


def format_model(model: ModelFile) -> str:
    """Canonical text of a model: parse_model(format_model(m)) == m for unnamed models"""
    prn = model.prn
    lines = [f"node {name} {m}" for name, m in zip(prn.names, prn.max_values)]
    kinds = {(c.regulator, c.target, c.kind) for c in model.constraints}
    for u, v in prn.graph.influences:
        parts = [f"edge {prn.names[u]} -> {prn.names[v]}"]
        for kind in (ConstraintKind.POSITIVE, ConstraintKind.NEGATIVE):
            if (u, v, kind) in kinds:
                parts.append(f"sign={kind.value}")
        if (u, v, ConstraintKind.OBSERVABLE) in kinds:
            parts.append("observable")
        lines.append(" ".join(parts))
    lines.append("init " + " ".join(f"{name}={x}" for name, x in zip(prn.names, model.x0)))
    if model.minmax:
        lines.append("option minmax")
    return "\n".join(lines) + "\n"
