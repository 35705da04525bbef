"""
    Influence graphs, parametric regulatory networks and their concrete transition relation.

    Nodes are numbered from 0 inside the library. Names (or 1-based numbers when a graph is built
    without names) are only used at the parse/print boundary.

    The parameter coordinates of a network enumerate every pair <v, omega> where omega is a valid
    assignment of v's regulators. They are ordered by node first, then lexicographically on
    omega with the lowest-id regulator as the most significant digit. Every vector indexed by
    parameters (parametrisations, box bounds, Parikh vectors) uses this order.
"""
import itertools
import math
from typing import Iterator, NamedTuple

import structlog
from pydantic import BaseModel, PrivateAttr, validator

from lib.exceptions import InvalidNodeError, InvalidRegulatorStateError, InvalidStateError

log = structlog.get_logger(__name__)

MAX_DOMAIN = 255

State = tuple[int, ...]
RegulatorState = tuple[int, ...]
Parametrisation = tuple[int, ...]


class ParamIndex(NamedTuple):
    node: int
    context: RegulatorState
    coordinate: int


class Transition(NamedTuple):
    source: State
    node: int
    direction: int

    @property
    def target(self) -> State:
        values = list(self.source)
        values[self.node] += self.direction
        return tuple(values)


class InfluenceGraph(BaseModel):
    node_names: tuple[str, ...]
    influences: tuple[tuple[int, int], ...] = ()

    class Config:
        frozen = True
        copy_on_model_validation = "none"

    @validator("node_names")
    def names_are_unique(cls, v):
        if not v:
            raise ValueError("an influence graph needs at least one node")
        if len(set(v)) != len(v):
            raise ValueError("node names must be unique")
        return v

    @validator("influences")
    def endpoints_are_nodes(cls, v, values):
        n = len(values.get("node_names", ()))
        for u, w in v:
            if not (0 <= u < n and 0 <= w < n):
                raise ValueError(f"influence ({u},{w}) references a missing node")
        return tuple(sorted(set(v)))

    @classmethod
    def numbered(cls, node_count: int, influences) -> "InfluenceGraph":
        """Graph whose nodes are named by their 1-based ids"""
        names = tuple(str(i + 1) for i in range(node_count))
        return cls(node_names=names, influences=tuple(influences))

    @property
    def node_count(self) -> int:
        return len(self.node_names)

    def regulators(self, v: int) -> tuple[int, ...]:
        return tuple(u for u, w in self.influences if w == v)

    def out_degree(self, v: int) -> int:
        return sum(1 for u, _ in self.influences if u == v)

    def node_index(self, name: str) -> int:
        try:
            return self.node_names.index(name)
        except ValueError:
            raise InvalidNodeError(f"Unknown node {name!r}") from None


class Prn(BaseModel):
    graph: InfluenceGraph
    max_values: tuple[int, ...]

    _hash: int = PrivateAttr()
    _regulators: tuple[tuple[int, ...], ...] = PrivateAttr()
    _offsets: tuple[int, ...] = PrivateAttr()
    _strides: tuple[tuple[int, ...], ...] = PrivateAttr()
    _contexts: tuple[RegulatorState, ...] = PrivateAttr()
    _coordinate_node: tuple[int, ...] = PrivateAttr()
    _upper: Parametrisation = PrivateAttr()
    _lines: dict = PrivateAttr()

    class Config:
        frozen = True
        copy_on_model_validation = "none"

    @validator("max_values")
    def values_fit_domains(cls, v, values):
        graph = values.get("graph")
        if graph is not None and len(v) != graph.node_count:
            raise ValueError(f"expected {graph.node_count} maximum values, got {len(v)}")
        for m in v:
            if not 0 <= m <= MAX_DOMAIN:
                raise ValueError(f"maximum value {m} is outside 0..{MAX_DOMAIN}")
        return v

    def __init__(self, **data):
        super().__init__(**data)
        self._hash = hash((self.graph.node_names, self.graph.influences, self.max_values))
        regulators = tuple(self.graph.regulators(v) for v in range(self.node_count))
        offsets, strides, contexts, coordinate_node = [], [], [], []
        for v, regs in enumerate(regulators):
            offsets.append(len(contexts))
            radices = [self.max_values[u] + 1 for u in regs]
            strides.append(tuple(math.prod(radices[i + 1:]) for i in range(len(regs))))
            for omega in itertools.product(*(range(r) for r in radices)):
                contexts.append(omega)
                coordinate_node.append(v)
        self._regulators = regulators
        self._offsets = tuple(offsets)
        self._strides = tuple(strides)
        self._contexts = tuple(contexts)
        self._coordinate_node = tuple(coordinate_node)
        self._upper = tuple(self.max_values[v] for v in coordinate_node)
        self._lines = {}
        for v, regs in enumerate(regulators):
            for pos, u in enumerate(regs):
                self._lines[v, pos] = self._build_lines(v, pos)
            if self.max_values[v] > self.graph.out_degree(v):
                log.warning(
                    "Maximum value exceeds out-degree",
                    node=self.graph.node_names[v],
                    max_value=self.max_values[v],
                    out_degree=self.graph.out_degree(v),
                )

    def __hash__(self):
        return self._hash

    def _build_lines(self, v: int, pos: int) -> tuple[tuple[int, ...], ...]:
        u = self._regulators[v][pos]
        stride = self._strides[v][pos]
        lines = []
        for k in self.coordinates(v):
            if self._contexts[k][pos] == 0:
                lines.append(tuple(k + x * stride for x in range(self.max_values[u] + 1)))
        return tuple(lines)

    @property
    def node_count(self) -> int:
        return self.graph.node_count

    @property
    def names(self) -> tuple[str, ...]:
        return self.graph.node_names

    @property
    def param_count(self) -> int:
        return len(self._contexts)

    @property
    def upper(self) -> Parametrisation:
        """The all-max parametrisation"""
        return self._upper

    def regulators(self, v: int) -> tuple[int, ...]:
        check_node(self, v)
        return self._regulators[v]

    def regulator_position(self, v: int, u: int) -> int:
        try:
            return self.regulators(v).index(u)
        except ValueError:
            raise InvalidNodeError(f"{self.names[u]} does not regulate {self.names[v]}") from None

    def coordinates(self, v: int) -> range:
        start = self._offsets[v]
        end = self._offsets[v + 1] if v + 1 < self.node_count else self.param_count
        return range(start, end)

    def context_count(self, v: int) -> int:
        return len(self.coordinates(v))

    def context(self, coordinate: int) -> RegulatorState:
        return self._contexts[coordinate]

    def node_of(self, coordinate: int) -> int:
        return self._coordinate_node[coordinate]

    def stride(self, v: int, pos: int) -> int:
        return self._strides[v][pos]

    def lines(self, v: int, pos: int) -> tuple[tuple[int, ...], ...]:
        """
        Coordinates of node v grouped along regulator position pos.

        Each line fixes every other regulator and lists the coordinates for regulator values
        0..m_u in increasing order. Lines are returned by increasing first coordinate.
        """
        return self._lines[v, pos]

    def param_space_size(self) -> int:
        return math.prod(m + 1 for m in self._upper)

    def state_space_size(self) -> int:
        return math.prod(m + 1 for m in self.max_values)

    def states(self) -> Iterator[State]:
        return itertools.product(*(range(m + 1) for m in self.max_values))

    def format_state(self, x: State) -> str:
        return " ".join(f"{name}={value}" for name, value in zip(self.names, x))


def check_node(prn: Prn, v: int) -> None:
    if not 0 <= v < prn.node_count:
        raise InvalidNodeError(f"Node id {v} is outside 0..{prn.node_count - 1}")


def check_state(prn: Prn, x: State) -> None:
    if len(x) != prn.node_count or any(
        not 0 <= value <= m for value, m in zip(x, prn.max_values)
    ):
        raise InvalidStateError(f"{x} is not a state of the network")


def regulator_projection(prn: Prn, v: int, x: State) -> RegulatorState:
    check_node(prn, v)
    check_state(prn, x)
    return tuple(x[u] for u in prn.regulators(v))


def param_coordinate(prn: Prn, v: int, omega: RegulatorState) -> int:
    regs = prn.regulators(v)
    if len(omega) != len(regs) or any(
        not 0 <= value <= prn.max_values[u] for value, u in zip(omega, regs)
    ):
        raise InvalidRegulatorStateError(f"{omega} is not a regulator state of {prn.names[v]}")
    return prn.coordinates(v).start + sum(
        value * prn.stride(v, pos) for pos, value in enumerate(omega)
    )


def param_index(prn: Prn, coordinate: int) -> ParamIndex:
    return ParamIndex(prn.node_of(coordinate), prn.context(coordinate), coordinate)


def make_transition(prn: Prn, x: State, v: int, direction: int) -> Transition:
    check_node(prn, v)
    check_state(prn, x)
    if direction not in (1, -1) or not 0 <= x[v] + direction <= prn.max_values[v]:
        raise InvalidStateError(f"{prn.names[v]} cannot move by {direction} from {x}")
    return Transition(tuple(x), v, direction)


def transition_coordinate(prn: Prn, t: Transition) -> int:
    return param_coordinate(prn, t.node, regulator_projection(prn, t.node, t.source))


def all_transitions(prn: Prn, x: State) -> set[Transition]:
    check_state(prn, x)
    x = tuple(x)
    result = set()
    for v, m in enumerate(prn.max_values):
        if x[v] < m:
            result.add(Transition(x, v, 1))
        if x[v] > 0:
            result.add(Transition(x, v, -1))
    return result


def enabled_transitions(prn: Prn, P: Parametrisation, x: State) -> set[Transition]:
    result = set()
    for t in all_transitions(prn, x):
        target = P[transition_coordinate(prn, t)]
        if (t.direction > 0 and target > x[t.node]) or (t.direction < 0 and target < x[t.node]):
            result.add(t)
    return result


def format_transition(prn: Prn, t: Transition) -> str:
    sign = "+" if t.direction > 0 else "-"
    state = "".join(str(value) for value in t.source)
    target = "".join(str(value) for value in t.target)
    return f"{state}->({prn.names[t.node]},{sign}){target}"
