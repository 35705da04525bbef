"""
    Occurrence nets built by unfolding a parametric regulatory network.

    A condition records that a node holds a value; an event moves one node by one unit and
    consumes a condition for the node and for each of its regulators, producing fresh copies.
    Each event carries the parameter box of its local configuration, computed from the boxes of
    the events that produced its pre-conditions.

    Condition and event ids are dense integers in insertion order.
"""
import functools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

import structlog

from lib.constraints import TABLE_CACHE_SIZE, ConstraintSet, narrow_all, p_abs_R
from lib.exceptions import MalformedConfigurationError
from lib.model import Prn, State, check_state, param_coordinate
from lib.plattice import ParamBox, intersect, narrow_coordinate

log = structlog.get_logger(__name__)

Configuration = frozenset


@dataclass(frozen=True)
class Condition:
    id: int
    parent: Optional[int]
    node: int
    value: int


@dataclass(frozen=True)
class Extension:
    """An event that could be appended to the net, with everything its insertion needs"""

    preset: tuple[int, ...]
    node: int
    direction: int
    coordinate: int
    history: frozenset
    box: ParamBox
    state: State
    depth: int

    @property
    def key(self) -> tuple[tuple[int, ...], int, int]:
        return tuple(sorted(self.preset)), self.node, self.direction

    @property
    def size(self) -> int:
        return len(self.history) + 1


@dataclass
class Event:
    id: int
    preset: tuple[int, ...]
    postset: tuple[int, ...]
    node: int
    direction: int
    coordinate: int
    history: frozenset
    box: ParamBox
    state: State
    depth: int
    parikh: tuple = ()
    foata: tuple = ()
    cutoff: Optional[int] = None

    @property
    def key(self) -> tuple[tuple[int, ...], int, int]:
        return tuple(sorted(self.preset)), self.node, self.direction

    @property
    def size(self) -> int:
        return len(self.history)

    @property
    def is_cutoff(self) -> bool:
        return self.cutoff is not None


@dataclass
class OccurrenceNet:
    prn: Prn
    constraints: ConstraintSet
    x0: State
    root_box: ParamBox
    conditions: list[Condition] = field(default_factory=list)
    events: list[Event] = field(default_factory=list)
    initial: tuple[int, ...] = ()
    co: list[set] = field(default_factory=list)
    consumers: list[list[int]] = field(default_factory=list)
    by_node: list[list[int]] = field(default_factory=list)
    by_state: dict = field(default_factory=dict)
    keys: set = field(default_factory=set)

    def __post_init__(self):
        self.by_node = [[] for _ in range(self.prn.node_count)]

    def new_condition(self, parent: Optional[int], node: int, value: int) -> int:
        cid = len(self.conditions)
        self.conditions.append(Condition(cid, parent, node, value))
        self.co.append(set())
        self.consumers.append([])
        self.by_node[node].append(cid)
        return cid

    @property
    def cutoffs(self) -> dict[int, int]:
        """Cut-off event id -> witness event id"""
        return {e.id: e.cutoff for e in self.events if e.is_cutoff}

    def flow(self) -> Iterator[tuple[str, int, str, int]]:
        for e in self.events:
            for c in e.preset:
                yield "c", c, "e", e.id
            for c in e.postset:
                yield "e", e.id, "c", c


@functools.lru_cache(maxsize=TABLE_CACHE_SIZE)
def _dependents(prn: Prn) -> tuple[tuple[int, ...], ...]:
    """For each node w, the nodes whose events consume a condition of w"""
    return tuple(
        tuple(v for v in range(prn.node_count) if v == w or w in prn.regulators(v))
        for w in range(prn.node_count)
    )


@functools.lru_cache(maxsize=TABLE_CACHE_SIZE)
def _consumed_nodes(prn: Prn, v: int) -> tuple[int, ...]:
    return tuple(sorted({v, *prn.regulators(v)}))


def initial_net(prn: Prn, x0: State, R: Optional[ConstraintSet] = None) -> OccurrenceNet:
    R = R or ConstraintSet()
    R.check(prn)
    check_state(prn, x0)
    net = OccurrenceNet(prn, R, tuple(x0), p_abs_R(prn, R, ()))
    net.initial = tuple(net.new_condition(None, v, x0[v]) for v in range(prn.node_count))
    for c in net.initial:
        net.co[c] = set(net.initial) - {c}
    return net


def local_configuration(net: OccurrenceNet, e: int) -> Configuration:
    return Configuration(net.events[e].history)


def is_configuration(net: OccurrenceNet, events: Iterable[int]) -> bool:
    events = set(events)
    consumed = set()
    for e in events:
        for c in net.events[e].preset:
            parent = net.conditions[c].parent
            if parent is not None and parent not in events:
                return False
            if c in consumed:
                return False
            consumed.add(c)
    return True


def cut(net: OccurrenceNet, events: Iterable[int]) -> frozenset:
    events = set(events)
    if not is_configuration(net, events):
        raise MalformedConfigurationError(f"{sorted(events)} is not a configuration")
    produced = set(net.initial)
    consumed = set()
    for e in events:
        produced.update(net.events[e].postset)
        consumed.update(net.events[e].preset)
    return frozenset(produced - consumed)


def state_of_cut(net: OccurrenceNet, conditions: Iterable[int]) -> State:
    values: list[Optional[int]] = [None] * net.prn.node_count
    for c in conditions:
        condition = net.conditions[c]
        if values[condition.node] is not None:
            raise MalformedConfigurationError(f"Cut holds two conditions for {condition.node}")
        values[condition.node] = condition.value
    if None in values:
        raise MalformedConfigurationError("Cut misses a node")
    return tuple(values)


def cut_and_state(net: OccurrenceNet, events: Iterable[int]) -> State:
    return state_of_cut(net, cut(net, events))


def _reached_state(net: OccurrenceNet, history: Iterable[int]) -> list[int]:
    values = list(net.x0)
    for h in history:
        values[net.events[h].node] += net.events[h].direction
    return values


def event_box(net: OccurrenceNet, preset: Iterable[int], node: int, direction: int) -> ParamBox:
    """
    Box of the local configuration of the event <preset, node, direction>.

    The parents' boxes are intersected, narrowed by the event's own transition, then brought
    back to the constraint fixpoint on the event's node and on every node the intersection
    touched. Constraints never cross nodes, so this is the global fixpoint.
    """
    prn = net.prn
    conditions = [net.conditions[c] for c in preset]
    parents = sorted({c.parent for c in conditions if c.parent is not None})
    boxes = [net.events[p].box for p in parents] or [net.root_box]
    box = functools.reduce(intersect, boxes)
    if box.is_empty:
        return box
    touched = {node}
    if len(boxes) > 1:
        for w in range(prn.node_count):
            if len({b.bounds(prn.coordinates(w)) for b in boxes}) > 1:
                touched.add(w)
    values = {c.node: c.value for c in conditions}
    omega = tuple(values[u] for u in prn.regulators(node))
    box = narrow_coordinate(box, param_coordinate(prn, node, omega), values[node], direction)
    return narrow_all(prn, box, net.constraints, touched)


def _cosets(net: OccurrenceNet, nodes: tuple[int, ...], seed: int) -> Iterator[tuple[int, ...]]:
    """Sets of pairwise concurrent conditions, one per node of `nodes`, that include seed"""
    seed_node = net.conditions[seed].node
    rest = [w for w in nodes if w != seed_node]

    def extend(i, chosen, allowed):
        if i == len(rest):
            yield tuple(sorted(chosen, key=lambda c: net.conditions[c].node))
            return
        for c in net.by_node[rest[i]]:
            if c in allowed:
                yield from extend(i + 1, chosen + [c], allowed & net.co[c])

    yield from extend(0, [seed], net.co[seed])


def _make_extension(
    net: OccurrenceNet, preset: tuple[int, ...], node: int, direction: int
) -> Optional[Extension]:
    prn = net.prn
    values = {net.conditions[c].node: net.conditions[c].value for c in preset}
    if not 0 <= values[node] + direction <= prn.max_values[node]:
        return None
    if (tuple(sorted(preset)), node, direction) in net.keys:
        return None
    parents = {net.conditions[c].parent for c in preset} - {None}
    history = frozenset().union(*(net.events[p].history for p in parents))
    if any(net.events[h].is_cutoff for h in history):
        return None
    box = event_box(net, preset, node, direction)
    if box.is_empty:
        return None
    state = _reached_state(net, history)
    state[node] += direction
    omega = tuple(values[u] for u in prn.regulators(node))
    return Extension(
        preset=preset,
        node=node,
        direction=direction,
        coordinate=param_coordinate(prn, node, omega),
        history=history,
        box=box,
        state=tuple(state),
        depth=1 + max((net.events[p].depth for p in parents), default=0),
    )


def extensions_from(net: OccurrenceNet, seeds: Iterable[int]) -> list[Extension]:
    """Possible extensions whose preset contains at least one of the seed conditions"""
    if net.root_box.is_empty:
        return []
    found: dict = {}
    dependents = _dependents(net.prn)
    for seed in seeds:
        for v in dependents[net.conditions[seed].node]:
            for preset in _cosets(net, _consumed_nodes(net.prn, v), seed):
                for direction in (1, -1):
                    key = (tuple(sorted(preset)), v, direction)
                    if key in found:
                        continue
                    extension = _make_extension(net, preset, v, direction)
                    if extension is not None:
                        found[key] = extension
    return [found[key] for key in sorted(found)]


def possible_extensions(net: OccurrenceNet) -> list[Extension]:
    return extensions_from(net, range(len(net.conditions)))


def add_event(net: OccurrenceNet, extension: Extension) -> Event:
    """Append the extension to the net, with one fresh post-condition per pre-condition"""
    eid = len(net.events)
    common = set.intersection(*(net.co[c] for c in extension.preset))
    postset = []
    for c in extension.preset:
        condition = net.conditions[c]
        value = condition.value
        if condition.node == extension.node:
            value += extension.direction
        postset.append(net.new_condition(eid, condition.node, value))
    for p in postset:
        net.co[p] = common | (set(postset) - {p})
    for q in common:
        net.co[q].update(postset)
    for c in extension.preset:
        net.consumers[c].append(eid)
    event = Event(
        id=eid,
        preset=extension.preset,
        postset=tuple(postset),
        node=extension.node,
        direction=extension.direction,
        coordinate=extension.coordinate,
        history=extension.history | {eid},
        box=extension.box,
        state=extension.state,
        depth=extension.depth,
    )
    net.events.append(event)
    net.keys.add(event.key)
    net.by_state.setdefault(event.state, []).append(eid)
    log.debug("Event added", event_id=eid, node=net.prn.names[event.node], state=event.state)
    return event


def event_label(net: OccurrenceNet, e: Event) -> str:
    return net.prn.names[e.node] + ("+" if e.direction > 0 else "-")


def condition_label(net: OccurrenceNet, c: Condition) -> str:
    return f"{net.prn.names[c.node]} {c.value}"
