"""
    Complete finite prefix construction.

    Extensions are inserted in increasing adequate order: smaller local configurations first,
    then by Parikh vector, then by Foata normal form, with the extension's own
    (pre-conditions, node, direction) key as the final tie-break. An event whose reached state
    and box are both covered by another event is a cut-off and is never extended.
"""
import heapq
import time
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

import structlog
from pydantic import BaseModel, PositiveFloat, PositiveInt

from lib.constraints import ConstraintSet
from lib.model import Prn, State
from lib.plattice import box_is_subset
from lib.unfolding import (
    Event,
    Extension,
    OccurrenceNet,
    add_event,
    extensions_from,
    initial_net,
    possible_extensions,
    state_of_cut,
)

log = structlog.get_logger(__name__)

ParikhVector = tuple[int, ...]
FoataForm = tuple[ParikhVector, ...]


def _coordinates(net: OccurrenceNet, events: Iterable[int], extension: Optional[Extension]):
    pairs = [(net.events[e].coordinate, net.events[e].depth) for e in events]
    if extension is not None:
        pairs.append((extension.coordinate, extension.depth))
    return pairs


def _count(net: OccurrenceNet, coordinates: Iterable[int]) -> ParikhVector:
    counts = [0] * net.prn.param_count
    for k in coordinates:
        counts[k] += 1
    return tuple(counts)


def parikh(
    net: OccurrenceNet, events: Iterable[int], extension: Optional[Extension] = None
) -> ParikhVector:
    """
    Number of events per parameter coordinate. `extension`, when given, is counted as if it
    were already part of the configuration.
    """
    return _count(net, (k for k, _ in _coordinates(net, events, extension)))


def foata(
    net: OccurrenceNet, events: Iterable[int], extension: Optional[Extension] = None
) -> FoataForm:
    pairs = _coordinates(net, events, extension)
    if not pairs:
        return ()
    depth = max(d for _, d in pairs)
    return tuple(_count(net, (k for k, d in pairs if d == layer)) for layer in range(1, depth + 1))


def _vector_key(vector: ParikhVector) -> tuple[int, ...]:
    # More events on an earlier coordinate sorts first
    return tuple(-count for count in vector)


def adequate_key(
    net: OccurrenceNet, events: Iterable[int], extension: Optional[Extension] = None
) -> tuple:
    events = list(events)
    size = len(events) + (extension is not None)
    return (
        size,
        _vector_key(parikh(net, events, extension)),
        tuple(_vector_key(layer) for layer in foata(net, events, extension)),
    )


def _maximal_keys(net: OccurrenceNet, events: Iterable[int]) -> tuple:
    """Extension keys of the maximal events, which determine the configuration"""
    events = set(events)
    below = {net.conditions[c].parent for i in events for c in net.events[i].preset}
    return tuple(sorted(net.events[i].key for i in events - below))


def adequate_compare(net: OccurrenceNet, a: Iterable[int], b: Iterable[int]) -> int:
    """
    -1, 0 or 1 as configuration a is smaller than, equal to, or larger than b.

    Ties on size, Parikh vector and Foata form fall back to the extension keys of the maximal
    events, the order the prefix queue pops in, so distinct configurations never compare equal.
    """
    a, b = list(a), list(b)
    key_a = (adequate_key(net, a), _maximal_keys(net, a))
    key_b = (adequate_key(net, b), _maximal_keys(net, b))
    return (key_a > key_b) - (key_a < key_b)


class PrefixQueue:
    """Pending extensions, popped in adequate order"""

    def __init__(self):
        self._heap: list = []
        self._pending: dict = {}

    def push(self, net: OccurrenceNet, extension: Extension) -> None:
        key = extension.key
        if key in self._pending:
            return
        order = (adequate_key(net, extension.history, extension), key)
        heapq.heappush(self._heap, (order, key))
        self._pending[key] = extension

    def extend(self, net: OccurrenceNet, extensions: Iterable[Extension]) -> None:
        for extension in extensions:
            self.push(net, extension)

    def pop(self) -> Extension:
        while self._heap:
            _, key = heapq.heappop(self._heap)
            extension = self._pending.pop(key, None)
            if extension is not None:
                return extension
        raise IndexError("pop from an empty prefix queue")

    def purge(self, event: int) -> int:
        """Drop pending extensions whose history contains the event"""
        doomed = [key for key, ext in self._pending.items() if event in ext.history]
        for key in doomed:
            del self._pending[key]
        return len(doomed)

    def __len__(self) -> int:
        return len(self._pending)


def is_cutoff(net: OccurrenceNet, e: Event) -> Optional[int]:
    """The first other event with the same state whose box includes e's, if any"""
    for other in net.by_state.get(e.state, ()):
        if other != e.id and box_is_subset(e.box, net.events[other].box):
            return other
    return None


def _subsumed(net: OccurrenceNet, e: Event) -> list[Event]:
    return [
        other
        for other in (net.events[o] for o in net.by_state.get(e.state, ()))
        if other.id != e.id
        and not other.is_cutoff
        and other.box != e.box
        and box_is_subset(other.box, e.box)
    ]


class Limits(BaseModel):
    max_events: Optional[PositiveInt] = None
    max_seconds: Optional[PositiveFloat] = None


@dataclass
class CfpResult:
    net: OccurrenceNet
    complete: bool
    reason: Optional[str]
    seconds: float

    @property
    def event_count(self) -> int:
        return len(self.net.events)

    @property
    def cutoff_count(self) -> int:
        return sum(1 for e in self.net.events if e.is_cutoff)

    @property
    def non_cutoff_count(self) -> int:
        return self.event_count - self.cutoff_count


def build_cfp(
    prn: Prn, R: ConstraintSet, x0: State, limits: Optional[Limits] = None
) -> CfpResult:
    limits = limits or Limits()
    started = time.monotonic()
    net = initial_net(prn, x0, R)
    if net.root_box.is_empty:
        log.warning("The constraints admit no parametrisation")
    queue = PrefixQueue()
    queue.extend(net, possible_extensions(net))
    reason = None
    while queue:
        if limits.max_events is not None and len(net.events) >= limits.max_events:
            reason = f"event limit {limits.max_events} reached"
            break
        if limits.max_seconds is not None and time.monotonic() - started > limits.max_seconds:
            reason = f"time limit {limits.max_seconds}s reached"
            break
        extension = queue.pop()
        if any(net.events[h].is_cutoff for h in extension.history):
            continue
        event = add_event(net, extension)
        event.parikh = parikh(net, event.history)
        event.foata = foata(net, event.history)
        event.cutoff = is_cutoff(net, event)
        if event.is_cutoff:
            log.debug("Cut-off", event_id=event.id, witness=event.cutoff)
            continue
        for other in _subsumed(net, event):
            other.cutoff = event.id
            purged = queue.purge(other.id)
            log.debug("Cut-off a posteriori", event_id=other.id, witness=event.id, purged=purged)
        queue.extend(net, extensions_from(net, event.postset))

    result = CfpResult(net, reason is None, reason, time.monotonic() - started)
    if reason is not None:
        log.warning("Prefix incomplete", reason=reason, events=result.event_count)
    log.info(
        "Prefix built",
        events=result.non_cutoff_count,
        events_with_cutoffs=result.event_count,
        conditions=len(net.conditions),
    )
    return result


def reachable_states(net: OccurrenceNet) -> frozenset:
    """
    Every state of a cut reachable from the initial conditions by firing prefix events.

    Cuts of non-local configurations are included: concurrent events can together reach a state
    that no single local configuration reaches.
    """
    if net.root_box.is_empty:
        return frozenset()
    start = frozenset(net.initial)
    seen = {start}
    queue = deque([start])
    states = set()
    while queue:
        current = queue.popleft()
        states.add(state_of_cut(net, current))
        fired = set()
        for c in current:
            for e in net.consumers[c]:
                if e in fired:
                    continue
                fired.add(e)
                event = net.events[e]
                if all(p in current for p in event.preset):
                    following = (current - set(event.preset)) | set(event.postset)
                    if following not in seen:
                        seen.add(following)
                        queue.append(following)
    return frozenset(states)
