"""
    Influence constraints and the narrowing operators that enforce them on parameter boxes.

    Every constraint only reads and writes the coordinates of its target node, so narrowing one
    node never invalidates the fixpoint reached on another.
"""
import functools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Optional

import structlog

from lib.exceptions import FixpointDivergenceError, IllFormedConstraintError
from lib.model import Prn, RegulatorState, Transition, param_coordinate
from lib.plattice import EMPTY, ParamBox, full_box, narrow_transition

log = structlog.get_logger(__name__)

# Entries per cached lookup table, one per network and constraint set
TABLE_CACHE_SIZE = 256


class ConstraintKind(Enum):
    POSITIVE = "+"
    NEGATIVE = "-"
    OBSERVABLE = "o"

    @property
    def sign(self) -> int:
        return {"+": 1, "-": -1, "o": 0}[self.value]

    @property
    def rank(self) -> int:
        return "+-o".index(self.value)


class InfluenceConstraint(NamedTuple):
    regulator: int
    target: int
    kind: ConstraintKind

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return self.target, self.regulator, self.kind.rank

    def render(self, prn: Prn) -> str:
        return f"({prn.names[self.regulator]},{prn.names[self.target]},{self.kind.value})"


class MonoCmp(Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class ConstraintSet:
    constraints: frozenset = frozenset()
    minmax: bool = False

    def __post_init__(self):
        object.__setattr__(self, "constraints", frozenset(self.constraints))
        for c in self.constraints:
            if c.kind is ConstraintKind.POSITIVE and (
                InfluenceConstraint(c.regulator, c.target, ConstraintKind.NEGATIVE)
                in self.constraints
            ):
                raise IllFormedConstraintError(
                    f"Influence {c.regulator}->{c.target} is both positive and negative"
                )

    @classmethod
    def of(cls, *constraints: tuple[int, int, str], minmax: bool = False) -> "ConstraintSet":
        """Build from (regulator, target, "+"|"-"|"o") triples"""
        return cls(
            frozenset(InfluenceConstraint(u, v, ConstraintKind(k)) for u, v, k in constraints),
            minmax,
        )

    @property
    def ordered(self) -> tuple[InfluenceConstraint, ...]:
        return tuple(sorted(self.constraints, key=lambda c: c.sort_key))

    def targeting(self, nodes: Optional[Iterable[int]] = None) -> tuple[InfluenceConstraint, ...]:
        if nodes is None:
            return self.ordered
        nodes = set(nodes)
        return tuple(c for c in self.ordered if c.target in nodes)

    def check(self, prn: Prn) -> None:
        influences = set(prn.graph.influences)
        for c in self.ordered:
            if (c.regulator, c.target) not in influences:
                raise IllFormedConstraintError(
                    f"Constraint {c.render(prn)} is not carried by an influence"
                )

    def render(self, prn: Prn) -> list[str]:
        rendered = [c.render(prn) for c in self.ordered]
        rendered.append("minmax:on" if self.minmax else "minmax:off")
        return rendered


@functools.lru_cache(maxsize=TABLE_CACHE_SIZE)
def sign_vector(prn: Prn, R: ConstraintSet, v: int) -> tuple[int, ...]:
    """Per regulator position of v: +1, -1, or 0 when the influence carries no sign"""
    signs = [0] * len(prn.regulators(v))
    for c in R.constraints:
        if c.target == v and c.kind is not ConstraintKind.OBSERVABLE:
            signs[prn.regulator_position(v, c.regulator)] = c.kind.sign
    return tuple(signs)


def _compare(signs: tuple[int, ...], omega: RegulatorState, other: RegulatorState) -> MonoCmp:
    below = above = True
    for sign, a, b in zip(signs, omega, other):
        if a == b:
            continue
        if sign == 0:
            return MonoCmp.INCOMPARABLE
        if (b - a) * sign > 0:
            above = False
        else:
            below = False
    if below and above:
        return MonoCmp.EQUAL
    if below:
        return MonoCmp.LESS
    if above:
        return MonoCmp.GREATER
    return MonoCmp.INCOMPARABLE


def mono_compare(
    prn: Prn, R: ConstraintSet, v: int, omega: RegulatorState, other: RegulatorState
) -> MonoCmp:
    # Validates both regulator states
    param_coordinate(prn, v, omega)
    param_coordinate(prn, v, other)
    return _compare(sign_vector(prn, R, v), omega, other)


@functools.lru_cache(maxsize=TABLE_CACHE_SIZE)
def _strictly_above(prn: Prn, R: ConstraintSet, v: int) -> tuple[frozenset, ...]:
    """For each coordinate of v (relative to its first), the coordinates strictly above it"""
    signs = sign_vector(prn, R, v)
    contexts = [prn.context(k) for k in prn.coordinates(v)]
    return tuple(
        frozenset(
            j for j, other in enumerate(contexts) if _compare(signs, omega, other) is MonoCmp.LESS
        )
        for omega in contexts
    )


def narrow_monotonic(prn: Prn, box: ParamBox, c: InfluenceConstraint) -> ParamBox:
    if box.is_empty:
        return box
    sign = c.kind.sign
    assert sign != 0, "observability is not a monotonic constraint"
    lower, upper = list(box.lower), list(box.upper)
    for line in prn.lines(c.target, prn.regulator_position(c.target, c.regulator)):
        ascending = line if sign > 0 else line[::-1]
        for prev, k in zip(ascending, ascending[1:]):
            if lower[k] < lower[prev]:
                lower[k] = lower[prev]
        descending = ascending[::-1]
        for prev, k in zip(descending, descending[1:]):
            if upper[k] > upper[prev]:
                upper[k] = upper[prev]
    return ParamBox.of(lower, upper)


def observable_contexts(prn: Prn, box: ParamBox, c: InfluenceConstraint) -> list[int]:
    """
    Coordinates of the target where some parametrisation of the box lets a change of the
    regulator change the target's parameter. Sorted ascending.
    """
    lower, upper = box.lower, box.upper
    result = []
    for line in prn.lines(c.target, prn.regulator_position(c.target, c.regulator)):
        if any(
            lower[k] < upper[prev] or upper[k] > lower[prev] for prev, k in zip(line, line[1:])
        ):
            result.extend(line)
    return sorted(result)


def narrow_observable(
    prn: Prn, box: ParamBox, c: InfluenceConstraint, R: ConstraintSet
) -> ParamBox:
    if box.is_empty:
        return box
    v = c.target
    candidates = observable_contexts(prn, box, c)
    if not candidates:
        return EMPTY
    lower, upper = box.lower, box.upper
    offset = prn.coordinates(v).start
    above = _strictly_above(prn, R, v)
    local = {k - offset for k in candidates}

    raise_lower = []
    if len({lower[k] for k in candidates}) == 1:
        raise_lower = [
            k for k in candidates if lower[k] < upper[k] and not above[k - offset] & local
        ]
    lower_upper = []
    if len({upper[k] for k in candidates}) == 1:
        lower_upper = [
            k
            for k in candidates
            if lower[k] < upper[k] and not any(k - offset in above[j] for j in local)
        ]

    if len(raise_lower) != 1 and len(lower_upper) != 1:
        return box
    new_lower, new_upper = list(lower), list(upper)
    if len(raise_lower) == 1:
        new_lower[raise_lower[0]] += 1
    if len(lower_upper) == 1:
        new_upper[lower_upper[0]] -= 1
    return ParamBox.of(new_lower, new_upper)


@functools.lru_cache(maxsize=TABLE_CACHE_SIZE)
def _minmax_coordinates(prn: Prn, R: ConstraintSet) -> tuple[tuple[int, int, int], ...]:
    """(node, coordinate of the activating context, coordinate of the inhibiting context)"""
    result = []
    for v in range(prn.node_count):
        regs = prn.regulators(v)
        if not regs:
            continue
        signs = sign_vector(prn, R, v)
        if 0 in signs:
            log.warning(
                "Min-Max skips node with unsigned regulators",
                node=prn.names[v],
                unsigned=[prn.names[u] for u, s in zip(regs, signs) if s == 0],
            )
            continue
        activating = tuple(prn.max_values[u] if s > 0 else 0 for u, s in zip(regs, signs))
        inhibiting = tuple(0 if s > 0 else prn.max_values[u] for u, s in zip(regs, signs))
        result.append(
            (v, param_coordinate(prn, v, activating), param_coordinate(prn, v, inhibiting))
        )
    return tuple(result)


def narrow_minmax(prn: Prn, box: ParamBox, R: ConstraintSet) -> ParamBox:
    """Pin every fully signed node to its maximum when activated and to 0 when inhibited"""
    if box.is_empty:
        return box
    lower, upper = list(box.lower), list(box.upper)
    for v, activating, inhibiting in _minmax_coordinates(prn, R):
        lower[activating] = prn.max_values[v]
        upper[inhibiting] = 0
    return ParamBox.of(lower, upper)


def _round_cap(prn: Prn, nodes: Iterable[int]) -> int:
    cap = 1
    for v in nodes:
        contexts, m = prn.context_count(v), prn.max_values[v]
        cap += max(contexts ** (m + 1), 2 * contexts * m) + 1
    return cap


def _narrow_one(prn: Prn, box: ParamBox, c: InfluenceConstraint, R: ConstraintSet) -> ParamBox:
    if c.kind is ConstraintKind.OBSERVABLE:
        return narrow_observable(prn, box, c, R)
    return narrow_monotonic(prn, box, c)


def narrow_all(
    prn: Prn, box: ParamBox, R: ConstraintSet, nodes: Optional[Iterable[int]] = None
) -> ParamBox:
    """
    Apply every constraint of R (only those targeting `nodes` when given) round-robin until no
    bound moves. Min-Max, when enabled, is applied once up front.
    """
    if box.is_empty:
        return box
    if R.minmax:
        box = narrow_minmax(prn, box, R)
    schedule = R.targeting(nodes)
    if not schedule:
        return box
    cap = _round_cap(prn, {c.target for c in schedule})
    for _ in range(cap):
        changed = False
        for c in schedule:
            narrowed = _narrow_one(prn, box, c, R)
            if narrowed.is_empty:
                return EMPTY
            if narrowed != box:
                box, changed = narrowed, True
        if not changed:
            return box
    raise FixpointDivergenceError(
        f"No fixpoint after {cap} rounds over {len(schedule)} constraints"
    )


def p_abs_R(prn: Prn, R: ConstraintSet, T: Iterable[Transition]) -> ParamBox:
    box = narrow_all(prn, full_box(prn), R)
    for t in sorted(set(T)):
        box = narrow_transition(prn, box, t)
        box = narrow_all(prn, box, R, {t.node})
        box = narrow_all(prn, box, R)
    return box
