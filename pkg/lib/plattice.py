"""
    Parameter boxes: convex sublattices [L, U] of the parametrisation space.

    A box is either EMPTY or a pair of parametrisations with L <= U componentwise. Every operation
    returns a canonical box, so an incomparable (L, U) pair never escapes this module.
"""
from dataclasses import dataclass
from typing import Iterable, Optional

from lib.model import Parametrisation, Prn, Transition, transition_coordinate


@dataclass(frozen=True)
class ParamBox:
    lower: Optional[Parametrisation] = None
    upper: Optional[Parametrisation] = None

    @classmethod
    def of(cls, lower, upper) -> "ParamBox":
        lower, upper = tuple(lower), tuple(upper)
        if any(lo > hi for lo, hi in zip(lower, upper)):
            return EMPTY
        return cls(lower, upper)

    @property
    def is_empty(self) -> bool:
        return self.lower is None

    def bounds(self, coordinates: range) -> tuple[Parametrisation, Parametrisation]:
        """Lower and upper bounds restricted to a node's coordinates"""
        assert not self.is_empty
        part = slice(coordinates.start, coordinates.stop)
        return self.lower[part], self.upper[part]

    def __str__(self) -> str:
        if self.is_empty:
            return "EMPTY"
        return f"({_vector(self.lower)},{_vector(self.upper)})"

    def to_json(self) -> dict:
        if self.is_empty:
            return {"empty": True}
        return {"lower": list(self.lower), "upper": list(self.upper)}


EMPTY = ParamBox()


def _vector(values: Parametrisation) -> str:
    if all(value < 10 for value in values):
        return "<" + "".join(str(value) for value in values) + ">"
    return "<" + ",".join(str(value) for value in values) + ">"


def full_box(prn: Prn) -> ParamBox:
    return ParamBox((0,) * prn.param_count, prn.upper)


def narrow_coordinate(box: ParamBox, coordinate: int, value: int, direction: int) -> ParamBox:
    """
    Restrict the box to parametrisations that let a node at `value` move by `direction` when its
    regulators select `coordinate`.
    """
    if box.is_empty:
        return box
    if direction > 0:
        if box.lower[coordinate] >= value + 1:
            return box
        lower = list(box.lower)
        lower[coordinate] = value + 1
        return ParamBox.of(lower, box.upper)
    if box.upper[coordinate] <= value - 1:
        return box
    upper = list(box.upper)
    upper[coordinate] = value - 1
    return ParamBox.of(box.lower, upper)


def narrow_transition(prn: Prn, box: ParamBox, t: Transition) -> ParamBox:
    return narrow_coordinate(box, transition_coordinate(prn, t), t.source[t.node], t.direction)


def intersect(a: ParamBox, b: ParamBox) -> ParamBox:
    if a.is_empty or b.is_empty:
        return EMPTY
    return ParamBox.of(map(max, a.lower, b.lower), map(min, a.upper, b.upper))


def contains(box: ParamBox, P: Parametrisation) -> bool:
    if box.is_empty:
        return False
    return all(lo <= p <= hi for lo, p, hi in zip(box.lower, P, box.upper))


def box_is_subset(a: ParamBox, b: ParamBox) -> bool:
    if a.is_empty:
        return True
    if b.is_empty:
        return False
    return all(lb <= la for la, lb in zip(a.lower, b.lower)) and all(
        ua <= ub for ua, ub in zip(a.upper, b.upper)
    )


def box_size(box: ParamBox) -> int:
    if box.is_empty:
        return 0
    size = 1
    for lo, hi in zip(box.lower, box.upper):
        size *= hi - lo + 1
    return size


def p_abs(prn: Prn, T: Iterable[Transition]) -> ParamBox:
    box = full_box(prn)
    for t in T:
        box = narrow_transition(prn, box, t)
    return box
