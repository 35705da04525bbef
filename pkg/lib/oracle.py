"""
    Brute-force reference semantics, for desk-scale networks only.

    Everything here enumerates the parametrisation space explicitly, so it is exponential in the
    number of parameter coordinates. ParamEnumeration refuses spaces above its cap.
"""
import itertools
import random
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

import structlog

from lib.constraints import (
    ConstraintKind,
    ConstraintSet,
    InfluenceConstraint,
    MonoCmp,
    mono_compare,
    p_abs_R,
    sign_vector,
)
from lib.exceptions import ScaleGuardError
from lib.model import (
    InfluenceGraph,
    Parametrisation,
    Prn,
    State,
    Transition,
    all_transitions,
    enabled_transitions,
    param_coordinate,
    transition_coordinate,
)
from lib.plattice import EMPTY, ParamBox, contains, p_abs
from lib.prefix import Limits, build_cfp, reachable_states

log = structlog.get_logger(__name__)

DEFAULT_CAP = 10**7


class ParamEnumeration:
    """Every parametrisation of a network in lexicographic coordinate order"""

    def __init__(
        self,
        prn: Prn,
        predicate: Optional[Callable[[Parametrisation], bool]] = None,
        cap: int = DEFAULT_CAP,
    ):
        size = prn.param_space_size()
        if size > cap:
            log.warning("Enumeration refused", parametrisations=size, cap=cap)
            raise ScaleGuardError(f"{size} parametrisations exceed the enumeration cap of {cap}")
        self.prn = prn
        self.predicate = predicate
        self.size = size

    def __iter__(self) -> Iterator[Parametrisation]:
        everything = itertools.product(*(range(m + 1) for m in self.prn.upper))
        if self.predicate is None:
            return everything
        return filter(self.predicate, everything)

    def __len__(self) -> int:
        return self.size


def concrete_enables(prn: Prn, P: Parametrisation, t: Transition) -> bool:
    target = P[transition_coordinate(prn, t)]
    value = t.source[t.node]
    return target >= value + 1 if t.direction > 0 else target <= value - 1


def concrete_satisfies(prn: Prn, P: Parametrisation, r: InfluenceConstraint) -> bool:
    lines = prn.lines(r.target, prn.regulator_position(r.target, r.regulator))
    steps = [(P[prev], P[k]) for line in lines for prev, k in zip(line, line[1:])]
    if r.kind is ConstraintKind.POSITIVE:
        return all(before <= after for before, after in steps)
    if r.kind is ConstraintKind.NEGATIVE:
        return all(before >= after for before, after in steps)
    return any(before != after for before, after in steps)


def satisfies_minmax(prn: Prn, P: Parametrisation, R: ConstraintSet) -> bool:
    for v in range(prn.node_count):
        regs = prn.regulators(v)
        signs = sign_vector(prn, R, v)
        if not regs or 0 in signs:
            continue
        activating = tuple(prn.max_values[u] if s > 0 else 0 for u, s in zip(regs, signs))
        inhibiting = tuple(0 if s > 0 else prn.max_values[u] for u, s in zip(regs, signs))
        if P[param_coordinate(prn, v, activating)] != prn.max_values[v]:
            return False
        if P[param_coordinate(prn, v, inhibiting)] != 0:
            return False
    return True


def admits(
    prn: Prn, R: ConstraintSet, T: Iterable[Transition]
) -> Callable[[Parametrisation], bool]:
    T = tuple(T)
    constraints = R.ordered

    def predicate(P: Parametrisation) -> bool:
        return (
            all(concrete_enables(prn, P, t) for t in T)
            and all(concrete_satisfies(prn, P, r) for r in constraints)
            and (not R.minmax or satisfies_minmax(prn, P, R))
        )

    return predicate


def concrete_pRT(
    prn: Prn, R: ConstraintSet, T: Iterable[Transition], cap: int = DEFAULT_CAP
) -> list[Parametrisation]:
    return list(ParamEnumeration(prn, admits(prn, R, T), cap))


def concrete_pT(
    prn: Prn, T: Iterable[Transition], cap: int = DEFAULT_CAP
) -> list[Parametrisation]:
    return concrete_pRT(prn, ConstraintSet(), T, cap)


def envelope(parametrisations: Iterable[Parametrisation]) -> ParamBox:
    parametrisations = list(parametrisations)
    if not parametrisations:
        return EMPTY
    columns = list(zip(*parametrisations))
    return ParamBox.of(map(min, columns), map(max, columns))


def is_convex_sublattice(parametrisations: Iterable[Parametrisation]) -> bool:
    """True when the set fills its componentwise envelope"""
    members = set(parametrisations)
    box = envelope(members)
    if box.is_empty:
        return True
    ranges = (range(lo, hi + 1) for lo, hi in zip(box.lower, box.upper))
    return all(P in members for P in itertools.product(*ranges))


def respects_order(prn: Prn, R: ConstraintSet, v: int, vector: Parametrisation) -> bool:
    """vector is non-decreasing along the monotonicity order of v's regulator states"""
    for k, j in itertools.permutations(prn.coordinates(v), 2):
        if vector[k] > vector[j] and (
            mono_compare(prn, R, v, prn.context(k), prn.context(j)) is MonoCmp.LESS
        ):
            return False
    return True


def reachable_from(prn: Prn, P: Parametrisation, x0: State) -> set[State]:
    seen = {tuple(x0)}
    queue = deque([tuple(x0)])
    while queue:
        x = queue.popleft()
        for t in enabled_transitions(prn, P, x):
            if t.target not in seen:
                seen.add(t.target)
                queue.append(t.target)
    return seen


def reachable_union(prn: Prn, R: ConstraintSet, x0: State, cap: int = DEFAULT_CAP) -> frozenset:
    states: set = set()
    for P in concrete_pRT(prn, R, (), cap):
        states |= reachable_from(prn, P, x0)
    return frozenset(states)


@dataclass(frozen=True)
class Verdict:
    check: str
    passed: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed


def check_theorem1(prn: Prn, T: Iterable[Transition], cap: int = DEFAULT_CAP) -> Verdict:
    """The unconstrained box contains exactly the parametrisations enabling T"""
    T = tuple(T)
    box = p_abs(prn, T)
    enables = admits(prn, ConstraintSet(), T)
    for P in ParamEnumeration(prn, cap=cap):
        if contains(box, P) != enables(P):
            return Verdict("transitions", False, f"box {box} disagrees on {P}")
    return Verdict("transitions", True)


def check_theorem2(
    prn: Prn, R: ConstraintSet, T: Iterable[Transition], cap: int = DEFAULT_CAP
) -> Verdict:
    """The constrained box is the envelope of the admissible parametrisations"""
    T = tuple(T)
    box = p_abs_R(prn, R, T)
    expected = envelope(concrete_pRT(prn, R, T, cap))
    if box != expected:
        return Verdict("constraints", False, f"box {box} but envelope {expected}")
    return Verdict("constraints", True)


def check_cfp_completeness(
    prn: Prn,
    R: ConstraintSet,
    x0: State,
    cap: int = DEFAULT_CAP,
    limits: Optional[Limits] = None,
) -> Verdict:
    """The states reachable in the prefix are the states some admissible network reaches"""
    result = build_cfp(prn, R, x0, limits)
    if not result.complete:
        return Verdict("prefix", False, f"prefix incomplete: {result.reason}")
    found = reachable_states(result.net)
    expected = reachable_union(prn, R, x0, cap)
    if found != expected:
        missing = sorted(expected - found)
        extra = sorted(found - expected)
        return Verdict("prefix", False, f"missing {missing}, unexpected {extra}")
    return Verdict("prefix", True)


@dataclass(frozen=True)
class Instance:
    prn: Prn
    constraints: ConstraintSet
    transitions: tuple[Transition, ...]
    x0: State


MODES = ("sign", "observable", "mixed")


def _random_constraints(rng: random.Random, prn: Prn, mode: str) -> ConstraintSet:
    constraints = []
    for u, v in prn.graph.influences:
        if mode in ("sign", "mixed"):
            sign = rng.choice((None, "+", "-"))
            if sign is not None:
                constraints.append((u, v, sign))
        if mode in ("observable", "mixed") and rng.random() < 0.5:
            constraints.append((u, v, "o"))
    return ConstraintSet.of(*constraints)


def random_instance(
    rng: random.Random,
    mode: Optional[str] = "mixed",
    max_nodes: int = 3,
    max_value: int = 2,
    max_transitions: int = 4,
    param_cap: int = 2048,
) -> Instance:
    """
    A random desk-scale network with constraints drawn according to `mode` (None for no
    constraints), up to `max_transitions` random transitions and a random initial state.
    """
    while True:
        n = rng.randint(1, max_nodes)
        names = tuple("abcdefgh"[:n])
        influences = [(u, v) for u in range(n) for v in range(n) if rng.random() < 0.5]
        max_values = tuple(rng.randint(1, max_value) for _ in range(n))
        graph = InfluenceGraph(node_names=names, influences=influences)
        prn = Prn(graph=graph, max_values=max_values)
        if prn.param_space_size() <= param_cap:
            break
    R = ConstraintSet() if mode is None else _random_constraints(rng, prn, mode)
    states = list(prn.states())
    transitions = set()
    for _ in range(rng.randint(0, max_transitions)):
        transitions.add(rng.choice(sorted(all_transitions(prn, rng.choice(states)))))
    return Instance(prn, R, tuple(sorted(transitions)), rng.choice(states))
