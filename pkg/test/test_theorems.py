"""Randomized agreement between the box operators and brute-force enumeration"""
import itertools
import random

import pytest

from lib.constraints import narrow_all, narrow_monotonic, p_abs_R
from lib.model import Transition
from lib.oracle import (
    MODES,
    check_cfp_completeness,
    check_theorem1,
    check_theorem2,
    concrete_pRT,
    concrete_pT,
    concrete_satisfies,
    envelope,
    is_convex_sublattice,
    random_instance,
    respects_order,
)
from lib.plattice import ParamBox, box_is_subset, narrow_transition, p_abs
from lib.prefix import Limits, adequate_compare, build_cfp
from lib.unfolding import cut_and_state


def random_parametrisation(rng: random.Random, prn) -> tuple[int, ...]:
    return tuple(rng.randint(0, m) for m in prn.upper)


def random_box(rng: random.Random, prn) -> ParamBox:
    pairs = [sorted((rng.randint(0, m), rng.randint(0, m))) for m in prn.upper]
    return ParamBox(tuple(lo for lo, _ in pairs), tuple(hi for _, hi in pairs))


def signed_only(rng: random.Random):
    instance = random_instance(rng, mode="sign")
    return instance.prn, instance.constraints


@pytest.mark.parametrize("seed", range(500))
def test_transition_box_matches_enumeration(seed):
    instance = random_instance(random.Random(seed), mode=None)
    verdict = check_theorem1(instance.prn, instance.transitions)
    a = (verdict.passed, verdict.detail)
    e = (True, "")
    assert a == e


@pytest.mark.parametrize("seed", range(100))
def test_transition_sets_are_convex(seed):
    instance = random_instance(random.Random(seed), mode=None)
    a = is_convex_sublattice(concrete_pT(instance.prn, instance.transitions))
    e = True
    assert a == e


@pytest.mark.parametrize("seed", range(500))
def test_constrained_box_is_the_envelope(seed):
    mode = MODES[seed % len(MODES)]
    instance = random_instance(random.Random(seed), mode=mode)
    verdict = check_theorem2(instance.prn, instance.constraints, instance.transitions)
    a = (verdict.passed, verdict.detail)
    e = (True, "")
    assert a == e


@pytest.mark.parametrize("seed", range(100))
def test_narrow_all_is_idempotent(seed):
    rng = random.Random(seed)
    instance = random_instance(rng, mode="mixed")
    box = narrow_all(instance.prn, random_box(rng, instance.prn), instance.constraints)
    a = narrow_all(instance.prn, box, instance.constraints)
    e = box
    assert a == e


@pytest.mark.parametrize("seed", range(100))
def test_prefix_reaches_exactly_the_reachable_states(seed):
    mode = (None,) + MODES
    instance = random_instance(random.Random(seed), mode=mode[seed % len(mode)])
    verdict = check_cfp_completeness(instance.prn, instance.constraints, instance.x0)
    a = (verdict.passed, verdict.detail)
    e = (True, "")
    assert a == e


@pytest.mark.parametrize("seed", range(10))
def test_sign_constraints_are_the_monotonicity_order(seed):
    rng = random.Random(seed)
    prn, R = signed_only(rng)
    for _ in range(100):
        P = random_parametrisation(rng, prn)
        for v in range(prn.node_count):
            on_v = [c for c in R.ordered if c.target == v]
            a = all(concrete_satisfies(prn, P, c) for c in on_v)
            e = respects_order(prn, R, v, P)
            assert a == e


@pytest.mark.parametrize("seed", range(10))
def test_one_changed_parameter_restores_observability(seed):
    rng = random.Random(seed)
    instance = random_instance(rng, mode="observable")
    prn, R = instance.prn, instance.constraints
    for _ in range(100):
        P = random_parametrisation(rng, prn)
        for v in range(prn.node_count):
            on_v = [c for c in R.ordered if c.target == v]
            if all(concrete_satisfies(prn, P, c) for c in on_v):
                continue
            for k, value in itertools.product(prn.coordinates(v), range(prn.max_values[v] + 1)):
                if value == P[k]:
                    continue
                changed = P[:k] + (value,) + P[k + 1:]
                a = all(concrete_satisfies(prn, changed, c) for c in on_v)
                e = True
                assert a == e


@pytest.mark.parametrize("seed", range(10))
def test_monotonic_fixpoint_is_monotone_bounds(seed):
    rng = random.Random(seed)
    prn, R = signed_only(rng)
    for _ in range(100):
        box = random_box(rng, prn)
        at_fixpoint = all(narrow_monotonic(prn, box, c) == box for c in R.ordered)
        a = at_fixpoint
        e = all(
            respects_order(prn, R, v, box.lower) and respects_order(prn, R, v, box.upper)
            for v in range(prn.node_count)
        )
        assert a == e


@pytest.mark.parametrize("seed", range(50))
def test_bounds_follow_the_monotonicity_order(seed):
    instance = random_instance(random.Random(seed), mode="mixed")
    prn, R = instance.prn, instance.constraints
    box = p_abs_R(prn, R, instance.transitions)
    a = box.is_empty or all(
        respects_order(prn, R, v, box.lower) and respects_order(prn, R, v, box.upper)
        for v in range(prn.node_count)
    )
    e = True
    assert a == e


def random_subset(rng: random.Random, items) -> tuple:
    return tuple(item for item in items if rng.random() < 0.5)


@pytest.mark.parametrize("seed", range(100))
def test_more_transitions_never_grow_the_box(seed):
    rng = random.Random(seed)
    instance = random_instance(rng, mode=None)
    fewer = random_subset(rng, instance.transitions)
    a = box_is_subset(p_abs(instance.prn, instance.transitions), p_abs(instance.prn, fewer))
    e = True
    assert a == e


@pytest.mark.parametrize("seed", range(100))
def test_narrow_transition_is_idempotent(seed):
    rng = random.Random(seed)
    instance = random_instance(rng, mode=None)
    prn = instance.prn
    for t in instance.transitions:
        box = narrow_transition(prn, random_box(rng, prn), t)
        a = narrow_transition(prn, box, t)
        e = box
        assert a == e


@pytest.mark.parametrize("seed", range(50))
def test_transition_order_does_not_matter(seed):
    instance = random_instance(random.Random(seed), mode=None)
    a = {p_abs(instance.prn, T) for T in itertools.permutations(instance.transitions)}
    e = {p_abs(instance.prn, instance.transitions)}
    assert a == e


@pytest.mark.parametrize("seed", range(100))
def test_enumerated_envelope_shrinks_with_more_transitions(seed):
    rng = random.Random(seed)
    instance = random_instance(rng, mode=MODES[seed % len(MODES)])
    prn, R = instance.prn, instance.constraints
    fewer = random_subset(rng, instance.transitions)
    a = box_is_subset(
        envelope(concrete_pRT(prn, R, instance.transitions)), envelope(concrete_pRT(prn, R, fewer))
    )
    e = True
    assert a == e


def replayed_transitions(net, event) -> set:
    """The transitions of a linearization of the event's local configuration"""
    state = cut_and_state(net, ())
    transitions = set()
    for i in sorted(event.history):
        t = Transition(state, net.events[i].node, net.events[i].direction)
        transitions.add(t)
        state = t.target
    return transitions


@pytest.mark.parametrize("seed", range(100))
def test_event_box_is_the_box_of_its_history(seed):
    mode = (None,) + MODES
    instance = random_instance(random.Random(seed), mode=mode[seed % len(mode)])
    prn, R = instance.prn, instance.constraints
    net = build_cfp(prn, R, instance.x0, Limits(max_events=40)).net
    a = [event.box for event in net.events]
    e = [p_abs_R(prn, R, replayed_transitions(net, event)) for event in net.events]
    assert a == e


@pytest.mark.parametrize("seed", range(50))
def test_adequate_order_is_total_and_transitive(seed):
    instance = random_instance(random.Random(seed), mode="mixed")
    net = build_cfp(instance.prn, instance.constraints, instance.x0, Limits(max_events=12)).net
    configurations = [frozenset()] + [event.history for event in net.events]
    order = {
        (i, j): adequate_compare(net, first, second)
        for (i, first), (j, second) in itertools.product(enumerate(configurations), repeat=2)
    }
    n = len(configurations)
    totality = all(order[i, j] == -order[j, i] != 0 for i in range(n) for j in range(n) if i != j)
    transitivity = all(
        order[i, k] == -1
        for i, j, k in itertools.product(range(n), repeat=3)
        if order[i, j] == -1 and order[j, k] == -1
    )
    a = (totality, transitivity)
    e = (True, True)
    assert a == e
