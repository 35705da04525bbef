import pytest

from lib.constraints import ConstraintSet
from lib.exceptions import MalformedConfigurationError
from lib.model import InfluenceGraph, Prn
from lib.prefix import build_cfp
from lib.unfolding import (
    add_event,
    condition_label,
    cut,
    cut_and_state,
    event_label,
    extensions_from,
    initial_net,
    is_configuration,
    local_configuration,
    possible_extensions,
    state_of_cut,
)

A, B, C = 0, 1, 2


def preset_values(net, e):
    return tuple(net.conditions[c].value for c in e.preset)


def find(net, node, direction, values, size):
    (event,) = [
        e
        for e in net.events
        if (e.node, e.direction, preset_values(net, e), e.size) == (node, direction, values, size)
    ]
    return event


@pytest.fixture
def net(prn, signed_R):
    return build_cfp(prn, signed_R, (0, 0, 0)).net


@pytest.fixture
def both_c_events(net):
    """c+ after a+ and b+, and c+ after b+ alone"""
    return find(net, C, 1, (1, 1, 0), 3), find(net, C, 1, (0, 1, 0), 2)


def test_initial_conditions(prn, signed_R):
    net = initial_net(prn, (0, 0, 0), signed_R)
    a = ([condition_label(net, c) for c in net.conditions], net.co[0])
    e = (["a 0", "b 0", "c 0"], {1, 2})
    assert a == e


def test_root_box_is_constrained(bool_prn):
    R = ConstraintSet.of((A, C, "+"), (B, C, "+"), (B, C, "o"))
    net = initial_net(bool_prn, (0, 0, 0), R)
    a = str(net.root_box)
    e = "(<00000001>,<11110111>)"
    assert a == e


def test_first_extensions(prn, signed_R):
    net = initial_net(prn, (0, 0, 0), signed_R)
    a = [(x.node, x.direction) for x in possible_extensions(net)]
    e = [(A, 1), (C, 1), (B, 1)]
    assert a == e


def test_first_extension_boxes(prn, signed_R):
    net = initial_net(prn, (0, 0, 0), signed_R)
    a = [x.box.lower for x in possible_extensions(net)]
    e = [
        (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
        (0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1),
        (0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0),
    ]
    assert a == e


def test_new_conditions_are_concurrent_with_the_rest(prn, signed_R):
    net = initial_net(prn, (0, 0, 0), signed_R)
    event = add_event(net, possible_extensions(net)[0])
    (a1,) = event.postset
    a = (net.co[a1], a1 in net.co[1], a1 in net.co[0])
    e = ({1, 2}, True, False)
    assert a == e


def test_event_boxes(both_c_events):
    after_both, after_b = both_c_events
    a = [str(after_both.box), str(after_b.box)]
    e = ["(<10010000101>,<22211111111>)", "(<00010010101>,<22211111111>)"]
    assert a == e


def test_increase_after_c_is_subsumed(net, both_c_events):
    after_both, after_b = both_c_events
    (a_condition,) = [c for c in after_b.postset if net.conditions[c].node == A]
    (late,) = [e for e in net.events if a_condition in e.preset and e.node == A]
    a = (str(late.box), late.state, late.cutoff, after_both.cutoff)
    e = ("(<10010010101>,<22211111111>)", (1, 1, 1), after_both.id, None)
    assert a == e


def test_every_event_reaches_its_state(net):
    a = [cut_and_state(net, local_configuration(net, e.id)) for e in net.events]
    e = [e.state for e in net.events]
    assert a == e


def test_no_event_has_an_empty_box(net):
    a = [e.id for e in net.events if e.box.is_empty]
    e = []
    assert a == e


def test_cut_has_one_condition_per_node(net):
    a = {len(cut(net, e.history)) for e in net.events}
    e = {3}
    assert a == e


def test_event_without_causes_is_not_a_configuration(both_c_events, net):
    after_both, _ = both_c_events
    a = (is_configuration(net, {after_both.id}), is_configuration(net, after_both.history))
    e = (False, True)
    assert a == e


def test_cut_rejects_non_configuration(both_c_events, net):
    after_both, _ = both_c_events
    with pytest.raises(MalformedConfigurationError):
        cut(net, {after_both.id})


def test_initial_cut(net):
    a = state_of_cut(net, net.initial)
    e = (0, 0, 0)
    assert a == e


def test_event_label(both_c_events, net):
    a = event_label(net, both_c_events[0])
    e = "c+"
    assert a == e


def test_flow_is_bipartite(net):
    a = {(kind_a, kind_b) for kind_a, _, kind_b, _ in net.flow()}
    e = {("c", "e"), ("e", "c")}
    assert a == e


def test_empty_root_has_no_extensions():
    graph = InfluenceGraph(node_names=("a", "c"), influences=((0, 1),))
    prn = Prn(graph=graph, max_values=(1, 0))
    net = initial_net(prn, (0, 0), ConstraintSet.of((0, 1, "o")))
    a = extensions_from(net, net.initial)
    e = []
    assert a == e
