import os

import pytest

from indexthree.currents import (Arc, CurrentGraph, CurrentGraphError, Node, current_graph_from_logs,
                                 find_ladders_in_logs, parse_current_graph, rotation_from_logs)
from indexthree.embedding import RotationSystem
from indexthree.families import FamilyParams, build, sporadic
from indexthree.tables import C5_S1_LOGS, K17_MINUS_K2, parse_table

import oracles

FIX = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture(name):
    with open(os.path.join(FIX, name)) as fh:
        return fh.read()


def cyclic_equal(a, b):
    a, b = list(a), list(b)
    return len(a) == len(b) and any(a[i:] + a[:i] == b for i in range(len(a)))


@pytest.fixture(scope="module")
def c5():
    return parse_current_graph(fixture("c5s1.cg"))


def test_fixture_graph_has_three_circuits(c5):
    assert len(c5.trace_circuits()) == 3
    assert [c.index for c in c5.trace_circuits()] == [0, 1, 2]


def test_fixture_logs_match_printed_logs(c5):
    printed = parse_table(C5_S1_LOGS)
    for log in c5.circuit_logs():
        assert cyclic_equal(log.entries, printed[log.index])


def test_fixture_principles_pass(c5):
    rep = c5.verify_principles()
    assert rep.ok, str(rep)


def test_each_nonzero_current_once_per_circuit(c5):
    for log in c5.circuit_logs():
        assert sorted(log.numbers()) == list(range(1, 15))
        assert sorted(log.letters()) == ["a", "b"]


def test_vortex_excess_generates_subgroup_of_index_three(c5):
    for letter, i in c5.vortices().items():
        assert c5.excess(i) % 3 == 0 and c5.excess(i) % 15


def test_additive_rule_against_hand_lift(c5):
    # row g is log[g mod 3] shifted by g, letters fixed
    logs = {log.index: log.entries for log in c5.circuit_logs()}
    rot = c5.derive_embedding()
    for g in range(15):
        want = [x if isinstance(x, str) else (x + g) % 15 for x in logs[g % 3]]
        assert cyclic_equal(rot.rows[g], want)


def test_derived_equals_printed_table(c5):
    assert c5.derive_embedding() == RotationSystem(oracles.raw_rows(K17_MINUS_K2), 15)


def test_derived_summary_against_oracle(c5):
    rows = {v: list(r) for v, r in c5.derive_embedding().rows.items()}
    assert oracles.summary(rows) == (17, 135, 90, 15, True)


def test_reversal_negates_logs(c5):
    r = c5.reversed()
    assert r.verify_principles().ok
    base = {log.index: log.numbers() for log in c5.circuit_logs()}
    for log in r.circuit_logs():
        neg = sorted((-x) % 15 for x in log.numbers())
        assert neg == sorted(base[0])


def test_logs_round_trip_through_rebuild(c5):
    logs = [log.entries for log in c5.circuit_logs()]
    cg = current_graph_from_logs(logs, 15)
    assert cg.verify_principles().ok
    assert cg.derive_embedding() == c5.derive_embedding()


def test_text_round_trip(c5):
    text = c5.to_text()
    assert CurrentGraph.from_text(text).to_text() == text


def test_rotation_from_printed_logs():
    logs = parse_table(C5_S1_LOGS)
    rot = rotation_from_logs([logs[i] for i in range(3)], 15)
    assert rot == sporadic("K17mK2")


def test_bad_vortex_closure_reports():
    logs = parse_table(C5_S1_LOGS)
    bad = [list(logs[i]) for i in range(3)]
    bad[0][0], bad[0][2] = bad[0][2], bad[0][0]
    with pytest.raises(CurrentGraphError):
        rotation_from_logs(bad, 15)


def test_modulus_must_be_multiple_of_three():
    with pytest.raises(CurrentGraphError):
        rotation_from_logs([[1], [1], [1]], 16)


# -- principle violations on small hand-made graphs ---------------------------------------

def theta(currents, modulus=9):
    # two nodes joined by three parallel arcs
    nodes = [Node(((0, 0), (1, 0), (2, 0))), Node(((2, 1), (1, 1), (0, 1)))]
    arcs = [Arc(0, 1, c) for c in currents]
    return CurrentGraph(modulus, nodes, arcs)


def test_kcl_violation_is_reported():
    rep = theta([1, 2, 4]).verify_principles()
    assert "E4" in rep.failed()


def test_zero_current_is_reported():
    rep = theta([0, 2, 7]).verify_principles()
    assert "E3" in rep.failed()


def test_structure_errors():
    with pytest.raises(CurrentGraphError):
        CurrentGraph(9, [Node(((0, 0),)), Node(((0, 0),))], [Arc(0, 1, 1)])
    with pytest.raises(CurrentGraphError):
        CurrentGraph(9, [Node(((0, 0),)), Node(())], [Arc(0, 1, 1)])


def test_unknown_currents_need_flag():
    text = fixture("c5s1.skeleton")
    with pytest.raises(CurrentGraphError):
        parse_current_graph(text)
    modulus, nodes, arcs, dart = parse_current_graph(text, allow_unknown=True)
    assert modulus == 15 and len(arcs) == 21 and all(a.current is None for a in arcs)


# -- ladders ---------------------------------------------------------------------------------

def test_ladder_found_in_family_logs():
    cg = build(FamilyParams("C6", 2))
    ladders = cg.find_ladders()
    assert ladders
    L = ladders[0]
    assert L.h % 3 == 0 and L.h % cg.modulus


def test_ladder_pattern_shape():
    # -t-h, g-h, r, g, -t, g+h, r+h with g=5, r=7, t=2, h=3 over Z_27
    n, g, r, t, h = 27, 5, 7, 2, 3
    seq = [(-t - h) % n, (g - h) % n, r, g, (-t) % n, (g + h) % n, (r + h) % n]
    found = find_ladders_in_logs([seq, [], []], n)
    assert any((L.g, L.r, L.t, L.h) == (g, r, t, h) for L in found)
    edges = found[0].handle_edges(n)
    assert len(set(edges)) == 6
