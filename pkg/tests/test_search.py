import os
import random

import pytest
from hypothesis import given, settings, strategies as st

from indexthree.currents import CurrentGraphError, Node
from indexthree.search import Skeleton, equivalent_logs, search, skeleton_of
from indexthree.families import FamilyParams, build
from indexthree.tables import C5_S1_LOGS, parse_table

FIX = os.path.join(os.path.dirname(__file__), "fixtures")

THETA = """\
currentgraph modulus=3 circuit0=0+
node 0 rot=1h,0h,2h
node 1 rot=0t,1t,2t
arc 0 tail=1.0 head=0.1 current=?
arc 1 tail=1.1 head=0.0 current=?
arc 2 tail=1.2 head=0.2 current=?
"""


def random_skeleton(seed, nnodes, modulus, vortices):
    rng = random.Random(seed)
    narcs = 3 * nnodes // 2
    ends = [(a, s) for a in range(narcs) for s in (0, 1)]
    rng.shuffle(ends)
    owner, nodes = {}, []
    for i in range(nnodes):
        rot = tuple(ends[3 * i:3 * i + 3])
        for e in rot:
            owner[e] = i
        nodes.append(Node(rot, "abcd"[i] if i < vortices else None))
    arcs = tuple((owner[(a, 0)], owner[(a, 1)]) for a in range(narcs))
    return Skeleton(modulus, tuple(nodes), arcs, (0, 1))


def keys(report):
    return sorted(tuple(a.current for a in cg.arcs) for cg in report.solutions)


def test_theta_over_z3():
    sk = Skeleton.from_text(THETA)
    rep = search(sk, symmetry=False)
    assert rep.exhausted
    assert keys(rep) == [(1, 1, 1), (2, 2, 2)]
    # multiplying by the unit 2 maps one to the other
    assert keys(search(sk)) == [(1, 1, 1)]


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10 ** 6), nnodes=st.sampled_from([2, 4]),
       modulus=st.sampled_from([3, 6]), vortices=st.integers(0, 2))
def test_pruning_loses_no_solutions(seed, nnodes, modulus, vortices):
    sk = random_skeleton(seed, nnodes, modulus, vortices)
    try:
        pruned = search(sk, symmetry=False)
    except CurrentGraphError:
        return
    full = search(sk, prune=False, symmetry=False)
    assert pruned.exhausted and full.exhausted
    assert keys(pruned) == keys(full)
    assert pruned.nodesExplored <= full.nodesExplored


def test_skeleton_text_round_trip():
    with open(os.path.join(FIX, "c5s1.skeleton")) as fh:
        text = fh.read()
    sk = Skeleton.from_text(text)
    assert sk.modulus == 15 and sk.vortex_count == 2
    assert Skeleton.from_text(sk.to_text()) == sk


def test_skeleton_of_family_graph():
    cg = build(FamilyParams("C5", 1))
    sk = skeleton_of(cg)
    assert len(sk.ends) == len(cg.arcs)


def test_budget_stops_early():
    sk = skeleton_of(build(FamilyParams("C5", 1)))
    rep = search(sk, budget=50)
    assert not rep.exhausted and rep.nodesExplored == 50


def test_limit_returns_verified_solution():
    sk = skeleton_of(build(FamilyParams("C5", 1)))
    rep = search(sk, limit=1)
    assert len(rep.solutions) == 1
    cg = rep.solutions[0]
    assert cg.verify_principles().ok
    s = cg.derive_embedding().analyze()
    assert (s.V, s.E, s.triangular) == (17, 135, True)


def test_equivalent_logs_under_units():
    logs = parse_table(C5_S1_LOGS)
    base = [logs[i] for i in range(3)]
    doubled = [[x if isinstance(x, str) else (2 * x) % 15 for x in log] for log in base]
    swapped = [doubled[0], doubled[2], doubled[1]]
    assert equivalent_logs(base, swapped, 15)
    shifted = [base[0][3:] + base[0][:3], base[1], base[2]]
    assert equivalent_logs(base, shifted, 15)


def test_inequivalent_logs():
    logs = parse_table(C5_S1_LOGS)
    base = [logs[i] for i in range(3)]
    other = [base[0], base[2], base[1]]
    assert not equivalent_logs(base, other, 15)
