"""Property suites for the embedding invariants."""

import itertools
import math
import random
from collections import Counter

import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from indexthree import surgery
from indexthree.embedding import EmbeddingError, FlipConflict, RotationSystem
from indexthree.families import CASES, FamilyParams, build, sporadic

import oracles


def octahedron():
    return RotationSystem({
        0: [1, 2, 3, 4], 5: [4, 3, 2, 1],
        1: [0, 4, 5, 2], 2: [0, 1, 5, 3], 3: [0, 2, 5, 4], 4: [0, 3, 5, 1],
    })


def rows_of(rot):
    return {v: list(r) for v, r in rot.rows.items()}


def traced_triangular(rows):
    return all(len(f) == 3 for f in oracles.faces_by_predecessor(rows))


# -- ruler criterion versus face tracing ------------------------------------------------

def all_rotation_systems(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1, 1 << len(pairs)):
        edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
        nbrs = {v: [] for v in range(n)}
        for a, b in edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        if any(not x for x in nbrs.values()):
            continue
        choices = []
        for v in range(n):
            first, rest = nbrs[v][0], nbrs[v][1:]
            choices.append([[first] + list(p) for p in itertools.permutations(rest)])
        for combo in itertools.product(*choices):
            yield dict(enumerate(combo))


def test_ruler_matches_tracing_exhaustively_up_to_five_vertices():
    count = Counter()
    for n in range(2, 6):
        for rows in all_rotation_systems(n):
            rot = RotationSystem(rows)
            ruler = rot.is_triangular_ruler()
            assert ruler == traced_triangular(rows) == rot.is_triangular(), rows
            count[ruler] += 1
    assert sum(count.values()) == 28003 and count[True] > 0


def random_rows(rng, n):
    while True:
        p = rng.uniform(0.3, 1.0)
        nbrs = {v: [] for v in range(n)}
        for a, b in itertools.combinations(range(n), 2):
            if rng.random() < p:
                nbrs[a].append(b)
                nbrs[b].append(a)
        if all(nbrs.values()):
            for r in nbrs.values():
                rng.shuffle(r)
            return nbrs


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2 ** 32), n=st.integers(2, 8))
def test_ruler_matches_tracing_on_random_rotations(seed, n):
    rows = random_rows(random.Random(seed), n)
    rot = RotationSystem(rows)
    assert rot.is_triangular_ruler() == traced_triangular(rows)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2 ** 32))
def test_ruler_matches_tracing_near_triangulations(seed):
    # random rotations are rarely triangular, so also perturb real triangulations
    rng = random.Random(seed)
    rows = rows_of(random_triangulation(rng, 3))
    v = rng.choice(list(rows))
    i, j = rng.sample(range(len(rows[v])), 2)
    if rng.random() < 0.5:
        rows[v][i], rows[v][j] = rows[v][j], rows[v][i]
    assert RotationSystem(rows).is_triangular_ruler() == traced_triangular(rows)


# -- random triangulations ------------------------------------------------------------------

BASES = [octahedron(), sporadic("K17mK2"), sporadic("K8q0q1"), sporadic("K11mC4")]


def random_triangulation(rng, flips):
    rot = rng.choice(BASES)
    for _ in range(flips):
        edges = sorted(rot.edges(), key=repr)
        u, v = rng.choice(edges)
        try:
            rot = rot.edge_flip(u, v)
        except EmbeddingError:
            pass
    return rot


def face_lengths(rot):
    return Counter(len(f) for f in rot.trace_faces())


def cuts_in_order(rng, row, k):
    idx = sorted(rng.sample(range(len(row)), k))
    return [row[i] for i in idx]


triangulations = st.builds(lambda seed, flips: random_triangulation(random.Random(seed), flips),
                           st.integers(0, 2 ** 32), st.integers(0, 30))


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(rot=triangulations, seed=st.integers(0, 2 ** 32))
def test_construction1_adds_a_handle_and_a_9gon(rot, seed):
    rng = random.Random(seed)
    assert rot.is_triangular()
    v = rng.choice(rot.vertices())
    row = rot.row(v)
    assume(len(row) >= 3)
    r = surgery.construction1(rot, v, cuts_in_order(rng, row, 3))
    assert r.genus() == rot.genus() + 1
    want = face_lengths(rot)
    want[3] -= 3
    want[9] += 1
    assert face_lengths(r) == +want


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(rot=triangulations, seed=st.integers(0, 2 ** 32))
def test_construction2_adds_a_handle_and_two_hexagons(rot, seed):
    rng = random.Random(seed)
    v = rng.choice(rot.vertices())
    row = rot.row(v)
    assume(len(row) >= 4)
    r = surgery.construction2(rot, v, cuts_in_order(rng, row, 4))
    assert r.genus() == rot.genus() + 1
    want = face_lengths(rot)
    want[3] -= 4
    want[6] += 2
    assert face_lengths(r) == +want


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(rot=triangulations, seed=st.integers(0, 2 ** 32))
def test_construction3_merges_two_faces(rot, seed):
    rng = random.Random(seed)
    missing = sorted(rot.missing_edges(), key=repr)
    assume(missing)
    u, v = rng.choice(missing)
    faces = rot.trace_faces()
    F1 = rng.choice([f for f in faces if u in f])
    F2 = rng.choice([f for f in faces if v in f and f != F1])
    r = surgery.construction3(rot, F1, F2, u, v)
    assert r.genus() == rot.genus() + 1
    assert r.adjacent(u, v)
    want = face_lengths(rot)
    want[len(F1)] -= 1
    want[len(F2)] -= 1
    want[len(F1) + len(F2) + 2] += 1
    assert face_lengths(r) == +want


# -- edge flips ------------------------------------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(rot=triangulations, seed=st.integers(0, 2 ** 32))
def test_flip_is_an_involution(rot, seed):
    rng = random.Random(seed)
    edges = sorted(rot.edges(), key=repr)
    rng.shuffle(edges)
    # dense bases have many edges whose flip would double an edge, so take the first that works
    for u, v in edges:
        try:
            once = rot.edge_flip(u, v)
            break
        except EmbeddingError:
            continue
    else:
        assume(False)
    x, y = rot.face_of(u, v)[2], rot.face_of(v, u)[2]
    assert once.is_triangular() and once.genus() == rot.genus()
    assert once.edge_flip(x, y) == rot


# -- handle subtraction ------------------------------------------------------------------------

LADDER_CASES = [("C11", 3)] if "C11" in CASES else []
LADDER_CASES += [("C8", 3), ("C9", 3)]


@pytest.fixture(scope="module", params=LADDER_CASES, ids=lambda p: f"{p[0]}s{p[1]}")
def laddered(request):
    cg = build(FamilyParams(*request.param))
    return cg.derive_embedding(), cg.find_ladders()[0]


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(data=st.data())
def test_subtraction_order_independent(laddered, data):
    rot, ladder = laddered
    n = rot.modulus
    shifts = data.draw(st.lists(st.sampled_from(range(0, n, 3)), min_size=1, max_size=4, unique=True))
    order = data.draw(st.permutations(shifts))
    together = surgery.subtract_handles(rot, ladder, shifts)
    one_by_one = rot
    for s in order:
        one_by_one = surgery.subtract_handles(one_by_one, ladder, [s])
    assert one_by_one == together
    assert together.genus() == rot.genus() - len(shifts)
    assert together.num_edges() == rot.num_edges() - 6 * len(shifts)
