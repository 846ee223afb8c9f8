import pytest

from indexthree.embedding import format_rotation
from indexthree.families import (CASES, FamilyError, FamilyParams, TemplateError, bose_ladder, build, derived,
                                 ladder_currents, parse_affine, sporadic, vertex_count)
from indexthree.tables import C5_S1_LOGS, parse_table

import oracles


def cyclic_equal(a, b):
    a, b = list(a), list(b)
    return len(a) == len(b) and any(a[i:] + a[:i] == b for i in range(len(a)))


def test_c5_s1_reproduces_printed_table_byte_for_byte():
    assert format_rotation(derived(FamilyParams("C5", 1))) == format_rotation(sporadic("K17mK2"))


def test_c5_s1_logs():
    printed = parse_table(C5_S1_LOGS)
    for log in build(FamilyParams("C5", 1)).circuit_logs():
        assert cyclic_equal(log.entries, printed[log.index])


SWEEP = [(c, s) for c in ("C6", "C8", "C9") for s in (2, 3)] + [
    ("C5", 2), ("C5min", 2), ("C9s1", 1), ("C11s1", 1), ("C11s2", 2)]


@pytest.mark.parametrize("case, s", SWEEP)
def test_family_derives_triangular_near_complete_graph(case, s):
    cg = build(FamilyParams(case, s))
    assert cg.verify_principles().ok
    rot = cg.derive_embedding()
    rows = {v: list(r) for v, r in rot.rows.items()}
    V, E, F, g, tri = oracles.summary(rows)
    ell = CASES[case].letters
    n = vertex_count(FamilyParams(case, s))
    assert V == n and tri
    assert E == oracles.triangulation_edges(n, ell * (ell - 1) // 2)
    assert g == oracles.triangular_genus(V, E)
    assert {frozenset(p) for p in oracles.missing_pairs(rows)} == \
        {frozenset((x, y)) for x in rot.vertices() for y in rot.vertices()
         if isinstance(x, str) and isinstance(y, str) and x < y}


@pytest.mark.parametrize("case", ["C5min", "C6", "C8", "C9"])
def test_ladder_families_expose_a_ladder(case):
    assert build(FamilyParams(case, 2)).find_ladders()


def test_vertex_count():
    assert vertex_count(FamilyParams("C8", 2)) == 32
    assert vertex_count(FamilyParams("C11s1", 1)) == 23


def test_out_of_range_s():
    with pytest.raises(FamilyError):
        build(FamilyParams("C6", 1))
    with pytest.raises(FamilyError):
        build(FamilyParams("C11s2", 3))
    with pytest.raises(FamilyError):
        build(FamilyParams("nope", 1))


def test_unknown_sporadic():
    with pytest.raises(FamilyError):
        sporadic("K99")


def test_template_error_is_a_family_error():
    assert issubclass(TemplateError, FamilyError)


# -- ladder ------------------------------------------------------------------------

@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_ladder_currents_follow_the_alternating_rungs(s):
    d, h = ladder_currents(s)
    assert [d[k] for k in range(1, 5)] == [3, -6, 9, -12]
    # the rails visit every current 1 mod 3 in the ladder range once
    n = 12 * s + 3
    rails = {h[k] % n for k in range(4 * s + 1)} | {-h[k] % n for k in range(4 * s + 1)}
    assert len(rails) == 2 * (4 * s + 1)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_full_ladder_nodes_are_cubic_and_balanced(s):
    frag = bose_ladder(s)
    n = 12 * s + 3
    assert frag.rungs == 4 * s
    for name, ends in frag.nodes.items():
        assert len(ends) == 3
        net = 0
        for key, side in ends:
            c = frag.arcs[key][2]
            net += c if side == 1 else -c
        assert net % n == 0, name


def test_ladder_range_check():
    with pytest.raises(FamilyError):
        bose_ladder(1, 5)
    assert bose_ladder(2, 0, 3).rungs == 0


@pytest.mark.parametrize("text, val", [("6s-1", (6, -1)), ("3", (0, 3)), ("s+2", (1, 2)), ("-s", (-1, 0))])
def test_parse_affine(text, val):
    assert parse_affine(text) == val


def test_parse_affine_rejects_garbage():
    with pytest.raises(FamilyError):
        parse_affine("2t+1")


def contains_cyclic(log, seq):
    k = len(log)
    return any([log[(i + j) % k] for j in range(len(seq))] == seq for i in range(k))


@pytest.mark.parametrize("s", [2, 3])
def test_c8_logs_carry_the_printed_fragments(s):
    logs = {log.index: list(log.entries) for log in build(FamilyParams("C8", s)).circuit_logs()}
    assert contains_cyclic(logs[0], [6 * s + 1, 12 * s])
    assert contains_cyclic(logs[2], ["a", 6 * s + 2, "b", 12 * s + 1, "c"])


def test_c5_has_no_ladder_and_c5min_starts_at_two():
    assert not any(build(FamilyParams("C5", s)).find_ladders() for s in (1, 2, 3))
    with pytest.raises(FamilyError):
        build(FamilyParams("C5min", 1))
