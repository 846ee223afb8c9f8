"""Exhaustive search for currents on a fixed current-graph skeleton.

A skeleton is a current graph with the currents left blank: the nodes,
their rotations, the arcs and the vortex positions are given.  The
circuits depend only on this structure, so they are traced once.  Fixing
which circuit is ``[0]`` and choosing a labeling of the other two then
fixes every arc current modulo 3, and the search assigns the rest by
backtracking with three prunings:

* each circuit may record a group element at most once (E3),
* Kirchhoff's law at ordinary degree 3 nodes, which forces the last
  current at a node once the other two are known (E4),
* the residue rule between circuit labels and currents (E6).

Multiplying all currents by a unit of Z_n maps solutions to solutions
(swapping labels [1] and [2] when the unit is 2 mod 3), so the current on
one designated arc is restricted to divisors of n.  Counts reported by
:func:`search` are therefore counts of solutions up to this action.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .currents import Arc, CurrentGraph, CurrentGraphError, Node, format_current_graph, parse_current_graph


@dataclass(frozen=True)
class Skeleton:
    modulus: int
    nodes: Tuple[Node, ...]
    ends: Tuple[Tuple[int, int], ...]      # (tail node, head node) per arc
    label_dart: Tuple[int, int] = (0, 1)

    @classmethod
    def from_graph(cls, cg: CurrentGraph) -> "Skeleton":
        return cls(cg.modulus, tuple(cg.nodes), tuple((a.tail, a.head) for a in cg.arcs), cg.label_dart)

    @classmethod
    def from_text(cls, text: str) -> "Skeleton":
        modulus, nodes, arcs, label = parse_current_graph(text, allow_unknown=True)
        return cls(modulus, tuple(nodes), tuple((a.tail, a.head) for a in arcs), label)

    def to_text(self) -> str:
        return format_current_graph(self.graph([None] * len(self.ends)))

    def graph(self, currents: Sequence[Optional[int]]) -> CurrentGraph:
        arcs = [Arc(t, h, c) for (t, h), c in zip(self.ends, currents)]
        if any(c is None for c in currents):
            g = CurrentGraph.__new__(CurrentGraph)
            g.modulus, g.nodes, g.arcs, g.label_dart, g._circuits = self.modulus, self.nodes, tuple(arcs), self.label_dart, None
            return g
        return CurrentGraph(self.modulus, self.nodes, arcs, self.label_dart)

    @property
    def vortex_count(self) -> int:
        return sum(1 for nd in self.nodes if nd.vortex)


@dataclass
class SearchReport:
    solutions: List[CurrentGraph] = field(default_factory=list)
    nodesExplored: int = 0
    exhausted: bool = False

    def __str__(self):
        state = "exhausted" if self.exhausted else "budget reached"
        return f"{len(self.solutions)} solutions, {self.nodesExplored} nodes, {state}"


class _State:
    """Bookkeeping for one circuit labeling."""

    def __init__(self, sk: Skeleton, walks, labels, prune: bool):
        self.sk = sk
        self.n = n = sk.modulus
        self.prune = prune
        where = {}
        for ci, w in enumerate(walks):
            for dart in w:
                where[dart] = labels[ci]
        self.where = where
        self.cur: List[Optional[int]] = [None] * len(sk.ends)
        self.used = [set(), set(), set()]
        deg = [len(nd.rotation) for nd in sk.nodes]
        self.pendant = [deg[t] == 1 or deg[h] == 1 for t, h in sk.ends]
        # admissible residue per arc: label(against) - label(along) = current (mod 3)
        self.residue = [(where[(a, -1)] - where[(a, 1)]) % 3 for a in range(len(sk.ends))]
        self.kcl_nodes = [i for i, nd in enumerate(sk.nodes) if deg[i] == 3 and not nd.vortex]
        self.at_node: Dict[int, List[Tuple[int, int]]] = {}
        for i in self.kcl_nodes:
            self.at_node[i] = list(sk.nodes[i].rotation)

    def domain(self, a: int) -> List[int]:
        n = self.n
        vals = [c for c in range(1, n) if not self.prune or c % 3 == self.residue[a]]
        if self.pendant[a]:
            vals = [c for c in vals if n // math.gcd(c, n) in (2, 3)]
        return vals

    def records(self, a: int, c: int):
        n = self.n
        out = [(self.where[(a, 1)], c % n)]
        if not (self.pendant[a] and (2 * c) % n == 0):
            out.append((self.where[(a, -1)], -c % n))
        return out

    def put(self, a: int, c: int) -> bool:
        recs = self.records(a, c)
        if self.prune:
            seen = set()
            for ci, x in recs:
                if x in self.used[ci] or (ci, x) in seen:
                    return False
                seen.add((ci, x))
        self.cur[a] = c
        for ci, x in recs:
            self.used[ci].add(x)
        return True

    def take(self, a: int) -> None:
        c = self.cur[a]
        for ci, x in self.records(a, c):
            self.used[ci].discard(x)
        self.cur[a] = None

    def inflow(self, end) -> Optional[int]:
        c = self.cur[end[0]]
        if c is None:
            return None
        return c if end[1] == 1 else -c

    def forced(self) -> Optional[Tuple[int, int]]:
        """An arc whose current Kirchhoff's law determines, with that current."""
        for i in self.kcl_nodes:
            vals = [self.inflow(e) for e in self.at_node[i]]
            missing = [k for k, v in enumerate(vals) if v is None]
            if len(missing) != 1:
                continue
            end = self.at_node[i][missing[0]]
            need = -sum(v for v in vals if v is not None) % self.n
            c = need if end[1] == 1 else -need % self.n
            return end[0], c
        return None

    def kcl_broken(self) -> bool:
        for i in self.kcl_nodes:
            vals = [self.inflow(e) for e in self.at_node[i]]
            if None not in vals and sum(vals) % self.n:
                return True
        return False


def _divisor_reps(n: int) -> List[int]:
    return [d for d in range(1, n) if n % d == 0]


def search(skeleton: Skeleton, budget: Optional[int] = None, prune: bool = True,
           symmetry: bool = True, limit: Optional[int] = None) -> SearchReport:
    """Find every current assignment on ``skeleton`` that passes all principles.

    ``budget`` bounds the number of search nodes; when it runs out the
    report has ``exhausted=False``.  ``prune=False`` turns off the partial
    checks (the leaves are still verified), which is only practical for
    tiny moduli and exists to test that the pruning loses nothing.
    """
    report = SearchReport()
    n = skeleton.modulus
    probe = skeleton.graph([1] * len(skeleton.ends))
    try:
        probe.check_structure()
    except CurrentGraphError:
        raise
    walks = probe._raw_circuits()
    if len(walks) != 3 or n % 3:
        report.exhausted = True
        return report
    first = {d: ci for ci, w in enumerate(walks) for d in w}[skeleton.label_dart]
    labelings = [p for p in itertools.permutations(range(3)) if p[first] == 0]
    order = _arc_order(skeleton)
    anchor = skeleton.label_dart[0]
    seen = set()

    class _Stop(Exception):
        pass

    def visit():
        report.nodesExplored += 1
        if budget is not None and report.nodesExplored > budget:
            raise _Stop

    try:
        for labels in labelings:
            st = _State(skeleton, walks, labels, prune)

            def rec():
                visit()
                if st.prune and st.kcl_broken():
                    return
                f = st.forced() if st.prune else None
                if f is not None:
                    a, c = f
                    if c == 0 or c not in st.domain(a):
                        return
                    if st.put(a, c):
                        yield from rec()
                        st.take(a)
                    return
                a = next((x for x in order if st.cur[x] is None), None)
                if a is None:
                    yield list(st.cur)
                    return
                vals = st.domain(a)
                if symmetry and a == anchor:
                    reps = set(_divisor_reps(n))
                    vals = [c for c in vals if c in reps]
                for c in vals:
                    if st.put(a, c):
                        yield from rec()
                        st.take(a)

            for currents in rec():
                key = tuple(currents)
                if key in seen:
                    continue
                cg = CurrentGraph(n, skeleton.nodes,
                                  [Arc(t, h, c) for (t, h), c in zip(skeleton.ends, currents)],
                                  skeleton.label_dart)
                if cg.verify_principles().ok:
                    seen.add(key)
                    report.solutions.append(cg)
                    if limit is not None and len(report.solutions) >= limit:
                        return report
        report.exhausted = True
    except _Stop:
        report.nodesExplored = budget
    return report


def _arc_order(sk: Skeleton) -> List[int]:
    """Breadth-first arc order from the designated arc, so Kirchhoff forcing kicks in early."""
    start = sk.label_dart[0]
    order, seen = [], set()
    queue = [start]
    while queue:
        a = queue.pop(0)
        if a in seen:
            continue
        seen.add(a)
        order.append(a)
        for node in sk.ends[a]:
            for arc, _ in sk.nodes[node].rotation:
                if arc not in seen:
                    queue.append(arc)
    order += [a for a in range(len(sk.ends)) if a not in seen]
    return order


def skeleton_of(cg: CurrentGraph) -> Skeleton:
    return Skeleton.from_graph(cg)


def _same_cycle(x: Sequence, y: Sequence) -> bool:
    if len(x) != len(y):
        return False
    if not x:
        return True
    k = len(x)
    return any(all(x[(i + j) % k] == y[j] for j in range(k)) for i in range(k) if x[i] == y[0])


def equivalent_logs(logs1, logs2, modulus: int) -> bool:
    """Whether two log triples agree up to a unit multiple, renaming letters and cyclic shifts.

    A unit that is 2 mod 3 also swaps circuits [1] and [2].
    """
    n = modulus
    letters = sorted({x for log in logs1 for x in log if isinstance(x, str)})
    other = sorted({x for log in logs2 for x in log if isinstance(x, str)})
    if len(letters) != len(other):
        return False
    for u in range(1, n):
        if math.gcd(u, n) != 1:
            continue
        for perm in itertools.permutations(other):
            ren = dict(zip(letters, perm))
            mapped = [[ren[x] if isinstance(x, str) else (u * x) % n for x in log] for log in logs1]
            if u % 3 == 2:
                mapped = [mapped[0], mapped[2], mapped[1]]
            if all(_same_cycle(a, list(b)) for a, b in zip(mapped, logs2)):
                return True
    return False
