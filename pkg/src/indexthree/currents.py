"""Index 3 current graphs over cyclic groups.

A current graph is an embedded directed graph whose arcs carry currents
in Z_{3m}.  Every node stores the cyclic order of its incident *ends*; an
end is a pair ``(arc, side)`` with side 0 for the tail and 1 for the
head, so parallel arcs and loops need no special treatment.

The three face boundary walks of the embedding are the circuits.  Their
logs (currents read along the walk, letters at vortices) determine the
derived embedding: row ``g`` is the log of circuit ``g mod 3`` shifted by
``g``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .embedding import LETTERS, EmbeddingError, RotationSystem

End = Tuple[int, int]          # (arc id, 0 = tail / 1 = head)
Dart = Tuple[int, int]         # (arc id, +1 along / -1 against the orientation)


class CurrentGraphError(ValueError):
    """Structurally invalid current graph or a failed derivation."""


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    current: int


@dataclass(frozen=True)
class Node:
    rotation: Tuple[End, ...]
    vortex: Optional[str] = None


@dataclass(frozen=True)
class Circuit:
    index: int
    walk: Tuple[Dart, ...]


@dataclass(frozen=True)
class CircuitLog:
    index: int
    entries: Tuple[object, ...]

    def numbers(self) -> List[int]:
        return [x for x in self.entries if isinstance(x, int)]

    def letters(self) -> List[str]:
        return [x for x in self.entries if isinstance(x, str)]

    def __str__(self):
        return f"[{self.index}]. " + " ".join(str(x) for x in self.entries)


@dataclass
class PrincipleReport:
    """Violations of each construction principle, keyed ``E1`` .. ``E7``."""

    violations: Dict[str, list] = field(default_factory=lambda: {f"E{i}": [] for i in range(1, 8)})

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def failed(self) -> List[str]:
        return [k for k, v in self.violations.items() if v]

    def __str__(self):
        parts = []
        for k, v in self.violations.items():
            parts.append(f"{k}: {'pass' if not v else 'FAIL ' + repr(v[:4])}")
        return "; ".join(parts)


@dataclass(frozen=True)
class LadderSpec:
    """An arithmetic 3-ladder, read off the log of circuit ``circuit``.

    The log contains, consecutively, ``-t-h, g-h, r, g, -t, g+h, r+h``
    starting at ``position``; the step ``h`` is a nonzero multiple of 3.
    """

    circuit: int
    g: int
    r: int
    t: int
    h: int
    position: int

    def handle_edges(self, modulus: int, base: int = 0) -> List[Tuple[int, int]]:
        """The six edges of the handle at ``base`` (``base`` in the circuit's residue class)."""
        g, r, t, h = self.g, self.r, self.t, self.h
        pairs = [(0, -t), (0, g + h), (g, h), (g, -t), (r + h, g + h), (r + h, h)]
        out = []
        for x, y in pairs:
            x, y = (x + base) % modulus, (y + base) % modulus
            out.append((min(x, y), max(x, y)))
        return out


class CurrentGraph:
    """An index 3 current graph with group Z_modulus.

    ``nodes[i].rotation`` lists ends in clockwise order.  ``label_dart`` is a
    dart lying on the circuit to be labeled ``[0]``; by default the first
    arc traversed along its orientation.
    """

    def __init__(self, modulus: int, nodes: Sequence[Node], arcs: Sequence[Arc],
                 label_dart: Dart = (0, 1), check: bool = True):
        self.modulus = modulus
        self.nodes = tuple(nodes)
        self.arcs = tuple(Arc(a.tail, a.head, a.current % modulus) for a in arcs)
        self.label_dart = label_dart
        self._circuits = None
        if check:
            self.check_structure()

    def __repr__(self):
        nv = sum(1 for n in self.nodes if n.vortex)
        return f"CurrentGraph(modulus={self.modulus}, nodes={len(self.nodes)}, arcs={len(self.arcs)}, vortices={nv})"

    # -- structure --------------------------------------------------------

    def check_structure(self) -> None:
        seen = {}
        for i, node in enumerate(self.nodes):
            if not node.rotation:
                raise CurrentGraphError(f"node {i} has no incident arcs")
            for end in node.rotation:
                arc, side = end
                if not 0 <= arc < len(self.arcs) or side not in (0, 1):
                    raise CurrentGraphError(f"node {i}: bad end {end!r}")
                if end in seen:
                    raise CurrentGraphError(f"end {end!r} used at nodes {seen[end]} and {i}")
                expect = self.arcs[arc].tail if side == 0 else self.arcs[arc].head
                if expect != i:
                    raise CurrentGraphError(f"end {end!r} listed at node {i} but arc attaches to node {expect}")
                seen[end] = i
        for a in range(len(self.arcs)):
            for side in (0, 1):
                if (a, side) not in seen:
                    raise CurrentGraphError(f"arc {a} end {side} missing from every rotation")
        letters = [n.vortex for n in self.nodes if n.vortex]
        if len(set(letters)) != len(letters):
            raise CurrentGraphError("vortex letters repeat")

    def node_of(self, end: End) -> int:
        arc = self.arcs[end[0]]
        return arc.tail if end[1] == 0 else arc.head

    def vortices(self) -> Dict[str, int]:
        return {n.vortex: i for i, n in enumerate(self.nodes) if n.vortex}

    def in_value(self, end: End) -> int:
        """Current flowing into the node through ``end``."""
        c = self.arcs[end[0]].current
        return c if end[1] == 1 else -c % self.modulus

    def excess(self, node: int) -> int:
        return sum(self.in_value(e) for e in self.nodes[node].rotation) % self.modulus

    def _succ_end(self, end: End) -> End:
        rot = self.nodes[self.node_of(end)].rotation
        return rot[(rot.index(end) + 1) % len(rot)]

    # -- circuits ---------------------------------------------------------

    def _next_dart(self, dart: Dart) -> Dart:
        arc, d = dart
        arrive = (arc, 1 if d == 1 else 0)
        leave = self._succ_end(arrive)
        return (leave[0], 1 if leave[1] == 0 else -1)

    def _raw_circuits(self) -> List[Tuple[Dart, ...]]:
        seen = set()
        out = []
        for a in range(len(self.arcs)):
            for d in (1, -1):
                if (a, d) in seen:
                    continue
                walk = []
                dart = (a, d)
                while dart not in seen:
                    seen.add(dart)
                    walk.append(dart)
                    dart = self._next_dart(dart)
                out.append(tuple(walk))
        return out

    def _labeling(self, walks) -> Optional[List[int]]:
        """Assign labels 0, 1, 2 to three circuits consistently with the residue rule."""
        if len(walks) != 3:
            return None
        where = {}
        for ci, w in enumerate(walks):
            for dart in w:
                where[dart] = ci
        first = where.get(self.label_dart, 0)
        for perm in itertools.permutations(range(3)):
            if perm[first] != 0:
                continue
            if all((perm[where[(a, -1)]] - perm[where[(a, 1)]] - arc.current) % 3 == 0
                   for a, arc in enumerate(self.arcs)):
                return list(perm)
        return None

    def trace_circuits(self) -> List[Circuit]:
        """Face boundary walks, labeled by the residue rule when possible."""
        if self._circuits is None:
            walks = self._raw_circuits()
            labels = self._labeling(walks)
            if labels is None:
                labels = list(range(len(walks)))
            circuits = [Circuit(lab, self._rotate_walk(w)) for lab, w in zip(labels, walks)]
            circuits.sort(key=lambda c: c.index)
            self._circuits = circuits
        return list(self._circuits)

    def _rotate_walk(self, walk):
        # start right after a vortex if there is one, else at the smallest arc
        for i, (arc, d) in enumerate(walk):
            head = self.arcs[arc].head if d == 1 else self.arcs[arc].tail
            if self.nodes[head].vortex == "a":
                return walk[i + 1:] + walk[: i + 1]
        i = min(range(len(walk)), key=lambda k: walk[k])
        return walk[i:] + walk[:i]

    def _record(self, dart: Dart) -> int:
        arc, d = dart
        c = self.arcs[arc].current
        return c if d == 1 else -c % self.modulus

    def _is_pendant_return(self, dart: Dart) -> bool:
        """Second traversal of an arc to a degree-1 node with an order-2 current."""
        arc, d = dart
        a = self.arcs[arc]
        start = a.tail if d == 1 else a.head
        return len(self.nodes[start].rotation) == 1 and (2 * a.current) % self.modulus == 0

    def circuit_logs(self) -> List[CircuitLog]:
        logs = []
        for circ in self.trace_circuits():
            entries = []
            for dart in circ.walk:
                if not self._is_pendant_return(dart):
                    entries.append(self._record(dart))
                arc, d = dart
                head = self.arcs[arc].head if d == 1 else self.arcs[arc].tail
                if self.nodes[head].vortex:
                    entries.append(self.nodes[head].vortex)
            logs.append(CircuitLog(circ.index, tuple(entries)))
        return logs

    # -- principles -------------------------------------------------------

    def verify_principles(self) -> PrincipleReport:
        rep = PrincipleReport()
        v = rep.violations
        n = self.modulus
        for i, node in enumerate(self.nodes):
            deg = len(node.rotation)
            if deg not in (1, 3):
                v["E1"].append(("node", i, deg))
        walks = self._raw_circuits()
        if len(walks) != 3:
            v["E2"].append(("circuits", len(walks)))
        labels = self._labeling(walks)
        if labels is None and len(walks) == 3:
            v["E6"].append(("no consistent circuit labeling",))
        if len(walks) == 3:
            logs = self.circuit_logs()
            for log in logs:
                nums = log.numbers()
                counts = {}
                for x in nums:
                    counts[x] = counts.get(x, 0) + 1
                for x in range(n):
                    c = counts.get(x, 0)
                    if x == 0 and c:
                        v["E3"].append(("circuit", log.index, "zero current", c))
                    elif x and c != 1:
                        v["E3"].append(("circuit", log.index, x, c))
        for i, node in enumerate(self.nodes):
            if len(node.rotation) != 3:
                if node.vortex:
                    v["E5"].append(("vortex degree", node.vortex, len(node.rotation)))
                continue
            ex = self.excess(i)
            if node.vortex is None:
                if ex:
                    v["E4"].append(("node", i, "excess", ex))
            else:
                if math.gcd(ex, n) != 3 or n % 3:
                    v["E5"].append(("vortex", node.vortex, "excess", ex))
        if len(walks) == 3:
            where = {}
            for ci, w in enumerate(walks):
                for dart in w:
                    where[dart] = ci
            for letter, i in self.vortices().items():
                touching = {where[self._leaving_dart(e)] for e in self.nodes[i].rotation}
                if len(touching) != 3:
                    v["E5"].append(("vortex", letter, "circuits", len(touching)))
        for a, arc in enumerate(self.arcs):
            if arc.current == 0:
                v["E3"].append(("arc", a, "zero current"))
            for node in (arc.tail, arc.head):
                if len(self.nodes[node].rotation) == 1:
                    order = n // math.gcd(arc.current, n)
                    if order not in (2, 3):
                        v["E7"].append(("arc", a, arc.current, "order", order))
        return rep

    def _leaving_dart(self, end: End) -> Dart:
        return (end[0], 1 if end[1] == 0 else -1)

    # -- derived embedding ------------------------------------------------

    def derive_embedding(self, check: bool = True) -> RotationSystem:
        """Derived embedding of K_{3m} + (l isolated vortex vertices)."""
        if check:
            rep = self.verify_principles()
            if not rep.ok:
                raise CurrentGraphError(f"construction principles violated: {rep}")
        return rotation_from_logs([log.entries for log in self.circuit_logs()], self.modulus)

    # -- ladders ----------------------------------------------------------

    def find_ladders(self) -> List[LadderSpec]:
        return find_ladders_in_logs([log.entries for log in self.circuit_logs()], self.modulus)

    # -- transformations --------------------------------------------------

    def reversed(self) -> "CurrentGraph":
        """Reverse every arc and negate its current (same circuits, negated logs)."""
        arcs = [Arc(a.head, a.tail, -a.current) for a in self.arcs]
        flip = lambda e: (e[0], 1 - e[1])
        nodes = [Node(tuple(flip(e) for e in nd.rotation), nd.vortex) for nd in self.nodes]
        return CurrentGraph(self.modulus, nodes, arcs, (self.label_dart[0], -self.label_dart[1]))

    def with_currents(self, currents: Sequence[int]) -> "CurrentGraph":
        arcs = [Arc(a.tail, a.head, c) for a, c in zip(self.arcs, currents)]
        return CurrentGraph(self.modulus, self.nodes, arcs, self.label_dart)

    # -- text format ------------------------------------------------------

    def to_text(self) -> str:
        return format_current_graph(self)

    @classmethod
    def from_text(cls, text: str) -> "CurrentGraph":
        return parse_current_graph(text)

    @classmethod
    def from_logs(cls, logs, modulus: int) -> "CurrentGraph":
        return current_graph_from_logs(logs, modulus)


# -- derivation from logs ---------------------------------------------------

def rotation_from_logs(logs: Sequence[Sequence[object]], modulus: int) -> RotationSystem:
    """Rows ``g. log[g % 3] + g`` plus the manufactured vortex rows."""
    n = modulus
    if n % 3:
        raise CurrentGraphError(f"modulus {n} is not a multiple of 3")
    rows = {}
    for g in range(n):
        rows[g] = [x if isinstance(x, str) else (x + g) % n for x in logs[g % 3]]
    letters = sorted({x for log in logs for x in log if isinstance(x, str)})
    tmp = RotationSystem(rows, n, check=False)
    for X in letters:
        # successor of i at X is the predecessor of X at i
        walk = [0]
        while True:
            nxt = tmp.pred(walk[-1], X)
            if nxt == walk[0]:
                break
            if nxt in walk or len(walk) > n:
                raise CurrentGraphError(f"vortex {X}: closure is not a single {n}-cycle (cycle of length {len(walk)})")
            walk.append(nxt)
        if len(walk) != n:
            raise CurrentGraphError(f"vortex {X}: closure is not a single {n}-cycle (cycle of length {len(walk)})")
        rows[X] = walk
    return RotationSystem(rows, n)


def find_ladders_in_logs(logs, modulus: int) -> List[LadderSpec]:
    """All arithmetic 3-ladders visible as seven consecutive log entries."""
    n = modulus
    out = []
    for c, log in enumerate(logs):
        L = len(log)
        for p in range(L):
            x = [log[(p + k) % L] for k in range(7)]
            if not all(isinstance(v, int) for v in x):
                continue
            h = (x[3] - x[1]) % n
            if h == 0 or h % 3:
                continue
            if (x[4] - x[0]) % n != h or (x[5] - x[3]) % n != h or (x[6] - x[2]) % n != h:
                continue
            out.append(LadderSpec(c, x[3], x[2], (-x[4]) % n, h, p))
    return out


def current_graph_from_logs(logs, modulus: int) -> CurrentGraph:
    """Rebuild a current graph whose circuits have exactly the given logs.

    Nodes are the orbits of log corners under the rule that a corner
    ``(a, b)`` in circuit ``c`` forces the corner ``(b-a, -a)`` in circuit
    ``c+a``; vortex letters become nodes of their own.  Raises
    :class:`CurrentGraphError` when the logs are inconsistent.
    """
    n = modulus
    logs = [list(log) for log in logs]
    if len(logs) != 3:
        raise CurrentGraphError("need exactly three logs")
    # numeric entries per circuit and what sits between consecutive ones
    entries = []      # per circuit: list of numeric values
    between = []      # per circuit: letter (or None) after entry k
    for log in logs:
        vals, gaps = [], []
        if log and isinstance(log[0], str):
            raise CurrentGraphError("a log may not start with a letter; rotate it first")
        for x in log:
            if isinstance(x, str):
                if not gaps or gaps[-1] is not None:
                    raise CurrentGraphError("two letters in a row")
                gaps[-1] = x
            else:
                vals.append(x % n)
                gaps.append(None)
        entries.append(vals)
        between.append(gaps)
    pos = []
    for vals in entries:
        d = {}
        for k, x in enumerate(vals):
            if x in d or x == 0:
                raise CurrentGraphError(f"log entry {x} repeated or zero")
            d[x] = k
        pos.append(d)

    def partner(c, k):
        """(circuit, index) of the reverse traversal of entry k of circuit c."""
        x = entries[c][k]
        c2 = (c + x) % 3
        k2 = pos[c2].get((-x) % n)
        if k2 is None:
            raise CurrentGraphError(f"entry {x} of circuit {c} has no reverse {(-x) % n} in circuit {c2}")
        return c2, k2

    # arcs: one per pair of traversals; orientation follows the traversal with the smaller current
    arc_of = {}
    arc_dir = {}
    arc_list = []
    for c in range(3):
        for k, x in enumerate(entries[c]):
            if (c, k) in arc_of:
                continue
            c2, k2 = partner(c, k)
            a = len(arc_list)
            along = (c, k) if x <= (-x) % n or (c2, k2) == (c, k) else (c2, k2)
            arc_list.append([None, None, entries[along[0]][along[1]]])
            arc_of[(c, k)] = a
            arc_of[(c2, k2)] = a
            arc_dir[along] = 1
            if (c2, k2) != (c, k):
                other = (c2, k2) if along == (c, k) else (c, k)
                arc_dir[other] = -1

    # corners: the passage between entry k and entry k+1 of circuit c
    def arrive_end(c, k):
        a = arc_of[(c, k)]
        return (a, 1) if arc_dir[(c, k)] == 1 else (a, 0)

    def leave_end(c, k):
        a = arc_of[(c, k)]
        return (a, 0) if arc_dir[(c, k)] == 1 else (a, 1)

    def pendant2(c, k):
        return partner(c, k) == (c, k)

    succ = {}
    letter_of_end = {}
    for c in range(3):
        L = len(entries[c])
        for k in range(L):
            k1 = (k + 1) % L
            if pendant2(c, k1):
                continue
            arrive = arrive_end(c, k)
            if pendant2(c, k):
                arrive = leave_end(c, k)
            leave = leave_end(c, k1)
            if arrive in succ:
                raise CurrentGraphError(f"end {arrive} entered twice")
            succ[arrive] = leave
            if between[c][k] is not None:
                letter_of_end[arrive] = between[c][k]
    for c in range(3):
        L = len(entries[c])
        for k in range(L):
            if pendant2(c, k):
                # the degree-1 node sits at the far end of the arc
                tail_end = leave_end(c, k)
                succ[(tail_end[0], 1 - tail_end[1])] = (tail_end[0], 1 - tail_end[1])
                prev = arrive_end(c, (k - 1) % L)
                if prev in succ:
                    raise CurrentGraphError(f"end {prev} entered twice")
                succ[prev] = tail_end
                if between[c][(k - 1) % L] is not None:
                    letter_of_end[prev] = between[c][(k - 1) % L]
    # orbits of succ are the nodes
    nodes = []
    node_of_end = {}
    order = sorted(succ, key=lambda e: (e[0], e[1]))
    for e in order:
        if e in node_of_end:
            continue
        cyc = [e]
        while True:
            nxt = succ.get(cyc[-1])
            if nxt is None:
                raise CurrentGraphError(f"end {cyc[-1]} has no successor")
            if nxt == cyc[0]:
                break
            if nxt in cyc:
                raise CurrentGraphError("ends do not close into a rotation")
            cyc.append(nxt)
        labels = {letter_of_end.get(x) for x in cyc} - {None}
        if len(labels) > 1:
            raise CurrentGraphError(f"node with ends {cyc} carries several letters {labels}")
        if labels and len(labels) == 1 and any(x not in letter_of_end for x in cyc):
            raise CurrentGraphError(f"vortex {labels} is not met at every passage")
        idx = len(nodes)
        for x in cyc:
            node_of_end[x] = idx
        nodes.append(Node(tuple(cyc), labels.pop() if labels else None))
    arcs = []
    for a, (_, _, cur) in enumerate(arc_list):
        arcs.append(Arc(node_of_end[(a, 0)], node_of_end[(a, 1)], cur))
    first = arc_of[(0, 0)]
    label_dart = (first, arc_dir[(0, 0)])
    return CurrentGraph(n, nodes, arcs, label_dart)


# -- text format ------------------------------------------------------------

def _fmt_end(e: End) -> str:
    return f"{e[0]}{'th'[e[1]]}"


def format_current_graph(cg: CurrentGraph) -> str:
    lines = [f"currentgraph modulus={cg.modulus}"]
    a0, d0 = cg.label_dart
    lines[0] += f" circuit0={a0}{'+' if d0 == 1 else '-'}"
    for i, node in enumerate(cg.nodes):
        s = f"node {i} rot=" + ",".join(_fmt_end(e) for e in node.rotation)
        if node.vortex:
            s += f" vortex={node.vortex}"
        lines.append(s)
    for a, arc in enumerate(cg.arcs):
        ts = cg.nodes[arc.tail].rotation.index((a, 0))
        hs = cg.nodes[arc.head].rotation.index((a, 1))
        cur = "?" if arc.current is None else str(arc.current)
        lines.append(f"arc {a} tail={arc.tail}.{ts} head={arc.head}.{hs} current={cur}")
    return "\n".join(lines) + "\n"


def parse_current_graph(text: str, allow_unknown: bool = False):
    """Parse the current-graph text format.

    With ``allow_unknown`` the placeholder ``current=?`` is accepted and
    returned as ``None`` (skeleton files); the result is then a tuple
    ``(modulus, nodes, arcs, label_dart)`` rather than a graph.
    """
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("currentgraph"):
        raise CurrentGraphError("missing 'currentgraph' header")
    header = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
    modulus = int(header["modulus"])
    label_dart = (0, 1)
    if "circuit0" in header:
        v = header["circuit0"]
        label_dart = (int(v[:-1]), 1 if v[-1] == "+" else -1)
    nodes, arcs = {}, {}
    for ln in lines[1:]:
        toks = ln.split()
        kind, ident = toks[0], int(toks[1])
        kv = dict(t.split("=", 1) for t in toks[2:])
        if kind == "node":
            rot = []
            for e in kv["rot"].split(","):
                rot.append((int(e[:-1]), "th".index(e[-1])))
            nodes[ident] = Node(tuple(rot), kv.get("vortex"))
        elif kind == "arc":
            cur = kv["current"]
            if cur == "?":
                if not allow_unknown:
                    raise CurrentGraphError(f"arc {ident} has no current")
                cur = None
            else:
                cur = int(cur)
            tail = int(kv["tail"].split(".")[0])
            head = int(kv["head"].split(".")[0])
            arcs[ident] = Arc(tail, head, cur) if cur is not None else _UnknownArc(tail, head)
        else:
            raise CurrentGraphError(f"unknown line {ln!r}")
    node_list = [nodes[i] for i in range(len(nodes))]
    arc_list = [arcs[i] for i in range(len(arcs))]
    if allow_unknown:
        return modulus, node_list, arc_list, label_dart
    return CurrentGraph(modulus, node_list, arc_list, label_dart)


@dataclass(frozen=True)
class _UnknownArc:
    tail: int
    head: int
    current: Optional[int] = None
