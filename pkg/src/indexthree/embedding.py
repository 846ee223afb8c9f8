"""Rotation systems of simple graphs on orientable surfaces.

A rotation system assigns to every vertex the clockwise cyclic order of
its neighbors.  Vertices are either numbered (``int``, usually elements of
a cyclic group) or lettered (``str``, e.g. the vortex vertices ``'a'``
to ``'h'``, or ad hoc names such as ``'q0'``).

Faces are traced with the rule: after the directed edge ``u -> v`` comes
``v -> w`` where ``w`` is the neighbor *following* ``u`` in the rotation
at ``v``.  With this rule the faces produced by the handle constructions
come out in the same vertex order as they are usually written down.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

Vertex = Union[int, str]
Edge = Tuple[Vertex, Vertex]

LETTERS = "abcdefgh"


class EmbeddingError(ValueError):
    """Raised for malformed rotation systems and violated preconditions."""


class FlipConflict(EmbeddingError):
    """The edge created by a flip is already present."""


def vkey(v: Vertex):
    """Sort key putting numbered vertices before lettered ones."""
    if isinstance(v, str):
        return (1, 0, v)
    return (0, v, "")


def edge_key(e: Edge) -> Edge:
    """Normalize an undirected edge so that the smaller endpoint comes first."""
    u, v = e
    return (u, v) if vkey(u) <= vkey(v) else (v, u)


def letter(i: int) -> str:
    return LETTERS[i]


def canonical_row(row: Sequence[Vertex]) -> Tuple[Vertex, ...]:
    """Rotate a cyclic row so that it starts at its smallest entry."""
    if not row:
        return ()
    i = min(range(len(row)), key=lambda k: vkey(row[k]))
    return tuple(row[i:]) + tuple(row[:i])


def _cyclic_pairs(seq):
    n = len(seq)
    for i in range(n):
        yield seq[i], seq[(i + 1) % n]


@dataclass(frozen=True)
class EmbeddingSummary:
    V: int
    E: int
    F: int
    genus: int
    triangular: bool

    def __str__(self):
        tri = "triangular" if self.triangular else "nontriangular"
        return f"V={self.V} E={self.E} F={self.F} genus={self.genus} {tri}"


@dataclass(frozen=True)
class Deficit:
    """Edges missing from the complete graph on the embedded vertex set."""

    n: int
    missing: frozenset
    shape: str

    @property
    def t(self) -> int:
        return len(self.missing)


class RotationSystem:
    """Immutable rotation system of a simple graph.

    ``rows`` maps every vertex to the clockwise cyclic order of its
    neighbors.  Rows are compared up to cyclic shift.  ``modulus`` records
    the order of the cyclic group the numbered vertices come from (0 when
    the embedding is not group-derived).
    """

    __slots__ = ("_rows", "_pos", "modulus", "_faces")

    def __init__(self, rows: Mapping[Vertex, Sequence[Vertex]], modulus: int = 0, check: bool = True):
        self._rows: Dict[Vertex, Tuple[Vertex, ...]] = {v: tuple(r) for v, r in rows.items()}
        self._pos: Dict[Vertex, Dict[Vertex, int]] = {
            v: {w: i for i, w in enumerate(r)} for v, r in self._rows.items()
        }
        self.modulus = modulus
        self._faces = None
        if check:
            self.validate()

    # -- basic access -----------------------------------------------------

    def validate(self) -> None:
        rows = self._rows
        if not rows:
            raise EmbeddingError("empty rotation system")
        for v, r in rows.items():
            if len(self._pos[v]) != len(r):
                dup = [w for w in r if r.count(w) > 1][0]
                raise EmbeddingError(f"vertex {v!r}: neighbor {dup!r} repeated")
            if v in self._pos[v]:
                raise EmbeddingError(f"vertex {v!r} appears in its own row")
            for w in r:
                if w not in rows:
                    raise EmbeddingError(f"vertex {w!r} (neighbor of {v!r}) has no row")
                if v not in self._pos[w]:
                    raise EmbeddingError(f"symmetry violation: {w!r} in row {v!r} but {v!r} not in row {w!r}")
            if not r:
                raise EmbeddingError(f"vertex {v!r} is isolated")

    @property
    def rows(self) -> Dict[Vertex, Tuple[Vertex, ...]]:
        return dict(self._rows)

    def row(self, v: Vertex) -> Tuple[Vertex, ...]:
        return self._rows[v]

    def vertices(self) -> List[Vertex]:
        return sorted(self._rows, key=vkey)

    def __contains__(self, v) -> bool:
        return v in self._rows

    def degree(self, v: Vertex) -> int:
        return len(self._rows[v])

    def adjacent(self, u: Vertex, v: Vertex) -> bool:
        return v in self._pos.get(u, ())

    def edges(self) -> List[Edge]:
        out = set()
        for v, r in self._rows.items():
            for w in r:
                out.add(edge_key((v, w)))
        return sorted(out, key=lambda e: (vkey(e[0]), vkey(e[1])))

    def num_edges(self) -> int:
        return sum(len(r) for r in self._rows.values()) // 2

    def succ(self, v: Vertex, w: Vertex) -> Vertex:
        """Neighbor following ``w`` in the rotation at ``v``."""
        r = self._rows[v]
        return r[(self._pos[v][w] + 1) % len(r)]

    def pred(self, v: Vertex, w: Vertex) -> Vertex:
        r = self._rows[v]
        return r[(self._pos[v][w] - 1) % len(r)]

    def canonical(self) -> Dict[Vertex, Tuple[Vertex, ...]]:
        return {v: canonical_row(self._rows[v]) for v in self.vertices()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, RotationSystem):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(tuple(self.canonical().items()))

    def __repr__(self):
        return f"RotationSystem(V={len(self._rows)}, E={self.num_edges()}, modulus={self.modulus})"

    def with_rows(self, changes: Mapping[Vertex, Optional[Sequence[Vertex]]], check: bool = True) -> "RotationSystem":
        """Copy with some rows replaced; a value of ``None`` removes the vertex."""
        rows = dict(self._rows)
        for v, r in changes.items():
            if r is None:
                rows.pop(v, None)
            else:
                rows[v] = tuple(r)
        return RotationSystem(rows, self.modulus, check=check)

    def relabel(self, mapping: Mapping[Vertex, Vertex]) -> "RotationSystem":
        f = lambda v: mapping.get(v, v)
        return RotationSystem({f(v): [f(w) for w in r] for v, r in self._rows.items()}, self.modulus)

    # -- faces ------------------------------------------------------------

    def next_dart(self, u: Vertex, v: Vertex) -> Edge:
        return (v, self.succ(v, u))

    def trace_faces(self) -> List[Tuple[Vertex, ...]]:
        """Trace all faces.

        Each face is returned as the cyclic tuple of vertices it visits;
        consecutive entries (cyclically) are the directed edges of its
        boundary walk.  Every directed edge lies on exactly one face.
        """
        if self._faces is None:
            seen = set()
            faces = []
            for v in self.vertices():
                for w in self._rows[v]:
                    if (v, w) in seen:
                        continue
                    walk = []
                    dart = (v, w)
                    while dart not in seen:
                        seen.add(dart)
                        walk.append(dart[0])
                        dart = self.next_dart(*dart)
                    if dart != (v, w):
                        raise EmbeddingError(f"face tracing did not close at dart {(v, w)!r}")
                    faces.append(tuple(walk))
            self._faces = faces
        return list(self._faces)

    def face_of(self, u: Vertex, v: Vertex) -> Tuple[Vertex, ...]:
        """The face whose boundary contains the directed edge ``u -> v``, starting at ``u``."""
        if not self.adjacent(u, v):
            raise EmbeddingError(f"no edge ({u!r}, {v!r})")
        walk = [u]
        dart = self.next_dart(u, v)
        while dart != (u, v):
            walk.append(dart[0])
            dart = self.next_dart(*dart)
        return tuple(walk)

    def analyze(self) -> EmbeddingSummary:
        faces = self.trace_faces()
        V = len(self._rows)
        E = self.num_edges()
        F = len(faces)
        chi = V - E + F
        if chi % 2 or chi > 2:
            raise EmbeddingError(f"impossible Euler characteristic {chi}")
        return EmbeddingSummary(V, E, F, (2 - chi) // 2, all(len(f) == 3 for f in faces))

    def genus(self) -> int:
        return self.analyze().genus

    def is_triangular(self) -> bool:
        return all(len(f) == 3 for f in self.trace_faces())

    def is_triangular_ruler(self) -> bool:
        """Triangularity by the local rule: ``i. ... j k ...`` forces ``j. ... k i ...``.

        Does not trace faces.
        """
        return not self.ruler_violations()

    def ruler_violations(self) -> List[Tuple[Vertex, Vertex, Vertex]]:
        return [(i, j, k) for i, r in self._rows.items() for j, k in _cyclic_pairs(r)
                if j == k or not self.adjacent(j, k) or self.succ(j, k) != i]

    # -- deficits ---------------------------------------------------------

    def missing_edges(self) -> frozenset:
        verts = self.vertices()
        return frozenset(
            (u, v) for u, v in itertools.combinations(verts, 2) if not self.adjacent(u, v)
        )

    def deficit(self) -> Deficit:
        missing = self.missing_edges()
        return Deficit(len(self._rows), missing, classify_missing(missing))

    # -- text format ------------------------------------------------------

    def to_text(self) -> str:
        return format_rotation(self)

    @classmethod
    def from_text(cls, text: str) -> "RotationSystem":
        return parse_rotation(text)

    # -- elementary edits -------------------------------------------------

    def edge_flip(self, u: Vertex, v: Vertex) -> "RotationSystem":
        """Replace edge ``(u, v)`` by the other diagonal of its two incident triangles."""
        if not self.adjacent(u, v):
            raise EmbeddingError(f"no edge ({u!r}, {v!r}) to flip")
        f1 = self.face_of(u, v)
        f2 = self.face_of(v, u)
        if len(f1) != 3 or len(f2) != 3:
            raise EmbeddingError(f"edge ({u!r}, {v!r}) does not lie between two triangles")
        x, y = f1[2], f2[2]
        if x == y:
            raise EmbeddingError(f"edge ({u!r}, {v!r}) has the same apex {x!r} on both sides")
        if self.adjacent(x, y):
            raise FlipConflict(f"flip of ({u!r}, {v!r}) would duplicate edge ({x!r}, {y!r})")
        # f1 = [u, v, x]: row x reads "v u"; f2 = [v, u, y]: row y reads "u v"
        rows = {
            u: _remove(self._rows[u], v),
            v: _remove(self._rows[v], u),
            x: _insert_after(self._rows[x], v, y),
            y: _insert_after(self._rows[y], u, x),
        }
        return self.with_rows(rows)

    def delete_edge(self, u: Vertex, v: Vertex) -> "RotationSystem":
        if not self.adjacent(u, v):
            raise EmbeddingError(f"no edge ({u!r}, {v!r}) to delete")
        out = self.with_rows({u: _remove(self._rows[u], v), v: _remove(self._rows[v], u)})
        return out

    def add_edge_in_face(self, face: Sequence[Vertex], i: int, j: int) -> "RotationSystem":
        """Insert a chord between corners ``i`` and ``j`` of ``face``.

        ``face`` is a traced face (as returned by :meth:`trace_faces`), and
        ``i``, ``j`` index its corners, so vertices that occur several times
        on the face can be addressed unambiguously.
        """
        k = len(face)
        a, b = face[i % k], face[j % k]
        if a == b:
            raise EmbeddingError("chord endpoints coincide")
        if self.adjacent(a, b):
            raise EmbeddingError(f"edge ({a!r}, {b!r}) already present")
        # corner at face[i]: the walk arrives from face[i-1] and leaves to face[i+1],
        # so the row of face[i] reads "face[i-1] face[i+1]"; the chord goes in between.
        rows = {
            a: _insert_after(self._rows[a], face[(i - 1) % k], b),
            b: _insert_after(self._rows[b], face[(j - 1) % k], a),
        }
        return self.with_rows(rows)

    def add_chord(self, a: Vertex, b: Vertex, face: Optional[Sequence[Vertex]] = None) -> "RotationSystem":
        """Insert edge ``(a, b)`` inside a face on which both occur exactly once.

        Without ``face`` the unique such face is searched for.
        """
        candidates = [face] if face is not None else self.trace_faces()
        hits = []
        for f in candidates:
            if f.count(a) == 1 and f.count(b) == 1:
                hits.append(f)
        if len(hits) != 1:
            raise EmbeddingError(f"no unique face holding both {a!r} and {b!r} once (found {len(hits)})")
        f = hits[0]
        return self.add_edge_in_face(f, f.index(a), f.index(b))


def _remove(row, w):
    return tuple(x for x in row if x != w)


def _insert_after(row, anchor, w):
    i = row.index(anchor)
    return tuple(row[: i + 1]) + (w,) + tuple(row[i + 1:])


# -- deficit shapes ----------------------------------------------------------

def classify_missing(missing) -> str:
    """Name the graph formed by a set of missing edges.

    Returns one of ``Empty``, ``K2``, ``K3``, ``K13``, ``K14``, ``C4``,
    ``K<l>`` for complete graphs on ``l <= 8`` vertices, or ``Other``.
    """
    missing = [tuple(e) for e in missing]
    if not missing:
        return "Empty"
    verts = set(itertools.chain.from_iterable(missing))
    nv, ne = len(verts), len(missing)
    deg = {v: 0 for v in verts}
    for u, v in missing:
        deg[u] += 1
        deg[v] += 1
    if ne == nv * (nv - 1) // 2 and nv <= 8:
        return f"K{nv}"
    if nv == ne + 1 and ne in (3, 4) and max(deg.values()) == ne:
        return f"K1{ne}"
    if nv == 4 and ne == 4 and all(d == 2 for d in deg.values()):
        return "C4"
    return "Other"


# -- numeric helpers ---------------------------------------------------------

def genus_Kn(n: int) -> int:
    """Genus of the complete graph on ``n`` vertices."""
    if n < 3:
        raise ValueError(f"genus_Kn needs n >= 3, got {n}")
    return -(-(n - 3) * (n - 4) // 12)


def genus_lower_bound(V: int, E: int) -> int:
    """Least genus allowed by Euler's formula for a simple graph."""
    return max(0, -(-(E - 3 * V + 6) // 6))


def triangular_genus(V: int, E: int) -> int:
    """Genus of a triangular embedding with ``V`` vertices and ``E`` edges."""
    g, r = divmod(E - 3 * V + 6, 6)
    if r:
        raise ValueError(f"no triangular embedding has V={V}, E={E}")
    return g


def heawood(g: int) -> float:
    return (7 + math.sqrt(1 + 48 * g)) / 2


def mt_valid(n: int, t: int) -> bool:
    """Whether an (n, t)-triangulation is guaranteed to exist."""
    return (n >= 4 and 0 <= t <= n - 6 and ((n - 3) * (n - 4) - 2 * t) % 12 == 0
            and (n, t) != (9, 3))


def complete_rotation_check(rot: RotationSystem) -> None:
    """Raise unless ``rot`` is a triangular embedding (re-traces faces)."""
    s = rot.analyze()
    if not s.triangular:
        bad = [f for f in rot.trace_faces() if len(f) != 3][:3]
        raise EmbeddingError(f"not triangular, e.g. faces {bad}")


# -- text format -------------------------------------------------------------

def _fmt(v: Vertex) -> str:
    return str(v)


def _parse_vertex(tok: str) -> Vertex:
    if tok.lstrip("-").isdigit():
        return int(tok)
    return tok


def format_rotation(rot: RotationSystem) -> str:
    """Serialize in canonical form, numbered rows first, then lettered ones."""
    canon = rot.canonical()
    nletters = sum(1 for v in canon if isinstance(v, str))
    lines = [f"rotation modulus={rot.modulus} letters={nletters}"]
    for v, r in canon.items():
        lines.append(f"{_fmt(v)}. " + " ".join(_fmt(w) for w in r))
    return "\n".join(lines) + "\n"


def parse_rotation(text: str, check: bool = True) -> RotationSystem:
    """Read the rotation text format.

    With ``check=False`` only the syntax is checked; call
    :meth:`RotationSystem.validate` afterwards to tell malformed files
    from well-formed files describing an invalid rotation.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("rotation"):
        raise EmbeddingError("missing 'rotation' header line")
    header = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
    try:
        modulus = int(header.get("modulus", 0))
        nletters = int(header.get("letters", -1))
    except ValueError as exc:
        raise EmbeddingError(f"bad header: {lines[0]!r}") from exc
    rows = {}
    for ln in lines[1:]:
        label, _, rest = ln.partition(".")
        if not _:
            raise EmbeddingError(f"row without label: {ln!r}")
        v = _parse_vertex(label.strip())
        if v in rows:
            raise EmbeddingError(f"duplicate row for {v!r}")
        rows[v] = [_parse_vertex(t) for t in rest.split()]
    rot = RotationSystem(rows, modulus, check=check)
    if nletters >= 0 and nletters != sum(1 for v in rows if isinstance(v, str)):
        raise EmbeddingError("header letter count does not match rows")
    return rot
