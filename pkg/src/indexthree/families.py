"""Parametric index 3 current graphs and the sporadic tables.

Every family over Z_{12s+3} is a *fixed portion* glued to a stretch of the
Bose ladder.  The fixed portion is stored as a small text template:

* node lines ``name: e1 e2 e3`` list the ends at a node in rotation order,
  ``+x`` for the tail of arc ``x`` and ``-x`` for its head; nodes named by
  a single letter are vortices,
* arc lines ``x = tail -> head : current`` give currents as affine
  functions of ``s`` (``6s-1``, ``3``, ``-1`` ...),
* ``rails topL=.. topR=..`` give the currents on the two top rails where
  the ladder is attached; the truncation points of the ladder are solved
  from these,
* ``label x+`` names a dart on the circuit that is called ``[0]``.

The ladder rails ``topL botL topR botR`` appear in node lines like any
other arc; their far ends are on the ladder.  When the ladder is empty the
left and right rails are the same arc.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .currents import (Arc, CurrentGraph, CurrentGraphError, Node, PrincipleReport,
                       current_graph_from_logs)
from .embedding import RotationSystem
from .tables import parse_table
from . import tables


class FamilyError(ValueError):
    """Unknown case, parameter outside the valid range, or a broken template."""


class TemplateError(FamilyError):
    def __init__(self, message, report: Optional[PrincipleReport] = None):
        super().__init__(message)
        self.report = report


# -- Bose ladder --------------------------------------------------------------

def ladder_currents(s: int):
    """Rung currents ``d[k]`` and rail currents ``h[k]`` of the full ladder (integers)."""
    d = {k: (-1) ** (k + 1) * 3 * k for k in range(1, 4 * s + 1)}
    h = {0: 1}
    for k in range(1, 4 * s + 1):
        h[k] = h[k - 1] - d[k]
    return d, h


@dataclass
class LadderFragment:
    """Nodes and arcs of rungs ``first..last`` of the Bose ladder for ``s``.

    ``nodes`` maps a node name to its ends, ``arcs`` maps an arc key to
    ``[tail, head, current]``.  The four rails have ``None`` at the end
    that leaves the fragment.
    """
    s: int
    first: int
    last: int
    nodes: Dict[object, List[Tuple[object, int]]]
    arcs: Dict[object, list]

    @property
    def rungs(self) -> int:
        return self.last - self.first + 1


def bose_ladder(s: int, rungCount: Optional[int] = None, first: int = 1) -> LadderFragment:
    """Rungs ``first .. first+rungCount-1``; odd rungs are single arcs, even rungs globular."""
    if rungCount is None:
        rungCount = 4 * s - first + 1
    last = first + rungCount - 1
    if rungCount < 0 or first < 1 or last > 4 * s:
        raise FamilyError(f"ladder rungs {first}..{last} out of range 1..{4 * s}")
    n = 12 * s + 3
    d, h = ladder_currents(s)
    arcs: Dict[object, list] = {}
    nodes: Dict[object, list] = {}
    if rungCount == 0:
        arcs["topL"] = [None, None, h[first - 1] % n]
        arcs["botL"] = [None, None, -h[first - 1] % n]
        return LadderFragment(s, first, last, nodes, arcs)
    arcs["topL"] = [None, ("T", first), h[first - 1] % n]
    arcs["botL"] = [None, ("B", first), -h[first - 1] % n]
    for k in range(first, last):
        arcs[("top", k)] = [("T", k), ("T", k + 1), h[k] % n]
        arcs[("bot", k)] = [("B", k), ("B", k + 1), -h[k] % n]
    arcs["topR"] = [("T", last), None, h[last] % n]
    arcs["botR"] = [("B", last), None, -h[last] % n]
    for k in range(first, last + 1):
        if k % 2:
            arcs[("rung", k)] = [("T", k), ("B", k), d[k] % n]
        else:
            arcs[("lo", k)] = [("B", k), ("X", k), -d[k] % n]
            arcs[("bh", k)] = [("X", k), ("Y", k), h[k] % n]
            arcs[("bl", k)] = [("X", k), ("Y", k), -h[k - 1] % n]
            arcs[("up", k)] = [("Y", k), ("T", k), -d[k] % n]

    def top(k):
        return "topL" if k == first - 1 else ("topR" if k == last else ("top", k))

    def bot(k):
        return "botL" if k == first - 1 else ("botR" if k == last else ("bot", k))

    for k in range(first, last + 1):
        lt, rt = (top(k - 1), 1), (top(k), 0)
        lb, rb = (bot(k - 1), 1), (bot(k), 0)
        if k % 2:
            nodes[("T", k)] = [(("rung", k), 0), lt, rt]
            nodes[("B", k)] = [lb, rb, (("rung", k), 1)]
        else:
            nodes[("T", k)] = [(("up", k), 1), rt, lt]
            nodes[("B", k)] = [rb, lb, (("lo", k), 0)]
            nodes[("X", k)] = [(("lo", k), 1), (("bh", k), 0), (("bl", k), 0)]
            nodes[("Y", k)] = [(("bh", k), 1), (("bl", k), 1), (("up", k), 0)]
    return LadderFragment(s, first, last, nodes, arcs)


# -- templates ----------------------------------------------------------------

_AFFINE = re.compile(r"^([+-]?\d*)s([+-]\d+)?$|^([+-]?\d+)$")


def parse_affine(text: str) -> Tuple[int, int]:
    """``'6s-1'`` -> ``(6, -1)``; ``'3'`` -> ``(0, 3)``."""
    m = _AFFINE.match(text.replace(" ", ""))
    if not m:
        raise FamilyError(f"bad affine current {text!r}")
    if m.group(3) is not None:
        return 0, int(m.group(3))
    a = m.group(1)
    a = 1 if a in ("", "+") else (-1 if a == "-" else int(a))
    return a, int(m.group(2) or 0)


@dataclass
class Template:
    """A parsed fixed portion (see the module docstring for the format)."""
    nodes: List[Tuple[str, List[Tuple[str, int]]]]
    arcs: Dict[str, Tuple[str, str, Tuple[int, int]]]
    rails: Dict[str, Tuple[int, int]]
    label: Tuple[str, int]

    @classmethod
    def parse(cls, text: str) -> "Template":
        nodes, arcs, rails, label = [], {}, {}, None
        for ln in text.strip().splitlines():
            ln = ln.split("#")[0].strip()
            if not ln:
                continue
            if ln.startswith("rails"):
                for tok in ln.split()[1:]:
                    k, v = tok.split("=")
                    rails[k] = parse_affine(v)
            elif ln.startswith("label"):
                tok = ln.split()[1]
                label = (tok[:-1], 1 if tok[-1] == "+" else -1)
            elif "=" in ln:
                key, rest = ln.split("=", 1)
                ends, cur = rest.split(":")
                tail, head = (x.strip() for x in ends.split("->"))
                arcs[key.strip()] = (tail, head, parse_affine(cur.strip()))
            else:
                name, rest = ln.split(":")
                ends = [(tok[1:], 0 if tok[0] == "+" else 1) for tok in rest.split()]
                nodes.append((name.strip(), ends))
        if label is None or set(rails) != {"topL", "topR"}:
            raise FamilyError("template needs a label and both top rail currents")
        return cls(nodes, arcs, rails, label)

    def truncation(self, s: int) -> Tuple[int, int]:
        """First and last rung of the ladder, from the rail currents at ``s``."""
        n = 12 * s + 3
        _, h = ladder_currents(s)
        val = lambda ab: (ab[0] * s + ab[1]) % n
        left = [k for k in range(4 * s + 1) if h[k] % n == val(self.rails["topL"])]
        right = [k for k in range(4 * s + 1) if h[k] % n == val(self.rails["topR"])]
        if not left or not right or right[0] < left[0]:
            raise FamilyError(f"rail currents do not meet the ladder at s={s}")
        return left[0] + 1, right[0]

    def assemble(self, s: int) -> CurrentGraph:
        n = 12 * s + 3
        first, last = self.truncation(s)
        frag = bose_ladder(s, last - first + 1, first)
        nodes = {k: list(v) for k, v in frag.nodes.items()}
        arcs = {k: list(v) for k, v in frag.arcs.items()}
        for key, (t, h, (a, b)) in self.arcs.items():
            arcs[key] = [t, h, (a * s + b) % n]
        vort = {}
        empty = frag.rungs == 0
        for name, ends in self.nodes:
            rot = []
            for key, side in ends:
                if empty and key in ("topR", "botR"):
                    key = "topL" if key == "topR" else "botL"
                if key in ("topL", "botL", "topR", "botR"):
                    arcs[key][side] = name
                rot.append((key, side))
            nodes[name] = rot
            vort[name] = name if len(name) == 1 and name.isalpha() else None
        names = [nm for nm, _ in self.nodes] + [k for k in nodes if k not in vort]
        nidx = {nm: i for i, nm in enumerate(names)}
        keys = list(arcs)
        aidx = {k: i for i, k in enumerate(keys)}
        try:
            A = [Arc(nidx[arcs[k][0]], nidx[arcs[k][1]], arcs[k][2]) for k in keys]
            N = [Node(tuple((aidx[k], e) for k, e in nodes[nm]), vort.get(nm)) for nm in names]
            return CurrentGraph(n, N, A, (aidx[self.label[0]], self.label[1]))
        except (KeyError, CurrentGraphError) as e:
            raise TemplateError(f"template does not assemble at s={s}: {e}") from e


# Case 5: two vortices and the whole ladder.
C5_TEMPLATE = """
a: +botL -topR -f0
b: +topL -botR +f0
f0 = b -> a : 1
rails topL=1 topR=6s+1
label topL-
"""

# Case 5 with an arithmetic 3-ladder (rungs 9, 6, 3 on circuit [0]).
C5MIN_TEMPLATE = """
b: +f0 +f15 +f10
F0: -f0 -f1 +f14
F1: +f1 +topL -f12
F2: -topR -f2 -f5
F3: +f2 -f3 -f4
F4: +f3 +f4 -f17
F5: +f5 +f6 +f9
F6: -f6 -f7 -f8
F7: +f7 +f8 +f18
a: -f9 -f10 -f11
F8: +f11 +f13 -f14
F9: +f12 -f13 +botL
F10: -f15 -f16 -f18
F11: +f16 -botR +f17
f0 = b -> F0 : 1
f1 = F1 -> F0 : 2
f2 = F3 -> F2 : 6
f3 = F4 -> F3 : 4
f4 = F4 -> F3 : 2
f5 = F5 -> F2 : 6s-1
f6 = F5 -> F6 : 3
f7 = F7 -> F6 : 6s+1
f8 = F7 -> F6 : 6s-1
f9 = F5 -> a : 6s+1
f10 = b -> a : 1
f11 = F8 -> a : 1
f12 = F9 -> F1 : 6
f13 = F8 -> F9 : 2
f14 = F0 -> F8 : 3
f15 = b -> F10 : 6s+1
f16 = F11 -> F10 : 6s-1
f17 = F11 -> F4 : 6
f18 = F7 -> F10 : 3
rails topL=4 topR=6s-2
label f0+
"""

C6_TEMPLATE = """
c: +f0 +f15 +f14
F0: -f0 +f1 -f22
F1: -f1 -f2 +f21
F2: +f2 +f3 -f20
F3: -f3 -f4 -f21
b: +f4 -f5 -f19
F4: +f5 -f6 -f18
F5: +f6 +f7 +f13
F6: -f7 +f8 +f12
F7: -f8 +f9 -f13
a: -f9 -f10 +f19
F8: +f10 +f11 -f24
F9: -f11 +botL +f23
F10: -botR -f12 -f14
F11: -f15 -f16 +f24
F12: +f16 +topL -f23
F13: -topR +f17 +f22
F14: -f17 +f18 +f20
f0 = c -> F0 : 1
f1 = F0 -> F1 : 6s-1
f2 = F2 -> F1 : 2
f3 = F2 -> F3 : 4
f4 = b -> F3 : 6s-2
f5 = F4 -> b : 6s-1
f6 = F5 -> F4 : 6s-4
f7 = F5 -> F6 : 9
f8 = F6 -> F7 : 3
f9 = F7 -> a : 6s+1
f10 = F8 -> a : 1
f11 = F8 -> F9 : 2
f12 = F6 -> F10 : 6
f13 = F5 -> F7 : 6s-2
f14 = c -> F10 : 6s+1
f15 = c -> F11 : 1
f16 = F12 -> F11 : 2
f17 = F13 -> F14 : 9
f18 = F14 -> F4 : 3
f19 = a -> b : 6s-1
f20 = F14 -> F2 : 6
f21 = F1 -> F3 : 6s+1
f22 = F13 -> F0 : 6s-2
f23 = F9 -> F12 : 6
f24 = F11 -> F8 : 3
rails topL=4 topR=6s+7
label f0+
"""

C8_TEMPLATE = """
F0: +f0 +f18 +botL
e: -f0 +f1 -f17
d: -f1 +f2 -f22
a: -f2 -f3 -f21
F1: +f3 +f4 +f15
F2: -f4 -f5 -f14
F3: +f5 +f6 +f16
F4: -f6 -f7 -f15
F5: +f7 +f8 -topR
F6: -f8 -botR -f16
F7: +topL -f9 -f30
F8: +f9 -f10 +f31
F9: +f10 -f11 +f17
F10: +f11 -f12 -f23
c: +f12 +f13 +f22
b: -f13 +f14 +f21
F11: -f18 +f19 +f20
F12: -f19 -f20 +f30
F13: +f23 +f24 -f27
F14: -f24 -f25 -f26
F15: +f25 +f26 +f33
F16: +f27 -f28 -f29
F17: +f28 +f29 -f32
F18: -f31 +f32 -f33
f0 = F0 -> e : 1
f1 = e -> d : 5
f2 = d -> a : 4
f3 = F1 -> a : 6s+1
f4 = F1 -> F2 : 3
f5 = F3 -> F2 : 6s-1
f6 = F3 -> F4 : 6
f7 = F5 -> F4 : 6s-2
f8 = F5 -> F6 : 9
f9 = F8 -> F7 : 1
f10 = F9 -> F8 : 4
f11 = F10 -> F9 : 5
f12 = c -> F10 : 2
f13 = c -> b : 2
f14 = b -> F2 : 6s+1
f15 = F1 -> F4 : 6s-1
f16 = F3 -> F6 : 6s-2
f17 = F9 -> e : 1
f18 = F0 -> F11 : 6
f19 = F11 -> F12 : 4
f20 = F11 -> F12 : 2
f21 = b -> a : 6s+1
f22 = c -> d : 6s-1
f23 = F13 -> F10 : 3
f24 = F13 -> F14 : 9
f25 = F15 -> F14 : 6s-4
f26 = F15 -> F14 : 6s-2
f27 = F16 -> F13 : 12
f28 = F17 -> F16 : 5
f29 = F17 -> F16 : 7
f30 = F12 -> F7 : 6
f31 = F8 -> F18 : 3
f32 = F18 -> F17 : 12
f33 = F15 -> F18 : 9
rails topL=7 topR=6s+7
label f0+
"""

C9_TEMPLATE = """
F0: +f0 +f5 -f6
b: -f0 -f1 -f13
F1: +f1 +f2 +f22
c: -f2 -f3 +f12
f: +f3 -topR +f21
F2: +topL -f4 +f11
F3: +f4 -f5 +botL
F4: +f6 -f7 -f11
a: +f7 +f8 +f13
d: -f8 -f9 -f12
e: +f9 +f10 -f21
F5: -f10 -botR -f14
F6: +f14 -f15 +f18
F7: +f15 +f16 +f17
F8: -f16 -f17 -f23
F9: -f18 -f19 -f20
F10: +f19 +f20 +f24
F11: -f22 +f23 -f24
f0 = F0 -> b : 1
f1 = F1 -> b : 6s-2
f2 = F1 -> c : 6s-1
f3 = f -> c : 6s-1
f4 = F3 -> F2 : 6
f5 = F0 -> F3 : 2
f6 = F4 -> F0 : 3
f7 = a -> F4 : 1
f8 = a -> d : 6s-2
f9 = e -> d : 6s+1
f10 = e -> F5 : 6s+1
f11 = F2 -> F4 : 2
f12 = c -> d : 1
f13 = a -> b : 4
f14 = F6 -> F5 : 6
f15 = F7 -> F6 : 9
f16 = F7 -> F8 : 6s-2
f17 = F7 -> F8 : 6s-4
f18 = F6 -> F9 : 3
f19 = F10 -> F9 : 6s-1
f20 = F10 -> F9 : 6s+1
f21 = f -> e : 2
f22 = F1 -> F11 : 6
f23 = F11 -> F8 : 9
f24 = F10 -> F11 : 3
rails topL=4 topR=6s+7
label f0+
"""


# -- case registry ------------------------------------------------------------

@dataclass(frozen=True)
class FamilyParams:
    case: str
    s: int


@dataclass(frozen=True)
class CaseInfo:
    name: str
    letters: int           # number of vortices, so the deficit is K_letters
    smin: int
    smax: Optional[int]
    template: Optional[str] = None
    logs: Optional[object] = None   # one log text, or a dict s -> log text
    modulus: str = "12s+3"

    def order(self, s: int) -> int:
        a, b = parse_affine(self.modulus)
        return a * s + b


CASES: Dict[str, CaseInfo] = {
    "C5": CaseInfo("C5", 2, 0, None, template=C5_TEMPLATE),
    "C5min": CaseInfo("C5min", 2, 2, None, template=C5MIN_TEMPLATE),
    "C6": CaseInfo("C6", 3, 2, None, template=C6_TEMPLATE),
    "C8": CaseInfo("C8", 5, 2, None, template=C8_TEMPLATE),
    "C9": CaseInfo("C9", 6, 2, None, template=C9_TEMPLATE),
    "C9s1": CaseInfo("C9s1", 3, 1, 1, logs=tables.C9_S1_LOGS, modulus="12s+6"),
    "C11": CaseInfo("C11", 8, min(tables.C11_LOGS), max(tables.C11_LOGS), logs=tables.C11_LOGS),
    "C11s1": CaseInfo("C11s1", 5, 1, 1, logs=tables.C11_S1_LOGS, modulus="12s+6"),
    "C11s2": CaseInfo("C11s2", 5, 2, 2, logs=tables.C11_S2_LOGS, modulus="12s+6"),
}

_TEMPLATES: Dict[str, Template] = {}


def template(case: str) -> Template:
    if case not in _TEMPLATES:
        _TEMPLATES[case] = Template.parse(CASES[case].template)
    return _TEMPLATES[case]


def case_info(case: str) -> CaseInfo:
    try:
        return CASES[case]
    except KeyError:
        raise FamilyError(f"unknown case {case!r}; known: {', '.join(CASES)}") from None


def check_params(params: FamilyParams) -> CaseInfo:
    info = case_info(params.case)
    if params.s < info.smin or (info.smax is not None and params.s > info.smax):
        hi = "" if info.smax is None else f"..{info.smax}"
        raise FamilyError(f"{params.case} needs s in {info.smin}{hi or '..'}, got {params.s}")
    return info


def build(params: FamilyParams, verify: bool = True) -> CurrentGraph:
    """The current graph of ``params``; raises :class:`TemplateError` on any principle failure."""
    info = check_params(params)
    if info.template is not None:
        cg = template(params.case).assemble(params.s)
    else:
        text = info.logs[params.s] if isinstance(info.logs, dict) else info.logs
        logs = parse_table(text)
        cg = current_graph_from_logs([logs[i] for i in range(3)], info.order(params.s))
    if verify:
        rep = cg.verify_principles()
        if not rep.ok:
            raise TemplateError(f"{params.case} s={params.s}: {rep}", rep)
    return cg


def derived(params: FamilyParams) -> RotationSystem:
    return build(params).derive_embedding(check=False)


def vertex_count(params: FamilyParams) -> int:
    info = case_info(params.case)
    return info.order(params.s) + info.letters


# -- sporadic tables ------------------------------------------------------------

# name -> (table, order of the cyclic group numbering the rows, 0 if none)
SPORADIC = {
    "K17mK2": (tables.K17_MINUS_K2, 15),
    "K8q0q1": (tables.K8_Q0_Q1, 0),
    "K11mC4": (tables.K11_MINUS_C4, 0),
}


def sporadic(name: str) -> RotationSystem:
    if name not in SPORADIC:
        raise FamilyError(f"unknown sporadic embedding {name!r}; known: {', '.join(SPORADIC)}")
    text, modulus = SPORADIC[name]
    return RotationSystem(parse_table(text), modulus)
