"""Every (n, t)-triangulation and the genus embedding of K_n reachable for one n.

For each supported n a recipe names the starting embedding (a family
current graph or a printed table) and the completion pipeline.  The
catalog collects the pipeline's stages, then walks the other way by
subtracting handles along an arithmetic 3-ladder, six edges at a time, as
long as the result is still a minimum triangulation candidate.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from . import surgery
from .embedding import RotationSystem, format_rotation, genus_Kn, mt_valid
from .families import CASES, FamilyError, FamilyParams, build, sporadic


class CatalogError(FamilyError):
    pass


class Unsupported(CatalogError):
    """No recipe covers the requested n."""


@dataclass(frozen=True)
class Recipe:
    n: int
    source: str                      # family case name or sporadic table name
    s: Optional[int]
    pipeline: str                    # k2, k3, k5, k6, k8, c4, k9 or none

    def describe(self) -> str:
        if self.s is None:
            return f"table {self.source}, pipeline {self.pipeline}"
        return f"{self.source} s={self.s}, pipeline {self.pipeline}"


PIPELINES: Dict[str, Callable[[RotationSystem], surgery.SurgeryOutcome]] = {
    "k2": surgery.complete_k2,
    "k3": surgery.complete_k3,
    "k5": surgery.lemma_k5,
    "k6": surgery.lemma_k6,
    "k8": surgery.lemma_k8,
    "c4": surgery.complete_c4,
    "k9": surgery.k9_from_k8,
}

_SPECIAL = {
    9: Recipe(9, "K8q0q1", None, "k9"),
    10: Recipe(10, "K8q0q1", None, "none"),
    11: Recipe(11, "K11mC4", None, "c4"),
}

# residue of n mod 12 -> [(case, smallest s, largest s or None, pipeline)]
_BY_RESIDUE = {
    5: [("C5", 1, 1, "k2"), ("C5min", 2, None, "k2")],
    6: [("C6", 2, None, "k3")],
    8: [("C8", 2, None, "k5")],
    9: [("C9s1", 1, 1, "k3"), ("C9", 2, None, "k6")],
    11: [("C11s1", 1, 1, "k5"), ("C11s2", 2, 2, "k5"), ("C11", 3, None, "k8")],
}


def _range(case, lo, hi):
    """The s range of a residue entry, narrowed to what the case can build."""
    info = CASES[case]
    lo = max(lo, info.smin)
    if info.smax is not None:
        hi = info.smax if hi is None else min(hi, info.smax)
    return lo, hi


def recipe(n: int) -> Recipe:
    if n in _SPECIAL:
        return _SPECIAL[n]
    s, r = divmod(n, 12)
    for case, lo, hi, pipe in _BY_RESIDUE.get(r, []):
        if case not in CASES:
            continue
        lo, hi = _range(case, lo, hi)
        if s >= lo and (hi is None or s <= hi):
            return Recipe(n, case, s, pipe)
    raise Unsupported(f"n={n} is not supported; supported: {supported_description()}")


def supported_description() -> str:
    parts = [str(k) for k in sorted(_SPECIAL)]
    for r, rows in sorted(_BY_RESIDUE.items()):
        for case, lo, hi, _ in rows:
            if case not in CASES:
                continue
            lo, hi = _range(case, lo, hi)
            if hi == lo:
                parts.append(str(12 * lo + r))
            elif hi is None:
                parts.append(f"12s+{r} (s>={lo})")
            else:
                parts.append(f"12s+{r} ({lo}<=s<={hi})")
    return ", ".join(parts)


def supported(n: int) -> bool:
    try:
        recipe(n)
    except CatalogError:
        return False
    return True


@dataclass
class Entry:
    label: str                       # "(n,t)" or "Kn"
    t: Optional[int]                 # None for the genus embedding
    rotation: RotationSystem
    how: str

    @property
    def filename(self) -> str:
        return "Kn.rot" if self.t is None else f"t={self.t}.rot"


def _verify(entry: Entry, n: int) -> None:
    rot = entry.rotation
    summ = rot.analyze()
    d = rot.deficit()
    if summ.V != n:
        raise CatalogError(f"{entry.label}: {summ.V} vertices, expected {n}")
    if entry.t is None:
        if d.missing or summ.genus != genus_Kn(n):
            raise CatalogError(f"{entry.label}: not a genus embedding ({summ}, {d.t} edges missing)")
    elif not summ.triangular or d.t != entry.t:
        raise CatalogError(f"{entry.label}: expected a triangulation missing {entry.t} edges, got {summ}, t={d.t}")


def catalog_entries(n: int, subtract: bool = True) -> List[Entry]:
    """All verified outputs for ``n``, from the most missing edges to K_n."""
    rc = recipe(n)
    found: Dict[Optional[int], Entry] = {}
    ladders = []
    if rc.s is None:
        start = sporadic(rc.source)
        how0 = f"table {rc.source}"
    else:
        cg = build(FamilyParams(rc.source, rc.s))
        start = cg.derive_embedding(check=False)
        ladders = cg.find_ladders()
        how0 = f"derived from {rc.source} s={rc.s}"
    if rc.pipeline == "none":
        stages = [surgery.Stage(None, start, start.analyze(), start.deficit())]
    else:
        stages = PIPELINES[rc.pipeline](start).stages
    for i, st in enumerate(stages):
        if st.summary.V != n:
            continue
        if not st.deficit.missing:
            found[None] = Entry(f"K{n}", None, st.rotation, f"{how0}, pipeline {rc.pipeline}")
        elif st.summary.triangular:
            how = how0 if i == 0 else f"{how0}, pipeline {rc.pipeline} stage {i}"
            found[st.deficit.t] = Entry(f"({n},{st.deficit.t})", st.deficit.t, st.rotation, how)
    if subtract and ladders:
        t0 = start.deficit().t
        ladder = ladders[0]
        k = 1
        while mt_valid(n, t0 + 6 * k) and 3 * k <= start.modulus:
            rot = surgery.subtract_handles(start, ladder, range(0, 3 * k, 3))
            t = t0 + 6 * k
            # prefer subtraction when a pipeline reached the same t
            found[t] = Entry(f"({n},{t})", t, rot, f"{how0}, {k} handle(s) subtracted")
            k += 1
    out = sorted((e for t, e in found.items() if t is not None), key=lambda e: -e.t)
    if None in found:
        out.append(found[None])
    for e in out:
        _verify(e, n)
    return out


def catalog(n: int) -> List[Tuple[str, RotationSystem]]:
    return [(e.label, e.rotation) for e in catalog_entries(n)]


def write_catalog(n: int, out: str) -> str:
    """Write ``n=<n>/t=<t>.rot``, ``n=<n>/Kn.rot`` and a manifest (the verification record) under ``out``."""
    entries = catalog_entries(n)
    d = os.path.join(out, f"n={n}")
    os.makedirs(d, exist_ok=True)
    lines = ["label file V E F genus status source"]
    for e in entries:
        with open(os.path.join(d, e.filename), "w") as fh:
            fh.write(format_rotation(e.rotation))
        s = e.rotation.analyze()
        lines.append(f"{e.label} {e.filename} {s.V} {s.E} {s.F} {s.genus} verified {e.how}")
    path = os.path.join(d, "manifest.txt")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return path
