"""Command line front end: ``python -m indexthree <verb> ...``.

Exit status 0 means every check passed, 1 a verification failure (the
witness is printed), 2 a usage or parse error.  Verbs that write files
also write a ``.transcript`` next to them; verbs that print to stdout put
the transcript on stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from . import surgery
from .catalog import CatalogError, Unsupported, catalog_entries, write_catalog
from .currents import CurrentGraph, CurrentGraphError, parse_current_graph
from .embedding import EmbeddingError, RotationSystem, format_rotation, parse_rotation
from .families import FamilyError, FamilyParams, build, sporadic, SPORADIC
from .search import Skeleton, search as run_search

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class Failure(Exception):
    """Verification failed; the message is the witness."""


class Usage(Exception):
    pass


# -- i/o helpers -----------------------------------------------------------------

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise Usage(f"cannot read {path}: {exc.strerror}")


def _kind(text: str) -> str:
    head = text.lstrip().split(None, 1)[0] if text.strip() else ""
    if head == "rotation":
        return "rotation"
    if head == "currentgraph":
        return "currentgraph"
    raise Usage("input is neither a rotation file nor a current-graph file")


def _load_rotation(text: str) -> RotationSystem:
    try:
        rot = parse_rotation(text, check=False)
    except (EmbeddingError, ValueError) as exc:
        raise Usage(f"parse error: {exc}")
    try:
        rot.validate()
    except EmbeddingError as exc:
        raise Failure(str(exc))
    return rot


def _load_graph(text: str) -> CurrentGraph:
    try:
        return parse_current_graph(text)
    except (CurrentGraphError, ValueError, KeyError) as exc:
        raise Usage(f"parse error: {exc}")


def _emit(text: str, out: Optional[str], transcript: List[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        for ln in transcript:
            print(ln, file=sys.stderr)
        return
    d = os.path.dirname(out)
    if d:
        os.makedirs(d, exist_ok=True)
    with open(out, "w") as fh:
        fh.write(text)
    with open(out + ".transcript", "w") as fh:
        fh.write("\n".join(transcript) + "\n")


def _summary_line(rot: RotationSystem) -> str:
    s = rot.analyze()
    d = rot.deficit()
    tri = "triangular" if s.triangular else "nontriangular"
    return f"V={s.V} E={s.E} F={s.F} genus={s.genus} {tri} deficit={d.shape}"


def _params(args) -> FamilyParams:
    if args.case is None or args.s is None:
        raise Usage("give an input file or both --case and --s")
    return FamilyParams(args.case, args.s)


def _graph_from(args) -> CurrentGraph:
    if getattr(args, "input", None):
        text = _read(args.input)
        if _kind(text) != "currentgraph":
            raise Usage("expected a current-graph file")
        return _load_graph(text)
    return build(_params(args), verify=False)


def _checked_graph(cg: CurrentGraph) -> CurrentGraph:
    rep = cg.verify_principles()
    if not rep.ok:
        raise Failure(f"construction principles violated: {rep}")
    return cg


def _rotation_from(args) -> RotationSystem:
    if getattr(args, "input", None):
        text = _read(args.input)
        if _kind(text) == "rotation":
            return _load_rotation(text)
        return _checked_graph(_load_graph(text)).derive_embedding(check=False)
    return _checked_graph(build(_params(args), verify=False)).derive_embedding(check=False)


def _ints(text: Optional[str]):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise Usage(f"expected comma-separated integers, got {text!r}")


def _vertex(text: Optional[str]):
    if text is None:
        return None
    return int(text) if text.lstrip("-").isdigit() else text


# -- verbs -------------------------------------------------------------------------

def cmd_verify(args) -> int:
    text = _read(args.input)
    if _kind(text) == "currentgraph":
        cg = _load_graph(text)
        rep = cg.verify_principles()
        print(rep)
        if not rep.ok:
            raise Failure(f"failed principles: {' '.join(rep.failed())}")
        print(_summary_line(cg.derive_embedding(check=False)))
        return EXIT_OK
    rot = _load_rotation(text)
    print(_summary_line(rot))
    if rot.is_triangular() != rot.is_triangular_ruler():
        raise Failure("face tracing and the ruler criterion disagree")
    if args.triangular and not rot.is_triangular():
        bad = [f for f in rot.trace_faces() if len(f) != 3][0]
        raise Failure(f"not triangular, e.g. face {list(bad)}")
    return EXIT_OK


def cmd_derive(args) -> int:
    cg = _checked_graph(_graph_from(args))
    rot = cg.derive_embedding(check=False)
    _emit(format_rotation(rot), args.out, ["derive: principles E1-E7 pass", _summary_line(rot)])
    return EXIT_OK


def cmd_logs(args) -> int:
    cg = _graph_from(args)
    text = "\n".join(str(log) for log in cg.circuit_logs()) + "\n"
    rep = cg.verify_principles()
    _emit(text, args.out, [f"logs: {rep}"])
    return EXIT_OK if rep.ok else EXIT_FAIL


_LEMMAS = {
    "k2": surgery.complete_k2,
    "k3": surgery.complete_k3,
    "k13": surgery.complete_k13,
    "k14": surgery.complete_k14,
    "c4": surgery.complete_c4,
    "k5": surgery.lemma_k5,
    "k6": surgery.lemma_k6,
    "k8": surgery.lemma_k8,
}


def cmd_surgery(args) -> int:
    rot = _rotation_from(args)
    fn = _LEMMAS[args.lemma]
    kw = {}
    if args.lemma in ("k5", "k8"):
        kw = dict(u=_vertex(args.u), v=_vertex(args.v), p=_ints(args.p))
    elif args.lemma == "k6":
        kw = dict(u=_vertex(args.u), p=_ints(args.p))
    elif args.lemma in ("k3", "k13", "k14") and args.v is not None:
        kw = dict(v=_vertex(args.v))
    out = fn(rot, **kw)
    lines = [f"surgery {args.lemma}"] + out.transcript
    for i, st in enumerate(out.stages):
        lines.append(f"stage {i}: {st.label}: {st.summary} deficit={st.deficit.shape}")
    if args.out is None:
        sys.stdout.write(format_rotation(out.final))
        for ln in lines:
            print(ln, file=sys.stderr)
        return EXIT_OK
    os.makedirs(args.out, exist_ok=True)
    for i, st in enumerate(out.stages):
        with open(os.path.join(args.out, f"stage{i}.rot"), "w") as fh:
            fh.write(format_rotation(st.rotation))
    with open(os.path.join(args.out, "transcript.txt"), "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print("\n".join(lines[-len(out.stages):]))
    return EXIT_OK


def cmd_subtract(args) -> int:
    cg = _checked_graph(_graph_from(args))
    ladders = cg.find_ladders()
    if not ladders:
        raise Failure("the current graph has no arithmetic 3-ladder")
    if args.shifts is not None:
        shifts = _ints(args.shifts)
    else:
        k = args.handles if args.handles is not None else 1
        shifts = list(range(0, 3 * k, 3))
    rot = cg.derive_embedding(check=False)
    res = surgery.subtract_handles(rot, ladders[0], shifts)
    lines = [f"subtract: ladder {ladders[0]}", f"shifts {shifts}", _summary_line(res)]
    _emit(format_rotation(res), args.out, lines)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.n is None:
        raise Usage("catalog needs --n")
    if args.out is None:
        for e in catalog_entries(args.n):
            if args.t is not None and e.t != args.t:
                continue
            print(f"{e.label} {e.rotation.analyze()} ({e.how})")
        return EXIT_OK
    if args.t is not None:
        picked = [e for e in catalog_entries(args.n) if e.t == args.t]
        if not picked:
            raise Failure(f"no ({args.n},{args.t})-triangulation is reachable")
        path = os.path.join(args.out, f"n={args.n}", picked[0].filename)
        _emit(format_rotation(picked[0].rotation), path, [f"{picked[0].label} {picked[0].how}"])
        print(path)
        return EXIT_OK
    path = write_catalog(args.n, args.out)
    print(open(path).read(), end="")
    return EXIT_OK


def cmd_search(args) -> int:
    if args.input:
        text = _read(args.input)
        try:
            sk = Skeleton.from_text(text)
        except (CurrentGraphError, ValueError, KeyError) as exc:
            raise Usage(f"parse error: {exc}")
    else:
        sk = Skeleton.from_graph(build(_params(args), verify=False))
    rep = run_search(sk, budget=args.budget)
    print(f"search: {rep}")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for i, cg in enumerate(rep.solutions):
            with open(os.path.join(args.out, f"solution{i}.cg"), "w") as fh:
                fh.write(cg.to_text())
        with open(os.path.join(args.out, "transcript.txt"), "w") as fh:
            fh.write(f"search: {rep}\n")
            for i, cg in enumerate(rep.solutions):
                fh.write(f"solution{i}: {_summary_line(cg.derive_embedding(check=False))}\n")
    return EXIT_OK


def cmd_sporadic(args) -> int:
    rot = sporadic(args.name)
    _emit(format_rotation(rot), args.out, [f"sporadic {args.name}: {_summary_line(rot)}"])
    return EXIT_OK


# -- parser --------------------------------------------------------------------------

def _family_flags(p):
    p.add_argument("--case", help="family name, e.g. C5, C8, C11s1")
    p.add_argument("--s", type=int, help="family parameter")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="indexthree", description="Index 3 current graphs and triangular embeddings.")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("verify", help="check a rotation or current-graph file ('-' for stdin)")
    p.add_argument("input")
    p.add_argument("--triangular", action="store_true", help="also require every face to be a triangle")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("derive", help="derived embedding of a current graph")
    p.add_argument("input", nargs="?")
    _family_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("logs", help="circuit logs of a current graph")
    p.add_argument("input", nargs="?")
    _family_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_logs)

    p = sub.add_parser("surgery", help="run a completion pipeline, writing every stage")
    p.add_argument("input", nargs="?")
    _family_flags(p)
    p.add_argument("--lemma", required=True, choices=sorted(_LEMMAS))
    p.add_argument("--u")
    p.add_argument("--v")
    p.add_argument("--p", help="comma-separated numbers p1,p2,...")
    p.add_argument("--out", help="directory for stage files and the transcript")
    p.set_defaults(func=cmd_surgery)

    p = sub.add_parser("subtract", help="subtract handles along an arithmetic 3-ladder")
    p.add_argument("input", nargs="?")
    _family_flags(p)
    p.add_argument("--handles", type=int)
    p.add_argument("--shifts", help="comma-separated multiples of 3")
    p.add_argument("--out")
    p.set_defaults(func=cmd_subtract)

    p = sub.add_parser("catalog", help="all (n,t)-triangulations and the genus embedding of K_n")
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("search", help="exhaustive current search on a skeleton")
    p.add_argument("input", nargs="?", help="skeleton file (current=? placeholders)")
    _family_flags(p)
    p.add_argument("--budget", type=int, default=5_000_000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sporadic", help="print one of the fixed tables")
    p.add_argument("name", choices=sorted(SPORADIC))
    p.add_argument("--out")
    p.set_defaults(func=cmd_sporadic)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (Usage, Unsupported) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Failure, surgery.SurgeryError, CatalogError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except FamilyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EmbeddingError, CurrentGraphError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
