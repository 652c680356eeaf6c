"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 verification failure, 3 oracle cap
exceeded.  Errors are printed to stderr as a JSON object.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import io
from .flips import FlipError, ReplayError, replay
from .general import transform_general
from .generate import MODES, generate, random_general, random_pointed
from .geometry import GeometryError
from .oracle import GENERAL, POINTED, OracleCapExceeded, labelled_flip_graph
from .pointed import PipelineError, transform_pointed
from .render import render_svg, render_trace
from .triangulation import LabelError, build_left_shelling, canonical_labelling

EXIT_INPUT, EXIT_VERIFY, EXIT_CAP = 1, 2, 3


class VerifyFailed(Exception):
    pass


def _emit(doc, out: str | None) -> None:
    text = io.dumps(doc)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_pt(path: str):
    return io.pt_from_json(io.read_json(path))


def trace_stats(trace) -> dict:
    ps = trace.initial.points
    return {"n": ps.n, "h": ps.h, "c": ps.c, "length": len(trace),
            "counts": dict(trace.counts()), "phases": trace.phase_counts()}


def cmd_gen(a):
    _emit(io.points_to_json(generate(a.n, a.seed, a.mode)), a.out)


def cmd_leftshell(a):
    ps = io.points_from_json(io.read_json(a.points))
    t, _ = build_left_shelling(ps)
    _emit(io.pt_to_json(t), a.out)


def cmd_canon(a):
    ps = io.points_from_json(io.read_json(a.points))
    _emit(io.pt_to_json(canonical_labelling(ps)), a.out)


def _transform(t1, t2, mode):
    if mode == "pointed":
        if not (t1.is_pointed() and t2.is_pointed()):
            raise PipelineError("pointed mode needs pointed inputs")
        return transform_pointed(t1, t2)
    return transform_general(t1, t2)


def cmd_transform(a):
    t1, t2 = _load_pt(a.source), _load_pt(a.target)
    for t in (t1, t2):
        rep = t.validate()
        if not rep.ok:
            raise PipelineError("; ".join(rep.violations()))
    tr = _transform(t1, t2, a.mode)
    _emit(io.trace_to_json(tr, trace_stats(tr)), a.out)


def cmd_verify(a):
    tr = io.trace_from_json(io.read_json(a.trace))
    try:
        final, counts = replay(tr)
    except ReplayError as exc:
        raise VerifyFailed(str(exc)) from exc
    result = {"ok": True, "events": len(tr), "counts": dict(counts)}
    if a.expect:
        want = _load_pt(a.expect)
        if not final.same_state(want):
            raise VerifyFailed("final state differs from the expected pseudo-triangulation")
        result["matches_expected"] = True
    _emit(result, None)


def cmd_oracle(a):
    ps = io.points_from_json(io.read_json(a.points))
    g = labelled_flip_graph(ps, a.mode, max_states=a.max_states)
    srcs = None if a.all_pairs else [0]
    _emit(g.stats(srcs) | {"connected": g.is_connected()}, a.out)


def cmd_render(a):
    doc = io.read_json(a.input)
    if "events" in doc:
        frames = render_trace(io.trace_from_json(doc), every=a.every)
        out = Path(a.out or "frames")
        out.mkdir(parents=True, exist_ok=True)
        for i, svg in enumerate(frames):
            (out / f"frame_{i:04d}.svg").write_text(svg)
        _emit({"frames": len(frames), "dir": str(out)}, None)
        return
    if "edges" in doc:
        t = io.pt_from_json(doc)
    else:
        t, _ = build_left_shelling(io.points_from_json(doc))
    svg = render_svg(t)
    if a.out:
        Path(a.out).write_text(svg)
    else:
        sys.stdout.write(svg)


def _trial(i: int, a) -> dict:
    rng = random.Random(f"trial:{a.seed}:{i}")
    ps = generate(a.n, a.seed * 100_003 + i, a.points_mode)
    make = random_pointed if a.mode == "pointed" else random_general
    t1, t2 = make(ps, rng), make(ps, rng)
    tr = _transform(t1, t2, a.mode)
    final, _ = replay(tr, validate=False)
    return {"trial": i, "ok": final.same_state(t2)} | trace_stats(tr)


def cmd_trials(a):
    with ThreadPoolExecutor(max_workers=a.workers) as ex:
        results = list(ex.map(lambda i: _trial(i, a), range(a.count)))
    _emit({"trials": results, "all_ok": all(r["ok"] for r in results)}, a.out)
    if not all(r["ok"] for r in results):
        raise VerifyFailed("some trials did not reach their target")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ptflip", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("gen", help="generate a point set")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--mode", choices=MODES, default="random")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    for name, fn, hlp in (("leftshell", cmd_leftshell, "left-shelling pseudo-triangulation"),
                          ("canon", cmd_canon, "canonically labelled left-shelling")):
        s = sub.add_parser(name, help=hlp)
        s.add_argument("points")
        s.add_argument("--out")
        s.set_defaults(func=fn)

    s = sub.add_parser("transform", help="flip sequence between two labelled pseudo-triangulations")
    s.add_argument("source")
    s.add_argument("target")
    s.add_argument("--mode", choices=("pointed", "general"), default="general")
    s.add_argument("--out")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("verify", help="replay a trace")
    s.add_argument("trace")
    s.add_argument("--expect")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", help="labelled flip-graph statistics")
    s.add_argument("points")
    s.add_argument("--mode", choices=(POINTED, GENERAL), default=POINTED)
    s.add_argument("--max-states", type=int, default=None)
    s.add_argument("--all-pairs", action="store_true", help="diameter over all sources")
    s.add_argument("--out")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("render", help="SVG of a point set, pseudo-triangulation or trace")
    s.add_argument("input")
    s.add_argument("--every", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("trials", help="random transformation trials")
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--n", type=int, default=7)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--mode", choices=("pointed", "general"), default="pointed")
    s.add_argument("--points-mode", choices=MODES, default="random")
    s.add_argument("--workers", type=int, default=4)
    s.add_argument("--out")
    s.set_defaults(func=cmd_trials)
    return p


def _fail(code: int, exc: BaseException) -> int:
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc),
                                 "exit": code}) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except OracleCapExceeded as exc:
        return _fail(EXIT_CAP, exc)
    except VerifyFailed as exc:
        return _fail(EXIT_VERIFY, exc)
    except (io.FormatError, GeometryError, LabelError, PipelineError, FlipError,
            OSError, ValueError) as exc:
        return _fail(EXIT_INPUT, exc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
