"""Exchanging, insertion and deletion flips with label bookkeeping, and the
replayable :class:`FlipTrace`."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .geometry import edge, segments_cross
from .polygon import bitangents, face_merge
from .triangulation import Edge, LabelError, PseudoTriangulation, corner_positions, walk_area2

EXCHANGE, INSERT, DELETE = "exchange", "insert", "delete"


class FlipError(ValueError):
    pass


class NotFlippable(FlipError):
    pass


class NotExchangeable(FlipError):
    pass


class NotDeletable(FlipError):
    pass


class NotInsertable(FlipError):
    pass


class LabelInUse(FlipError):
    pass


class ReplayError(FlipError):
    def __init__(self, step: int, msg: str):
        super().__init__(f"step {step}: {msg}")
        self.step = step


@dataclass(frozen=True)
class FlipEvent:
    kind: str
    removed: Edge | None
    inserted: Edge | None
    label: int | None

    def inverse(self) -> "FlipEvent":
        if self.kind == EXCHANGE:
            return FlipEvent(EXCHANGE, self.inserted, self.removed, self.label)
        if self.kind == INSERT:
            return FlipEvent(DELETE, self.inserted, None, self.label)
        return FlipEvent(INSERT, None, self.removed, self.label)

    def to_json(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.removed is not None:
            d["removed"] = list(self.removed)
        if self.inserted is not None:
            d["inserted"] = list(self.inserted)
        d["label"] = self.label
        return d

    @classmethod
    def from_json(cls, d: dict) -> "FlipEvent":
        kind = d["kind"]
        if kind not in (EXCHANGE, INSERT, DELETE):
            raise ValueError(f"unknown event kind {kind!r}")
        rem = edge(*d["removed"]) if d.get("removed") is not None else None
        ins = edge(*d["inserted"]) if d.get("inserted") is not None else None
        return cls(kind, rem, ins, d.get("label"))


@dataclass
class FlipTrace:
    """Initial labelled state plus a sequence of flip events.

    ``notes`` carries per-procedure diagnostics (phase boundaries,
    certificates); it is not part of the replay semantics.
    """
    initial: PseudoTriangulation
    events: list[FlipEvent] = field(default_factory=list)
    notes: list[dict] = field(default_factory=list)

    @classmethod
    def begin(cls, t: PseudoTriangulation) -> "FlipTrace":
        return cls(t.copy())

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[FlipEvent]:
        return iter(self.events)

    def append(self, ev: FlipEvent) -> FlipEvent:
        self.events.append(ev)
        return ev

    def extend(self, other: "FlipTrace") -> "FlipTrace":
        base = len(self.events)
        self.events.extend(other.events)
        self.notes.extend({**nt, "at": nt.get("at", 0) + base} for nt in other.notes)
        return self

    def note(self, **kw) -> None:
        kw.setdefault("at", len(self.events))
        self.notes.append(kw)

    def counts(self) -> Counter:
        return Counter(ev.kind for ev in self.events)

    def final(self, validate: bool = False) -> PseudoTriangulation:
        return replay(self, validate=validate)[0]

    def inverse(self) -> "FlipTrace":
        """The reversed trace, starting from this trace's final state."""
        return FlipTrace(self.final(), [ev.inverse() for ev in reversed(self.events)])

    def __add__(self, other: "FlipTrace") -> "FlipTrace":
        out = FlipTrace(self.initial.copy(), list(self.events), list(self.notes))
        return out.extend(other)

    def phase_counts(self) -> dict[str, dict[str, int]]:
        """Event counts per phase; a ``phase`` note closes the phase it names."""
        out: dict[str, dict[str, int]] = {}
        start = 0
        for nt in self.notes:
            if "phase" in nt:
                seg = self.events[start:nt["at"]]
                out[nt["phase"]] = dict(Counter(ev.kind for ev in seg))
                start = nt["at"]
        return out


# -- flip primitives ---------------------------------------------------------

def exchange_target(t: PseudoTriangulation, e: Edge) -> Edge:
    """The edge that an exchanging flip of ``e`` would insert."""
    e = edge(*e)
    if e not in t.edges:
        raise NotFlippable(f"{e} is not an edge")
    if t.points.is_hull_edge(e):
        raise NotFlippable(f"{e} is a hull edge")
    x = face_merge(t, e)
    if x.k != 4:
        raise NotExchangeable(f"removing {e} leaves a pseudo-{x.k}-gon")
    bt = bitangents(x)
    if len(bt) != 2 or e not in bt:
        raise NotExchangeable(f"pseudo-quadrilateral of {e} has bitangents {sorted(bt)}")
    (f,) = bt - {e}
    return f


def exchanging_flip(t: PseudoTriangulation, e: Edge) -> FlipEvent:
    e = edge(*e)
    f = exchange_target(t, e)
    lab = t.labels.pop(e, None)
    t.remove_edge(e)
    t.add_edge(f)
    if lab is not None:
        t.labels[f] = lab
    return FlipEvent(EXCHANGE, e, f, lab)


def is_deletable(t: PseudoTriangulation, e: Edge) -> bool:
    e = edge(*e)
    if e not in t.edges or t.points.is_hull_edge(e):
        return False
    return face_merge(t, e).k == 3


def deletion_flip(t: PseudoTriangulation, e: Edge) -> FlipEvent:
    e = edge(*e)
    if e not in t.edges or t.points.is_hull_edge(e):
        raise NotFlippable(f"{e} is not an internal edge")
    k = face_merge(t, e).k
    if k != 3:
        raise NotDeletable(f"removing {e} leaves a pseudo-{k}-gon")
    lab = t.take_label(e) if e in t.labels else None
    t.remove_edge(e)
    return FlipEvent(DELETE, e, None, lab)


def _split_ok(t: PseudoTriangulation, u: int, v: int) -> bool:
    c = t.points.coords
    for a, b in t.edges:
        if a in (u, v) or b in (u, v):
            continue
        if segments_cross(c[u], c[v], c[a], c[b]):
            return False
    return True


def is_insertable(t: PseudoTriangulation, uv: Edge) -> bool:
    uv = edge(*uv)
    if uv in t.edges or uv[0] == uv[1]:
        return False
    if not _split_ok(t, *uv):
        return False
    u, v = uv
    t.add_edge(uv)
    try:
        c = t.points.coords
        w1, w2 = t.face_walk(u, v), t.face_walk(v, u)
        return (walk_area2(c, w1) > 0 and walk_area2(c, w2) > 0
                and len(corner_positions(c, w1)) == 3 and len(corner_positions(c, w2)) == 3)
    finally:
        t.remove_edge(uv)


def insertion_flip(t: PseudoTriangulation, uv: Edge, label: int | None) -> FlipEvent:
    uv = edge(*uv)
    if label is not None and label not in t.free:
        raise LabelInUse(f"label {label} is not free")
    if not is_insertable(t, uv):
        raise NotInsertable(f"{uv} does not split a face into two pseudo-triangles")
    t.add_edge(uv)
    if label is not None:
        t.set_label(uv, label)
    return FlipEvent(INSERT, None, uv, label)


def insertion_candidates(t: PseudoTriangulation) -> list[Edge]:
    out = set()
    for w in t.faces():
        vs = sorted(set(w))
        for i, u in enumerate(vs):
            for v in vs[i + 1:]:
                if (u, v) not in t.edges and is_insertable(t, (u, v)):
                    out.add((u, v))
    return sorted(out)


def deletion_candidates(t: PseudoTriangulation) -> list[Edge]:
    return [e for e in t.internal_edges() if is_deletable(t, e)]


def apply_event(t: PseudoTriangulation, ev: FlipEvent) -> None:
    """Apply ``ev`` to ``t`` after checking it is a legal flip as recorded."""
    if ev.kind == EXCHANGE:
        if ev.removed is None or ev.inserted is None:
            raise FlipError("exchange needs removed and inserted edges")
        if t.labels.get(ev.removed) != ev.label:
            raise FlipError(f"{ev.removed} carries {t.labels.get(ev.removed)}, not {ev.label}")
        f = exchange_target(t, ev.removed)
        if f != ev.inserted:
            raise FlipError(f"flipping {ev.removed} inserts {f}, not {ev.inserted}")
        exchanging_flip(t, ev.removed)
    elif ev.kind == DELETE:
        if ev.removed is None or ev.inserted is not None:
            raise FlipError("delete needs exactly a removed edge")
        if t.labels.get(ev.removed) != ev.label:
            raise FlipError(f"{ev.removed} carries {t.labels.get(ev.removed)}, not {ev.label}")
        deletion_flip(t, ev.removed)
    elif ev.kind == INSERT:
        if ev.inserted is None or ev.removed is not None:
            raise FlipError("insert needs exactly an inserted edge")
        if ev.label is None:
            raise FlipError("insert needs a label")
        insertion_flip(t, ev.inserted, ev.label)
    else:
        raise FlipError(f"unknown kind {ev.kind}")


def replay(trace: FlipTrace, validate: bool = True) -> tuple[PseudoTriangulation, Counter]:
    """Apply every event of ``trace`` to a copy of its initial state.

    With ``validate`` the whole pseudo-triangulation and the label ledger are
    re-checked after every step.
    """
    t = trace.initial.copy()
    if validate:
        rep = t.validate()
        if not rep.ok:
            raise ReplayError(0, "initial state invalid: " + "; ".join(rep.violations()))
    for i, ev in enumerate(trace.events):
        try:
            apply_event(t, ev)
        except (FlipError, LabelError, KeyError) as exc:
            raise ReplayError(i, str(exc)) from exc
        if validate:
            rep = t.validate()
            if not rep.ok:
                raise ReplayError(i, "; ".join(rep.violations()))
            if not t.is_fully_labelled():
                raise ReplayError(i, "unlabelled internal edge")
    return t, trace.counts()


def apply_all(t: PseudoTriangulation, events: Iterable[FlipEvent]) -> None:
    for ev in events:
        apply_event(t, ev)
