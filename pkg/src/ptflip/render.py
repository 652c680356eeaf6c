"""Static SVG drawings of labelled pseudo-triangulations."""
from __future__ import annotations

from xml.sax.saxutils import escape

from .flips import FlipTrace, apply_event
from .geometry import has_reflex_gap
from .triangulation import Edge, PseudoTriangulation

STYLE = """
.edge { stroke: #333; stroke-width: 1.5; }
.edge.hull { stroke: #000; stroke-width: 2.5; }
.edge.flipped { stroke: #d22; stroke-width: 3.5; }
.vertex { fill: #fff; stroke: #000; }
.vertex.pointed { fill: #3a7; }
.corner { fill: #26c; }
.label { font: 11px sans-serif; fill: #a40; }
.vid { font: 9px sans-serif; fill: #555; }
"""


def render_svg(t: PseudoTriangulation, highlight: Edge | None = None,
               size: int = 480, margin: int = 30, title: str | None = None) -> str:
    """SVG with one ``<line class="edge">`` per edge, vertex ids, labels at
    edge midpoints, corner markers inside every face and pointed vertices
    filled."""
    c = t.points.coords
    xs = [p[0] for p in c]
    ys = [p[1] for p in c]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1)
    s = (size - 2 * margin) / span

    def P(i):
        return (margin + (c[i][0] - min(xs)) * s, size - margin - (c[i][1] - min(ys)) * s)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">', f"<style>{STYLE}</style>"]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    for e in sorted(t.edges):
        (x1, y1), (x2, y2) = P(e[0]), P(e[1])
        cls = "edge"
        if t.points.is_hull_edge(e):
            cls += " hull"
        if highlight is not None and e == tuple(sorted(highlight)):
            cls += " flipped"
        out.append(f'<line class="{cls}" x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}"/>')
    for w in t.faces():
        for pos in t.corner_positions(w):
            a, v, b = w[pos - 1], w[pos], w[(pos + 1) % len(w)]
            (vx, vy), (ax, ay), (bx, by) = P(v), P(a), P(b)
            mx, my = (ax + bx) / 2 - vx, (ay + by) / 2 - vy
            norm = max((mx * mx + my * my) ** 0.5, 1e-9)
            out.append(f'<circle class="corner" cx="{vx + 9 * mx / norm:.1f}" '
                       f'cy="{vy + 9 * my / norm:.1f}" r="2"/>')
    for e, lab in sorted(t.labels.items()):
        (x1, y1), (x2, y2) = P(e[0]), P(e[1])
        out.append(f'<text class="label" x="{(x1 + x2) / 2 + 3:.1f}" '
                   f'y="{(y1 + y2) / 2 - 3:.1f}">{lab}</text>')
    for v in range(t.n):
        x, y = P(v)
        pointed = has_reflex_gap(c[v], [c[w] for w in t.neighbors(v)])
        cls = "vertex pointed" if pointed else "vertex"
        out.append(f'<circle class="{cls}" cx="{x:.1f}" cy="{y:.1f}" r="4"/>')
        out.append(f'<text class="vid" x="{x + 5:.1f}" y="{y + 12:.1f}">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_trace(trace: FlipTrace, every: int = 1, size: int = 480) -> list[str]:
    """Frames after every ``every`` events (plus the initial and final
    state); each frame highlights the last inserted or removed edge."""
    if every < 1:
        raise ValueError("every must be positive")
    t = trace.initial.copy()
    frames = [render_svg(t, size=size, title="step 0")]
    n = len(trace.events)
    for i, ev in enumerate(trace.events, 1):
        apply_event(t, ev)
        if i % every == 0 or i == n:
            hl = ev.inserted or ev.removed
            frames.append(render_svg(t, highlight=hl, size=size, title=f"step {i}: {ev.kind}"))
    return frames
