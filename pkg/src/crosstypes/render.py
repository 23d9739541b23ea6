"""SVG rendering of combinatorial drawings via matplotlib.

The planarization is triangulated with one star vertex per face and laid out
with Tutte's barycentric method, the outer face pinned to a circle.  Paired
edges are then drawn through their crossing points.  Geometry is illustrative.
"""

from __future__ import annotations

import math
import re
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.collections import LineCollection  # noqa: E402
from scipy.sparse import lil_matrix  # noqa: E402
from scipy.sparse.linalg import spsolve  # noqa: E402

from .crossings import CombinatorialDrawing  # noqa: E402
from .graph import sort_vertices  # noqa: E402

_SAFE = re.compile(r"[^A-Za-z0-9_.-]")


def _sid(x) -> str:
    return _SAFE.sub("_", str(x))


def _component_layout(emb, comp: list, outer_face: int | None) -> dict:
    if len(comp) == 1:
        return {comp[0]: (0.0, 0.0)}
    cs = set(comp)
    faces = [i for i, f in enumerate(emb.faces) if f and f[0] in cs]
    if outer_face is None or outer_face not in faces:
        outer_face = max(faces, key=lambda i: (len(emb.faces[i]), -i))
    boundary = []
    for v in emb.faces[outer_face]:
        if v not in boundary:
            boundary.append(v)
    if len(boundary) < 3:
        # a tree-like component: fall back to a circle for every vertex
        order = sort_vertices(comp)
        return {v: (math.cos(2 * math.pi * i / len(order)), math.sin(2 * math.pi * i / len(order))) for i, v in enumerate(order)}
    fixed = {}
    for i, v in enumerate(boundary):
        a = 2 * math.pi * i / len(boundary)
        fixed[v] = (math.cos(a), math.sin(a))
    # star vertices for every inner face
    nbrs: dict = {v: [] for v in comp}
    for v in comp:
        nbrs[v].extend(emb.rotation[v])
    stars = []
    for i in faces:
        if i == outer_face:
            continue
        s = ("star", i)
        stars.append(s)
        nbrs[s] = list(emb.faces[i])
        for v in emb.faces[i]:
            nbrs[v].append(s)
    free = [v for v in nbrs if v not in fixed]
    idx = {v: k for k, v in enumerate(free)}
    n = len(free)
    pos = dict(fixed)
    if n:
        a = lil_matrix((n, n))
        bx = np.zeros(n)
        by = np.zeros(n)
        for v in free:
            k = idx[v]
            a[k, k] = len(nbrs[v])
            for w in nbrs[v]:
                if w in fixed:
                    bx[k] += fixed[w][0]
                    by[k] += fixed[w][1]
                else:
                    a[k, idx[w]] -= 1
        a = a.tocsr()
        xs = np.atleast_1d(spsolve(a, bx))
        ys = np.atleast_1d(spsolve(a, by))
        for v in free:
            pos[v] = (float(xs[idx[v]]), float(ys[idx[v]]))
    return {v: pos[v] for v in comp}


def layout(d: CombinatorialDrawing) -> dict:
    """Coordinates for every planarization vertex (host vertices and crossings)."""
    emb = d.embedding
    comps = emb.components()
    out = {}
    offset = 0.0
    outer_comp = set(emb.faces[d.outer_face]) if emb.faces[d.outer_face] else set()
    for comp in comps:
        use_outer = d.outer_face if outer_comp & set(comp) else None
        pos = _component_layout(emb, comp, use_outer)
        for v, (x, y) in pos.items():
            out[v] = (x + offset, y)
        offset += 2.5
    return out


BATCH_LIMIT = 400  # above this many edges, glyphs are grouped into one element per kind


def _draw_each(ax, pos, host, segments, crossings, labels) -> None:
    for (a, b), pts in segments:
        xs, ys = zip(*pts)
        (ln,) = ax.plot(xs, ys, color="#444444", linewidth=1.0, zorder=1)
        ln.set_gid(f"edge-{_sid(a)}--{_sid(b)}")
    for x, real in crossings:
        cx, cy = pos[x]
        if real:
            art = ax.scatter([cx], [cy], marker="x", s=30, color="#c0392b", zorder=3)
            art.set_gid(f"crossing-{_sid(x)}")
        else:
            art = ax.scatter([cx], [cy], marker="o", s=30, facecolors="none", edgecolors="#7f8c8d", zorder=3)
            art.set_gid(f"crossing-unrealized-{_sid(x)}")
    for v in host.vertices:
        vx, vy = pos[v]
        art = ax.scatter([vx], [vy], s=60, color="#2c6fbb", zorder=4)
        art.set_gid(f"vertex-{_sid(v)}")
        if labels:
            ax.annotate(str(v), (vx, vy), xytext=(4, 4), textcoords="offset points", fontsize=7)


def _draw_batched(ax, pos, host, segments, crossings) -> None:
    lc = LineCollection([pts for _, pts in segments], colors="#444444", linewidths=0.2, zorder=1)
    lc.set_gid("edges")
    ax.add_collection(lc)
    for real, gid, kw in (
        (True, "crossings", {"marker": "x", "color": "#c0392b"}),
        (False, "crossings-unrealized", {"marker": "o", "facecolors": "none", "edgecolors": "#7f8c8d"}),
    ):
        pts = [pos[x] for x, r in crossings if r is real]
        if pts:
            xs, ys = zip(*pts)
            ax.scatter(xs, ys, s=6, zorder=3, **kw).set_gid(gid)
    xs, ys = zip(*(pos[v] for v in host.vertices))
    ax.scatter(xs, ys, s=2, color="#2c6fbb", zorder=4).set_gid("vertices")
    ax.autoscale_view()


def emit_svg(d: CombinatorialDrawing, path, *, labels: bool | None = None) -> Path:
    """Write d as SVG 1.1; drawings with more than BATCH_LIMIT edges use grouped glyphs."""
    path = Path(path)
    pos = layout(d)
    host = d.host
    if labels is None:
        labels = host.n <= 60
    plt.rcParams["svg.hashsalt"] = "crosstypes"
    plt.rcParams["svg.fonttype"] = "none"
    width = 2.5 * len(d.embedding.components()) + 1
    fig, ax = plt.subplots(figsize=(min(4 * width / 2.5, 40), 4))
    ax.set_aspect("equal")
    ax.axis("off")
    route = {}
    for p, x in d.cross.items():
        for e in p:
            route[e] = x
    segments = []
    for e in host.edges:
        pts = [pos[e[0]]]
        if e in route:
            pts.append(pos[route[e]])
        pts.append(pos[e[1]])
        segments.append((e, pts))
    crossings = [(d.cross[p], d.realized[p]) for p in d.pairs]
    if host.m > BATCH_LIMIT:
        _draw_batched(ax, pos, host, segments, crossings)
    else:
        _draw_each(ax, pos, host, segments, crossings, labels)
    fig.savefig(path, format="svg", metadata={"Date": None}, bbox_inches="tight")
    plt.close(fig)
    return path
