"""Crossing types, planarizations, combinatorial drawings and B/W configurations."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable

from .embedding import PlanarEmbedding, is_alternating
from .errors import MalformedDrawing, PreconditionError
from .graph import Graph, ekey, fresh_ids, norm_edge

# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------


class CrossingType(Enum):
    FULL = "full"
    ALMOST_FULL = "almostfull"
    BOWTIE = "bowtie"
    ARROW = "arrow"
    CHAIR = "chair"
    X = "x"

    def __str__(self) -> str:
        return self.name


ALL_TYPES = frozenset(CrossingType)
TRACTABLE = frozenset({CrossingType.FULL, CrossingType.ALMOST_FULL, CrossingType.BOWTIE})
TYPE_ORDER = list(CrossingType)


def type_set(members: Iterable) -> frozenset:
    out = frozenset(m if isinstance(m, CrossingType) else parse_type(m) for m in members)
    if not out:
        raise PreconditionError("type set must be nonempty")
    return out


def parse_type(name: str) -> CrossingType:
    key = name.strip().lower().replace("_", "").replace("-", "")
    for t in CrossingType:
        if t.value == key:
            return t
    raise PreconditionError(f"unknown crossing type {name!r}")


def parse_type_set(text: str) -> frozenset:
    return type_set(tok for tok in text.split(",") if tok.strip())


def format_type_set(s: Iterable) -> str:
    return ",".join(t.value for t in TYPE_ORDER if t in set(s))


def side_pairs(e, f) -> list[tuple]:
    a, b = e
    c, d = f
    return [(a, c), (a, d), (b, c), (b, d)]


def classify_crossing(g: Graph, e, f) -> CrossingType:
    e = norm_edge(*e)
    f = norm_edge(*f)
    if not g.has_edge(*e) or not g.has_edge(*f):
        raise PreconditionError(f"{e} or {f} is not an edge of the graph")
    if set(e) & set(f):
        raise PreconditionError(f"adjacent edges {e} and {f} cannot cross")
    present = [p for p in side_pairs(e, f) if g.has_edge(*p)]
    k = len(present)
    if k == 4:
        return CrossingType.FULL
    if k == 3:
        return CrossingType.ALMOST_FULL
    if k == 2:
        (p, q) = present
        return CrossingType.BOWTIE if not set(p) & set(q) else CrossingType.ARROW
    if k == 1:
        return CrossingType.CHAIR
    return CrossingType.X


def pair_admissible(g: Graph, e, f, s: Iterable) -> bool:
    return classify_crossing(g, e, f) in set(s)


# ---------------------------------------------------------------------------
# pairings and planarization
# ---------------------------------------------------------------------------


def norm_pair(e, f) -> tuple:
    e = norm_edge(*e)
    f = norm_edge(*f)
    return (e, f) if ekey(e) <= ekey(f) else (f, e)


def pair_key(p) -> tuple:
    return (ekey(p[0]), ekey(p[1]))


def normalise_pairing(pairs: Iterable) -> tuple:
    return tuple(sorted({norm_pair(e, f) for e, f in pairs}, key=pair_key))


def check_pairing(g: Graph, pairs: Iterable) -> tuple:
    """Normalise and validate a crossing pairing over g."""
    ps = normalise_pairing(pairs)
    used = set()
    for e, f in ps:
        for x in (e, f):
            if not g.has_edge(*x):
                raise PreconditionError(f"paired edge {x} is not in the graph")
            if x in used:
                raise PreconditionError(f"edge {x} occurs in two pairs")
            used.add(x)
        if set(e) & set(f):
            raise PreconditionError(f"paired edges {e} and {f} share an endpoint")
    return ps


def crossing_ids(g: Graph, pairs: tuple) -> dict:
    return dict(zip(pairs, fresh_ids(g.vertices, len(pairs), prefix="x")))


def planarize(g: Graph, pairs: Iterable, ids: dict | None = None) -> tuple[Graph, dict]:
    ps = check_pairing(g, pairs)
    reg = ids if ids is not None else crossing_ids(g, ps)
    paired = {x for p in ps for x in p}
    es = [e for e in g.edges if e not in paired]
    vs = list(g.vertices)
    for p in ps:
        x = reg[p]
        vs.append(x)
        for y in (*p[0], *p[1]):
            es.append((y, x))
    return Graph(vs, es), reg


def side_edges(g: Graph, p) -> list[tuple]:
    return [norm_edge(*q) for q in side_pairs(*p) if g.has_edge(*q)]


def is_crossing_confined(g: Graph, pairs: Iterable) -> bool:
    ps = check_pairing(g, pairs)
    paired = {x for p in ps for x in p}
    return all(not (set(side_edges(g, p)) & paired) for p in ps)


# ---------------------------------------------------------------------------
# drawings
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CombinatorialDrawing:
    host: Graph
    pairs: tuple
    cross: dict = field(repr=False)  # pair -> crossing vertex id
    embedding: PlanarEmbedding = field(repr=False)

    @property
    def outer_face(self) -> int:
        return self.embedding.outer_face

    @cached_property
    def planarization(self) -> Graph:
        return planarize(self.host, self.pairs, self.cross)[0]

    @cached_property
    def pair_of(self) -> dict:
        return {x: p for p, x in self.cross.items()}

    @cached_property
    def realized(self) -> dict:
        out = {}
        for p, x in self.cross.items():
            out[p] = is_alternating(self.embedding.rotation[x], p[0][0], p[0][1])
        return out

    def realized_pairs(self) -> list[tuple]:
        return [p for p in self.pairs if self.realized[p]]

    def types(self) -> dict:
        return {p: classify_crossing(self.host, *p) for p in self.pairs}

    def outer_vertices(self) -> set:
        return set(self.embedding.faces[self.outer_face])

    def with_outer(self, i: int) -> CombinatorialDrawing:
        return CombinatorialDrawing(self.host, self.pairs, self.cross, self.embedding.with_outer(i))

    def crossing_count(self) -> int:
        return sum(1 for p in self.pairs if self.realized[p])


def extract_drawing(g: Graph, pairs: Iterable, emb: PlanarEmbedding, outer: int = 0, ids: dict | None = None) -> CombinatorialDrawing:
    ps = check_pairing(g, pairs)
    reg = ids if ids is not None else crossing_ids(g, ps)
    h, _ = planarize(g, ps, reg)
    if not emb.is_valid_for(h):
        raise PreconditionError("embedding is not a planar embedding of the planarization")
    if not 0 <= outer < len(emb.faces):
        raise PreconditionError(f"outer face index {outer} out of range")
    return CombinatorialDrawing(g, ps, dict(reg), emb.with_outer(outer))


def check_drawing(d: CombinatorialDrawing) -> None:
    """Raise MalformedDrawing unless every structural invariant holds."""
    try:
        ps = check_pairing(d.host, d.pairs)
    except PreconditionError as exc:
        raise MalformedDrawing(str(exc)) from exc
    if ps != tuple(d.pairs):
        raise MalformedDrawing("pairs are not normalised")
    if set(d.cross) != set(ps):
        raise MalformedDrawing("crossing registry does not match the pairing")
    xs = list(d.cross.values())
    if len(set(xs)) != len(xs) or set(xs) & set(d.host.vertices):
        raise MalformedDrawing("crossing vertex ids must be fresh and distinct")
    h = planarize(d.host, ps, d.cross)[0]
    emb = d.embedding
    if set(emb.rotation) != set(h.vertices):
        raise MalformedDrawing("rotation does not cover the planarization's vertices")
    for v in h.vertices:
        ws = emb.rotation[v]
        if len(ws) != len(set(ws)) or set(ws) != set(h.neighbors(v)):
            raise MalformedDrawing(f"rotation at {v} does not list its incident edges exactly once")
    if not emb.euler_ok():
        raise MalformedDrawing("embedding fails the Euler check")
    if not 0 <= emb.outer_face < len(emb.faces):
        raise MalformedDrawing("outer face index out of range")


@dataclass
class VerifyReport:
    ok: bool
    one_planar: bool
    crossings: list
    violations: list

    def to_dict(self) -> dict:
        return {"ok": self.ok, "one_planar": self.one_planar, "crossings": self.crossings, "violations": self.violations}


def verify_drawing(d: CombinatorialDrawing, s: Iterable) -> VerifyReport:
    check_drawing(d)
    s = set(s)
    crossings = []
    violations = []
    used = {}
    one_planar = True
    for p in d.pairs:
        for e in p:
            if e in used:
                one_planar = False
                violations.append(f"edge {list(e)} crossed more than once")
            used[e] = p
    for p in d.pairs:
        t = classify_crossing(d.host, *p)
        real = d.realized[p]
        rec = {
            "e": list(p[0]),
            "f": list(p[1]),
            "cross_id": d.cross[p],
            "type": t.value,
            "realized": real,
            "allowed": (t in s) if real else True,
        }
        if real and t not in s:
            violations.append(f"crossing {d.cross[p]} of {list(p[0])} x {list(p[1])} has type {t.value} outside the type set")
        crossings.append(rec)
    return VerifyReport(not violations and one_planar, one_planar, crossings, violations)


# ---------------------------------------------------------------------------
# region membership and B/W configurations
# ---------------------------------------------------------------------------


def _outer_side(emb: PlanarEmbedding, cycle: list, outer: int | None = None):
    """Predicate telling whether a vertex off the cycle lies on the outer face's side.

    Floods the dual graph from both sides of the cycle at once and stops when the
    smaller side is exhausted, so the cost is proportional to the smaller region.
    """
    outer = emb.outer_face if outer is None else outer
    n = len(cycle)
    cyc_edges = {frozenset((cycle[i], cycle[(i + 1) % n])) for i in range(n)}
    darts = emb.face_darts
    dart_face = emb.dart_face
    left = {dart_face[(cycle[i], cycle[(i + 1) % n])] for i in range(n)}
    right = {dart_face[(cycle[(i + 1) % n], cycle[i])] for i in range(n)}
    sides = [set(left), set(right)]
    queues = [deque(left), deque(right)]
    done = None
    while done is None:
        for k in (0, 1):
            if not queues[k]:
                done = k
                break
            fi = queues[k].popleft()
            for a, b in darts[fi]:
                if b is None or frozenset((a, b)) in cyc_edges:
                    continue
                fj = dart_face[(b, a)]
                if fj not in sides[k]:
                    sides[k].add(fj)
                    queues[k].append(fj)
    region = sides[done]
    outer_in_region = outer in region
    on = set(cycle)

    def outside(v) -> bool:
        if v in on:
            return False
        return (emb.faces_at(v)[0] in region) == outer_in_region

    return outside


def outside_vertices(emb: PlanarEmbedding, cycle: list, outer: int | None = None) -> set:
    """Vertices off the closed walk `cycle` that lie on the outer face's side of it."""
    test = _outer_side(emb, cycle, outer)
    return {v for v in emb.rotation if test(v)}


def _other(e, v):
    return e[1] if e[0] == v else e[0]


@dataclass(frozen=True)
class BConfig:
    s: object
    s2: object
    b: object
    b2: object
    crossing: object

    def edges(self) -> frozenset:
        return frozenset({norm_edge(self.s, self.s2), norm_edge(self.s, self.b), norm_edge(self.s2, self.b2)})


@dataclass(frozen=True)
class WConfig:
    s: object
    s2: object
    w1: object
    w2: object
    w1p: object
    w2p: object
    x1: object
    x2: object

    def edges(self) -> frozenset:
        return frozenset(
            {norm_edge(self.s, self.w1), norm_edge(self.s, self.w2), norm_edge(self.s2, self.w1p), norm_edge(self.s2, self.w2p)}
        )


def _edge_route(d: CombinatorialDrawing, a, b) -> list:
    """Planarization walk for host edge ab: [a, b] or [a, x, b] when it is paired."""
    e = norm_edge(a, b)
    for p, x in d.cross.items():
        if e in p:
            return [a, x, b]
    return [a, b]


def b_candidates(d: CombinatorialDrawing) -> list[BConfig]:
    out = []
    seen = set()
    for p in d.realized_pairs():
        x = d.cross[p]
        for e, f in (p, p[::-1]):
            for s in e:
                for s2 in f:
                    if not d.host.has_edge(s, s2):
                        continue
                    c = BConfig(s, s2, _other(e, s), _other(f, s2), x)
                    k = c.edges()
                    if k not in seen:
                        seen.add(k)
                        out.append(c)
    return out


def b_config_direct(d: CombinatorialDrawing, c: BConfig) -> bool:
    cycle = _edge_route(d, c.s, c.s2) + [c.crossing]
    outside = _outer_side(d.embedding, cycle)
    return not outside(c.b) and not outside(c.b2)


def detect_b_configs(d: CombinatorialDrawing) -> list[BConfig]:
    return [c for c in b_candidates(d) if b_config_direct(d, c)]


def w_candidates(d: CombinatorialDrawing) -> list[WConfig]:
    out = []
    seen = set()
    real = d.realized_pairs()
    for i in range(len(real)):
        for j in range(i + 1, len(real)):
            p1, p2 = real[i], real[j]
            x1, x2 = d.cross[p1], d.cross[p2]
            for a1, b1 in (p1, p1[::-1]):
                for a2, b2 in (p2, p2[::-1]):
                    for s in set(a1) & set(a2):
                        for s2 in set(b1) & set(b2):
                            if s == s2:
                                continue
                            c = WConfig(s, s2, _other(a1, s), _other(a2, s), _other(b1, s2), _other(b2, s2), x1, x2)
                            k = (c.edges(), frozenset((s, s2)))
                            if k not in seen:
                                seen.add(k)
                                out.append(c)
    return out


def w_config_direct(d: CombinatorialDrawing, c: WConfig) -> bool:
    cycle = [c.s, c.x1, c.s2, c.x2]
    outside = _outer_side(d.embedding, cycle)
    return not any(outside(v) for v in (c.w1, c.w2, c.w1p, c.w2p))


def detect_w_configs(d: CombinatorialDrawing) -> list[WConfig]:
    return [c for c in w_candidates(d) if w_config_direct(d, c)]


def is_geometric(d: CombinatorialDrawing) -> bool:
    return not detect_b_configs(d) and not detect_w_configs(d)


# outer-face characterisations on the modified planarization H^x


def reduced_outer_face_vertices(d: CombinatorialDrawing, s, s2, keep: Iterable) -> set:
    """Vertex set of the outer face of (D - {v not in keep : N(v) = {s, s2}})^x."""
    keep = set(keep)
    host = d.host
    drop = {v for v in host.vertices if v not in keep and v not in (s, s2) and host.neighbors(v) == frozenset((s, s2))}
    emb = d.embedding
    # which pairs lose an edge, and how their crossing vertices survive
    gone_pairs = {}
    for p, x in d.cross.items():
        alive = [e for e in p if not (set(e) & drop)]
        gone_pairs[x] = alive
    dead_vertices = set(drop) | {x for x, alive in gone_pairs.items() if not alive}
    smoothed = {x: alive[0] for x, alive in gone_pairs.items() if len(alive) == 1}

    def resolve(v, w):
        # walk from v towards w through smoothed crossing vertices
        while w in smoothed:
            a, b = smoothed[w]
            nxt = b if a == v else a
            v, w = w, nxt
        return w

    new_rot = {}
    for v, ws in emb.rotation.items():
        if v in dead_vertices or v in smoothed:
            continue
        lst = []
        for w in ws:
            if w in dead_vertices:
                continue
            if w in smoothed:
                if v not in smoothed[w]:
                    continue  # v was attached to x through a dropped edge
                lst.append(resolve(v, w))
            else:
                lst.append(w)
        new_rot[v] = lst
    red = PlanarEmbedding(new_rot)

    # old faces merged into the outer region: flood the old dual across deleted edges
    def deleted(a, b):
        if a in dead_vertices or b in dead_vertices:
            return True
        if a in smoothed and b not in smoothed[a]:
            return True
        if b in smoothed and a not in smoothed[b]:
            return True
        return False

    reached = {emb.outer_face}
    queue = deque([emb.outer_face])
    darts = emb.face_darts
    while queue:
        fi = queue.popleft()
        for a, b in darts[fi]:
            if b is not None and deleted(a, b):
                fj = emb.dart_face[(b, a)]
                if fj not in reached:
                    reached.add(fj)
                    queue.append(fj)
    for fi in sorted(reached):
        for a, b in darts[fi]:
            if b is None or deleted(a, b):
                continue
            if a in smoothed:
                continue
            tgt = resolve(a, b) if b in smoothed else b
            return red.face_vertices(red.dart_face[(a, tgt)])
    return set()


def b_config_lemma(d: CombinatorialDrawing, c: BConfig) -> bool:
    return reduced_outer_face_vertices(d, c.s, c.s2, {c.b, c.b2}) == {c.s, c.s2, c.crossing}


def w_config_lemma(d: CombinatorialDrawing, c: WConfig) -> bool:
    return reduced_outer_face_vertices(d, c.s, c.s2, {c.w1, c.w2, c.w1p, c.w2p}) == {c.s, c.s2, c.x1, c.x2}


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def drawing_to_dict(d: CombinatorialDrawing) -> dict:
    emb = d.embedding
    return {
        "vertices": list(d.host.vertices),
        "edges": [list(e) for e in d.host.edges],
        "pairs": [
            {"e": list(p[0]), "f": list(p[1]), "cross_id": d.cross[p], "realized": d.realized[p]} for p in d.pairs
        ],
        "rotation": {str(v): [[v, w] for w in emb.rotation[v]] for v in emb.rotation},
        "outer_face": list(emb.faces[emb.outer_face]),
    }


def drawing_to_json(d: CombinatorialDrawing) -> str:
    return json.dumps(drawing_to_dict(d), indent=1, sort_keys=False) + "\n"


def _cyclic_equal(a: list, b: list) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    for i in range(len(a)):
        if a[i:] + a[:i] == b:
            return True
    return False


def drawing_from_dict(data: dict) -> CombinatorialDrawing:
    try:
        vertices = data["vertices"]
        for v in vertices:
            if not isinstance(v, (int, str)) or isinstance(v, bool):
                raise MalformedDrawing(f"vertex id {v!r} must be an int or string")
        host = Graph(vertices, (tuple(e) for e in data["edges"]))
        if len(host.vertices) != len(vertices):
            raise MalformedDrawing("duplicate or undeclared vertices")
        pairs = []
        ids = {}
        flags = {}
        for rec in data["pairs"]:
            p = norm_pair(tuple(rec["e"]), tuple(rec["f"]))
            pairs.append(p)
            ids[p] = rec["cross_id"]
            flags[p] = bool(rec["realized"])
        ps = check_pairing(host, pairs)
        by_name = {str(v): v for v in host.vertices}
        for x in ids.values():
            if str(x) in by_name:
                raise MalformedDrawing(f"crossing id {x!r} collides with a vertex")
            by_name[str(x)] = x
        rot = {}
        for key, lst in data["rotation"].items():
            if key not in by_name:
                raise MalformedDrawing(f"rotation key {key!r} is not a vertex or crossing")
            v = by_name[key]
            ws = []
            for a, b in lst:
                if a == v:
                    ws.append(b)
                elif b == v:
                    ws.append(a)
                else:
                    raise MalformedDrawing(f"rotation entry {[a, b]} at {key} is not incident to it")
            rot[v] = ws
        emb = PlanarEmbedding(rot)
        d = CombinatorialDrawing(host, ps, ids, emb)
        check_drawing(d)
        walk = list(data["outer_face"])
        outer = None
        for i, f in enumerate(emb.faces):
            if _cyclic_equal(list(f), walk):
                outer = i
                break
        if outer is None:
            raise MalformedDrawing("outer_face walk is not a face of the embedding")
        d = d.with_outer(outer)
        for p in ps:
            if flags[p] != d.realized[p]:
                raise MalformedDrawing(f"realized flag of {d.cross[p]} disagrees with the rotation")
        return d
    except MalformedDrawing:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise MalformedDrawing(f"bad drawing JSON: {exc}") from exc


def drawing_from_json(text: str) -> CombinatorialDrawing:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDrawing(f"not JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedDrawing("drawing JSON must be an object")
    return drawing_from_dict(data)


def sorted_pairs(pairs: Iterable) -> list:
    return sorted(pairs, key=pair_key)

