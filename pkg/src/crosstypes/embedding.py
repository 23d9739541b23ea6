"""Combinatorial planar embeddings: rotation systems, faces, enumeration up to reflection."""

from __future__ import annotations

from functools import cached_property
from itertools import permutations, product
from math import factorial
from typing import Iterator

from .decomposition import bc_tree, spr_tree
from .errors import BudgetExceeded, PreconditionError
from .graph import Graph, norm_edge, sort_vertices, vkey
from .planarity import planar_rotation


def _normalise_cycle(seq) -> tuple:
    seq = list(seq)
    if not seq:
        return ()
    i = min(range(len(seq)), key=lambda k: vkey(seq[k]))
    return tuple(seq[i:] + seq[:i])


class PlanarEmbedding:
    """Rotation system of a plane graph plus a designated outer face.

    ``rotation[v]`` is the cyclic order of v's neighbours.  Faces are traced by
    following dart (u, v) with (v, w) where w comes right after u at v.
    """

    __slots__ = ("rotation", "outer_face", "__dict__")

    def __init__(self, rotation: dict, outer_face: int = 0):
        self.rotation = {v: _normalise_cycle(rotation[v]) for v in sort_vertices(rotation)}
        self.outer_face = outer_face

    # structure

    @property
    def vertices(self) -> tuple:
        return tuple(self.rotation)

    @cached_property
    def edges(self) -> tuple:
        es = {norm_edge(v, w) for v, ws in self.rotation.items() for w in ws}
        return tuple(sorted(es, key=lambda e: (vkey(e[0]), vkey(e[1]))))

    def graph(self) -> Graph:
        return Graph(self.vertices, self.edges)

    @cached_property
    def _pos(self) -> dict:
        return {v: {w: i for i, w in enumerate(ws)} for v, ws in self.rotation.items()}

    def succ(self, v, w):
        """Neighbour after w in the rotation at v."""
        ws = self.rotation[v]
        return ws[(self._pos[v][w] + 1) % len(ws)]

    def pred(self, v, w):
        ws = self.rotation[v]
        return ws[(self._pos[v][w] - 1) % len(ws)]

    @cached_property
    def face_darts(self) -> tuple:
        seen = set()
        faces = []
        for v, ws in self.rotation.items():
            if not ws:
                faces.append(((v, None),))
                continue
            for w in ws:
                if (v, w) in seen:
                    continue
                walk = []
                d = (v, w)
                while d not in seen:
                    seen.add(d)
                    walk.append(d)
                    a, b = d
                    d = (b, self.succ(b, a))
                faces.append(tuple(walk))
        return tuple(faces)

    @cached_property
    def faces(self) -> tuple:
        return tuple(tuple(d[0] for d in f) for f in self.face_darts)

    @cached_property
    def dart_face(self) -> dict:
        return {d: i for i, f in enumerate(self.face_darts) for d in f}

    def face_vertices(self, i: int) -> set:
        return set(self.faces[i])

    def faces_at(self, v) -> list[int]:
        if not self.rotation[v]:
            return [self.dart_face[(v, None)]]
        return sorted({self.dart_face[(v, w)] for w in self.rotation[v]})

    def with_outer(self, i: int) -> PlanarEmbedding:
        e = PlanarEmbedding.__new__(PlanarEmbedding)
        e.rotation = self.rotation
        e.outer_face = i
        for k in ("edges", "_pos", "face_darts", "faces", "dart_face"):
            if k in self.__dict__:
                e.__dict__[k] = self.__dict__[k]
        return e

    def mirror(self) -> PlanarEmbedding:
        return PlanarEmbedding({v: tuple(reversed(ws)) for v, ws in self.rotation.items()})

    # checks

    def components(self) -> list[list]:
        seen = set()
        out = []
        for s in self.rotation:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.rotation[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            out.append(comp)
        return out

    def euler_ok(self) -> bool:
        """V - E + F = 2 on every connected component."""
        face_of_vertex = {}
        for i, f in enumerate(self.faces):
            for v in f:
                face_of_vertex.setdefault(v, set()).add(i)
        for comp in self.components():
            nv = len(comp)
            ne = sum(len(self.rotation[v]) for v in comp) // 2
            nf = len(set().union(*(face_of_vertex[v] for v in comp)))
            if nv - ne + nf != 2:
                return False
        return True

    def is_valid_for(self, g: Graph) -> bool:
        if set(self.rotation) != set(g.vertices):
            return False
        for v in g.vertices:
            ws = self.rotation[v]
            if len(ws) != len(set(ws)) or set(ws) != set(g.neighbors(v)):
                return False
        return self.euler_ok()

    def key(self) -> tuple:
        idx = {v: i for i, v in enumerate(self.rotation)}
        return tuple(tuple(idx[w] for w in ws) for ws in self.rotation.values())

    def canonical_key(self) -> tuple:
        """Equal for an embedding and its mirror image."""
        return min(self.key(), self.mirror().key())

    def __eq__(self, other) -> bool:
        return isinstance(other, PlanarEmbedding) and self.rotation == other.rotation and self.outer_face == other.outer_face

    def __hash__(self) -> int:
        return hash((self.key(), self.outer_face))

    def __repr__(self) -> str:
        return f"PlanarEmbedding(n={len(self.rotation)}, faces={len(self.faces)}, outer={self.outer_face})"


def faces_of(e: PlanarEmbedding) -> list[tuple]:
    return list(e.faces)


def planar_embedding(g: Graph) -> PlanarEmbedding | None:
    rot = planar_rotation(g)
    return None if rot is None else PlanarEmbedding(rot)


def is_alternating(cyclic: tuple, a, b) -> bool:
    """True when a and b are opposite in a cyclic sequence of length 4."""
    pos = {x: i for i, x in enumerate(cyclic)}
    return (pos[a] - pos[b]) % 4 == 2


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

BRUTE_FORCE_LIMIT = 2000
DEFAULT_BUDGET = 200_000


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self, k: int = 1):
        self.used += k
        if self.used > self.limit:
            raise BudgetExceeded("embedding enumeration budget exhausted", self.used)


def _cyclic_orders(items: list) -> Iterator[tuple]:
    if len(items) <= 2:
        yield tuple(items)
        return
    first, rest = items[0], items[1:]
    for p in permutations(rest):
        yield (first,) + p


def rotation_freedom(g: Graph) -> int:
    f = 1
    for v in g.vertices:
        d = g.degree(v)
        if d >= 3:
            f *= factorial(d - 1)
    return f


def brute_force_embeddings(g: Graph, budget: _Budget | None = None) -> list[PlanarEmbedding]:
    """Every rotation system of g with genus 0, deduplicated up to reflection."""
    vs = list(g.vertices)
    choices = [list(_cyclic_orders(g.sorted_neighbors(v))) for v in vs]
    out = {}
    for combo in product(*choices):
        if budget:
            budget.tick()
        e = PlanarEmbedding(dict(zip(vs, combo)))
        if e.euler_ok():
            out.setdefault(e.canonical_key(), e)
    return [out[k] for k in sorted(out)]


def two_sum(rot_a: dict, rot_b: dict, k) -> dict:
    """Glue rotation systems along a shared virtual edge id k (rotations list edge ids)."""
    out = {v: list(r) for v, r in rot_a.items()}
    u, v = [x for x, r in rot_a.items() if k in r]
    for x in (u, v):
        rb = list(rot_b[x])
        i = rb.index(k)
        ins = rb[i + 1:] + rb[:i]
        ra = out[x]
        j = ra.index(k)
        out[x] = ra[:j] + ins + ra[j + 1:]
    for x, r in rot_b.items():
        if x not in (u, v):
            out[x] = list(r)
    return out


def _node_rotations(node) -> list[dict]:
    """Edge-id rotation options of one SPR skeleton (both orientations where they differ)."""
    medges = node.multigraph_edges()
    if node.kind == "S":
        rot: dict = {x: [] for x in node.vertices}
        for eid, a, b in medges:
            rot[a].append(eid)
            rot[b].append(eid)
        return [rot]
    if node.kind == "P":
        u, v = node.vertices
        eids = [eid for eid, _, _ in medges]
        out = []
        for order in _cyclic_orders(eids):
            out.append({u: list(order), v: list(reversed(order))})
        if len(eids) == 2:
            out = out[:1]
        return out
    sk = Graph(node.vertices, [(a, b) for _, a, b in medges])
    by_pair = {frozenset((a, b)): eid for eid, a, b in medges}
    nrot = planar_rotation(sk)
    if nrot is None:
        raise PreconditionError("R-skeleton is not planar")
    r1 = {x: [by_pair[frozenset((x, w))] for w in nrot[x]] for x in node.vertices}
    r2 = {x: list(reversed(r)) for x, r in r1.items()}
    return [r1, r2]


def block_embeddings(block: Graph, budget: _Budget | None = None) -> list[dict]:
    """All genus-0 rotation systems of a 2-connected planar block, both orientations kept."""
    t = spr_tree(block)
    options = [_node_rotations(n) for n in t.nodes]
    # DFS order from node 0; each later node glued to its parent through one virtual edge
    order = [0]
    parent_edge = {0: None}
    i = 0
    while i < len(order):
        x = order[i]
        for vid in t.nodes[x].virtual_ids():
            a, b = t.pairing[vid]
            y = b if a == x else a
            if y not in parent_edge:
                parent_edge[y] = vid
                order.append(y)
        i += 1
    out = {}
    for combo in product(*(options[x] for x in order)):
        if budget:
            budget.tick()
        rot = {v: list(r) for v, r in combo[0].items()}
        for x, r in zip(order[1:], combo[1:]):
            rot = two_sum(rot, r, parent_edge[x])
        nbr = {}
        for v, eids in rot.items():
            nbr[v] = [e[1] if e[0] == v else e[0] for e in eids]
        emb = PlanarEmbedding(nbr)
        if emb.euler_ok():
            out.setdefault(emb.key(), emb.rotation)
    return [dict(out[k]) for k in sorted(out)]


def _merge_cyclic(base: list, new: list) -> Iterator[list]:
    """All cyclic merges of `new` into `base` preserving both cyclic orders."""
    n, k = len(base), len(new)
    for start in range(k):
        seq = new[start:] + new[:start]
        # positions: gap index in 1..n for each element, non-decreasing
        def rec(i, lo, acc):
            if i == k:
                yield acc
                return
            for p in range(lo, n + 1):
                yield from rec(i + 1, p, acc + [p])

        for pos in rec(0, 1, []):
            merged = []
            j = 0
            for gi in range(n):
                merged.append(base[gi])
                while j < k and pos[j] == gi + 1:
                    merged.append(seq[j])
                    j += 1
            yield merged


def _interleaves(cyc: list, a: set, b: set) -> bool:
    seq = [0 if x in a else 1 for x in cyc if x in a or x in b]
    changes = sum(1 for i in range(len(seq)) if seq[i] != seq[i - 1])
    return changes > 2


def _connected_embeddings(g: Graph, budget: _Budget) -> list[PlanarEmbedding]:
    if g.n == 1:
        return [PlanarEmbedding({g.vertices[0]: ()})]
    if rotation_freedom(g) <= BRUTE_FORCE_LIMIT:
        return brute_force_embeddings(g, budget)
    bc = bc_tree(g)
    block_opts = []
    for b in bc.blocks:
        if b.n == 2:
            u, v = b.vertices
            block_opts.append([{u: [v], v: [u]}])
        else:
            block_opts.append(block_embeddings(b, budget))
    # attach blocks in BFS order over the BC-tree
    order = [0]
    via = {0: None}
    i = 0
    while i < len(order):
        bi = order[i]
        for _, c in bc.adjacency[("B", bi)]:
            for _, bj in bc.adjacency[("C", c)]:
                if bj not in via:
                    via[bj] = c
                    order.append(bj)
        i += 1
    block_nbrs = [{v: set(b.neighbors(v)) for v in b.vertices} for b in bc.blocks]
    partials = [({v: list(r) for v, r in rot.items()}, None) for rot in block_opts[0]]
    attached = {0}
    for bj in order[1:]:
        c = via[bj]
        earlier = [block_nbrs[x][c] for x in sorted(attached) if c in block_nbrs[x]]
        mine = block_nbrs[bj][c]
        nxt = []
        for rot, _ in partials:
            for brot in block_opts[bj]:
                for merged in _merge_cyclic(rot[c], list(brot[c])):
                    budget.tick()
                    if any(_interleaves(merged, mine, e) for e in earlier):
                        continue
                    new = dict(rot)
                    new.update({v: list(r) for v, r in brot.items() if v != c})
                    new[c] = merged
                    nxt.append((new, None))
        partials = nxt
        attached.add(bj)
    out = {}
    for rot, _ in partials:
        e = PlanarEmbedding(rot)
        if e.euler_ok():
            out.setdefault(e.canonical_key(), e)
    return [out[k] for k in sorted(out)]


def enumerate_embeddings(g: Graph, limit: int | None = None, budget: int = DEFAULT_BUDGET) -> Iterator[PlanarEmbedding]:
    """Pairwise non-equivalent planar embeddings of g (equivalence includes reflection)."""
    if g.n == 0:
        yield PlanarEmbedding({})
        return
    b = _Budget(budget)
    per_comp = [_connected_embeddings(g.subgraph(c), b) for c in g.components()]
    if any(not opts for opts in per_comp):
        raise PreconditionError("graph is not planar")
    seen = set()
    produced = 0
    for combo in product(*per_comp):
        rot = {}
        for e in combo:
            rot.update(e.rotation)
        emb = PlanarEmbedding(rot)
        k = emb.canonical_key()
        if k in seen:
            continue
        seen.add(k)
        yield emb
        produced += 1
        if limit is not None and produced >= limit:
            return
