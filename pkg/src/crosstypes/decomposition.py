"""BC-trees, SPR-trees, skeleton+ graphs and the split constructions built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count

import networkx as nx

from .errors import PreconditionError
from .graph import Graph, ekey, fresh_ids, norm_edge, sort_edges, sort_vertices, vkey

# ---------------------------------------------------------------------------
# BC-tree
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BCTree:
    blocks: tuple  # tuple of Graph, one per block (bridges are K2 blocks)
    cutvertices: tuple
    adjacency: dict = field(hash=False)  # ("B", i) / ("C", v) -> sorted neighbour list

    def blocks_at(self, v) -> list[int]:
        return [i for kind, i in self.adjacency.get(("C", v), []) if kind == "B"]

    def leaf_blocks(self) -> list[int]:
        return [i for i in range(len(self.blocks)) if len(self.adjacency[("B", i)]) <= 1]


def _node_key(node):
    return (node[0], vkey(node[1]))


def bc_tree(g: Graph) -> BCTree:
    if g.n == 0 or not g.is_connected():
        raise PreconditionError("bc_tree needs a connected graph")
    nxg = g.to_nx()
    comps = [sort_edges(norm_edge(a, b) for a, b in c) for c in nx.biconnected_component_edges(nxg)]
    blocks = sorted((Graph((), c) for c in comps), key=lambda b: ekey(b.edges[0]))
    if g.n == 1:
        blocks = [Graph(g.vertices)]
    cuts = sort_vertices(nx.articulation_points(nxg)) if g.n > 2 else []
    cutset = set(cuts)
    adj: dict = {("B", i): [] for i in range(len(blocks))}
    for v in cuts:
        adj[("C", v)] = []
    for i, b in enumerate(blocks):
        for v in b.vertices:
            if v in cutset:
                adj[("B", i)].append(("C", v))
                adj[("C", v)].append(("B", i))
    for k in adj:
        adj[k].sort(key=_node_key)
    return BCTree(tuple(blocks), tuple(cuts), adj)


# ---------------------------------------------------------------------------
# SPR-tree
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SPRNode:
    id: int
    kind: str  # "S", "P" or "R"
    vertices: tuple
    real_edges: tuple  # normalised host edges
    virtual_edges: tuple  # (vid, u, v)

    def virtual_ids(self) -> list[str]:
        return [vid for vid, _, _ in self.virtual_edges]

    def virtual_endpoints(self, vid: str) -> tuple:
        for x, u, v in self.virtual_edges:
            if x == vid:
                return (u, v)
        raise KeyError(vid)

    def multigraph_edges(self) -> list[tuple]:
        """(edge id, u, v) for every skeleton edge, real ones keyed by the host edge."""
        return [(e, e[0], e[1]) for e in self.real_edges] + list(self.virtual_edges)


@dataclass(frozen=True)
class SPRTree:
    nodes: tuple  # SPRNode, index == id
    pairing: dict = field(hash=False)  # vid -> (node id, node id)

    def neighbors(self, i: int) -> list[int]:
        out = []
        for vid in self.nodes[i].virtual_ids():
            a, b = self.pairing[vid]
            out.append(b if a == i else a)
        return sorted(out)

    def tree_edges(self) -> list[tuple]:
        return sorted((min(a, b), max(a, b), vid) for vid, (a, b) in self.pairing.items())

    def edge_between(self, a: int, b: int) -> str:
        for vid, pair in self.pairing.items():
            if set(pair) == {a, b}:
                return vid
        raise KeyError((a, b))

    def r_nodes(self) -> list[int]:
        return [n.id for n in self.nodes if n.kind == "R"]

    def side(self, mu: int, nu: int) -> list[int]:
        """Node ids in the component of T - mu nu that contains mu."""
        seen = {mu}
        stack = [mu]
        while stack:
            x = stack.pop()
            for y in self.neighbors(x):
                if (x, y) in ((mu, nu), (nu, mu)) or y in seen:
                    continue
                seen.add(y)
                stack.append(y)
        return sorted(seen)


def _edge_classes(edges: dict, a, b) -> list[list]:
    """Separation classes of the multigraph `edges` with respect to {a, b}."""
    parent = {eid: eid for eid in edges}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    at: dict = {}
    for eid, (u, v) in edges.items():
        for w in (u, v):
            if w != a and w != b:
                at.setdefault(w, []).append(eid)
    for eids in at.values():
        r = find(eids[0])
        for e in eids[1:]:
            parent[find(e)] = r
    groups: dict = {}
    for eid in edges:
        groups.setdefault(find(eid), []).append(eid)
    return list(groups.values())


def _mg_vertices(edges: dict) -> list:
    vs = set()
    for u, v in edges.values():
        vs.add(u)
        vs.add(v)
    return sort_vertices(vs)


def _is_cycle(edges: dict) -> bool:
    deg: dict = {}
    for u, v in edges.values():
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return len(deg) >= 3 and all(d == 2 for d in deg.values()) and len(edges) == len(deg)


def _eid_key(eid):
    return (1, eid) if isinstance(eid, str) else (0, ekey(eid))


def _find_split(edges: dict):
    """Return (E1, E2, a, b) splitting the 2-connected multigraph, or None if it is a bond, a cycle or 3-connected."""
    vs = _mg_vertices(edges)
    if len(vs) <= 2 or _is_cycle(edges):
        return None
    # parallel edges first: split off the bond
    by_pair: dict = {}
    for eid in sorted(edges, key=_eid_key):
        u, v = edges[eid]
        by_pair.setdefault(frozenset((u, v)), []).append(eid)
    for pair, eids in sorted(by_pair.items(), key=lambda kv: _eid_key(kv[1][0])):
        if len(eids) >= 2:
            a, b = sort_vertices(pair)
            rest = [e for e in edges if e not in eids]
            return eids, rest, a, b
    simple = nx.Graph()
    simple.add_nodes_from(vs)
    simple.add_edges_from(edges.values())
    for a in vs:
        h = simple.copy()
        h.remove_node(a)
        cuts = sort_vertices(nx.articulation_points(h))
        if not cuts:
            continue
        b = cuts[0]
        classes = _edge_classes(edges, a, b)
        classes.sort(key=lambda c: min(_eid_key(e) for e in c))
        bigs = [c for c in classes if len(c) >= 2]
        first = bigs[0]
        rest = [e for c in classes if c is not first for e in c]
        return first, rest, a, b
    return None


def _classify(edges: dict) -> str:
    vs = _mg_vertices(edges)
    if len(vs) == 2:
        return "P"
    if _is_cycle(edges):
        return "S"
    return "R"


def spr_tree(g: Graph) -> SPRTree:
    if not g.is_biconnected():
        raise PreconditionError("spr_tree needs a 2-connected graph with at least 3 vertices")
    vid_counter = count()
    work = [{e: e for e in g.edges}]
    comps: list[dict] = []
    while work:
        comp = work.pop()
        sp = _find_split(comp)
        if sp is None:
            comps.append(comp)
            continue
        e1, e2, a, b = sp
        vid = f"v{next(vid_counter)}"
        c1 = {e: comp[e] for e in e1}
        c2 = {e: comp[e] for e in e2}
        c1[vid] = (a, b)
        c2[vid] = (a, b)
        work.append(c2)
        work.append(c1)

    kinds = [_classify(c) for c in comps]
    alive = [True] * len(comps)
    # merge adjacent bonds with bonds and polygons with polygons
    changed = True
    while changed:
        changed = False
        owner: dict = {}
        for i, c in enumerate(comps):
            if not alive[i]:
                continue
            for eid in c:
                if isinstance(eid, str):
                    owner.setdefault(eid, []).append(i)
        for vid in sorted(owner, key=lambda s: int(s[1:])):
            i, j = owner[vid]
            if kinds[i] == kinds[j] and kinds[i] in "SP":
                merged = {e: uv for e, uv in comps[i].items() if e != vid}
                merged.update((e, uv) for e, uv in comps[j].items() if e != vid)
                comps[i] = merged
                alive[j] = False
                changed = True
                break

    order = [i for i in range(len(comps)) if alive[i]]
    nodes = []
    pairing: dict = {}
    for new_id, i in enumerate(order):
        c = comps[i]
        real = sort_edges(e for e in c if not isinstance(e, str))
        virt = sorted(((e, *c[e]) for e in c if isinstance(e, str)), key=lambda t: int(t[0][1:]))
        nodes.append(SPRNode(new_id, kinds[i], tuple(_mg_vertices(c)), tuple(real), tuple(virt)))
        for vid, _, _ in virt:
            pairing.setdefault(vid, []).append(new_id)
    # renumber virtual ids densely so output does not depend on how many splits were merged away
    rename = {old: f"v{k}" for k, old in enumerate(sorted(pairing, key=lambda s: int(s[1:])))}
    nodes = [
        SPRNode(n.id, n.kind, n.vertices, n.real_edges, tuple((rename[x], u, v) for x, u, v in n.virtual_edges))
        for n in nodes
    ]
    pairing = {rename[k]: tuple(v) for k, v in pairing.items()}
    for vid, pair in pairing.items():
        assert len(pair) == 2, vid
    return SPRTree(tuple(nodes), pairing)


def reassemble(t: SPRTree) -> Graph:
    """Contract all virtual-edge pairings: the union of real skeleton edges."""
    vs = set()
    es = []
    for n in t.nodes:
        vs.update(n.vertices)
        es.extend(n.real_edges)
    return Graph(vs, es)


# ---------------------------------------------------------------------------
# skeleton+
# ---------------------------------------------------------------------------

REAL = "real"
VIRTUAL_SUBDIVIDED = "virtual-subdivided"
VIRTUAL_RETAINED = "virtual-retained"


@dataclass(frozen=True)
class SkeletonPlus:
    graph: Graph
    provenance: dict = field(hash=False)  # edge -> tag
    subdivision_vertices: tuple = ()
    virtual_of: dict = field(default_factory=dict, hash=False)  # subdivision vertex -> vid
    node: int = -1


def skeleton_plus(t: SPRTree, node: int, host: Graph) -> SkeletonPlus:
    sk = t.nodes[node]
    prov: dict = {}
    for e in sk.real_edges:
        prov[e] = REAL
    fresh = fresh_ids(host.vertices, len(sk.virtual_edges), prefix="t")
    sub = []
    virtual_of = {}
    for (vid, u, v), tv in zip(sk.virtual_edges, fresh):
        sub.append(tv)
        virtual_of[tv] = vid
        prov[norm_edge(u, tv)] = VIRTUAL_SUBDIVIDED
        prov[norm_edge(tv, v)] = VIRTUAL_SUBDIVIDED
        if host.has_edge(u, v):
            prov.setdefault(norm_edge(u, v), VIRTUAL_RETAINED)
    g = Graph(list(sk.vertices) + sub, prov)
    return SkeletonPlus(g, {e: prov[e] for e in g.edges}, tuple(sub), virtual_of, node)


# ---------------------------------------------------------------------------
# internal 3-connectivity
# ---------------------------------------------------------------------------


def _is_leaf_triangle(t: SPRTree, i: int) -> bool:
    n = t.nodes[i]
    return n.kind == "S" and len(n.vertices) == 3 and len(n.virtual_edges) == 1


def is_internally_3connected(g: Graph) -> bool:
    if g.n < 4 or not g.is_biconnected():
        return False
    t = spr_tree(g)
    rs = t.r_nodes()
    if len(rs) != 1:
        return False
    r = rs[0]
    for y in t.neighbors(r):
        if _is_leaf_triangle(t, y):
            continue
        if t.nodes[y].kind != "P":
            return False
        for z in t.neighbors(y):
            if z != r and not _is_leaf_triangle(t, z):
                return False
    return True


def is_internally_3connected_definitional(g: Graph) -> bool:
    """Reference check: contract every degree-2 vertex and test the base for 3-connectivity."""
    if g.n < 4 or not g.is_connected():
        return False
    if any(g.degree(v) < 2 for v in g.vertices):
        return False
    deg2 = {v for v in g.vertices if g.degree(v) == 2}
    base = nx.Graph()
    base.add_nodes_from(v for v in g.vertices if v not in deg2)
    for u, v in g.edges:
        if u in deg2 and v in deg2:
            return False
        if u not in deg2 and v not in deg2:
            base.add_edge(u, v)
    for tv in deg2:
        a, b = g.sorted_neighbors(tv)
        base.add_edge(a, b)
    return base.number_of_nodes() >= 4 and nx.node_connectivity(base) >= 3


def is_series_parallel(g: Graph) -> bool:
    """2-connected g without R-nodes (K2 counts as series-parallel)."""
    if g.n <= 2:
        return True
    return not spr_tree(g).r_nodes()


# ---------------------------------------------------------------------------
# split constructions
# ---------------------------------------------------------------------------


def split_at_2separator(g: Graph, s, s2, side) -> tuple[Graph, Graph]:
    x1 = set(side) | {s, s2}
    if s not in g or s2 not in g or s == s2:
        raise PreconditionError("separator vertices must be distinct vertices of g")
    x2 = (set(g.vertices) - x1) | {s, s2}
    inner1 = x1 - {s, s2}
    inner2 = x2 - {s, s2}
    if not inner1 or not inner2:
        raise PreconditionError("both sides of the separation must be nonempty")
    for u, v in g.edges:
        if (u in inner1 and v in inner2) or (u in inner2 and v in inner1):
            raise PreconditionError(f"edge {u}-{v} crosses the claimed separation")
    t1, t2 = fresh_ids(g.vertices, 2, prefix="t")
    g1 = g.subgraph(x1).with_edges([(s, t1), (t1, s2)])
    g2 = g.subgraph(x2).with_edges([(s, t2), (t2, s2)])
    return g1, g2


def spr_side_vertices(t: SPRTree, mu: int, nu: int) -> list:
    vs = set()
    for i in t.side(mu, nu):
        vs.update(t.nodes[i].vertices)
    return sort_vertices(vs)


def spr_side_graph(t: SPRTree, mu: int, nu: int, host: Graph, fresh: str | None = None) -> tuple[Graph, object]:
    """G'(T, mu, nu) and its fresh vertex."""
    vid = t.edge_between(mu, nu)
    s, s2 = t.nodes[mu].virtual_endpoints(vid)
    vs = spr_side_vertices(t, mu, nu)
    tv = fresh if fresh is not None else fresh_ids(host.vertices, 1, prefix="t")[0]
    return host.subgraph(vs).with_edges([(s, tv), (tv, s2)]), tv


def separator_of(t: SPRTree, mu: int, nu: int) -> tuple:
    return t.nodes[mu].virtual_endpoints(t.edge_between(mu, nu))
