"""Planarity testing, Kuratowski subdivisions and the 4n-8 density screen."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .errors import PreconditionError
from .graph import Graph, norm_edge, sort_vertices


def is_planar(g: Graph) -> bool:
    return nx.check_planarity(g.to_nx())[0]


def density_screen(g: Graph) -> bool:
    """False means g has more than 4n-8 edges and so cannot be 1-planar."""
    if g.n < 3:
        raise PreconditionError("the 4n-8 bound needs at least 3 vertices")
    return g.m <= 4 * g.n - 8


@dataclass(frozen=True)
class KuratowskiWitness:
    kind: str  # "K5" or "K33"
    branch_vertices: tuple
    paths: tuple  # vertex sequences between branch vertices

    def path_edges(self, i: int) -> list[tuple]:
        p = self.paths[i]
        return [norm_edge(a, b) for a, b in zip(p, p[1:])]

    def independent_path_pairs(self) -> list[tuple[int, int]]:
        """Index pairs of paths whose end vertices are disjoint."""
        out = []
        for i, j in combinations(range(len(self.paths)), 2):
            if not {self.paths[i][0], self.paths[i][-1]} & {self.paths[j][0], self.paths[j][-1]}:
                out.append((i, j))
        return out


def _trace_paths(sub: nx.Graph, branch: set) -> list[tuple]:
    paths = []
    seen_edges = set()
    for b in sort_vertices(branch):
        for w in sort_vertices(sub[b]):
            if norm_edge(b, w) in seen_edges:
                continue
            path = [b, w]
            seen_edges.add(norm_edge(b, w))
            while path[-1] not in branch:
                cur = path[-1]
                nxt = [x for x in sub[cur] if x != path[-2]]
                path.append(nxt[0])
                seen_edges.add(norm_edge(cur, nxt[0]))
            paths.append(tuple(path))
    return paths


def kuratowski_witness(g: Graph) -> KuratowskiWitness | None:
    planar, cert = nx.check_planarity(g.to_nx(), counterexample=True)
    if planar:
        return None
    sub = nx.Graph(cert.edges())
    branch = {v for v in sub if sub.degree(v) >= 3}
    kind = "K5" if len(branch) == 5 else "K33"
    paths = _trace_paths(sub, branch)
    w = KuratowskiWitness(kind, tuple(sort_vertices(branch)), tuple(paths))
    ok, why = validate_kuratowski(g, w)
    if not ok:  # pragma: no cover - would mean networkx returned a non-minimal certificate
        raise AssertionError(why)
    return w


def validate_kuratowski(g: Graph, w: KuratowskiWitness) -> tuple[bool, str]:
    """Independent check that w is a K5 / K3,3 subdivision inside g."""
    branch = list(w.branch_vertices)
    if len(set(branch)) != len(branch):
        return False, "repeated branch vertex"
    if w.kind == "K5":
        if len(branch) != 5 or len(w.paths) != 10:
            return False, "K5 needs 5 branch vertices and 10 paths"
    elif w.kind == "K33":
        if len(branch) != 6 or len(w.paths) != 9:
            return False, "K3,3 needs 6 branch vertices and 9 paths"
    else:
        return False, f"unknown kind {w.kind}"
    bset = set(branch)
    inner_seen: set = set()
    ends = []
    for p in w.paths:
        if len(p) < 2 or p[0] not in bset or p[-1] not in bset or p[0] == p[-1]:
            return False, f"bad path ends {p}"
        for a, b in zip(p, p[1:]):
            if not g.has_edge(a, b):
                return False, f"path edge {a}-{b} missing from host"
        inner = p[1:-1]
        if len(set(inner)) != len(inner) or set(inner) & bset or set(inner) & inner_seen:
            return False, f"path {p} not internally disjoint"
        inner_seen.update(inner)
        ends.append(frozenset((p[0], p[-1])))
    if len(set(ends)) != len(ends):
        return False, "two paths join the same branch pair"
    if w.kind == "K5":
        return (set(ends) == {frozenset(c) for c in combinations(branch, 2)}), "K5 pattern"
    # K3,3: branch-adjacency must be complete bipartite 3+3
    adj = {b: set() for b in branch}
    for e in ends:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    side = {branch[0]}
    other = set(adj[branch[0]])
    if len(other) != 3:
        return False, "K3,3 degree"
    for o in other:
        side |= adj[o]
    if len(side) != 3 or side & other:
        return False, "K3,3 bipartition"
    for a in side:
        if adj[a] != other:
            return False, "K3,3 incomplete"
    return True, "K33 pattern"


def planar_rotation(g: Graph) -> dict | None:
    """Rotation system (v -> list of neighbours) of some planar embedding, or None."""
    planar, emb = nx.check_planarity(g.to_nx())
    if not planar:
        return None
    return {v: list(emb.neighbors_cw_order(v)) for v in g.vertices}

