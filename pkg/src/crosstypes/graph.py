"""Immutable simple graphs with deterministic ordering, plus edge-list I/O."""

from __future__ import annotations

import re
from pathlib import Path
from typing import Hashable, Iterable, Iterator

import networkx as nx

from .errors import GraphFormatError

Vertex = Hashable
Edge = tuple

_INT_RE = re.compile(r"^-?\d+$")


def vkey(v) -> tuple:
    """Total order on mixed int/str vertex ids."""
    if isinstance(v, bool):
        return (1, str(v))
    if isinstance(v, int):
        return (0, v)
    return (1, str(v))


def norm_edge(u, v) -> tuple:
    if u == v:
        raise GraphFormatError(f"self-loop at {u!r}")
    return (u, v) if vkey(u) <= vkey(v) else (v, u)


def ekey(e) -> tuple:
    return (vkey(e[0]), vkey(e[1]))


def sort_vertices(vs: Iterable) -> list:
    return sorted(vs, key=vkey)


def sort_edges(es: Iterable) -> list:
    return sorted(es, key=ekey)


def parse_vertex(token: str):
    return int(token) if _INT_RE.match(token) else token


def fresh_ids(taken: Iterable, count: int, prefix: str = "x") -> list:
    """`count` ids prefix0, prefix1, ... skipping any already in `taken`."""
    taken = set(taken)
    out = []
    i = 0
    while len(out) < count:
        cand = f"{prefix}{i}"
        if cand not in taken:
            out.append(cand)
        i += 1
    return out


class Graph:
    """Finite simple undirected graph.  Never mutated after construction."""

    __slots__ = ("_adj", "_vertices", "_edges", "_edge_set")

    def __init__(self, vertices: Iterable = (), edges: Iterable = ()):
        adj: dict = {}
        for v in vertices:
            adj.setdefault(v, set())
        es = set()
        for e in edges:
            u, v = e
            ne = norm_edge(u, v)
            es.add(ne)
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        self._vertices = tuple(sort_vertices(adj))
        self._edges = tuple(sort_edges(es))
        self._edge_set = frozenset(es)
        self._adj = {v: frozenset(adj[v]) for v in self._vertices}

    # basic queries

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def edges(self) -> tuple:
        return self._edges

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator:
        return iter(self._vertices)

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self._vertices == other._vertices
            and self._edge_set == other._edge_set
        )

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def neighbors(self, v) -> frozenset:
        return self._adj[v]

    def sorted_neighbors(self, v) -> list:
        return sort_vertices(self._adj[v])

    def degree(self, v) -> int:
        return len(self._adj[v])

    def has_edge(self, u, v) -> bool:
        return u in self._adj and v in self._adj[u]

    def edge(self, u, v) -> tuple:
        return norm_edge(u, v)

    def incident_edges(self, v) -> list:
        return [norm_edge(v, w) for w in self.sorted_neighbors(v)]

    # derived graphs

    def subgraph(self, vs: Iterable) -> Graph:
        keep = set(vs)
        return Graph(keep, (e for e in self._edges if e[0] in keep and e[1] in keep))

    def without_vertices(self, vs: Iterable) -> Graph:
        drop = set(vs)
        return self.subgraph(v for v in self._vertices if v not in drop)

    def with_edges(self, es: Iterable, vertices: Iterable = ()) -> Graph:
        return Graph(list(self._vertices) + list(vertices), list(self._edges) + list(es))

    def without_edges(self, es: Iterable) -> Graph:
        drop = {norm_edge(*e) for e in es}
        return Graph(self._vertices, (e for e in self._edges if e not in drop))

    def relabel(self, mapping: dict) -> Graph:
        f = lambda v: mapping.get(v, v)  # noqa: E731
        return Graph((f(v) for v in self._vertices), ((f(a), f(b)) for a, b in self._edges))

    def components(self) -> list[list]:
        seen = set()
        out = []
        for s in self._vertices:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            out.append(sort_vertices(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_biconnected(self) -> bool:
        """2-connected in the block sense: connected, no cutvertex, at least 3 vertices."""
        if self.n < 3 or not self.is_connected():
            return False
        return nx.is_biconnected(self.to_nx())

    # conversion

    def to_nx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self._vertices)
        g.add_edges_from(self._edges)
        return g

    @classmethod
    def from_nx(cls, g: nx.Graph) -> Graph:
        return cls(g.nodes(), g.edges())


# named graphs used across tests and the CLI


def complete_graph(n: int) -> Graph:
    return Graph(range(n), ((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle_graph(n: int) -> Graph:
    return Graph(range(n), ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(range(n), ((i, i + 1) for i in range(n - 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(range(a + b), ((i, a + j) for i in range(a) for j in range(b)))


# edge-list and graph6 I/O


def parse_edge_list(text: str) -> Graph:
    vertices = []
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) == 1:
            vertices.append(parse_vertex(toks[0]))
        elif len(toks) == 2:
            u, v = (parse_vertex(t) for t in toks)
            if u == v:
                raise GraphFormatError(f"line {lineno}: self-loop {raw.strip()!r}")
            edges.append((u, v))
        else:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {raw.strip()!r}")
    return Graph(vertices, edges)


def format_edge_list(g: Graph) -> str:
    lines = []
    touched = set()
    for u, v in g.edges:
        lines.append(f"{u} {v}")
        touched.update((u, v))
    lines.extend(str(v) for v in g.vertices if v not in touched)
    return "\n".join(lines) + "\n"


def parse_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    try:
        g = nx.from_graph6_bytes(data.encode("ascii"))
    except Exception as exc:  # networkx raises a mix of error types here
        raise GraphFormatError(f"bad graph6 string: {exc}") from exc
    return Graph.from_nx(g)


def load_graph(path: str | Path, fmt: str = "auto") -> Graph:
    text = Path(path).read_text()
    if fmt == "graph6" or (fmt == "auto" and (str(path).endswith(".g6") or text.startswith(">>graph6<<"))):
        return parse_graph6(text)
    return parse_edge_list(text)
