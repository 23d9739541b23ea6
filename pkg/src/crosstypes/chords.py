"""Chord descriptions: flagged (crossing edge, chord edge) tuples over a chordal completion."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from networkx.algorithms.approximation import treewidth_min_fill_in

from .crossings import check_pairing, classify_crossing, norm_pair, pair_key, planarize
from .errors import PreconditionError
from .graph import Graph, ekey, norm_edge, sort_edges
from .planarity import is_planar


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple  # tuple of frozensets
    tree_edges: tuple  # index pairs
    width: int


def min_fill_decomposition(g: Graph) -> TreeDecomposition:
    width, t = treewidth_min_fill_in(g.to_nx())
    nodes = sorted(t.nodes(), key=lambda b: sorted(map(repr, b)))
    idx = {b: i for i, b in enumerate(nodes)}
    edges = sorted((min(idx[a], idx[b]), max(idx[a], idx[b])) for a, b in t.edges())
    return TreeDecomposition(tuple(frozenset(b) for b in nodes), tuple(edges), width)


def chordal_completion(g: Graph, td: TreeDecomposition | None = None) -> Graph:
    td = td or min_fill_decomposition(g)
    es = set(g.edges)
    for bag in td.bags:
        vs = list(bag)
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                es.add(norm_edge(vs[i], vs[j]))
    return Graph(g.vertices, es)


@dataclass(frozen=True)
class ChordDescription:
    entries: frozenset  # (crossing edge, chord edge, flag)
    completion_fill: tuple = field(default=(), compare=False)
    width: int = field(default=-1, compare=False)

    def sorted_entries(self) -> list:
        return sorted(self.entries, key=lambda t: (ekey(t[1]), t[2], ekey(t[0])))

    def groups(self) -> dict:
        out: dict = {}
        for e, g, b in self.entries:
            out.setdefault((g, b), []).append(e)
        return out

    def crossing_pairs(self) -> list:
        """Crossing pairs of the description (groups of exactly two entries)."""
        out = []
        for es in self.groups().values():
            if len(es) == 2:
                out.append(norm_pair(*es))
        return sorted(set(out), key=pair_key)

    def pairs_per_chord(self) -> dict:
        out: dict = {}
        for (g, _), es in self.groups().items():
            out[g] = out.get(g, 0) + len(es) // 2
        return out


def _four_cycle_diagonals(g: Graph, e, f) -> list[tuple]:
    """Diagonals of the 4-cycles having e and f as opposite edges."""
    a, b = e
    c, d = f
    out = []
    # cycle a-b-c-d-a uses sides bc, da and has diagonals ac, bd
    if g.has_edge(b, c) and g.has_edge(d, a):
        out += [norm_edge(a, c), norm_edge(b, d)]
    # cycle a-b-d-c-a uses sides bd, ca and has diagonals ad, bc
    if g.has_edge(b, d) and g.has_edge(c, a):
        out += [norm_edge(a, d), norm_edge(b, c)]
    return out


def chord_description_of(g: Graph, pairs: Iterable, td: TreeDecomposition | None = None) -> ChordDescription:
    ps = check_pairing(g, pairs)
    td = td or min_fill_decomposition(g)
    comp = chordal_completion(g, td)
    load: dict = {}
    entries = set()
    for e, f in ps:
        diags = _four_cycle_diagonals(g, e, f)
        if not diags:
            raise PreconditionError(f"pair {e} x {f} lies on no 4-cycle of the graph")
        chords = sorted({c for c in diags if comp.has_edge(*c)}, key=ekey)
        if not chords:  # pragma: no cover - chordality guarantees a chord
            raise AssertionError("chordal completion misses both diagonals")
        chord = chords[0]
        flag = load.get(chord, 0)
        load[chord] = flag + 1
        entries.add((e, chord, flag))
        entries.add((f, chord, flag))
    fill = tuple(sort_edges(set(comp.edges) - set(g.edges)))
    return ChordDescription(frozenset(entries), fill, td.width)


def chord_description_violations(g: Graph, psi: ChordDescription, s: Iterable) -> list[str]:
    s = set(s)
    out = []
    for e, chord, b in psi.entries:
        if not g.has_edge(*e):
            out.append(f"crossing edge {e} is not an edge")
        if b not in (0, 1):
            out.append(f"flag {b} of ({e}, {chord}) is not 0 or 1")
    # Req 1
    groups = psi.groups()
    for (chord, b), es in sorted(groups.items(), key=lambda kv: (ekey(kv[0][0]), kv[0][1])):
        if len(es) != 2:
            out.append(f"Req1: chord {chord} flag {b} has {len(es)} chord-tied pairs, expected 2")
    # Req 2
    seen: dict = {}
    for e, chord, b in psi.entries:
        if e in seen:
            out.append(f"Req2: edge {e} is the crossing edge of more than one chord-tied pair")
        seen[e] = (chord, b)
    if out:
        return out
    pairs = []
    for (chord, _), (e, f) in groups.items():
        if set(e) & set(f):
            out.append(f"crossing pair {e}, {f} shares an endpoint")
            continue
        if chord not in _four_cycle_diagonals(g, e, f):
            out.append(f"{chord} is not a chord of a 4-cycle through {e} and {f}")
        pairs.append(norm_pair(e, f))
    if out:
        return out
    # Req 3
    if not is_planar(planarize(g, pairs)[0]):
        out.append("Req3: replacing the crossing pairs by 4-claws is not planar")
    # Req 4
    for p in sorted(pairs, key=pair_key):
        t = classify_crossing(g, *p)
        if t not in s:
            out.append(f"Req4: pair {p[0]} x {p[1]} has type {t.value} outside the type set")
    return out


def validate_chord_description(g: Graph, psi: ChordDescription, s: Iterable) -> bool:
    return not chord_description_violations(g, psi, s)


def treewidth_exact(g: Graph) -> int:
    """Exact treewidth by dynamic programming over vertex subsets (small graphs only)."""
    vs = list(g.vertices)
    n = len(vs)
    if n > 12:
        raise PreconditionError("exact treewidth is limited to 12 vertices")
    if n == 0:
        return -1
    nbr = [0] * n
    idx = {v: i for i, v in enumerate(vs)}
    for a, b in g.edges:
        nbr[idx[a]] |= 1 << idx[b]
        nbr[idx[b]] |= 1 << idx[a]

    def q(sset: int, v: int) -> int:
        # vertices outside sset + v reachable from v through sset
        seen = 1 << v
        stack = [v]
        reach = 0
        while stack:
            x = stack.pop()
            nb = nbr[x]
            while nb:
                low = nb & -nb
                y = low.bit_length() - 1
                nb ^= low
                if seen >> y & 1:
                    continue
                seen |= low
                if sset >> y & 1:
                    stack.append(y)
                else:
                    reach += 1
        return reach

    full = (1 << n) - 1
    tw = {0: -1}
    for size in range(1, n + 1):
        for sset in _subsets_of_size(n, size):
            best = n
            sub = sset
            while sub:
                low = sub & -sub
                v = low.bit_length() - 1
                sub ^= low
                rest = sset ^ low
                val = max(tw[rest], q(rest, v))
                if val < best:
                    best = val
            tw[sset] = best
    return tw[full]


def _subsets_of_size(n: int, k: int):
    from itertools import combinations

    for c in combinations(range(n), k):
        m = 0
        for i in c:
            m |= 1 << i
        yield m

