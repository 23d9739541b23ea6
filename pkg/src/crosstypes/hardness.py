"""Fence gadgets, the 3-Partition reduction graph, witness drawings and path decompositions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable

import networkx as nx

from .crossings import CombinatorialDrawing, CrossingType, check_pairing, norm_pair
from .embedding import PlanarEmbedding
from .errors import InvalidInstance, MetadataMissing, PreconditionError, TooLarge
from .graph import Graph, norm_edge

DEFAULT_BUNDLE = 12
THREE_PARTITION_GUARD = 6
# width of instance_path_decomposition, independent of m and B
PATHWIDTH_W0 = 11

ROLE_TAGS = (
    "hub",
    "rim",
    "radian-fence-part",
    "divider-fence-part",
    "splitter-fence-part",
    "splitter-edge",
    "center",
)

# ---------------------------------------------------------------------------
# fences
# ---------------------------------------------------------------------------


class FenceVariant(Enum):
    ARROW = "arrow"
    CHAIR_EVEN = "chair-even"
    CHAIR_ODD = "chair-odd"
    X = "x"


# K5 edges other than the single edges uw2 and vw1, in bundle order
BUNDLED = (("u", "v"), ("u", "w1"), ("u", "w3"), ("v", "w2"), ("v", "w3"), ("w1", "w2"), ("w1", "w3"), ("w2", "w3"))
SINGLE = (("u", "w2"), ("v", "w1"))
DIRECT = {
    FenceVariant.ARROW: (("u", "v"), ("u", "w1")),
    FenceVariant.CHAIR_EVEN: (("u", "v"),),
    FenceVariant.CHAIR_ODD: (("u", "w1"),),
    FenceVariant.X: (),
}


@dataclass(frozen=True)
class FenceSpec:
    endpoints: tuple
    variant: FenceVariant = FenceVariant.ARROW
    bundle_width: int = DEFAULT_BUNDLE

    def __post_init__(self):
        u, v = self.endpoints
        if u == v:
            raise PreconditionError("fence endpoints must differ")
        if self.bundle_width < 1:
            raise PreconditionError("bundle width must be at least 1")
        if not isinstance(self.variant, FenceVariant):
            object.__setattr__(self, "variant", FenceVariant(self.variant))


@dataclass
class Fence:
    spec: FenceSpec
    names: dict  # "u", "v", "w1", "w2", "w3" -> vertex id
    bundles: dict  # bundled K5 edge (labels) -> list of midpoint ids
    single: tuple  # the two single edges
    direct: tuple  # direct edges re-added for the variant
    prefix: str

    @property
    def u(self):
        return self.names["u"]

    @property
    def v(self):
        return self.names["v"]

    @property
    def internal(self) -> list:
        out = [self.names["w1"], self.names["w2"], self.names["w3"]]
        for mids in self.bundles.values():
            out.extend(mids)
        return out

    @property
    def edges(self) -> list:
        out = list(self.single) + list(self.direct)
        for (a, b), mids in self.bundles.items():
            for m in mids:
                out.append(norm_edge(self.names[a], m))
                out.append(norm_edge(m, self.names[b]))
        return out

    @property
    def graph(self) -> Graph:
        return Graph([self.u, self.v] + self.internal, self.edges)

    def edge_roles(self) -> dict:
        out = {e: "single" for e in self.single}
        out.update({e: "direct" for e in self.direct})
        for i, ((a, b), mids) in enumerate(self.bundles.items()):
            for m in mids:
                out[norm_edge(self.names[a], m)] = f"bundle{i}"
                out[norm_edge(m, self.names[b])] = f"bundle{i}"
        return out

    def vertex_roles(self) -> dict:
        out = {self.names[k]: "hub" for k in ("u", "v", "w1", "w2", "w3")}
        for i, mids in enumerate(self.bundles.values()):
            for m in mids:
                out[m] = f"bundle{i}"
        return out

    @property
    def crossing_pair(self) -> tuple:
        return norm_pair(*self.single)


def build_fence(spec: FenceSpec, prefix: str | None = None) -> Fence:
    u, v = spec.endpoints
    prefix = prefix if prefix is not None else f"fence:{u}:{v}"
    names = {"u": u, "v": v, "w1": f"{prefix}:w1", "w2": f"{prefix}:w2", "w3": f"{prefix}:w3"}
    bundles = {}
    for i, e in enumerate(BUNDLED):
        bundles[e] = [f"{prefix}:bundle{i}:mid{j}" for j in range(1, spec.bundle_width + 1)]
    single = tuple(norm_edge(names[a], names[b]) for a, b in SINGLE)
    direct = tuple(norm_edge(names[a], names[b]) for a, b in DIRECT[spec.variant])
    return Fence(spec, names, bundles, single, direct, prefix)


def fence_counts(variant: FenceVariant, bundle_width: int = DEFAULT_BUNDLE) -> tuple[int, int]:
    """Closed-form (vertex count, edge count) of a fence."""
    return 5 + 8 * bundle_width, 2 + 16 * bundle_width + len(DIRECT[FenceVariant(variant)])


def fence_soundness_bound(l: int) -> tuple[Fraction, bool]:
    """Share of the fence's Kuratowski subdivisions that crossings avoiding a single edge can resolve."""
    if l < 1:
        raise PreconditionError("bundle width must be at least 1")
    r = Fraction(10 * l + 1, l * l)
    return r, r < 1


# ---------------------------------------------------------------------------
# 3-Partition instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThreePartitionInstance:
    sizes: tuple
    bound: int

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(x) for x in self.sizes))
        object.__setattr__(self, "bound", int(self.bound))

    @property
    def m(self) -> int:
        return len(self.sizes) // 3

    def problems(self, parity: bool = True) -> list[str]:
        out = []
        if len(self.sizes) % 3 or not self.sizes:
            out.append(f"{len(self.sizes)} sizes is not a positive multiple of 3")
        if any(x <= 0 for x in self.sizes):
            out.append("sizes must be positive")
        if self.bound <= 0:
            out.append("bound must be positive")
        if sum(self.sizes) != self.m * self.bound:
            out.append(f"sizes sum to {sum(self.sizes)}, not m*B = {self.m * self.bound}")
        if self.m < 3:
            out.append(f"m = {self.m} is below 3")
        if parity:
            if self.m % 2:
                out.append(f"m = {self.m} is odd")
            if self.bound % 2:
                out.append(f"B = {self.bound} is odd")
        return out

    def validate(self, parity: bool = True) -> None:
        bad = self.problems(parity)
        if bad:
            raise InvalidInstance("; ".join(bad))

    def check_partition(self, partition: Iterable) -> list[tuple]:
        """Normalise a partition given as index triples; raise InvalidInstance if it fails."""
        triples = [tuple(int(i) for i in t) for t in partition]
        used = sorted(i for t in triples for i in t)
        if used != list(range(len(self.sizes))):
            raise InvalidInstance("partition does not use every element exactly once")
        for t in triples:
            if len(t) != 3:
                raise InvalidInstance(f"{t} is not a triple")
            if sum(self.sizes[i] for i in t) != self.bound:
                raise InvalidInstance(f"triple {t} sums to {sum(self.sizes[i] for i in t)}, not {self.bound}")
        if len(triples) != self.m:
            raise InvalidInstance("wrong number of triples")
        return triples


def partition_from_values(inst: ThreePartitionInstance, triples: Iterable) -> list[tuple]:
    """Map triples of sizes to triples of element indices (first unused match wins)."""
    free = list(range(len(inst.sizes)))
    out = []
    for t in triples:
        idx = []
        for val in t:
            hit = next((i for i in free if inst.sizes[i] == val), None)
            if hit is None:
                raise InvalidInstance(f"no unused element of size {val}")
            free.remove(hit)
            idx.append(hit)
        out.append(tuple(idx))
    return out


def solve_3partition(inst: ThreePartitionInstance, guard: int = THREE_PARTITION_GUARD) -> list[tuple] | None:
    """Exhaustive search for a satisfying partition (element index triples)."""
    if inst.m > guard:
        raise TooLarge(f"m = {inst.m} exceeds the brute-force guard {guard}")
    n = len(inst.sizes)
    if n % 3 or sum(inst.sizes) != inst.m * inst.bound:
        return None
    sizes = inst.sizes
    used = [False] * n

    def rec() -> list | None:
        first = next((i for i in range(n) if not used[i]), None)
        if first is None:
            return []
        used[first] = True
        rest = [i for i in range(first + 1, n) if not used[i]]
        for j, k in combinations(rest, 2):
            if sizes[first] + sizes[j] + sizes[k] != inst.bound:
                continue
            used[j] = used[k] = True
            tail = rec()
            if tail is not None:
                return [(first, j, k)] + tail
            used[j] = used[k] = False
        used[first] = False
        return None

    return rec()


# ---------------------------------------------------------------------------
# the reduction graph
# ---------------------------------------------------------------------------

VARIANTS = (CrossingType.ARROW, CrossingType.CHAIR, CrossingType.X)


def _variant(v) -> CrossingType:
    t = v if isinstance(v, CrossingType) else CrossingType(str(v).lower())
    if t not in VARIANTS:
        raise PreconditionError(f"no hardness construction for {t.value}; the type is tractable")
    return t


@dataclass
class FenceRecord:
    kind: str  # radian, divider, splitter
    label: str
    fence: Fence


@dataclass
class HardInstance:
    graph: Graph
    instance: ThreePartitionInstance
    variant: CrossingType
    bundle_width: int
    fences: list
    transmitter: list  # rim vertices in order
    collector: list
    dividers: list  # per divider the vertex path
    splitters: list  # per element (center, [leaves])
    vertex_roles: dict
    edge_roles: dict
    details: dict = field(default_factory=dict)

    @property
    def counts(self) -> dict:
        kinds: dict = {}
        for f in self.fences:
            kinds[f.kind] = kinds.get(f.kind, 0) + 1
        return {
            "vertices": self.graph.n,
            "edges": self.graph.m,
            "fences": len(self.fences),
            "radian_fences": kinds.get("radian", 0),
            "divider_fences": kinds.get("divider", 0),
            "splitter_fences": kinds.get("splitter", 0),
            "transmitter_rim": len(self.transmitter),
            "collector_rim": len(self.collector),
            "splitter_edges": sum(1 + len(leaves) for _, leaves in self.splitters),
        }

    def roles_tsv(self) -> str:
        lines = ["kind\tid\trole\tdetail"]
        for v in self.graph.vertices:
            lines.append(f"vertex\t{v}\t{self.vertex_roles[v]}\t{self.details.get(v, '')}")
        for e in self.graph.edges:
            lines.append(f"edge\t{e[0]} {e[1]}\t{self.edge_roles[e]}\t{self.details.get(e, '')}")
        return "\n".join(lines) + "\n"


def build_hard_instance(
    inst: ThreePartitionInstance,
    variant,
    *,
    bundle_width: int = DEFAULT_BUNDLE,
    parity_waiver: bool = False,
) -> HardInstance:
    variant = _variant(variant)
    inst.validate(parity=not parity_waiver)
    m, b = inst.m, inst.bound
    tr = [f"T{k}" for k in range(1, 3 * m + 1)]
    co = [f"C{j}" for j in range(1, b * m + 1)]
    vroles: dict = {"T": "center", "C": "center"}
    eroles: dict = {}
    details: dict = {"T": "transmitter", "C": "collector"}
    fences: list = []
    plain = {
        CrossingType.ARROW: FenceVariant.ARROW,
        CrossingType.CHAIR: FenceVariant.CHAIR_EVEN,
        CrossingType.X: FenceVariant.X,
    }[variant]

    def add_fence(kind, label, u, v, fv):
        f = build_fence(FenceSpec((u, v), fv, bundle_width))
        fences.append(FenceRecord(kind, label, f))
        part = f"{kind}-fence-part"
        for x in f.internal:
            vroles[x] = part
            details[x] = label
        for e, r in f.edge_roles().items():
            eroles[e] = part
            details[e] = f"{label} {r}"
        for x in (u, v):
            vroles.setdefault(x, "hub")

    def radian_variant(index: int) -> FenceVariant:
        if variant is not CrossingType.CHAIR:
            return plain
        return FenceVariant.CHAIR_EVEN if index % 2 == 0 else FenceVariant.CHAIR_ODD

    for center, rim, name in (("T", tr, "transmitter"), ("C", co, "collector")):
        for i, r in enumerate(rim, start=1):
            vroles[r] = "rim"
            details[r] = f"{name} rim {i}"
            add_fence("radian", f"radian:{center}:{r}", center, r, radian_variant(i))
            e = norm_edge(r, rim[i % len(rim)])
            eroles[e] = "rim"
            details[e] = f"{name} rim edge {i}"
    dividers = []
    for i in range(1, m + 1):
        path = [tr[3 * i - 1], f"D{i}a", f"D{i}b", co[b * i - 1]]
        for x in path[1:3]:
            vroles[x] = "hub"
            details[x] = f"divider {i}"
        for a, c in zip(path, path[1:]):
            add_fence("divider", f"divider:{i}:{a}:{c}", a, c, plain)
        dividers.append(path)
    splitters = []
    for k, size in enumerate(inst.sizes, start=1):
        q = f"Q{k}"
        leaves = [f"Q{k}L{j}" for j in range(1, size + 1)]
        vroles[q] = "hub"
        details[q] = f"splitter {k} center (size {size})"
        for leaf in leaves:
            vroles[leaf] = "hub"
            details[leaf] = f"splitter {k} leaf"
            add_fence("splitter", f"splitter:{k}:{leaf}", q, leaf, plain)
            e = norm_edge(leaf, "C")
            eroles[e] = "splitter-edge"
            details[e] = f"splitter {k} to collector"
        e = norm_edge(q, "T")
        eroles[e] = "splitter-edge"
        details[e] = f"splitter {k} to transmitter"
        splitters.append((q, leaves))
    g = Graph(vroles.keys(), eroles.keys())
    return HardInstance(g, inst, variant, bundle_width, fences, tr, co, dividers, splitters, vroles, eroles, details)


# ---------------------------------------------------------------------------
# witness drawing
# ---------------------------------------------------------------------------

_OCTAHEDRON = None


def _octahedron_rotation() -> dict:
    """Rotation of the fence planarization: poles x and w3, equator u, v, w2, w1."""
    global _OCTAHEDRON
    if _OCTAHEDRON is None:
        h = nx.Graph()
        eq = ["u", "v", "w2", "w1"]
        for i in range(4):
            h.add_edge(eq[i], eq[(i + 1) % 4])
            h.add_edge("x", eq[i])
            h.add_edge("w3", eq[i])
        _, emb = nx.check_planarity(h)
        _OCTAHEDRON = {a: list(emb.neighbors_cw_order(a)) for a in h}
    return {a: list(r) for a, r in _OCTAHEDRON.items()}


ATTACH = object()  # placeholder neighbour standing for the rest of the graph


def _fence_rotation(f: Fence, xid, mirror: bool = False) -> dict:
    """Planarization rotation of one fence, with ATTACH in the face (u, v, w3)."""
    oct_rot = _octahedron_rotation()
    if mirror:
        oct_rot = {a: r[::-1] for a, r in oct_rot.items()}
    name = dict(f.names)
    name["x"] = xid
    direct = {frozenset(e) for e in f.direct}
    strands: dict = {}
    for (a, b), mids in f.bundles.items():
        seq = list(mids)
        if frozenset((name[a], name[b])) in direct:
            # place the direct edge on the side of the bundle facing the crossing
            ra = oct_rot[a]
            i = ra.index(b)
            if ra[(i + 1) % 4] == "x":
                seq = seq + [None]
            else:
                seq = [None] + seq
        strands[(a, b)] = seq

    def expand(a, b) -> list:
        if (a, b) in strands:
            seq = strands[(a, b)]
            return [name[b] if s is None else s for s in seq]
        if (b, a) in strands:
            seq = strands[(b, a)][::-1]
            return [name[b] if s is None else s for s in seq]
        return [name[b]]

    rot: dict = {}
    for a, r in oct_rot.items():
        out = []
        for b in r:
            out.extend(expand(a, b))
        rot[name[a]] = out
    # ATTACH sits between v and w3 at u, and between u and w3 at v
    for a, other in (("u", "v"), ("v", "u")):
        r = oct_rot[a]
        i = r.index(other)
        j = r.index("w3")
        lst = rot[name[a]]
        if (i + 1) % 4 == j:
            pos = max(k for k, y in enumerate(lst) if _strand_of(f, name, y, a, other))
            lst.insert(pos + 1, ATTACH)
        else:
            pos = min(k for k, y in enumerate(lst) if _strand_of(f, name, y, a, other))
            lst.insert(pos, ATTACH)
    for (a, b), mids in f.bundles.items():
        for mnode in mids:
            rot[mnode] = [name[a], name[b]]
    return rot


def _strand_of(f: Fence, name: dict, y, a, b) -> bool:
    """Whether neighbour y of name[a] belongs to the a-b strand group."""
    if y == name[b]:
        return True
    mids = f.bundles.get((a, b)) or f.bundles.get((b, a)) or []
    return y in set(mids)


def _polar_positions(hi: HardInstance, partition: list) -> tuple[dict, dict, dict]:
    """Skeleton positions (r, theta), crossing ids, pairs and splitter assignment."""
    m, b = hi.instance.m, hi.instance.bound
    tau = 2 * math.pi
    pos: dict = {"T": (0.0, 0.0)}
    for k, t in enumerate(hi.transmitter, start=1):
        pos[t] = (1.0, tau * (k % (3 * m)) / (3 * m))
    for j, c in enumerate(hi.collector, start=1):
        pos[c] = (4.0, tau * (j % (b * m)) / (b * m))
    for i, path in enumerate(hi.dividers, start=1):
        ang = tau * (i % m) / m
        pos[path[1]] = (2.0, ang)
        pos[path[2]] = (3.0, ang)
    tr, co = hi.transmitter, hi.collector
    cross: dict = {}
    xpos: dict = {}
    for i, triple in enumerate(partition, start=1):
        tslot = 3 * (i - 1)
        cslot = b * (i - 1)
        for t, elem in enumerate(triple):
            q, leaves = hi.splitters[elem]
            k = tslot + t  # rim edge between T_k and T_{k+1} (T_0 is T_{3m})
            a, c = tr[k - 1], tr[k % (3 * m)]
            phi = tau * (k + 0.5) / (3 * m)
            pos[q] = (2.0, phi)
            p = norm_pair(norm_edge(q, "T"), norm_edge(a, c))
            x = f"xT{k if k else 3 * m}"
            cross[p] = x
            xpos[x] = ((1.0, phi), "T", q, a, c)
            for leaf in leaves:
                j = cslot
                cslot += 1
                a2, c2 = co[j - 1], co[j % (b * m)]
                psi = tau * (j + 0.5) / (b * m)
                pos[leaf] = (3.0, psi)
                p = norm_pair(norm_edge(leaf, "C"), norm_edge(a2, c2))
                x = f"xC{j if j else b * m}"
                cross[p] = x
                xpos[x] = ((4.0, psi), "C", leaf, a2, c2)
    return pos, cross, xpos


def _direction(pa, pb) -> float:
    ra, ta = pa
    rb, tb = pb
    if ra == 0.0:
        return tb
    if rb == 0.0:
        return ta + math.pi
    if rb == math.inf:
        return ta
    dt = (tb - ta + math.pi) % (2 * math.pi) - math.pi
    return ta + math.atan2(ra * dt, rb - ra)


def _skeleton_rotation(hi: HardInstance, partition: list):
    pos, cross, xpos = _polar_positions(hi, partition)
    pos = dict(pos)
    pos["C"] = (math.inf, 0.0)
    adj: dict = {v: set() for v in pos}
    crossed = {e for p in cross for e in p}
    for f in hi.fences:
        adj[f.fence.u].add(f.fence.v)
        adj[f.fence.v].add(f.fence.u)
    for e, role in hi.edge_roles.items():
        if role in ("rim", "splitter-edge") and e not in crossed:
            adj[e[0]].add(e[1])
            adj[e[1]].add(e[0])
    for x, (p, center, far, a, c) in xpos.items():
        pos[x] = p
        adj[x] = {center, far, a, c}
        for y in (center, far, a, c):
            adj[y].add(x)
    rot = {}
    for v, nbrs in adj.items():
        if v == "C":
            # the collector centre sits at infinity, which reverses its orientation
            rot[v] = sorted(nbrs, key=lambda w: -pos[w][1])
        else:
            rot[v] = sorted(nbrs, key=lambda w: _direction(pos[v], pos[w]) % (2 * math.pi))
    return rot, cross


def build_witness_drawing(
    hi: HardInstance,
    partition: Iterable,
    *,
    mirror_fences: bool = False,
    outer_vertex=None,
) -> CombinatorialDrawing:
    if not isinstance(hi, HardInstance):
        raise MetadataMissing("witness drawings need the metadata of build_hard_instance")
    triples = hi.instance.check_partition(partition)
    rot, cross = _skeleton_rotation(hi, triples)
    for rec in hi.fences:
        f = rec.fence
        xid = f"{f.prefix}:x"
        cross[f.crossing_pair] = xid
        local = _fence_rotation(f, xid, mirror_fences)
        for a, b in ((f.u, f.v), (f.v, f.u)):
            lr = local.pop(a)
            i = lr.index(ATTACH)
            ins = lr[i + 1:] + lr[:i]
            r = rot[a]
            j = r.index(b)
            rot[a] = r[:j] + ins + r[j + 1:]
        rot.update(local)
    emb = PlanarEmbedding(rot)
    if not emb.euler_ok():  # pragma: no cover - construction invariant
        raise AssertionError("witness rotation system is not planar")
    pairs = check_pairing(hi.graph, cross.keys())
    ov = outer_vertex if outer_vertex is not None else hi.dividers[0][1]
    outer = emb.faces_at(ov)[0]
    return CombinatorialDrawing(hi.graph, pairs, {p: cross[p] for p in pairs}, emb.with_outer(outer))


# ---------------------------------------------------------------------------
# path decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


@dataclass(frozen=True)
class PathDecompositionCheck:
    ok: bool
    width: int | None
    violation: str | None


def validate_path_decomposition(g: Graph, p: PathDecomposition) -> PathDecompositionCheck:
    bags = [set(b) for b in p.bags]
    where: dict = {}
    for i, bag in enumerate(bags):
        for v in bag:
            if v not in g:
                return PathDecompositionCheck(False, None, f"bag {i} contains non-vertex {v!r}")
            where.setdefault(v, []).append(i)
    for v in g.vertices:
        if v not in where:
            return PathDecompositionCheck(False, None, f"vertex {v!r} is in no bag")
    for e in g.edges:
        a, b = e
        if not set(where[a]) & set(where[b]):
            return PathDecompositionCheck(False, None, f"edge {a!r}-{b!r} is in no bag")
    for v in g.vertices:
        idx = where[v]
        if idx[-1] - idx[0] + 1 != len(idx):
            return PathDecompositionCheck(False, None, f"bags containing {v!r} are not contiguous")
    return PathDecompositionCheck(True, p.width, None)


def instance_path_decomposition(hi) -> PathDecomposition:
    """Sweep both rims sector by sector with the centres and the two cut rim vertices in every bag."""
    if not isinstance(hi, HardInstance):
        raise MetadataMissing("path decompositions need the metadata of build_hard_instance")
    m, b = hi.instance.m, hi.instance.bound
    tr, co = hi.transmitter, hi.collector
    anchors = {"T", "C", tr[-1], co[-1]}
    skeleton: list = []
    tf, cf = tr[-1], co[-1]
    for i in range(1, m + 1):
        for k in range(3 * (i - 1), 3 * i):
            skeleton.append(anchors | {tf, tr[k], cf})
            tf = tr[k]
        for j in range(b * (i - 1), b * i):
            skeleton.append(anchors | {tf, cf, co[j]})
            cf = co[j]
        _, da, db, _ = hi.dividers[i - 1]
        skeleton.append(anchors | {tf, cf, da})
        skeleton.append(anchors | {tf, cf, da, db})
    for q, leaves in hi.splitters:
        for leaf in leaves:
            skeleton.append(anchors | {q, leaf})
    pending: dict = {}
    for rec in hi.fences:
        f = rec.fence
        host = next(i for i, bag in enumerate(skeleton) if f.u in bag and f.v in bag)
        pending.setdefault(host, []).append(f)
    bags: list = []
    for i, bag in enumerate(skeleton):
        bags.append(frozenset(bag))
        for f in pending.get(i, []):
            base = set(bag) | {f.names["w1"], f.names["w2"], f.names["w3"]}
            bags.append(frozenset(base))
            for mids in f.bundles.values():
                for mid in mids:
                    bags.append(frozenset(base | {mid}))
    return PathDecomposition(tuple(bags))


__all__ = [
    "DEFAULT_BUNDLE",
    "Fence",
    "FenceSpec",
    "FenceVariant",
    "HardInstance",
    "PATHWIDTH_W0",
    "PathDecomposition",
    "PathDecompositionCheck",
    "ROLE_TAGS",
    "ThreePartitionInstance",
    "build_fence",
    "build_hard_instance",
    "build_witness_drawing",
    "fence_counts",
    "fence_soundness_bound",
    "instance_path_decomposition",
    "partition_from_values",
    "solve_3partition",
    "validate_path_decomposition",
]
