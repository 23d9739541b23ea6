import itertools

import networkx as nx
import pytest
from conftest import connected_corpus
from hypothesis import given, settings
from hypothesis import strategies as st

from crosstypes.embedding import PlanarEmbedding, enumerate_embeddings, faces_of, planar_embedding, rotation_freedom
from crosstypes.errors import GraphFormatError, PreconditionError
from crosstypes.graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    format_edge_list,
    parse_edge_list,
    parse_graph6,
    path_graph,
)
from crosstypes.planarity import density_screen, is_planar, kuratowski_witness, validate_kuratowski


@st.composite
def small_graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return Graph(range(n), chosen)


def test_edges_are_normalised_and_sorted():
    g = Graph([], [(2, 1), (0, 2), (1, 0)])
    assert g.edges == ((0, 1), (0, 2), (1, 2))
    assert g.n == 3 and g.m == 3
    assert g.has_edge(2, 0)


def test_edge_list_round_trip():
    g = complete_bipartite(2, 3)
    assert parse_edge_list(format_edge_list(g)).edges == g.edges


def test_edge_list_rejects_loops_and_junk():
    with pytest.raises(GraphFormatError):
        parse_edge_list("1 1\n")
    with pytest.raises(GraphFormatError):
        parse_edge_list("1 2 3\n")


def test_graph6_matches_networkx():
    g = parse_graph6(nx.to_graph6_bytes(nx.petersen_graph(), header=False).decode())
    assert g.n == 10 and g.m == 15


@pytest.mark.parametrize(
    "g, planar",
    [(complete_graph(4), True), (complete_graph(5), False), (complete_bipartite(3, 3), False), (cycle_graph(4), True)],
)
def test_is_planar(g, planar):
    assert is_planar(g) is planar


def test_kuratowski_k5_is_itself():
    w = kuratowski_witness(complete_graph(5))
    assert w.kind == "K5"
    assert len(w.branch_vertices) == 5 and len(w.paths) == 10
    assert all(len(p) == 2 for p in w.paths)


def test_kuratowski_subdivided_k33():
    g = complete_bipartite(3, 3).without_edges([(0, 3)]).with_edges([(0, "m"), ("m", 3)])
    w = kuratowski_witness(g)
    assert w.kind == "K33"
    assert sorted(len(p) for p in w.paths) == [2] * 8 + [3]
    assert validate_kuratowski(g, w)[0]


def test_kuratowski_absent_for_planar():
    assert kuratowski_witness(complete_graph(4)) is None


def test_kuratowski_presence_matches_planarity_on_corpus():
    for g in connected_corpus(6):
        w = kuratowski_witness(g)
        assert (w is None) == is_planar(g)
        if w is not None:
            assert validate_kuratowski(g, w)[0]


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_n=8))
def test_kuratowski_witness_property(g):
    w = kuratowski_witness(g)
    assert (w is None) == nx.check_planarity(g.to_nx())[0]
    if w is not None:
        ok, why = validate_kuratowski(g, w)
        assert ok, why


def test_density_screen():
    assert density_screen(complete_graph(7)) is False
    assert density_screen(complete_graph(6)) is True
    assert density_screen(cycle_graph(4)) is True


def test_embedding_counts():
    assert len(list(enumerate_embeddings(complete_graph(4)))) == 1
    assert len(list(enumerate_embeddings(cycle_graph(4)))) == 1
    bowtie = Graph([], [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    assert len(list(enumerate_embeddings(bowtie))) == 2


def test_face_walks():
    c4 = planar_embedding(cycle_graph(4))
    assert sorted(len(f) for f in faces_of(c4)) == [4, 4]
    assert sorted(len(f) for f in faces_of(planar_embedding(complete_graph(4)))) == [3, 3, 3, 3]
    cube = Graph.from_nx(nx.hypercube_graph(3))
    assert sorted(len(f) for f in faces_of(planar_embedding(cube))) == [4] * 6


def test_nonplanar_has_no_embedding():
    assert planar_embedding(complete_graph(5)) is None
    with pytest.raises(PreconditionError):
        list(enumerate_embeddings(complete_graph(5)))


def test_embeddings_are_distinct_and_valid_on_corpus():
    for g in connected_corpus(5):
        if not is_planar(g):
            continue
        embs = list(enumerate_embeddings(g))
        assert embs
        assert len({e.canonical_key() for e in embs}) == len(embs)
        for e in embs:
            assert e.is_valid_for(g) and e.euler_ok()


def _brute_embedding_count(g: Graph) -> int:
    """Rotation systems satisfying Euler, counted up to mirror image."""
    verts = list(g.vertices)
    options = []
    for v in verts:
        nb = sorted(g.neighbors(v))
        if len(nb) <= 2:
            options.append([tuple(nb)])
        else:
            options.append([(nb[0],) + p for p in itertools.permutations(nb[1:])])
    seen = set()
    for combo in itertools.product(*options):
        e = PlanarEmbedding(dict(zip(verts, combo)))
        if e.euler_ok():
            seen.add(e.canonical_key())
    return len(seen)


def test_embedding_enumeration_matches_rotation_brute_force():
    for g in connected_corpus(6, 3):
        if not is_planar(g) or rotation_freedom(g) > 2000:
            continue
        assert len(list(enumerate_embeddings(g))) == _brute_embedding_count(g), g.edges


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_n=7))
def test_euler_holds_for_every_embedding(g):
    if not g.is_connected() or not is_planar(g):
        return
    for e in enumerate_embeddings(g, limit=20):
        assert len(e.faces) == g.m - g.n + 2


def test_three_connected_planar_graphs_have_one_embedding():
    for G in (nx.octahedral_graph(), nx.icosahedral_graph(), nx.dodecahedral_graph(), nx.wheel_graph(7)):
        assert len(list(enumerate_embeddings(Graph.from_nx(G)))) == 1


def test_path_graph_is_tree():
    g = path_graph(4)
    assert g.m == 3 and g.is_connected() and not g.is_biconnected()
