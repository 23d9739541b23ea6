import itertools

import networkx as nx
import pytest
from conftest import connected_corpus
from hypothesis import given, settings
from hypothesis import strategies as st

from crosstypes.chords import (
    ChordDescription,
    chord_description_of,
    chord_description_violations,
    chordal_completion,
    min_fill_decomposition,
    treewidth_exact,
    validate_chord_description,
)
from crosstypes.crossings import TRACTABLE, CrossingType, extract_drawing, normalise_pairing, planarize, verify_drawing
from crosstypes.embedding import enumerate_embeddings
from crosstypes.errors import PreconditionError
from crosstypes.graph import Graph, complete_graph, cycle_graph
from crosstypes.solver import solve, tractable_pieces

FULL = frozenset({CrossingType.FULL})
K5 = complete_graph(5)


def test_k5_description():
    psi = chord_description_of(K5, (((0, 1), (2, 3)),))
    (a, b) = psi.sorted_entries()
    assert a[1] == b[1] and a[2] == b[2]
    assert {a[0], b[0]} == {(0, 1), (2, 3)}
    assert validate_chord_description(K5, psi, FULL)


def test_empty_pairing():
    psi = chord_description_of(cycle_graph(5), ())
    assert psi.entries == frozenset()
    assert validate_chord_description(cycle_graph(5), psi, FULL)


def test_k6_description():
    k6 = complete_graph(6)
    r = solve(k6, FULL)
    assert len(r.pairs) == 3
    psi = chord_description_of(k6, r.pairs)
    assert len(psi.entries) == 6
    assert max(psi.pairs_per_chord().values()) <= 2
    assert validate_chord_description(k6, psi, FULL)


def test_req1_violation():
    psi = chord_description_of(K5, (((0, 1), (2, 3)),))
    lone = ChordDescription(frozenset(psi.sorted_entries()[:1]))
    assert not validate_chord_description(K5, lone, FULL)
    assert any(v.startswith("Req1") for v in chord_description_violations(K5, lone, FULL))


def test_req3_violation():
    ps = normalise_pairing([((0, 1), (2, 3)), ((0, 2), (3, 4))])
    psi = chord_description_of(K5, ps)
    assert any(v.startswith("Req3") for v in chord_description_violations(K5, psi, FULL))


def test_req4_violation():
    psi = chord_description_of(K5, (((0, 1), (2, 3)),))
    assert any(v.startswith("Req4") for v in chord_description_violations(K5, psi, {CrossingType.BOWTIE}))


def test_pair_without_four_cycle_is_rejected():
    g = Graph([], [(0, 1), (2, 3), (1, 2)])  # a chair pair
    with pytest.raises(PreconditionError):
        chord_description_of(g, (((0, 1), (2, 3)),))


def test_min_fill_is_a_tree_decomposition():
    for g in connected_corpus(7, 2)[::5]:
        td = min_fill_decomposition(g)
        assert all(any(set(e) <= b for b in td.bags) for e in g.edges)
        t = nx.Graph(td.tree_edges)
        t.add_nodes_from(range(len(td.bags)))
        assert nx.is_tree(t)
        for v in g.vertices:
            holding = [i for i, b in enumerate(td.bags) if v in b]
            assert nx.is_connected(t.subgraph(holding))
        assert td.width >= treewidth_exact(g)


def test_exact_treewidth_against_networkx_bounds():
    for g in connected_corpus(6, 2):
        tw = treewidth_exact(g)
        # the first vertex of any elimination order sees at least the minimum degree
        assert tw >= min(dict(g.to_nx().degree()).values())
        assert tw <= nx.algorithms.approximation.treewidth_min_degree(g.to_nx())[0]
        assert tw <= nx.algorithms.approximation.treewidth_min_fill_in(g.to_nx())[0]
    assert treewidth_exact(complete_graph(6)) == 5
    assert treewidth_exact(cycle_graph(6)) == 2


@settings(max_examples=40, deadline=None)
@given(st.sets(st.sampled_from(list(itertools.combinations(range(7), 2))), min_size=1, max_size=18))
def test_completion_is_chordal_supergraph(edges):
    g = Graph(range(7), edges)
    h = chordal_completion(g)
    assert set(g.edges) <= set(h.edges)
    assert nx.is_chordal(h.to_nx())


def test_solver_yes_pieces_have_valid_descriptions():
    for g in connected_corpus(6, 4):
        for s in [FULL, TRACTABLE]:
            r = solve(g, s)
            if not r.yes:
                continue
            graphs = dict(tractable_pieces(g))
            for label, pairs in r.pieces:
                pg = graphs[label]
                psi = chord_description_of(pg, pairs)
                assert validate_chord_description(pg, psi, s)
                assert max(psi.pairs_per_chord().values(), default=0) <= 2
                # a valid description yields an S-restricted drawing from any embedding of its planarization
                ps = normalise_pairing(psi.crossing_pairs())
                emb = next(enumerate_embeddings(planarize(pg, ps)[0]))
                assert verify_drawing(extract_drawing(pg, ps, emb), s).ok
