import itertools
from pathlib import Path

import pytest
from conftest import PANEL, connected_corpus
from hypothesis import given, settings
from hypothesis import strategies as st

from crosstypes.crossings import (
    ALL_TYPES,
    TRACTABLE,
    CrossingType,
    detect_b_configs,
    detect_w_configs,
    drawing_from_json,
    pair_admissible,
    verify_drawing,
)
from crosstypes.errors import BudgetExceeded, PreconditionError, TooLarge
from crosstypes.graph import Graph, complete_bipartite, complete_graph, cycle_graph, path_graph
from crosstypes.solver import (
    oracle_enumerate,
    oracle_geom,
    solve,
    solve_geom,
    solve_geom_i3c,
    solve_i3c,
    witness_ok,
)

FIXTURES = Path(__file__).parent / "fixtures"
FULL = frozenset({CrossingType.FULL})
X = frozenset({CrossingType.X})
K5, K6, K7 = complete_graph(5), complete_graph(6), complete_graph(7)


def test_solve_i3c_examples():
    r = solve_i3c(cycle_graph(4), X)
    assert r.yes and r.pairs == ()
    r = solve_i3c(K5, FULL)
    assert r.yes and len(r.pairs) == 1 and witness_ok(r, FULL)
    assert solve_i3c(K5, X).decision == "NO"


def test_solve_examples():
    for s in PANEL:
        assert solve(cycle_graph(6), s).yes
        assert solve(K7, s).decision == "NO"
    r = solve(K6, FULL)
    assert r.yes and witness_ok(r, FULL)


def test_oracle_examples():
    assert oracle_enumerate(cycle_graph(4), X) == "YES"
    assert oracle_enumerate(K5, FULL) == "YES"
    # every pair of disjoint edges of K3,3 has exactly two side edges, so no X crossing exists
    assert oracle_enumerate(complete_bipartite(3, 3), X) == "NO"
    assert oracle_enumerate(complete_bipartite(3, 3), {CrossingType.BOWTIE}) == "YES"


def test_k5_has_exactly_15_admissible_pairs():
    # hand count: each of the 15 pairs of disjoint edges is a full crossing, and one suffices
    disjoint = [(e, f) for e, f in itertools.combinations(K5.edges, 2) if not set(e) & set(f)]
    assert len(disjoint) == 15
    assert all(pair_admissible(K5, e, f, FULL) for e, f in disjoint)


def test_oracle_guard():
    with pytest.raises(TooLarge):
        oracle_enumerate(complete_graph(8), FULL)


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        solve(K6, FULL, budget=2)


def test_geometric_examples():
    assert solve_geom_i3c(complete_graph(4), 0, ALL_TYPES).yes
    r = solve_geom_i3c(K5, None, FULL)
    assert r.yes and witness_ok(r, FULL, True)
    assert not detect_b_configs(r.witness) and not detect_w_configs(r.witness)
    assert solve_geom(path_graph(5), X).yes
    assert solve_geom(K7, ALL_TYPES).decision == "NO"


def test_two_k5_blocks_sharing_a_cutvertex():
    edges = list(K5.edges) + [(a + 4, b + 4) for a, b in K5.edges]
    g = Graph([], edges)
    assert g.n == 9
    r = solve_geom(g, FULL)
    assert r.yes and witness_ok(r, FULL, True)


def test_w_configuration_drawing_is_not_a_geometric_witness():
    d = drawing_from_json((FIXTURES / "w_config.json").read_text())
    assert detect_w_configs(d)
    r = solve_geom_i3c(d.host, None, ALL_TYPES)
    assert r.yes and not detect_w_configs(r.witness) and not detect_b_configs(r.witness)


def test_oracle_geom_fixtures():
    assert all(oracle_geom(cycle_graph(4), o, X) == "YES" for o in range(4))
    assert oracle_geom(K5, None, FULL) == "YES"
    # the minimal B host is planar, so the oracle avoids the crossing altogether
    b_host = Graph([], [(0, 1), (0, 2), (1, 3)])
    assert [oracle_geom(b_host, o, ALL_TYPES) for o in (None, 0, 1, 2, 3)] == ["YES"] * 5
    # K5 needs a full crossing whichever vertex must be outside
    assert [oracle_geom(K5, o, FULL) for o in (None, 0, 1, 2, 3, 4)] == ["YES"] * 6
    assert [oracle_geom(K5, o, {CrossingType.ALMOST_FULL}) for o in (None, 0, 4)] == ["NO"] * 3


def test_monotone_in_the_type_set():
    subsets = [frozenset(c) for k in range(1, 7) for c in itertools.combinations(list(CrossingType), k)]
    for g in connected_corpus(6, 5)[::7]:
        yes = {s for s in subsets if solve(g, s, witness=False).yes}
        for a in yes:
            assert all(b in yes for b in subsets if a <= b), g.edges


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(connected_corpus(6, 4)), st.sampled_from(PANEL))
def test_geometric_implies_topological(g, s):
    if solve_geom(g, s, witness=False).yes:
        assert solve(g, s, witness=False).yes


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(connected_corpus(6, 4)), st.sampled_from(PANEL))
def test_witnesses_are_sound(g, s):
    r = solve(g, s)
    if r.yes:
        assert verify_drawing(r.witness, s).ok
    rg = solve_geom(g, s)
    if rg.yes:
        assert witness_ok(rg, s, True)


def test_sequential_runs_are_identical():
    for g in (K5, K6, complete_bipartite(3, 3)):
        for s in (FULL, TRACTABLE, ALL_TYPES):
            a, b = solve(g, s), solve(g, s)
            assert a.decision == b.decision and a.pairs == b.pairs
            if a.yes:
                assert a.witness.embedding.rotation == b.witness.embedding.rotation


def test_parallel_matches_sequential():
    g = Graph([], list(K5.edges) + [(a + 4, b + 4) for a, b in K5.edges])
    a = solve(g, FULL)
    b = solve(g, FULL, parallel=True)
    assert a.decision == b.decision and a.pairs == b.pairs


def test_empty_type_set_rejected():
    with pytest.raises(PreconditionError):
        solve(K5, frozenset())
