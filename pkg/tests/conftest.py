import functools

import networkx as nx
import pytest

from crosstypes.crossings import ALL_TYPES, TRACTABLE, CrossingType
from crosstypes.graph import Graph

PANEL = [frozenset({t}) for t in CrossingType] + [TRACTABLE, ALL_TYPES]

# criterion number -> (passed, detail); filled by test_acceptance
VERDICTS: dict[int, tuple[bool, str]] = {}


@functools.lru_cache(maxsize=None)
def connected_corpus(max_n: int, min_n: int = 1) -> tuple:
    """Every connected graph on min_n..max_n vertices, one per isomorphism class."""
    out = []
    for G in nx.graph_atlas_g()[1:]:
        if min_n <= G.number_of_nodes() <= max_n and nx.is_connected(G):
            out.append(Graph.from_nx(G))
    return tuple(out)


@pytest.fixture(scope="session")
def corpus6():
    return connected_corpus(6)


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(VERDICTS):
        ok, detail = VERDICTS[k]
        terminalreporter.write_line(f"CRITERION {k} {'PASS' if ok else 'FAIL'}: {detail}")
