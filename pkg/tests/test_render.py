import re
import xml.etree.ElementTree as ET

from crosstypes.crossings import CrossingType, extract_drawing, planarize
from crosstypes.embedding import enumerate_embeddings
from crosstypes.graph import Graph, complete_graph, cycle_graph
from crosstypes.hardness import ThreePartitionInstance, build_hard_instance, build_witness_drawing, solve_3partition
from crosstypes.render import BATCH_LIMIT, emit_svg, layout
from crosstypes.solver import solve

SVG = "{http://www.w3.org/2000/svg}"


def gids(path) -> list[str]:
    root = ET.parse(path).getroot()
    return [el.get("id") for el in root.iter(f"{SVG}g") if el.get("id")]


def count(ids, pattern) -> int:
    return sum(1 for i in ids if re.fullmatch(pattern, i))


def test_k5_witness_svg(tmp_path):
    d = solve(complete_graph(5), {CrossingType.FULL}).witness
    out = emit_svg(d, tmp_path / "k5.svg")
    ids = gids(out)
    assert count(ids, r"vertex-.*") == 5
    assert count(ids, r"edge-.*") == 10
    assert count(ids, r"crossing-(?!unrealized).*") == 1
    assert ET.parse(out).getroot().get("version") == "1.1"


def test_crossing_free_svg(tmp_path):
    g = cycle_graph(4)
    d = extract_drawing(g, (), next(enumerate_embeddings(g)))
    ids = gids(emit_svg(d, tmp_path / "c4.svg"))
    assert count(ids, r"crossing.*") == 0 and count(ids, r"vertex-.*") == 4


def test_unrealized_marker(tmp_path):
    g = Graph([], [(0, 1), (2, 3), (1, 2), (0, 3)])
    ps = (((0, 1), (2, 3)),)
    d = next(
        d
        for d in (extract_drawing(g, ps, e) for e in enumerate_embeddings(planarize(g, ps)[0]))
        if not d.realized[ps[0]]
    )
    ids = gids(emit_svg(d, tmp_path / "bowtie.svg"))
    assert count(ids, r"crossing-unrealized-.*") == 1
    assert count(ids, r"crossing-(?!unrealized).*") == 0


def test_svg_is_byte_stable(tmp_path):
    d = solve(complete_graph(6), {CrossingType.FULL}).witness
    a = emit_svg(d, tmp_path / "a.svg").read_bytes()
    b = emit_svg(d, tmp_path / "b.svg").read_bytes()
    assert a == b


def test_layout_pins_outer_face_on_circle():
    d = solve(complete_graph(5), {CrossingType.FULL}).witness
    pos = layout(d)
    outer = set(d.embedding.faces[d.outer_face])
    for v in outer:
        x, y = pos[v]
        assert abs(x * x + y * y - 1) < 1e-9
    for v in set(pos) - outer:
        x, y = pos[v]
        assert x * x + y * y < 1


def test_large_drawings_are_batched(tmp_path):
    inst = ThreePartitionInstance([1, 1, 2] * 4, 4)
    hi = build_hard_instance(inst, "x", bundle_width=2)
    d = build_witness_drawing(hi, solve_3partition(inst))
    assert d.host.m > BATCH_LIMIT
    ids = gids(emit_svg(d, tmp_path / "gi.svg"))
    assert {"edges", "crossings", "vertices"} <= set(ids)
