import io
import json
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from garment.cli import EXIT_FORMAT, EXIT_IO, EXIT_OK, EXIT_USAGE, main
from garment.geom import Color, Point
from garment.io import DocumentError, document, dump_document, load_document, parse_document
from garment.structures import StructureInstance, StructureKind
from garment.svg import render_svg

from conftest import point_sets

DATA = Path(__file__).parent / "data"
SEVEN = str(DATA / "seven_point.jsonl")
SQUARE = str(DATA / "square.jsonl")


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), stdout=buf)
    return code, buf.getvalue()


def run_json(*argv):
    code, out = run("--json", *argv)
    return code, [json.loads(line) for line in out.splitlines() if line.strip()]


# -- documents ------------------------------------------------------------------

def test_parse_seven_point():
    doc = load_document(SEVEN)
    assert len(doc.points) == 7 and doc.colored
    assert doc.avoids == {StructureKind.SKIRT, StructureKind.BOWTIE}


@given(point_sets(3, 12, coord=10**6), st.data())
@settings(max_examples=40, deadline=None)
def test_round_trip(pts, data):
    colors = data.draw(st.one_of(st.none(), st.lists(st.sampled_from(list(Color)), min_size=len(pts),
                                                     max_size=len(pts))))
    doc = document(pts, colors, name="x", source="y", avoids=[StructureKind.PANT])
    again = parse_document(dump_document(doc))
    assert again == doc


@pytest.mark.parametrize("text,line,fragment", [
    ("", 1, "empty"),
    ('{"schema": 2}\n', 1, "schema"),
    ('{"schema": 1}\n{"x": 1, "y": 2}\n{"x": 1.5, "y": 0}\n', 3, "integer"),
    ('{"schema": 1}\n{"x": 1, "y": 2}\nnope\n', 3, "JSON"),
    ('{"schema": 1}\n{"x": 0, "y": 0}\n{"x": 2, "y": 2}\n{"x": 5, "y": 1}\n{"x": 4, "y": 4}\n', 5, "collinear"),
    ('{"schema": 1}\n{"x": 0, "y": 0, "color": "red"}\n{"x": 3, "y": 1}\n', 3, "colors"),
    ('{"schema": 1}\n{"x": 0, "y": 0, "color": "green"}\n', 2, "color"),
    ('{"schema": 1}\n{"x": 2000000000, "y": 0}\n', 2, "cap"),
    ('{"schema": 1}\n{"x": 1, "y": 1}\n\n{"x": 1, "y": 1}\n', 4, "duplicate"),
    ('{"schema": 1, "avoids": ["sock"]}\n', 1, "sock"),
])
def test_parse_errors_are_line_precise(text, line, fragment):
    with pytest.raises(DocumentError) as exc:
        parse_document(text)
    assert exc.value.line == line
    assert fragment in str(exc.value)


# -- svg ----------------------------------------------------------------------------

def test_svg_is_deterministic_and_well_formed():
    doc = load_document(SEVEN)
    pant = StructureInstance((2, 4, 5, 6), StructureKind.PANT, 0)
    a = render_svg(doc, [pant])
    assert a == render_svg(doc, [pant])
    root = ET.fromstring(a)
    assert root.tag.endswith("svg") and "viewBox" in root.attrib
    ns = {"s": "http://www.w3.org/2000/svg"}
    assert len(root.findall("s:circle", ns)) == 7
    regions = [p for p in root.findall("s:polygon", ns) if "region" in p.get("class")]
    assert len(regions) == 1 and len(regions[0].get("points").split()) == 4


def test_svg_shapes():
    doc = load_document(SQUARE)
    ns = {"s": "http://www.w3.org/2000/svg"}
    cravat = StructureInstance((0, 1, 2, 3), StructureKind.CRAVAT, 0)
    bowtie = StructureInstance((0, 1, 2, 3), StructureKind.BOWTIE, 0)
    root = ET.fromstring(render_svg(doc, [cravat]))
    assert len([p for p in root.findall("s:polygon", ns) if "region" in p.get("class")]) == 1
    root = ET.fromstring(render_svg(doc, [bowtie]))
    tris = [p for p in root.findall("s:polygon", ns) if "bowtie" in p.get("class")]
    assert len(tris) == 2 and all(len(t.get("points").split()) == 3 for t in tris)


def test_svg_flips_y():
    doc = document([(0, 0), (10, 0), (0, 10)])
    root = ET.fromstring(render_svg(doc))
    cys = [float(c.get("cy")) for c in root.iter("{http://www.w3.org/2000/svg}circle")]
    assert cys[2] < cys[0]


# -- commands ---------------------------------------------------------------------------

def test_check_seven():
    code, out = run("check", SEVEN, "--kinds", "skirt,bowtie")
    assert code == EXIT_OK and "no empty monochromatic structure" in out
    code, recs = run_json("check", SEVEN, "--kinds", "pant,bowtie")
    assert code == EXIT_OK and recs[0]["empty_monochromatic"] and recs[0]["command"] == "check"


def test_es_bound():
    code, out = run("es-bound", "--k", "9")
    assert code == EXIT_OK and out.strip() == "1508"
    assert run("es-bound", "--k", "4")[0] == EXIT_USAGE


def test_min_blockers_square():
    code, recs = run_json("min-blockers", SQUARE, "--kinds", "pant,necklace")
    assert code == EXIT_OK and recs[0]["count"] == 2 and len(recs[0]["placement"]) == 2


def test_closure_and_verify_pair():
    code, recs = run_json("closure", "--kinds", "pant,necklace", "--up-to", "12")
    assert code == EXIT_OK and recs[0]["rows"][-1] == {"r": 12, "b": 10, "how": "derived-by-lemma"}
    code, recs = run_json("verify-pair", "--r", "4", "--b", "2", "--kinds", "pant,necklace", "--seed", "1",
                          "--budget", "500")
    assert code == EXIT_OK and recs[0]["status"] == "verified" and recs[0]["checked"] == 2


def test_randomized_commands_require_seed(tmp_path):
    assert run("search-lb", "--n", "6", "--kinds", "pant")[0] == EXIT_USAGE
    assert run("four-holes", SEVEN)[0] == EXIT_USAGE
    assert run("island", SEVEN)[0] == EXIT_USAGE
    assert run("verify-pair", "--r", "4", "--b", "2", "--kinds", "pant")[0] == EXIT_USAGE


def test_search_then_verify_then_render(tmp_path):
    out = tmp_path / "found.jsonl"
    code, recs = run_json("search-lb", "--n", "8", "--kinds", "pant,bowtie", "--seed", "3", "--budget", "200000",
                          "--out", str(out))
    assert code == EXIT_OK and recs[0]["success"]
    code, recs = run_json("verify", str(out))
    assert code == EXIT_OK and recs[0]["avoids"] and recs[0]["census"]
    svg = tmp_path / "found.svg"
    assert run("render", str(out), "-o", str(svg))[0] == EXIT_OK
    ET.fromstring(svg.read_bytes())


def test_other_commands(tmp_path):
    for argv in (("classify", SEVEN), ("holes", SEVEN, "--k", "4"), ("six-island", SEVEN, "--any-size"),
                 ("four-holes", SEVEN, "--seed", "0"), ("scan-colorings", SEVEN, "--kinds", "skirt,bowtie"),
                 ("verify", SEVEN, "--census"), ("island", SEVEN, "--seed", "0")):
        code, recs = run_json(*argv)
        assert code == EXIT_OK, argv
        assert recs and all(r["command"] == argv[0] for r in recs)
    code, recs = run_json("six-island", SEVEN)
    assert code == EXIT_USAGE


def test_scan_db_command(tmp_path):
    from garment.search import write_order_type_db

    db = tmp_path / "n4.bin"
    write_order_type_db(db, [[Point(0, 0), Point(10, 0), Point(10, 10), Point(0, 10)],
                             [Point(0, 0), Point(12, 0), Point(0, 12), Point(3, 3)]], 1)
    code, recs = run_json("scan-db", str(db), "--n", "4", "--kinds", "cravat")
    assert code == EXIT_OK
    assert recs[-1] == {"command": "scan-db", "records": 2, "counterexamples": 2}  # 4 points: any split coloring
    db.write_bytes(db.read_bytes()[:-1])
    assert run("scan-db", str(db), "--n", "4", "--kinds", "cravat")[0] == EXIT_FORMAT


def test_exit_codes(tmp_path):
    assert run("check", str(tmp_path / "missing.jsonl"), "--kinds", "pant")[0] == EXIT_IO
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"schema": 1}\n{"x": 0}\n')
    assert run("check", str(bad), "--kinds", "pant")[0] == EXIT_FORMAT
    assert run("check", SEVEN, "--kinds", "sock")[0] == EXIT_USAGE
    assert run("no-such-command")[0] == EXIT_USAGE
    assert run("min-blockers", SQUARE, "--kinds", "pant", "--solver", "magic")[0] == EXIT_USAGE
    assert run("check", SQUARE, "--kinds", "pant")[0] == EXIT_USAGE  # uncolored
