import io
import json

from covertower.characteristic import mod2_homology_cover
from covertower.cli import main
from covertower.covers import double_cover_from_signs, enumerate_covers
from covertower.documents import (
    counterexample_document,
    cover_document,
    cycle_document,
    dumps_canonical,
    element_document,
    parse_cover,
    parse_element,
    track_document,
    vaut_document,
)
from covertower.homology import surface_complex
from covertower.limits import base_class_element, cycle_element, limit_equal
from covertower.traintrack import three_branch_example
from covertower.vauts import identity_vaut, vaut_act


def write_doc(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(dumps_canonical(doc), encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_enumerate_streams_json_lines(capsys):
    code, out = run(capsys, "enumerate", "--genus", "2", "--degree", "2")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 15
    parsed = {parse_cover(json.loads(line)) for line in lines}
    assert parsed == set(enumerate_covers(2, 2))


def test_enumerate_budget_exit(capsys):
    code, _ = run(capsys, "enumerate", "--genus", "2", "--degree", "3", "--budget", "10")
    assert code == 3


def test_genus_from_file_and_stdin(tmp_path, capsys, monkeypatch):
    cover = double_cover_from_signs(2, (1, 0, 0, 0))
    path = write_doc(tmp_path, "cover.json", cover_document(cover))
    code, out = run(capsys, "genus", "--cover", path)
    assert code == 0
    assert out.strip() == "3"
    monkeypatch.setattr("sys.stdin", io.StringIO(dumps_canonical(cover_document(cover))))
    code, out = run(capsys, "genus", "--cover", "-")
    assert code == 0
    assert out.strip() == "3"


def test_fiber_product_document(tmp_path, capsys):
    a = write_doc(tmp_path, "a.json", cover_document(double_cover_from_signs(2, (1, 0, 0, 0))))
    b = write_doc(tmp_path, "b.json", cover_document(double_cover_from_signs(2, (0, 1, 0, 0))))
    code, out = run(capsys, "fiber-product", a, b)
    assert code == 0
    doc = json.loads(out)
    assert doc["type"] == "fiber-product"
    assert parse_cover(doc["cover"]).degree == 4
    assert sorted(doc["to_first"]) == [1, 1, 2, 2]
    assert sorted(doc["to_second"]) == [1, 1, 2, 2]


def test_lift_cycle_matches_transfer(tmp_path, capsys):
    cover = double_cover_from_signs(2, (0, 0, 1, 0))
    path = write_doc(tmp_path, "cover.json", cover_document(cover))
    code, out = run(capsys, "lift-cycle", "--cover", path, "--class", "[1,0,0,0]")
    assert code == 0
    got = parse_element(json.loads(out))
    want = cycle_element(cover, surface_complex(cover).transfer((1, 0, 0, 0)))
    assert limit_equal(got, want)


def test_pairing_prints_rational(tmp_path, capsys):
    e1 = write_doc(tmp_path, "e1.json", element_document(base_class_element(2, (1, 0, 0, 0))))
    e2 = write_doc(tmp_path, "e2.json", element_document(base_class_element(2, (0, 1, 0, 0))))
    code, out = run(capsys, "pairing", "--e1", e1, "--e2", e2)
    assert code == 0
    assert out.strip() == "1"


def test_lift_track_document(tmp_path, capsys):
    track = write_doc(tmp_path, "track.json", track_document(three_branch_example()))
    cover = write_doc(
        tmp_path, "cover.json", cover_document(double_cover_from_signs(2, (1, 0, 0, 0)))
    )
    code, out = run(capsys, "lift-track", "--track", track, "--cover", cover)
    assert code == 0
    doc = json.loads(out)
    matrix = doc["matrix"]
    assert len(matrix) == 6
    for j in range(3):
        assert sum(row[j] for row in matrix) == 2


def test_char_refine_and_budget(tmp_path, capsys):
    path = write_doc(
        tmp_path, "cover.json", cover_document(double_cover_from_signs(2, (1, 1, 1, 1)))
    )
    code, out = run(capsys, "char-refine", "--cover", path)
    assert code == 0
    assert parse_cover(json.loads(out)) == mod2_homology_cover(2)
    code, _ = run(capsys, "char-refine", "--cover", path, "--budget", "8")
    assert code == 3


def test_is_char_builtin(tmp_path, capsys):
    yes = write_doc(tmp_path, "mod2.json", cover_document(mod2_homology_cover(2)))
    code, out = run(capsys, "is-char", "--cover", yes, "--auts", "builtin")
    assert code == 0
    assert out.strip() == "true"
    no = write_doc(
        tmp_path, "swap.json", cover_document(double_cover_from_signs(2, (1, 0, 0, 0)))
    )
    code, out = run(capsys, "is-char", "--cover", no, "--auts", "builtin")
    assert code == 0
    assert out.strip() == "false"


def test_vaut_act_roundtrip(tmp_path, capsys):
    vaut = identity_vaut(2)
    elem = base_class_element(2, (1, 2, 0, -1))
    vp = write_doc(tmp_path, "vaut.json", vaut_document(vaut))
    ep = write_doc(tmp_path, "elem.json", element_document(elem))
    code, out = run(capsys, "vaut-act", "--vaut", vp, "--elem", ep)
    assert code == 0
    got = parse_element(json.loads(out))
    assert limit_equal(got, vaut_act(vaut, elem))


def test_verify_suite_ok(capsys):
    code, out = run(capsys, "verify", "--suite", "riemann-hurwitz", "--max-degree", "2")
    assert code == 0
    assert out.startswith("suite riemann-hurwitz: ok")


def test_verify_needs_mode(capsys):
    code, _ = run(capsys, "verify")
    assert code == 2


def test_verify_replay_exit_codes(tmp_path, capsys):
    cover = double_cover_from_signs(2, (1, 0, 0, 0))
    cx = surface_complex(cover)
    c1 = cycle_document(cycle_element(cover, cx.transfer((1, 0, 0, 0))))
    c2 = cycle_document(cycle_element(cover, cx.transfer((0, 1, 0, 0))))
    holds = counterexample_document(
        "pairing-invariance",
        {"cover": cover_document(cover), "c1": c1, "c2": c2, "moved1": c1, "moved2": c2},
    )
    path = write_doc(tmp_path, "holds.json", holds)
    code, out = run(capsys, "verify", "--replay", path)
    assert code == 0
    assert "property holds" in out

    moved = cycle_document(cycle_element(cover, cx.transfer((1, 0, 1, 0))))
    fails = counterexample_document(
        "pairing-invariance",
        {"cover": cover_document(cover), "c1": c1, "c2": c2, "moved1": moved, "moved2": c2},
    )
    path = write_doc(tmp_path, "fails.json", fails)
    code, out = run(capsys, "verify", "--replay", path)
    assert code == 1
    assert "reproduces" in out


def test_bad_documents_exit_2(tmp_path, capsys):
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{not json", encoding="utf-8")
    code, _ = run(capsys, "genus", "--cover", str(garbage))
    assert code == 2
    code, _ = run(capsys, "genus", "--cover", str(tmp_path / "missing.json"))
    assert code == 2
    wrong = write_doc(tmp_path, "wrong.json", {"schema": "covertower/1", "type": "mystery"})
    code, _ = run(capsys, "genus", "--cover", wrong)
    assert code == 2


def test_orbit_report(capsys):
    code, out = run(capsys, "orbit", "--steps", "64", "--targets", "16", "--seed", "0")
    assert code == 0
    assert out.startswith("# seed\t0")
    assert "steps\torbit_size\tcovering_radius" in out
