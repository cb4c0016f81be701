import json

import pytest

from projquad import (
    load_bundle,
    odd_cycle_sphere,
    schrijver_pipeline,
    sphere_quad_from_bundle,
    verify_bundle,
    write_bundle,
)
from projquad.errors import ParseError, VerificationFailed

EXPECTED_FILES = {"complex.json", "involution.json", "colouring.json", "graph.json", "report.json"}


def test_write_and_load_round_trip(tmp_path):
    sq = odd_cycle_sphere(2, n_walks=5)
    out = write_bundle(tmp_path / "b", sq)
    assert {p.name for p in out.iterdir()} == EXPECTED_FILES
    bundle = load_bundle(out)
    assert bundle.complex == sq.complex
    assert bundle.graph == sq.graph
    assert bundle.homomorphism is None
    assert bundle.orbit_reps == {i: i for i in range(5)}


def test_bundle_with_homomorphism(tmp_path):
    sq, hom = schrijver_pipeline(6, 2)
    out = write_bundle(tmp_path / "sg", sq, homomorphism=hom)
    bundle = load_bundle(out)
    assert bundle.homomorphism is not None
    assert bundle.homomorphism.target == hom.target
    report = verify_bundle(out, n_walks=10)
    assert report.ok
    names = [e.name for e in report.entries]
    assert "homomorphism-valid" in names
    assert "report-consistent" in names


def test_verify_bundle_passes(tmp_path):
    sq = odd_cycle_sphere(3)
    out = write_bundle(tmp_path / "c7", sq)
    report = verify_bundle(out, n_walks=30)
    assert report.ok
    walk_entry = report.entry("walk-parity")
    assert walk_entry is not None and walk_entry.ok


def test_verify_bundle_detects_tampered_colouring(tmp_path):
    sq = odd_cycle_sphere(2)
    out = write_bundle(tmp_path / "t", sq)
    path = out / "colouring.json"
    obj = json.loads(path.read_text())
    # swap one vertex across the colour classes
    v = obj["black"].pop()
    obj["white"].append(v)
    obj["white"].sort()
    path.write_text(json.dumps(obj))
    report = verify_bundle(out, n_walks=0)
    assert not report.ok


def test_verify_bundle_detects_tampered_graph(tmp_path):
    sq = odd_cycle_sphere(2)
    out = write_bundle(tmp_path / "g", sq)
    path = out / "graph.json"
    obj = json.loads(path.read_text())
    obj["edges"] = obj["edges"][:-1]
    path.write_text(json.dumps(obj))
    report = verify_bundle(out, n_walks=0)
    assert not report.ok


def test_load_bundle_rejects_garbage(tmp_path):
    with pytest.raises(ParseError):
        load_bundle(tmp_path / "missing")
    bad = tmp_path / "bad"
    bad.mkdir()
    (bad / "complex.json").write_text("{not json")
    with pytest.raises(ParseError):
        load_bundle(bad)


def test_sphere_quad_from_bundle(tmp_path):
    sq = odd_cycle_sphere(2)
    out = write_bundle(tmp_path / "rt", sq)
    again = sphere_quad_from_bundle(out)
    assert again.complex == sq.complex
    assert again.graph == sq.graph
    assert again.labels == sq.labels


def test_sphere_quad_from_bundle_rejects_tampered(tmp_path):
    sq = odd_cycle_sphere(2)
    out = write_bundle(tmp_path / "bad2", sq)
    path = out / "involution.json"
    obj = json.loads(path.read_text())
    obj["vertex_pairs"] = obj["vertex_pairs"][:-1]
    path.write_text(json.dumps(obj))
    with pytest.raises((VerificationFailed, ParseError)):
        sphere_quad_from_bundle(out)


def test_repeat_builds_byte_identical(tmp_path):
    a = write_bundle(tmp_path / "a", odd_cycle_sphere(2, n_walks=40, seed=9))
    b = write_bundle(tmp_path / "b", odd_cycle_sphere(2, n_walks=40, seed=9))
    for name in EXPECTED_FILES:
        assert (a / name).read_bytes() == (b / name).read_bytes()
