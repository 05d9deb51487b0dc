import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from quivermoduli import serialize
from quivermoduli.chambers import PnWeight, QnWeight
from quivermoduli.configs import PnConfig, QnConfig
from quivermoduli.curves import Chain, GK, lm_moduli_coordinates, moduli_coordinates
from quivermoduli.generate import random_gk_tree
from quivermoduli.projline import INF_POINT, ZERO_POINT, affine

import random


def run_cli(*args, files=None, tmp_path=None):
    argv = [sys.executable, "-m", "quivermoduli.cli", *args]
    return subprocess.run(argv, capture_output=True, text=True)


def test_point_round_trip():
    for p in (ZERO_POINT, INF_POINT, affine(F(-7, 3))):
        assert serialize.parse_point(serialize.point_json(p)) == p
    assert serialize.parse_section("zero") is None


def test_config_round_trip():
    cfg = QnConfig((affine(1), None, INF_POINT, affine(F(2, 5))))
    assert serialize.parse_config(serialize.config_json(cfg)) == cfg
    pcfg = PnConfig((ZERO_POINT, affine(3)))
    assert serialize.parse_config(serialize.config_json(pcfg)) == pcfg


def test_weight_round_trip():
    w = QnWeight((F(1, 2),) * 4)
    assert serialize.parse_weight(serialize.weight_json(w)) == w
    p = PnWeight(F(-1, 3), F(-2, 3), (F(1, 4), F(3, 4)))
    assert serialize.parse_weight(serialize.weight_json(p)) == p


def test_tree_and_family_round_trip():
    t = random_gk_tree(random.Random(1), 5)
    assert serialize.parse_tree(serialize.tree_json(t)) == t
    fam = moduli_coordinates(t, GK)
    assert serialize.parse_family(serialize.family_json(fam)) == fam
    ch = Chain((((0, affine(2)),), ((1, affine(5)),)))
    assert serialize.parse_chain(serialize.chain_json(ch)) == ch
    lfam = lm_moduli_coordinates(ch)
    assert serialize.parse_family(serialize.family_json(lfam)) == lfam


def test_parse_errors():
    with pytest.raises(serialize.ParseError):
        serialize.parse_point(["nonsense", "1/2"])
    with pytest.raises(serialize.ParseError):
        serialize.parse_any({"no": "type"})


def test_dumps_deterministic():
    payload = serialize.chamber_complex_json("qn", 4)
    assert serialize.dumps(payload) == serialize.dumps(
        serialize.chamber_complex_json("qn", 4)
    )


def test_cli_chambers_counts():
    r = run_cli("chambers", "--mode", "qn", "--n", "5", "--no-adjacency")
    assert r.returncode == 0
    d = json.loads(r.stdout)
    assert len(d["walls"]) == 10
    r = run_cli("chambers", "--mode", "qn", "--n", "4")
    d = json.loads(r.stdout)
    assert len(d["walls"]) == 3 and len(d["chambers"]) == 8
    r = run_cli("chambers", "--mode", "qn", "--n", "9")
    assert r.returncode == 2


def test_cli_stability_and_exit_codes(tmp_path):
    cfg = tmp_path / "c.json"
    wt = tmp_path / "w.json"
    cfg.write_text(
        serialize.dumps(serialize.config_json(QnConfig((affine(0), affine(1), affine(2), INF_POINT))))
    )
    wt.write_text(serialize.dumps(serialize.weight_json(QnWeight((F(1, 2),) * 4))))
    r = run_cli("stability", "--config", str(cfg), "--weight", str(wt), "--oracle")
    assert r.returncode == 0
    d = json.loads(r.stdout)
    assert d["verdict"] == "stable" and d["agreement"] is True

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    r = run_cli("stability", "--config", str(bad), "--weight", str(wt))
    assert r.returncode == 3

    invalid = tmp_path / "invalid.json"
    invalid.write_text(
        json.dumps({"type": "weight", "mode": "qn", "theta": ["1/1", "1/1", "1/1", "1/1"]})
    )
    r = run_cli("stability", "--config", str(cfg), "--weight", str(invalid))
    assert r.returncode == 4


def test_cli_tree_round_trip(tmp_path):
    t = random_gk_tree(random.Random(3), 5)
    tf = tmp_path / "t.json"
    tf.write_text(serialize.dumps(serialize.tree_json(t)))
    fam_file = tmp_path / "f.json"
    r = run_cli("tree", "coords", "--tree", str(tf), "--out", str(fam_file))
    assert r.returncode == 0
    r = run_cli("tree", "reconstruct", "--family", str(fam_file))
    assert r.returncode == 0
    d = json.loads(r.stdout)
    assert d["round_trip"] is True

    # inconsistent family: perturb one chart entry
    fam = json.loads(fam_file.read_text())
    key = sorted(fam["charts"])[0]
    fam["charts"][key][4] = ["99/1", "1/1"]
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(fam))
    r = run_cli("tree", "reconstruct", "--family", str(broken))
    assert r.returncode == 5


def test_cli_verify_seeded_reproducible(tmp_path):
    args = ("verify", "--suite", "five-term", "--seed", "7", "--bounds", '{"instances": 15}')
    r1 = run_cli(*args)
    r2 = run_cli(*args)
    assert r1.returncode == 0
    assert r1.stdout == r2.stdout
    d = json.loads(r1.stdout)
    assert d["reports"][0]["passed"] is True
