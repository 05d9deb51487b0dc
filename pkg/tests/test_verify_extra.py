"""Cross-cutting checks: the verification machinery detects injected bugs,
double-star gluing, and small odds and ends of the JSON/CLI surface."""
import json
import random
import subprocess
import sys
from fractions import Fraction as F

from quivermoduli import configs as configs_mod
from quivermoduli import verify
from quivermoduli.configs import (
    IRREDUCIBLE,
    PnConfig,
    TWO_COMPONENTS,
    Verdict,
    glue_fiber,
)
from quivermoduli.curves import Chain, hassett_chart_degree, lm_moduli_coordinates
from quivermoduli.generate import random_gk_tree
from quivermoduli.projline import affine
from quivermoduli import serialize


def test_glue_fiber_pn_pair_from_chain():
    # charts of a two-component chain glue to a two-component fiber;
    # charts of marks on one component glue to an irreducible one
    ch = Chain((
        ((0, affine(2)), (1, affine(5))),
        ((2, affine(7)),),
    ))
    fam = lm_moduli_coordinates(ch)
    c0 = PnConfig(fam.charts[0])
    c1 = PnConfig(fam.charts[1])
    c2 = PnConfig(fam.charts[2])
    same = glue_fiber(c0, c1)
    assert same.kind == IRREDUCIBLE
    split = glue_fiber(c0, c2)
    assert split.kind == TWO_COMPONENTS
    assert split.marks_on_a == frozenset({0, 1})
    assert split.marks_on_b == frozenset({2})


def test_suite_reports_witness_on_injected_bug(monkeypatch):
    # negate the fast rule's verdict: the oracle suite must fail and carry a
    # concrete counterexample
    real = configs_mod.is_semistable

    def broken(config, weight):
        v = real(config, weight)
        if v.kind == configs_mod.STABLE:
            return Verdict(configs_mod.UNSTABLE, v.witness)
        return v

    monkeypatch.setattr(verify, "is_semistable", broken)
    report = verify.run_suite(
        "stability-oracle",
        seed=1,
        bounds={"exhaustive_n": (3,), "random_instances": 0, "random_n": (6,)},
    )
    assert not report["passed"]
    assert report["counterexample"] is not None


def test_hassett_chart_degree_unit_weights():
    assert hassett_chart_degree([(i,) for i in range(5)], (F(1),) * 5) == 5


def test_cli_check_unit_weights_match_gk(tmp_path):
    rng = random.Random(17)
    for _ in range(5):
        t = random_gk_tree(rng, 5)
        tf = tmp_path / "t.json"
        tf.write_text(serialize.dumps(serialize.tree_json(t)))
        argv = [sys.executable, "-m", "quivermoduli.cli", "tree", "check", "--tree", str(tf)]
        gk = json.loads(subprocess.run(argv, capture_output=True, text=True).stdout)
        argv_h = argv + ["--hassett", "1,1,1,1,1"]
        ha = json.loads(subprocess.run(argv_h, capture_output=True, text=True).stdout)
        assert gk["stable"] == ha["stable"] is True


def test_quiver_json_round_trip():
    from quivermoduli.quiverwt import qn_quiver

    q, d = qn_quiver(4)
    theta = {"p": F(-1), **{f"q{i}": F(1, 2) for i in range(4)}}
    doc = serialize.quiver_json(q, d, theta)
    q2, d2, t2 = serialize.parse_quiver(doc)
    assert q2 == q and d2 == d and t2 == theta
