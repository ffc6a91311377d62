import math
import subprocess

import pytest

import shapeapprox as sa


def test_hash_matches_git():
    assert sa.git_blob_sha1("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391"
    assert sa.git_blob_sha1("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a"


def test_evaluate_catalog_and_callable():
    assert sa.evaluate("exp", [0.0, 1.0]) == pytest.approx([1.0, math.e])
    assert sa.evaluate(lambda x: 3 * x, [0.5]) == [1.5]


def test_bernstein_on_e2():
    xs = [0.0, 0.25, 0.5, 1.0]
    got = sa.apply("bernstein:n=8", "pow:2", xs)
    assert got == pytest.approx([x * x + x * (1 - x) / 8 for x in xs], abs=1e-14)


def test_mn_preserves_linear_functions():
    xs = [i / 10 for i in range(11)]
    got = sa.apply("mn:n=40,q=3", "linear:0.5:2", xs)
    assert got == pytest.approx([0.5 + 2 * x for x in xs], abs=1e-12)


def test_callable_goes_through_operator():
    a = sa.apply("genuine:n=6", lambda x: math.exp(x), [0.3, 0.7])
    b = sa.apply("genuine:n=6", "exp", [0.3, 0.7])
    assert a == pytest.approx(b, rel=1e-12)


def test_best_uniform_x_squared():
    r = sa.best_uniform("pow:2", 1)
    assert r["error"] == pytest.approx(0.125, abs=1e-3)
    assert len(r["bernstein"]) == 2
    assert sa.equioscillation_count("exp", 4) >= 6


def test_best_qmonotone_not_better_than_unconstrained():
    u = sa.best_uniform("trunc:0.5:3", 8)
    c = sa.best_qmonotone("trunc:0.5:3", 4, 8)
    assert c["validated"]
    assert c["error"] >= u["error"] - 1e-12


def test_moduli_and_envelopes():
    assert sa.omega("pow:2", 2, 0.0, 0.25, 16, 129)["value"] == pytest.approx(0.125)
    assert sa.bound_envelope("bernstein_gamma", 100, 0.0, 0.5) == pytest.approx(0.05)
    with pytest.raises(ValueError):
        sa.bound_envelope("cor_1_3", 10, 2.0, 0.5)


def test_shape_reports():
    assert sa.check_k_monotone("exp", 3)["verdict"] == "pass"
    assert sa.check_k_monotone(lambda x: -x * x, 2)["verdict"] == "fail"


def test_generator_record():
    g = sa.generator(64, 1)
    assert g["m"] == 8
    assert abs(float(g["integral"]) - 1) < 1e-20
    assert float(g["moment_deficiency"]["2"]) > 0
    assert g["P"]["basis"] == "monomial"


def test_experiments_embed_config_and_hash():
    r = sa.run_experiment("gen-report", {"n_list": [32, 64, 128]})
    assert r["ok"]
    assert r["config"]["n_list"] == [32, 64, 128]
    assert r["config"]["precision_bits"] == 256
    assert len(r["input_sha1"]) == 40
    again = sa.run_experiment("gen-report", {"n_list": [32, 64, 128]})
    assert again == r


def test_lambda2_counterexample_error_grows():
    r = sa.run_experiment("lambda2", {"eps_list": [1e-2, 1e-8]})
    errors = [row[2] for row in r["table"]["rows"]]
    assert errors[1] / errors[0] > 3


def test_domain_errors():
    with pytest.raises(ValueError):
        sa.run_experiment("bern-xeps", {"eps": 1.5})
    with pytest.raises(ValueError):
        sa.run_experiment("nope")
    with pytest.raises(ValueError):
        sa.evaluate("no-such-function", [0.5])
