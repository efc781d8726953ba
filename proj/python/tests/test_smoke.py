import math

import pytest

import rarburn


def test_effect_and_budget():
    assert rarburn.standardized_effect(0.7, 0.9) == pytest.approx(0.3651, abs=5e-4)
    assert rarburn.standardized_effect(0.12, 0.37, "ssd") == pytest.approx(0.3095, abs=5e-4)
    assert math.isinf(rarburn.standardized_effect(0.0, 1.0))
    assert rarburn.burnin_budget(1000, 1000) == 500.0


def test_undefined_effect_raises():
    with pytest.raises(rarburn.Error):
        rarburn.standardized_effect(1.0, 1.0)
    with pytest.raises(ValueError):
        rarburn.run_oc(0.2, 0.4, 40, "pbb", burnin="30")


def test_recommend_and_tests():
    assert rarburn.recommend_burnin(86, 10000, 0.0668, 0.3095)["b"] == 18
    assert rarburn.recommend_burnin(86, 10000, 0.0, 0.3095)["b"] == 2
    assert rarburn.wald_z(5, 43, 16, 43) == pytest.approx(2.8922, abs=1e-3)
    assert rarburn.score_z(5, 43, 16, 43) == pytest.approx(2.7611, abs=1e-3)
    assert rarburn.score_z(0, 10, 0, 10) is None
    assert rarburn.thompson_prob(0, 1, 1, 1) == pytest.approx(5 / 6, abs=1e-9)
    assert rarburn.final_allocation_error(0.3, 0.6) == pytest.approx(0.2)


def test_simulate_trial_is_reproducible():
    a = rarburn.simulate_trial(0.3, 0.6, 50, "brar-t", b=5, seed=9, replication=3)
    b = rarburn.simulate_trial(0.3, 0.6, 50, "brar-t", b=5, seed=9, replication=3)
    assert a == b
    assert len(a["assignments"]) == 50
    assert sorted(a["assignments"][:10]) == [0] * 5 + [1] * 5
    assert a["n1"] == sum(a["assignments"])


def test_run_oc_and_metrics():
    oc = rarburn.run_oc(0.12, 0.37, 86, "er", n_sim=2000)
    assert 0.7 < oc["power_z1"] < 0.9
    assert oc["n_sim"] == 2000
    third = rarburn.run_oc(0.12, 0.37, 86, "ptw", burnin="third", n_sim=200, threads=2)
    assert third["b"] == 29
    assert third == rarburn.run_oc(0.12, 0.37, 86, "ptw", burnin="third", n_sim=200, threads=1)
    rep = rarburn.metrics(0.12, 0.37, 86, "pbb", n_sim=200)
    assert 2 <= rep["b"] <= 43
    assert rep["r"] >= 0


def test_tables():
    assert set(rarburn.design_ids()) >= {"er", "pbb", "rptw"}
    assert "\n1000,500\n" in rarburn.reproduce_table("fig2")
    csv = rarburn.reproduce_table("t3", n_sim=20, designs=["er", "n1"])
    assert csv.splitlines()[0].startswith("design,burnin,type1_z1")
    assert '"table": "t3"' in rarburn.reproduce_table("t3", n_sim=20, designs=["er"], json=True)
