import math

import pytest

import risra


def test_channel_and_power_values():
    assert risra.phase_shift_set(5) == pytest.approx([i * math.pi / 8 for i in range(5)])
    assert abs(risra.array_factor(10, 10, 0.1, 0.1, 0.3, 0.3)) == pytest.approx(100.0, rel=1e-12)
    assert risra.dbm_to_watts(-94) == pytest.approx(3.981e-13, rel=1e-3)
    assert risra.ris_power(100) == 0.15
    assert risra.mtd_power(2) == 0.064
    assert risra.ap_power(20) == pytest.approx(10.343, rel=1e-4)
    assert risra.throughput(10, 20) == pytest.approx(10 / 24)


def test_access_helpers():
    assert risra.irsap_degree_pmf(4) == pytest.approx([2 / 3, 2 / 9, 1 / 9])
    assert risra.irsap_mean_degree(4) == pytest.approx(22 / 9)
    assert risra.carp_probabilities([1, 2, 3]) == pytest.approx([1 / 6, 2 / 6, 3 / 6])
    assert risra.sscp_select([3, 1, 2], 2) == [0, 2]


def test_sic_decode_chain_and_stopping_set():
    snr = [[10.0] * 4 for _ in range(3)]
    r = risra.sic_decode([[0], [0, 1], [1, 2], [2]], snr, 1.0)
    assert r["decoded"] == [0, 1, 2]
    assert r["iterations"] <= 2
    assert risra.sic_decode([[0, 1], [0, 1]], [[5.0, 5.0], [5.0, 5.0]], 1.0)["decoded"] == []


def test_config_defaults_and_errors():
    cfg = risra.resolve_config()
    assert cfg["scenario.k"] == "10"
    assert cfg["scenario.s"] == "20"
    with pytest.raises(ValueError, match="policy.sscp_s"):
        risra.resolve_config({"policy.kind": "sscp", "policy.sscp_s": 5, "scenario.s": 4})
    with pytest.raises(risra.ConfigError):
        risra.resolve_config({"no.such.key": 1})


def test_run_sweep_and_csv_are_deterministic():
    cfg = {"scenario.trials": 100, "scenario.seed": 3}
    rows = risra.run(cfg, policies=["carp", "crdsap"])
    assert [r["policy"] for r in rows] == ["carp", "crdsap"]
    for r in rows:
        assert 0 <= r["mean_A"] <= 10
        assert r["ee_rom"] == r["mean_G"] / r["mean_P_w"]

    rows = risra.sweep("K", "2:8:2", cfg, policies=["irsap"])
    assert [r["K"] for r in rows] == [2, 4, 6, 8]

    a = risra.to_csv("sweep", cfg, ["carp", "sscp"], "N", [64, 100], workers=1)
    b = risra.to_csv("sweep", cfg, ["carp", "sscp"], "N", [64, 100], workers=4)
    assert a == b
    assert a.splitlines()[0] == risra.CSV_HEADER
    assert len(a.splitlines()) == 5


def test_optimal_s_summary_rows():
    rows = risra.optimal_s({"scenario.trials": 20}, policies=["crdsap"], values="2:6")
    assert [r["S"] for r in rows[:5]] == [2, 3, 4, 5, 6]
    assert rows[-2]["policy"] == "best_G:crdsap"
    assert rows[-1]["policy"] == "best_ee:crdsap"


def test_single_frame():
    f = risra.simulate_frame({"scenario.k": 3, "policy.kind": "crdsap"}, trial=5)
    assert sum(f["replica_counts"]) == 6
    assert 0 <= f["successes"] <= 3
