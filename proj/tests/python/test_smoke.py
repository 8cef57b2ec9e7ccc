import math

import pytest

import bayespoker as bp


@pytest.fixture(scope="module")
def matrices():
    return bp.Matrices.estimate(50_000, seed=3)


def test_classify_and_compare():
    assert len(bp.hand_types()) == 17
    assert bp.classify("Ah Ad 9c") == "PairAces"
    assert bp.classify("9h 5h 6h 7h 8h") == "StraightFlush"
    assert bp.compare("9h 5h 6h 7h 8h", "Kc Ks Kd Kh 2c") == 1
    assert bp.compare("Ah Kh 9c 5s 3d", "As Kd 9d 5h 3c") == 0
    with pytest.raises(ValueError):
        bp.classify("Zz")


def test_threshold_and_curves():
    assert bp.threshold(2, 1) == pytest.approx(1 / 3)
    bet, fold, call = bp.curve_weights(0.10)
    assert bet == 0.5
    assert 0 < fold < 0.5 and 0 < call < 0.5
    dist = bp.action_distribution(0.6, 6, 2, facing_bet=True, raises=1)
    assert math.isclose(sum(dist.values()), 1.0)
    assert dist["BET"] == 0.0


def test_matrices_and_inference(matrices, tmp_path):
    assert math.isclose(sum(matrices.final_prior), 1.0)
    assert len(matrices.category_marginal) == len(bp.category_reference) == 9
    path = tmp_path / "m.json"
    matrices.save(str(path))
    assert bp.Matrices.load(str(path)).final_prior == matrices.final_prior

    belief = bp.infer(matrices, 4, "StraightFlush", "BustedLow", opp_action="BET")
    assert belief["p_win"] >= 0.999
    weak = bp.infer(matrices, 2, "BustedLow", "PairAces")
    assert 0 <= weak["p_win"] < 0.5
    with pytest.raises(ValueError):
        bp.infer(matrices, 1, "BustedLow", "PairAces")


def test_win_probability():
    assert bp.win_probability("Ac Ad Ah As", "Kc Kd Ks", samples=2000) >= 0.999
    p = bp.win_probability("2c 7c", "7d", samples=2000, seed=1)
    assert 0.0 < p < 1.0


def test_simulate(matrices):
    a = bp.simulate(matrices, "rules", games=40, seed=5)
    b = bp.simulate(matrices, "rules", games=40, seed=5)
    assert a["nets"] == b["nets"]
    assert a["n"] == 40 == len(a["nets"])
    with pytest.raises(ValueError):
        bp.simulate(matrices, "nobody", games=2)
