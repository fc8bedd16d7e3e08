import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from mafa import Scenario, min_intended_gain
from mafa.estimator import FireflyBeamformer
from mafa.problem import Candidate

SCENARIO = Scenario(4, 4.0, 0.5, [60.0, 110.0], [85.0], 0.1)


def test_params_round_trip():
    est = FireflyBeamformer(population=7, random_state=3)
    params = est.get_params()
    assert params["population"] == 7 and params["random_state"] == 3
    assert clone(est).get_params() == params
    est.set_params(max_generations=12)
    assert est.max_generations == 12


def test_fit_predict_score():
    est = FireflyBeamformer(population=8, max_generations=30, random_state=0).fit(SCENARIO)
    assert est.weights_.shape == (4,) and est.positions_.shape == (4,)
    g = est.predict([60.0, 110.0])
    assert np.min(g) == pytest.approx(est.best_min_gain_)
    assert est.score() == pytest.approx(est.best_min_gain_)
    cand = Candidate(w=est.weights_, d=est.positions_)
    other = SCENARIO.replace(intended=[60.0])
    assert est.score(other) == pytest.approx(min_intended_gain(cand, other))
    assert len(est.trace_) == 30 and est.n_evaluations_ > 0
    assert est.audit() == est.feasibility_


def test_fit_accepts_dict_and_is_seeded():
    a = FireflyBeamformer(population=6, max_generations=10, random_state=5).fit(SCENARIO.to_dict())
    b = FireflyBeamformer(population=6, max_generations=10, random_state=5).fit(SCENARIO)
    np.testing.assert_array_equal(a.weights_, b.weights_)


def test_not_fitted():
    with pytest.raises(NotFittedError):
        FireflyBeamformer().predict([10.0])


def test_bad_input():
    with pytest.raises(ValueError):
        FireflyBeamformer(max_generations=2).fit([[1, 2]])
    with pytest.raises(ValueError):
        FireflyBeamformer(population=1).fit(SCENARIO)
