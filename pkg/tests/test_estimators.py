from fractions import Fraction

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from toricapolar.errors import DimensionError, InputError
from toricapolar.estimators import (AntipolarTransformer, BergqvistClassifier, RealRankCertifier,
                                    TypicalRankSampler, check_forms, check_pencils)
from toricapolar.exactalg import ExactMatrix
from toricapolar.hyperdet import Pencil
from toricapolar.syntax import parse_form

EXAMPLE_F = ("4*x^2*z^2 + 6*x^2*z*w + 2*x^2*w^2 + 8*x*y*z^2 + 7*x*y*z*w + 5*x*y*w^2"
             " + 3*y^2*z^2 + 7*y^2*z*w + 2*y^2*w^2")
DEFINITE_EXAMPLE = "-3*x^2*z^2 + 7*x^2*w^2 + 7*y^2*z^2 - 3*y^2*w^2 - 20*x*y*z*w"


def test_check_forms():
    forms = check_forms([EXAMPLE_F, parse_form(DEFINITE_EXAMPLE)])
    assert len(forms) == 2 and forms[0].degree == (2, 2)
    with pytest.raises(InputError):
        check_forms(EXAMPLE_F)
    with pytest.raises(InputError):
        check_forms([])
    with pytest.raises(InputError):
        check_forms([3.5])
    with pytest.raises(DimensionError):
        check_forms([EXAMPLE_F, "x^2*z^4"])


def test_check_pencils_accepts_several_spellings():
    I2 = [[1, 0], [0, 1]]
    D = [[1, 0], [0, 2]]
    out = check_pencils([(I2, D), {"T1": I2, "T2": D}, Pencil(ExactMatrix(I2), ExactMatrix(D))])
    assert out[0] == out[1] == out[2]
    with pytest.raises(InputError):
        check_pencils([])


def test_antipolar_transformer_coefficients():
    tr = AntipolarTransformer()
    X = tr.fit_transform([EXAMPLE_F])
    assert tr.B_ == (1, 1)
    assert X.shape == (1, 9) and X.dtype == object
    names = list(tr.get_feature_names_out())
    row = dict(zip(names, X[0]))
    assert row["s1^2*t1^2"] == -1728
    assert row["s1*s2*t1*t2"] == 12272
    assert row["s2^2*t2^2"] == -1344
    assert all(isinstance(v, Fraction) for v in X[0])


def test_antipolar_transformer_forms_output():
    tr = AntipolarTransformer(B=(1, 1), output="forms")
    (omega,) = tr.fit(["x^2*z^2 + y^2*w^2 + x*y*z*w"]).transform([EXAMPLE_F])
    assert omega.det_phi == -4751


def test_antipolar_transformer_odd_degree_needs_b():
    with pytest.raises(DimensionError):
        AntipolarTransformer().fit(["x^3*z^2"])


def test_not_fitted():
    with pytest.raises(NotFittedError):
        AntipolarTransformer().transform([EXAMPLE_F])
    with pytest.raises(NotFittedError):
        BergqvistClassifier().predict([([[1]], [[1]])])


def test_real_rank_certifier_predict():
    X = [EXAMPLE_F, DEFINITE_EXAMPLE]
    labels = RealRankCertifier().fit(X).predict(X)
    assert labels[1] == "REAL_RANK_GE(5)"
    assert labels[0].startswith(("REAL_RANK_EQ", "INCONCLUSIVE"))


def test_bergqvist_classifier():
    I3 = np.eye(3, dtype=int).tolist()
    X = [(I3, [[1, 0, 0], [0, 2, 0], [0, 0, 3]]),
         (I3, [[1, 1, 0], [0, 1, 0], [0, 0, 2]])]
    pred = BergqvistClassifier().fit(X).predict(X)
    assert list(pred) == ["RANK_N", "BOUNDARY"]
    rot = [([[1, 0], [0, 1]], [[0, 1], [-1, 0]])]
    assert BergqvistClassifier().fit(rot).predict(rot)[0] == "RANK_N_PLUS_1"


def test_typical_rank_sampler_matches_function_and_clones():
    est = TypicalRankSampler(d=1, n_samples=40, random_state=7)
    est.fit()
    assert sum(est.verdict_counts_.values()) == 40
    assert est.record_["seed"] == 7
    again = clone(est).fit()
    assert again.record_ == est.record_
    assert est.get_params() == {"d": 1, "n_samples": 40, "random_state": 7, "n_jobs": 1}
