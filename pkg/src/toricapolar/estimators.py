"""scikit-learn style wrappers around the exact routines.

The estimators take sequences of forms (``GradedForm`` objects or their text)
or pencils instead of numeric arrays.  Outputs are NumPy arrays of dtype
``object`` holding exact rationals or string labels, so nothing is rounded.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .antipolar import antipolar
from .errors import DimensionError, InputError
from .exactalg import ExactMatrix, GradedForm
from .hyperdet import Pencil, bergqvist_real_rank
from .realcert import rank_certify, typical_rank_sample
from .syntax import parse_form


def check_forms(X, ring=None):
    """Validate a batch of forms; strings are parsed.

    Returns a list of :class:`GradedForm` sharing one ring and one
    multidegree.
    """
    if isinstance(X, (str, GradedForm)):
        raise InputError("expected a sequence of forms, got a single form")
    forms = []
    for item in X:
        if isinstance(item, str):
            item = parse_form(item, ring=ring)
        elif not isinstance(item, GradedForm):
            raise InputError(f"cannot interpret {type(item).__name__} as a form")
        forms.append(item)
    if not forms:
        raise InputError("empty batch of forms")
    first = forms[0]
    for f in forms[1:]:
        if f.ring != first.ring or f.degree != first.degree:
            raise DimensionError("all forms in a batch must share ring and multidegree")
    return forms


def check_pencils(X):
    """Validate a batch of pencils given as Pencil objects or ``(T1, T2)`` pairs."""
    out = []
    for item in X:
        if isinstance(item, Pencil):
            out.append(item)
        elif isinstance(item, dict):
            out.append(Pencil.from_json(item))
        else:
            t1, t2 = item
            out.append(Pencil(ExactMatrix(t1), ExactMatrix(t2)))
    if not out:
        raise InputError("empty batch of pencils")
    return out


class AntipolarTransformer(TransformerMixin, BaseEstimator):
    """Map forms of multidegree ``2B`` to the coefficients of their antipolars.

    Parameters
    ----------
    B : tuple of int, optional
        Operator multidegree; by default half the degree of the first form.
    output : {"coefficients", "forms"}
        ``coefficients`` returns an object array with one row per form, in
        the canonical monomial order of the dual ring; ``forms`` returns the
        :class:`AntipolarForm` objects.
    """

    def __init__(self, B=None, output="coefficients"):
        self.B = B
        self.output = output

    def fit(self, X, y=None):
        forms = check_forms(X)
        deg = forms[0].degree
        if self.B is None:
            if any(a % 2 for a in deg):
                raise DimensionError(f"degree {deg} is not even; pass B")
            self.B_ = tuple(a // 2 for a in deg)
        else:
            self.B_ = tuple(self.B)
        self.ring_ = forms[0].ring
        self.degree_ = deg
        return self

    def transform(self, X):
        check_is_fitted(self, "B_")
        forms = check_forms(X)
        omegas = [antipolar(f, self.B_) for f in forms]
        if self.output == "forms":
            return omegas
        ring = omegas[0].ring
        monos = ring.monomials(tuple(2 * b for b in self.B_))
        self.feature_names_out_ = [GradedForm(ring, {m: 1})._mono_str(m) for m in monos]
        return np.array([[om.coefficient(m) for m in monos] for om in omegas], dtype=object)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "feature_names_out_")
        return np.asarray(self.feature_names_out_, dtype=object)


class RealRankCertifier(BaseEstimator):
    """Predict real-rank certificate labels for forms of bidegree ``(2, 2d)``."""

    def fit(self, X, y=None):
        forms = check_forms(X)
        self.d_ = forms[0].degree[1] // 2
        return self

    def certify(self, X):
        check_is_fitted(self, "d_")
        return [rank_certify(f) for f in check_forms(X)]

    def predict(self, X):
        return np.array([c.label for c in self.certify(X)], dtype=object)


class BergqvistClassifier(BaseEstimator):
    """Predict ``RANK_N`` / ``RANK_N_PLUS_1`` / ``BOUNDARY`` for real pencils."""

    def fit(self, X, y=None):
        self.n_ = check_pencils(X)[0].n
        return self

    def predict(self, X):
        check_is_fitted(self, "n_")
        return np.array([bergqvist_real_rank(T).value for T in check_pencils(X)], dtype=object)


class TypicalRankSampler(BaseEstimator):
    """Seeded sampler of signature and certificate statistics.

    Parameters
    ----------
    d : int
    n_samples : int
    random_state : int
    n_jobs : int
    """

    def __init__(self, d=1, n_samples=200, random_state=0, n_jobs=1):
        self.d = d
        self.n_samples = n_samples
        self.random_state = random_state
        self.n_jobs = n_jobs

    def fit(self, X=None, y=None):
        self.record_ = typical_rank_sample(self.d, self.n_samples, self.random_state, self.n_jobs)
        self.verdict_counts_ = self.record_["verdict_counts"]
        self.signature_counts_ = self.record_["signature_counts"]
        return self
