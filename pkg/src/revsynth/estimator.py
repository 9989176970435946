"""scikit-learn style front end: fit a truth table, predict with the circuit.

    >>> import numpy as np
    >>> X = np.array([[0, 0], [0, 1], [1, 0], [1, 1]])
    >>> est = ReversibleSynthesizer(algorithm="a2-3n").fit(X, X[:, ::-1])
    >>> est.predict([[0, 1]]).tolist()
    [[1, 0]]
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .core import WeightConfig
from .sim import TruthTable, evaluate_many, verify
from .synth import synthesize

__all__ = ["ReversibleSynthesizer", "check_truth_table", "check_bit_matrix"]


def check_bit_matrix(X, n_features=None, name="X") -> np.ndarray:
    """2-D integer array of 0/1 entries, optionally with a fixed column count."""
    arr = check_array(X, dtype=np.int64, ensure_2d=True, ensure_min_samples=1)
    if ((arr != 0) & (arr != 1)).any():
        raise ValueError(f"{name} must contain only 0 and 1")
    if n_features is not None and arr.shape[1] != n_features:
        raise ValueError(f"{name} has {arr.shape[1]} columns, expected {n_features}")
    return arr


def _pack(bits: np.ndarray) -> np.ndarray:
    w = bits.shape[1]
    return (bits << np.arange(w - 1, -1, -1, dtype=np.int64)).sum(axis=1)


def check_truth_table(X, y=None) -> TruthTable:
    """Turn ``X`` (a TruthTable, or input bits with output bits ``y``) into a table.

    Bit matrices must list every input exactly once, in any order.
    """
    if isinstance(X, TruthTable):
        if y is not None:
            raise ValueError("y must be None when X is a TruthTable")
        return X
    if y is None:
        raise ValueError("y is required when X is a bit matrix")
    xb = check_bit_matrix(X)
    yb = check_bit_matrix(y, name="y")
    if len(xb) != len(yb):
        raise ValueError(f"X has {len(xb)} rows but y has {len(yb)}")
    n = xb.shape[1]
    if len(xb) != 1 << n:
        raise ValueError(f"a full table over {n} inputs needs {1 << n} rows, got {len(xb)}")
    words = _pack(xb)
    if len(np.unique(words)) != len(words):
        raise ValueError("X lists some input more than once")
    rows = np.empty(len(words), dtype=np.int64)
    rows[words] = _pack(yb)
    return TruthTable(n, yb.shape[1], tuple(int(v) for v in rows))


class ReversibleSynthesizer(TransformerMixin, BaseEstimator):
    """Compile a Boolean transformation into a NOT/CNOT/C2NOT circuit.

    Parameters
    ----------
    algorithm : {"a1", "a2-3n", "a2-2n"}
        Gate-count oriented (``a1``) or depth oriented synthesis.
    k, s : int, optional
        Override the automatic block sizes.
    phi : float, optional
        Override the default growth function value used to choose ``k``/``s``.
    fallback : bool
        Use direct minterm synthesis when no feasible ``(k, s)`` exists.
    verify : {"exhaustive", "off"} or ("sampled", count, seed)
        Check the circuit against the table after synthesis.
    wc, wt : float
        Gate weights for ``metrics_``.

    Attributes
    ----------
    result_ : SynthesisResult
    metrics_ : Metrics
    verify_report_ : VerifyReport or None
    n_features_in_ : int
    """

    def __init__(self, algorithm="a1", k=None, s=None, phi=None, fallback=False, verify="exhaustive", wc=1, wt=1):
        self.algorithm = algorithm
        self.k = k
        self.s = s
        self.phi = phi
        self.fallback = fallback
        self.verify = verify
        self.wc = wc
        self.wt = wt

    def fit(self, X, y=None):
        table = check_truth_table(X, y)
        self.table_ = table
        self.result_ = synthesize(
            table, self.algorithm, k=self.k, s=self.s, phi=self.phi, fallback=self.fallback
        )
        self.params_ = self.result_.params
        self.metrics_ = self.result_.measure(WeightConfig(self.wc, self.wt))
        self.verify_report_ = None
        if self.verify != "off":
            self.verify_report_ = verify(self.result_, table, self.verify)
            if not self.verify_report_.passed:
                raise RuntimeError(f"synthesized circuit failed verification: {self.verify_report_}")
        self.n_features_in_ = table.n
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "result_")
        xb = check_bit_matrix(X, self.n_features_in_)
        words = evaluate_many(self.result_, [int(w) for w in _pack(xb)])
        m = self.result_.m
        shifts = np.arange(m - 1, -1, -1, dtype=np.int64)
        return (np.asarray(words, dtype=np.int64)[:, None] >> shifts) & 1

    def transform(self, X) -> np.ndarray:
        return self.predict(X)

    def score(self, X, y) -> float:
        """Fraction of rows whose whole output word is reproduced."""
        yb = check_bit_matrix(y, name="y")
        return float((self.predict(X) == yb).all(axis=1).mean())
