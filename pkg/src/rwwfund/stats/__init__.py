"""Statistical kernel: OLS with inference, Student-t, Welch's test, kappa."""

from .kappa import AGREEMENT_GATE, AgreementMatrix, cohen_kappa, meets_agreement_gate
from .ols import (
    EncodingMeta,
    FittedModel,
    ModelTerm,
    PredictionInterval,
    PredictionResult,
    adjusted_r2,
    ols_fit,
    predict,
    regressors_for,
    term_role,
)
from .tdist import regularized_incomplete_beta, t_cdf, t_quantile, t_two_sided_p
from .ttest import TTestResult, welch_t_test, welch_t_test_from_summary

__all__ = [
    "AGREEMENT_GATE",
    "AgreementMatrix",
    "EncodingMeta",
    "FittedModel",
    "ModelTerm",
    "PredictionInterval",
    "PredictionResult",
    "TTestResult",
    "adjusted_r2",
    "cohen_kappa",
    "meets_agreement_gate",
    "ols_fit",
    "predict",
    "regressors_for",
    "regularized_incomplete_beta",
    "t_cdf",
    "t_quantile",
    "t_two_sided_p",
    "term_role",
    "welch_t_test",
    "welch_t_test_from_summary",
]
