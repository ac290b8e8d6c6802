"""Crowdfunding campaign rating, prediction, and what-if analysis toolkit.

Campaigns are rated on a 26-question Real-Win-Worth rubric (None/Partial/
Full), encoded together with campaign-page control variables, and modeled
with stepwise-selected linear regressions of ln(funding raised). The package
ships a reference coefficient table, a synthetic-data recovery bench, a CLI,
and an HTTP prediction service.
"""

from . import errors
from .domain import (
    CONTROL_TERMS,
    QUESTION_IDS,
    CampaignRecord,
    Category,
    ControlVector,
    Dataset,
    DesignRow,
    Platform,
    Rating,
    Rubric,
    RubricQuestion,
    encode_controls,
    encode_factors,
    encode_record,
    encode_response,
    factor_means,
    factor_prevalence_filter,
    funded_percent,
    question_index,
)
from .io import (
    ModelDocument,
    load_campaign,
    load_dataset,
    load_model,
    load_rubric,
    load_synth_spec,
    make_document,
    paper_baseline,
    save_dataset,
    save_model,
    save_synth_spec,
)
from .pipeline import (
    DEFAULT_FACTOR_MEANS,
    BuildSpec,
    ControlDistributions,
    FactorScreen,
    RecoveryReport,
    ScreeningReport,
    SynthSpec,
    build_baseline,
    build_specific,
    generate_synthetic,
    recovery_experiment,
    screen_factors,
)
from .selection import (
    SelectionResult,
    SelectionSpec,
    SelectionStep,
    best_subset,
    cv_score,
    kfold_split,
    stepwise_select,
)
from .stats import (
    AGREEMENT_GATE,
    AgreementMatrix,
    EncodingMeta,
    FittedModel,
    ModelTerm,
    PredictionInterval,
    PredictionResult,
    TTestResult,
    adjusted_r2,
    cohen_kappa,
    meets_agreement_gate,
    ols_fit,
    predict,
    regressors_for,
    t_cdf,
    t_quantile,
    t_two_sided_p,
    welch_t_test,
    welch_t_test_from_summary,
)

__version__ = "0.1.0"
