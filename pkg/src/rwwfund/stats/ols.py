"""Least squares with classical t-based inference and prediction intervals.

Fitting goes through a QR decomposition rather than the normal equations, so
ill-conditioned designs fail loudly (rank check) instead of quietly losing
precision.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..domain import CampaignRecord, DesignRow, encode_record
from ..errors import (
    DegenerateDoF,
    InvariantViolation,
    RankDeficient,
    TermMismatch,
    Underdetermined,
)
from .tdist import t_quantile, t_two_sided_p

_FACTOR_NAME = re.compile(r"^Q\d{2}$")


def term_role(name: str) -> str:
    """Classify a regressor name as dummy, factor, or control."""
    if name in ("category", "platform"):
        return "dummy"
    if _FACTOR_NAME.match(name):
        return "factor"
    return "control"


@dataclass(frozen=True)
class ModelTerm:
    """One non-intercept regressor with its estimate and inference."""

    name: str
    role: str
    coefficient: float
    std_error: float | None = None
    p_value: float | None = None


@dataclass(frozen=True)
class EncodingMeta:
    """Which factor columns a model expects, and the control column order."""

    factor_ids: tuple[str, ...]
    control_order: tuple[str, ...]


@dataclass(frozen=True)
class PredictionInterval:
    level: float
    lower: float
    upper: float


@dataclass(frozen=True)
class PredictionResult:
    ln_amount: float
    amount: float
    interval: PredictionInterval | None = None


@dataclass(frozen=True)
class FittedModel:
    """A fitted linear model over named regressors.

    ``xtx_inv`` is the inverse Gram matrix of the full design (intercept
    column first when one was fitted); models restored from coefficient
    tables lack it and cannot produce prediction intervals.
    """

    name: str
    intercept: float
    terms: tuple[ModelTerm, ...]
    n: int
    p: int
    r2: float
    adj_r2: float
    residual_sigma: float | None
    encoding_meta: EncodingMeta
    xtx_inv: tuple[tuple[float, ...], ...] | None = None

    @property
    def term_names(self) -> tuple[str, ...]:
        return tuple(term.name for term in self.terms)

    def coefficient(self, name: str) -> float:
        for term in self.terms:
            if term.name == name:
                return term.coefficient
        raise TermMismatch(f"model has no term {name!r}")


def adjusted_r2(r2: float, n: int, p: int) -> float:
    """Degrees-of-freedom corrected R-squared."""
    if n <= p + 1:
        raise DegenerateDoF(f"n={n} leaves no residual freedom for p={p}")
    return 1.0 - (1.0 - r2) * (n - 1) / (n - p - 1)


def _encoding_meta(term_names: Sequence[str]) -> EncodingMeta:
    factors = tuple(t for t in term_names if term_role(t) == "factor")
    controls = tuple(t for t in term_names if term_role(t) != "factor")
    return EncodingMeta(factor_ids=factors, control_order=controls)


def ols_fit(
    rows: Sequence[DesignRow], with_intercept: bool = True, name: str = "ols"
) -> FittedModel:
    """Fit y = intercept + X b by least squares with full inference."""
    if not rows:
        raise Underdetermined("no rows to fit")
    term_names = tuple(rows[0].regressors.keys())
    for row in rows[1:]:
        if tuple(row.regressors.keys()) != term_names:
            raise TermMismatch("rows disagree on regressor names or order")
    n = len(rows)
    k = len(term_names)
    if n <= k + 1:
        raise Underdetermined(f"{n} rows cannot identify {k} regressors")

    n_cols = k + 1 if with_intercept else k
    x = np.empty((n, n_cols))
    offset = 0
    if with_intercept:
        x[:, 0] = 1.0
        offset = 1
    for j, term in enumerate(term_names):
        x[:, offset + j] = [row.regressors[term] for row in rows]
    y = np.array([row.response for row in rows], dtype=float)

    if np.linalg.matrix_rank(x) < n_cols:
        raise RankDeficient("design matrix has collinear columns")

    q, r = np.linalg.qr(x)
    beta = np.linalg.solve(r, q.T @ y)
    r_inv = np.linalg.inv(r)
    xtx_inv = r_inv @ r_inv.T

    resid = y - x @ beta
    sse = float(resid @ resid)
    df_resid = n - n_cols
    sigma = math.sqrt(max(sse, 0.0) / df_resid)

    if with_intercept:
        centered = y - y.mean()
        sst = float(centered @ centered)
    else:
        sst = float(y @ y)
    if sst == 0.0:
        r2 = 1.0 if sse <= 1e-12 else 0.0
    else:
        r2 = 1.0 - sse / sst
        if with_intercept:
            r2 = min(max(r2, 0.0), 1.0)

    terms = []
    for j, term in enumerate(term_names):
        col = offset + j
        coef = float(beta[col])
        se = sigma * math.sqrt(max(float(xtx_inv[col, col]), 0.0))
        if se == 0.0:
            p_value = 0.0 if coef != 0.0 else 1.0
        else:
            p_value = t_two_sided_p(coef / se, df_resid)
        terms.append(
            ModelTerm(
                name=term,
                role=term_role(term),
                coefficient=coef,
                std_error=se,
                p_value=p_value,
            )
        )

    return FittedModel(
        name=name,
        intercept=float(beta[0]) if with_intercept else 0.0,
        terms=tuple(terms),
        n=n,
        p=k,
        r2=r2,
        adj_r2=adjusted_r2(r2, n, k),
        residual_sigma=sigma,
        encoding_meta=_encoding_meta(term_names),
        xtx_inv=tuple(tuple(float(v) for v in row_) for row_ in xtx_inv),
    )


def regressors_for(model: FittedModel, record: CampaignRecord) -> dict[str, float]:
    """Encode a campaign in exactly the term order the model expects.

    Models fitted on a single-platform or single-category slice omit the
    constant dummy, so the full control encoding is filtered down to the
    model's own term list.
    """
    row = encode_record(record, included_factors=model.encoding_meta.factor_ids)
    missing = [t for t in model.term_names if t not in row.regressors]
    if missing:
        raise TermMismatch(f"cannot encode terms {missing} from a campaign")
    return {name: row.regressors[name] for name in model.term_names}


def predict(
    model: FittedModel,
    regressors: Mapping[str, float],
    interval_level: float | None = None,
) -> PredictionResult:
    """Point prediction on the ln scale, with an optional prediction interval.

    The interval covers a new observation (residual noise included), not just
    the mean; it needs the training Gram matrix, so coefficient-only models
    return a bare point estimate.
    """
    names = tuple(regressors.keys())
    if names != model.term_names:
        raise TermMismatch(
            f"expected terms {list(model.term_names)}, got {list(names)}"
        )
    values = [float(regressors[t]) for t in names]
    ln_amount = model.intercept
    for term, value in zip(model.terms, values):
        ln_amount += term.coefficient * value

    interval = None
    if interval_level is not None:
        if not 0.0 < interval_level < 1.0:
            raise InvariantViolation("interval_level", "must lie in (0, 1)")
        if model.xtx_inv is not None and model.residual_sigma is not None:
            gram_inv = np.asarray(model.xtx_inv)
            with_one = len(gram_inv) == len(values) + 1
            x_vec = np.array([1.0] + values if with_one else values)
            leverage = float(x_vec @ gram_inv @ x_vec)
            df = model.n - len(gram_inv)
            quantile = t_quantile(1.0 - (1.0 - interval_level) / 2.0, df)
            half_width = quantile * model.residual_sigma * math.sqrt(1.0 + leverage)
            interval = PredictionInterval(
                level=interval_level,
                lower=ln_amount - half_width,
                upper=ln_amount + half_width,
            )

    return PredictionResult(
        ln_amount=ln_amount, amount=math.exp(ln_amount), interval=interval
    )
