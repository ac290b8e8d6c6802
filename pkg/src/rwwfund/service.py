"""HTTP prediction service backing the what-if browser companion.

Five read-only endpoints: the rubric, the model registry, one model's
document, point predictions, and ranked one-step what-if improvements. All
state is immutable after startup, so concurrent requests are safe and every
endpoint is idempotent.

Request bodies are validated by hand so the error contract stays explicit:
400 for a structurally malformed body, 404 for an unknown model id, 422 for
a well-formed body that breaks a domain invariant (illegal rating value,
goal below 1, and so on).
"""

from __future__ import annotations

from typing import Any, Mapping

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware

from .domain import CampaignRecord, Rating, question_index
from .errors import (
    InvalidControl,
    InvariantViolation,
    ParseError,
    UnknownQuestionId,
)
from .io import (
    ModelDocument,
    campaign_from_document,
    load_rubric,
    model_to_document,
    paper_baseline,
    rubric_to_document,
)
from .stats import predict, regressors_for


def _model_summary(model_id: str, doc: ModelDocument) -> dict:
    model = doc.model
    return {
        "id": model_id,
        "name": model.name,
        "n": model.n,
        "p": model.p,
        "r2": model.r2,
        "adj_r2": model.adj_r2,
        "factor_ids": list(model.encoding_meta.factor_ids),
        "supports_intervals": model.xtx_inv is not None
        and model.residual_sigma is not None,
    }


async def _json_body(request: Request) -> dict:
    try:
        data = await request.json()
    except Exception:
        raise HTTPException(400, "request body is not valid JSON") from None
    if not isinstance(data, dict):
        raise HTTPException(400, "request body must be a JSON object")
    return data


def _campaign(data: Mapping[str, Any]) -> CampaignRecord:
    try:
        return campaign_from_document(data)
    except ParseError as exc:
        raise HTTPException(400, str(exc)) from None
    except (InvariantViolation, InvalidControl, UnknownQuestionId) as exc:
        raise HTTPException(422, str(exc)) from None
    except (TypeError, ValueError, AttributeError) as exc:
        raise HTTPException(400, f"malformed body: {exc}") from None


def create_app(extra_models: Mapping[str, ModelDocument] | None = None) -> FastAPI:
    """Build the service; the bundled reference model is always registered."""
    registry: dict[str, ModelDocument] = {"paper-baseline": paper_baseline()}
    if extra_models:
        registry.update(extra_models)
    rubric_document = rubric_to_document(load_rubric())

    app = FastAPI(title="rwwfund prediction service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def _get_model(model_id: str) -> ModelDocument:
        if model_id not in registry:
            raise HTTPException(404, f"unknown model {model_id!r}")
        return registry[model_id]

    @app.get("/rubric")
    async def rubric() -> dict:
        return rubric_document

    @app.get("/models")
    async def models() -> dict:
        return {
            "models": [_model_summary(mid, doc) for mid, doc in registry.items()]
        }

    @app.get("/models/{model_id}")
    async def model_detail(model_id: str) -> dict:
        doc = _get_model(model_id)
        return {"id": model_id, **model_to_document(doc)}

    @app.post("/models/{model_id}/predict")
    async def predict_endpoint(model_id: str, request: Request) -> dict:
        doc = _get_model(model_id)
        data = await _json_body(request)
        record = _campaign(data)
        level = data.get("interval_level")
        if level is not None and not isinstance(level, (int, float)):
            raise HTTPException(400, "interval_level must be a number")
        regressors = regressors_for(doc.model, record)
        try:
            result = predict(doc.model, regressors, interval_level=level)
        except InvariantViolation as exc:
            raise HTTPException(422, str(exc)) from None
        contributions = {
            term.name: term.coefficient * regressors[term.name]
            for term in doc.model.terms
        }
        return {
            "model_id": model_id,
            "ln_amount": result.ln_amount,
            "amount": result.amount,
            "interval": {
                "level": result.interval.level,
                "lower": result.interval.lower,
                "upper": result.interval.upper,
            }
            if result.interval is not None
            else None,
            "intercept": doc.model.intercept,
            "per_term_contributions": contributions,
        }

    @app.post("/models/{model_id}/whatif")
    async def whatif_endpoint(model_id: str, request: Request) -> dict:
        doc = _get_model(model_id)
        data = await _json_body(request)
        record = _campaign(data)
        regressors = regressors_for(doc.model, record)
        base = predict(doc.model, regressors)

        improvements = []
        for qid in doc.model.encoding_meta.factor_ids:
            coefficient = doc.model.coefficient(qid)
            current: Rating = record.ratings[qid]
            nxt = current.one_step_up()
            delta = (
                coefficient * (nxt.score - current.score) if nxt is not None else 0.0
            )
            improvements.append(
                {
                    "factor": qid,
                    "current": current.label,
                    "next": nxt.label if nxt is not None else None,
                    "delta": delta,
                    "headroom": nxt is not None,
                    "projected_ln_amount": base.ln_amount + delta,
                }
            )
        improvements.sort(key=lambda e: (-e["delta"], question_index(e["factor"])))
        return {
            "model_id": model_id,
            "base": {"ln_amount": base.ln_amount, "amount": base.amount},
            "improvements": improvements,
        }

    return app
