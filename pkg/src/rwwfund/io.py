"""File formats: the campaign CSV, and JSON documents for models, rubrics,
campaigns, and synthetic-data recipes.

Column names, enum spellings (KS/IGG, 3DP/SW), and the 0|0.5|1 rating
alphabet are normative: files are meant to interchange byte-for-byte between
implementations. JSON documents carry a schema_version and serialize with a
fixed key order so round-trips are stable.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .domain import (
    QUESTION_IDS,
    CampaignRecord,
    Category,
    ControlVector,
    Dataset,
    Platform,
    Rating,
    Rubric,
    RubricQuestion,
)
from .errors import InvariantViolation, ParseError, SchemaVersionError
from .pipeline import DEFAULT_FACTOR_MEANS, ControlDistributions, SynthSpec
from .stats import EncodingMeta, FittedModel, ModelTerm

SCHEMA_VERSION = 1

DATASET_COLUMNS: tuple[str, ...] = (
    "id",
    "title",
    "platform",
    "category",
    "funding_raised",
    "goal",
    "characters",
    "figures",
    "tables",
    "videos",
    "rewards",
    "team_intro",
    "timeline",
) + tuple(q.lower() for q in QUESTION_IDS)


def canonical_json(obj: Any) -> str:
    """Stable serialization: insertion-ordered keys, 2-space indent, newline."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _format_number(value: float) -> str:
    if float(value) == int(value):
        return str(int(value))
    return repr(float(value))


# ---------------------------------------------------------------------------
# dataset CSV


def _parse_float(value: str, row: int, column: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ParseError(
            f"expected a number, got {value!r}", row=row, column=column
        ) from None


def _parse_count(value: str, row: int, column: str) -> int:
    number = _parse_float(value, row, column)
    if number != int(number):
        raise ParseError(f"expected an integer, got {value!r}", row=row, column=column)
    return int(number)


def _parse_flag(value: str, row: int, column: str) -> bool:
    if value not in ("0", "1"):
        raise ParseError(f"expected 0 or 1, got {value!r}", row=row, column=column)
    return value == "1"


def _parse_rating(value: str, row: int, column: str) -> Rating:
    score = _parse_float(value, row, column)
    try:
        return Rating.from_score(score)
    except InvariantViolation:
        raise InvariantViolation(
            column, f"row {row}: rating must be 0, 0.5, or 1 (got {value!r})"
        ) from None


def load_dataset(path: str | Path) -> Dataset:
    """Parse a campaign CSV; every domain invariant is enforced here."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file: missing header row", row=1) from None
        if tuple(header) != DATASET_COLUMNS:
            raise ParseError(
                f"bad header: expected {','.join(DATASET_COLUMNS)}", row=1
            )
        records = []
        for row_num, fields in enumerate(reader, start=2):
            if not fields:
                continue
            if len(fields) != len(DATASET_COLUMNS):
                raise ParseError(
                    f"expected {len(DATASET_COLUMNS)} columns, got {len(fields)}",
                    row=row_num,
                )
            cell = dict(zip(DATASET_COLUMNS, fields))
            controls = ControlVector(
                characters=_parse_count(cell["characters"], row_num, "characters"),
                figures=_parse_count(cell["figures"], row_num, "figures"),
                tables=_parse_count(cell["tables"], row_num, "tables"),
                videos=_parse_count(cell["videos"], row_num, "videos"),
                rewards=_parse_count(cell["rewards"], row_num, "rewards"),
                team_intro=_parse_flag(cell["team_intro"], row_num, "team_intro"),
                timeline=_parse_flag(cell["timeline"], row_num, "timeline"),
                goal=_parse_float(cell["goal"], row_num, "goal"),
            )
            ratings = {
                qid: _parse_rating(cell[qid.lower()], row_num, qid.lower())
                for qid in QUESTION_IDS
            }
            records.append(
                CampaignRecord(
                    id=cell["id"],
                    title=cell["title"],
                    platform=Platform.from_code(cell["platform"]),
                    category=Category.from_code(cell["category"]),
                    funding_raised=_parse_float(
                        cell["funding_raised"], row_num, "funding_raised"
                    ),
                    controls=controls,
                    ratings=ratings,
                )
            )
    return Dataset(records=tuple(records))


def save_dataset(dataset: Dataset, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(DATASET_COLUMNS)
        for record in dataset.records:
            row = [
                record.id,
                record.title,
                record.platform.code,
                record.category.code,
                _format_number(record.funding_raised),
                _format_number(record.controls.goal),
                str(record.controls.characters),
                str(record.controls.figures),
                str(record.controls.tables),
                str(record.controls.videos),
                str(record.controls.rewards),
                "1" if record.controls.team_intro else "0",
                "1" if record.controls.timeline else "0",
            ]
            row.extend(
                _format_number(record.ratings[qid].score) for qid in QUESTION_IDS
            )
            writer.writerow(row)


# ---------------------------------------------------------------------------
# model documents


@dataclass(frozen=True)
class ModelDocument:
    """A FittedModel plus file-level metadata."""

    model: FittedModel
    created_at: str
    provenance: str = ""
    schema_version: int = SCHEMA_VERSION


def make_document(
    model: FittedModel, provenance: str = "", created_at: str | None = None
) -> ModelDocument:
    if created_at is None:
        created_at = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return ModelDocument(model=model, created_at=created_at, provenance=provenance)


def _require(doc: Mapping[str, Any], key: str) -> Any:
    if key not in doc:
        raise ParseError(f"missing key {key!r}", column=key)
    return doc[key]


def _check_p_value(name: str, p_value: float | None) -> float | None:
    if p_value is not None and not 0.0 <= p_value <= 1.0:
        raise InvariantViolation(name, f"p_value must lie in [0,1] (got {p_value})")
    return p_value


def model_to_document(doc: ModelDocument) -> dict:
    model = doc.model
    return {
        "schema_version": doc.schema_version,
        "name": model.name,
        "created_at": doc.created_at,
        "intercept": model.intercept,
        "terms": [
            {
                "name": t.name,
                "role": t.role,
                "coefficient": t.coefficient,
                "std_error": t.std_error,
                "p_value": t.p_value,
            }
            for t in model.terms
        ],
        "stats": {
            "r2": model.r2,
            "adj_r2": model.adj_r2,
            "n": model.n,
            "p": model.p,
            "residual_sigma": model.residual_sigma,
        },
        "encoding_meta": {
            "factor_ids": list(model.encoding_meta.factor_ids),
            "control_order": list(model.encoding_meta.control_order),
        },
        "xtx_inv": [list(row) for row in model.xtx_inv]
        if model.xtx_inv is not None
        else None,
        "provenance": doc.provenance,
    }


def model_from_document(doc: Mapping[str, Any]) -> ModelDocument:
    version = _require(doc, "schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"unsupported schema_version {version} (supported: {SCHEMA_VERSION})"
        )
    stats = _require(doc, "stats")
    meta = _require(doc, "encoding_meta")
    terms = tuple(
        ModelTerm(
            name=_require(t, "name"),
            role=_require(t, "role"),
            coefficient=float(_require(t, "coefficient")),
            std_error=t.get("std_error"),
            p_value=_check_p_value(_require(t, "name"), t.get("p_value")),
        )
        for t in _require(doc, "terms")
    )
    xtx_inv = doc.get("xtx_inv")
    model = FittedModel(
        name=_require(doc, "name"),
        intercept=float(_require(doc, "intercept")),
        terms=terms,
        n=int(_require(stats, "n")),
        p=int(_require(stats, "p")),
        r2=float(_require(stats, "r2")),
        adj_r2=float(_require(stats, "adj_r2")),
        residual_sigma=stats.get("residual_sigma"),
        encoding_meta=EncodingMeta(
            factor_ids=tuple(_require(meta, "factor_ids")),
            control_order=tuple(_require(meta, "control_order")),
        ),
        xtx_inv=tuple(tuple(float(v) for v in row) for row in xtx_inv)
        if xtx_inv is not None
        else None,
    )
    return ModelDocument(
        model=model,
        created_at=_require(doc, "created_at"),
        provenance=doc.get("provenance", ""),
        schema_version=version,
    )


def save_model(doc: ModelDocument, path: str | Path) -> None:
    Path(path).write_text(canonical_json(model_to_document(doc)), encoding="utf-8")


def load_model(path: str | Path) -> ModelDocument:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    return model_from_document(raw)


def paper_baseline() -> ModelDocument:
    """The read-only reference model bundled with the package."""
    raw = json.loads(
        resources.files("rwwfund.data").joinpath("paper_baseline.json").read_text()
    )
    return model_from_document(raw)


# ---------------------------------------------------------------------------
# rubric


def load_rubric(path: str | Path | None = None) -> Rubric:
    """Load the 26-question rubric; defaults to the bundled file."""
    if path is None:
        text = resources.files("rwwfund.data").joinpath("rubric.json").read_text()
    else:
        text = Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    version = _require(raw, "schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(f"unsupported schema_version {version}")
    questions = []
    for entry in _require(raw, "questions"):
        criteria = _require(entry, "criteria")
        questions.append(
            RubricQuestion(
                id=_require(entry, "id"),
                main_category=_require(entry, "main_category"),
                subcategory=_require(entry, "subcategory"),
                short_name=_require(entry, "short_name"),
                text=_require(entry, "text"),
                criteria_full=_require(criteria, "full"),
                criteria_partial=_require(criteria, "partial"),
                criteria_none=_require(criteria, "none"),
            )
        )
    return Rubric(questions=tuple(questions))


def rubric_to_document(rubric: Rubric) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "questions": [
            {
                "id": q.id,
                "main_category": q.main_category,
                "subcategory": q.subcategory,
                "short_name": q.short_name,
                "text": q.text,
                "criteria": {
                    "full": q.criteria_full,
                    "partial": q.criteria_partial,
                    "none": q.criteria_none,
                },
            }
            for q in rubric.questions
        ],
    }


# ---------------------------------------------------------------------------
# campaign documents (single-record JSON used by `predict` and the service)


def campaign_from_document(doc: Mapping[str, Any]) -> CampaignRecord:
    controls_raw = _require(doc, "controls")
    ratings_raw = _require(doc, "ratings")
    ratings = {}
    for qid, value in ratings_raw.items():
        if isinstance(value, str):
            ratings[qid] = Rating.from_label(value)
        else:
            ratings[qid] = Rating.from_score(value)
    return CampaignRecord(
        id=str(doc.get("id", "campaign")),
        title=str(doc.get("title", "")),
        platform=Platform.from_code(_require(doc, "platform")),
        category=Category.from_code(_require(doc, "category")),
        funding_raised=float(doc.get("funding_raised", 0.0)),
        controls=ControlVector(
            characters=int(_require(controls_raw, "characters")),
            figures=int(_require(controls_raw, "figures")),
            tables=int(_require(controls_raw, "tables")),
            videos=int(_require(controls_raw, "videos")),
            rewards=int(_require(controls_raw, "rewards")),
            team_intro=bool(_require(controls_raw, "team_intro")),
            timeline=bool(_require(controls_raw, "timeline")),
            goal=float(_require(controls_raw, "goal")),
        ),
        ratings=ratings,
    )


def load_campaign(path: str | Path) -> CampaignRecord:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    return campaign_from_document(raw)


def campaign_to_document(record: CampaignRecord) -> dict:
    return {
        "id": record.id,
        "title": record.title,
        "platform": record.platform.code,
        "category": record.category.code,
        "funding_raised": record.funding_raised,
        "controls": {
            "characters": record.controls.characters,
            "figures": record.controls.figures,
            "tables": record.controls.tables,
            "videos": record.controls.videos,
            "rewards": record.controls.rewards,
            "team_intro": record.controls.team_intro,
            "timeline": record.controls.timeline,
            "goal": record.controls.goal,
        },
        "ratings": {qid: record.ratings[qid].score for qid in QUESTION_IDS},
    }


# ---------------------------------------------------------------------------
# synthetic-data recipes


def synth_spec_to_document(spec: SynthSpec) -> dict:
    dist = spec.control_distributions
    return {
        "schema_version": SCHEMA_VERSION,
        "n": spec.n,
        "planted": dict(spec.planted),
        "intercept": spec.intercept,
        "noise_sigma": spec.noise_sigma,
        "factor_means": {qid: spec.factor_means[qid] for qid in QUESTION_IDS},
        "control_distributions": {
            "group_weights": list(dist.group_weights),
            "figures": list(dist.figures),
            "tables": list(dist.tables),
            "videos": list(dist.videos),
            "rewards": list(dist.rewards),
            "team_intro_prob": dist.team_intro_prob,
            "timeline_prob": dist.timeline_prob,
            "ln_characters": list(dist.ln_characters),
            "ln_goal": list(dist.ln_goal),
        },
        "seed": spec.seed,
    }


def synth_spec_from_document(doc: Mapping[str, Any]) -> SynthSpec:
    version = _require(doc, "schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(f"unsupported schema_version {version}")
    dist_raw = doc.get("control_distributions")
    if dist_raw is None:
        dist = ControlDistributions()
    else:
        dist = ControlDistributions(
            group_weights=tuple(_require(dist_raw, "group_weights")),
            figures=tuple(_require(dist_raw, "figures")),
            tables=tuple(_require(dist_raw, "tables")),
            videos=tuple(_require(dist_raw, "videos")),
            rewards=tuple(_require(dist_raw, "rewards")),
            team_intro_prob=float(_require(dist_raw, "team_intro_prob")),
            timeline_prob=float(_require(dist_raw, "timeline_prob")),
            ln_characters=tuple(_require(dist_raw, "ln_characters")),
            ln_goal=tuple(_require(dist_raw, "ln_goal")),
        )
    means_raw = doc.get("factor_means")
    if means_raw is None:
        factor_means = dict(DEFAULT_FACTOR_MEANS)
    else:
        factor_means = {k: float(v) for k, v in means_raw.items()}
    return SynthSpec(
        n=int(_require(doc, "n")),
        planted={k: float(v) for k, v in _require(doc, "planted").items()},
        intercept=float(doc.get("intercept", 0.0)),
        noise_sigma=float(_require(doc, "noise_sigma")),
        factor_means=factor_means,
        control_distributions=dist,
        seed=int(doc.get("seed", 0)),
    )


def save_synth_spec(spec: SynthSpec, path: str | Path) -> None:
    Path(path).write_text(canonical_json(synth_spec_to_document(spec)), encoding="utf-8")


def load_synth_spec(path: str | Path) -> SynthSpec:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    return synth_spec_from_document(raw)
