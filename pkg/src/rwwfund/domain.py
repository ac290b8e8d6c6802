"""Campaign domain model and regression encoding.

A campaign is rated on 26 Real-Win-Worth questions (ordinal evidence levels
None / Partial / Full, scored 0 / 0.5 / 1) and measured on eight exogenous
page features (the control variables). This module holds those types plus
the pure functions that turn a campaign into a numeric design row: the log
response, the fixed-order control terms, and the factor score columns.

Everything here is an immutable value; all operations are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from .errors import (
    EmptyDataset,
    InvalidControl,
    InvariantViolation,
    UnknownQuestionId,
)

QUESTION_IDS: tuple[str, ...] = tuple(f"Q{i:02d}" for i in range(1, 27))

#: Fixed emission order of the always-included regressors. The two dummies
#: come first, then the raw counts, the binary flags, and the two log terms.
CONTROL_TERMS: tuple[str, ...] = (
    "category",
    "platform",
    "figures",
    "tables",
    "videos",
    "rewards",
    "team_intro",
    "timeline",
    "ln_goal",
    "ln_chars",
)

MAIN_CATEGORIES = ("Real", "Win", "Worth")
SUBCATEGORIES = (
    "MarketAttractiveness",
    "ProductFeasibility",
    "ProductAdvantage",
    "TeamCompetency",
    "ExpectedReturn",
    "StrategicFit",
)

# Question blocks: main category and subcategory are fixed by position.
_MAIN_BY_INDEX = {**{i: "Real" for i in range(1, 12)},
                  **{i: "Win" for i in range(12, 22)},
                  **{i: "Worth" for i in range(22, 27)}}
_SUB_BY_INDEX = {**{i: "MarketAttractiveness" for i in range(1, 6)},
                 **{i: "ProductFeasibility" for i in range(6, 12)},
                 **{i: "ProductAdvantage" for i in range(12, 18)},
                 **{i: "TeamCompetency" for i in range(18, 22)},
                 **{i: "ExpectedReturn" for i in range(22, 25)},
                 **{i: "StrategicFit" for i in range(25, 27)}}


def question_index(qid: str) -> int:
    """Numeric index of a question id ('Q07' -> 7). Raises on unknown ids."""
    if qid not in _QID_TO_INDEX:
        raise UnknownQuestionId(f"unknown question id {qid!r}")
    return _QID_TO_INDEX[qid]


_QID_TO_INDEX = {qid: i + 1 for i, qid in enumerate(QUESTION_IDS)}


class Rating(Enum):
    """Ordinal evidence level with its numeric score."""

    NONE = 0.0
    PARTIAL = 0.5
    FULL = 1.0

    @property
    def score(self) -> float:
        return self.value

    @property
    def label(self) -> str:
        return _RATING_LABELS[self]

    @classmethod
    def from_score(cls, score: float) -> "Rating":
        """Inverse of .score; accepts exactly 0, 0.5, or 1."""
        try:
            return cls(float(score))
        except ValueError:
            raise InvariantViolation(
                "rating", f"score must be one of 0, 0.5, 1 (got {score!r})"
            ) from None

    @classmethod
    def from_label(cls, label: str) -> "Rating":
        key = label.strip().lower()
        if key not in _LABEL_TO_RATING:
            raise InvariantViolation(
                "rating", f"label must be None, Partial, or Full (got {label!r})"
            )
        return _LABEL_TO_RATING[key]

    def one_step_up(self) -> "Rating | None":
        """Next level up (None -> Partial -> Full), or None at the top."""
        if self is Rating.FULL:
            return None
        return Rating.PARTIAL if self is Rating.NONE else Rating.FULL


_RATING_LABELS = {Rating.NONE: "None", Rating.PARTIAL: "Partial", Rating.FULL: "Full"}
_LABEL_TO_RATING = {"none": Rating.NONE, "partial": Rating.PARTIAL, "full": Rating.FULL}


class Platform(Enum):
    """Crowdfunding platform; the enum value is the dummy coding."""

    INDIEGOGO = 0
    KICKSTARTER = 1

    @property
    def code(self) -> str:
        return "IGG" if self is Platform.INDIEGOGO else "KS"

    @classmethod
    def from_code(cls, code: str) -> "Platform":
        try:
            return _PLATFORM_CODES[code.strip().upper()]
        except KeyError:
            raise InvariantViolation(
                "platform", f"must be KS or IGG (got {code!r})"
            ) from None


class Category(Enum):
    """Product category; the enum value is the dummy coding."""

    THREE_D_PRINTER = 0
    SMART_WATCH = 1

    @property
    def code(self) -> str:
        return "3DP" if self is Category.THREE_D_PRINTER else "SW"

    @classmethod
    def from_code(cls, code: str) -> "Category":
        try:
            return _CATEGORY_CODES[code.strip().upper()]
        except KeyError:
            raise InvariantViolation(
                "category", f"must be 3DP or SW (got {code!r})"
            ) from None


_PLATFORM_CODES = {"IGG": Platform.INDIEGOGO, "KS": Platform.KICKSTARTER}
_CATEGORY_CODES = {"3DP": Category.THREE_D_PRINTER, "SW": Category.SMART_WATCH}


@dataclass(frozen=True)
class RubricQuestion:
    id: str
    main_category: str
    subcategory: str
    short_name: str
    text: str
    criteria_full: str
    criteria_partial: str
    criteria_none: str


@dataclass(frozen=True)
class Rubric:
    """The 26-question rating rubric, validated against the fixed structure."""

    questions: tuple[RubricQuestion, ...]

    def __post_init__(self):
        object.__setattr__(self, "questions", tuple(self.questions))
        ids = [q.id for q in self.questions]
        if ids != list(QUESTION_IDS):
            raise InvariantViolation(
                "questions",
                f"rubric must contain exactly Q01..Q26 in order (got {len(ids)} ids)",
            )
        for q in self.questions:
            idx = question_index(q.id)
            if q.main_category != _MAIN_BY_INDEX[idx]:
                raise InvariantViolation(
                    q.id, f"main_category must be {_MAIN_BY_INDEX[idx]}"
                )
            if q.subcategory != _SUB_BY_INDEX[idx]:
                raise InvariantViolation(
                    q.id, f"subcategory must be {_SUB_BY_INDEX[idx]}"
                )

    def question(self, qid: str) -> RubricQuestion:
        return self.questions[question_index(qid) - 1]


@dataclass(frozen=True)
class ControlVector:
    """Exogenous campaign-page features; always kept in every model."""

    characters: int
    figures: int
    tables: int
    videos: int
    rewards: int
    team_intro: bool
    timeline: bool
    goal: float

    def __post_init__(self):
        if self.characters < 1:
            raise InvalidControl(f"characters must be >= 1 (got {self.characters})")
        if self.goal < 1:
            raise InvalidControl(f"goal must be >= 1 (got {self.goal})")
        for name in ("figures", "tables", "videos", "rewards"):
            if getattr(self, name) < 0:
                raise InvalidControl(f"{name} must be >= 0 (got {getattr(self, name)})")


@dataclass(frozen=True)
class CampaignRecord:
    """One campaign: identity, outcome, controls, and the 26 factor ratings."""

    id: str
    title: str
    platform: Platform
    category: Category
    funding_raised: float
    controls: ControlVector
    ratings: Mapping[str, Rating]

    def __post_init__(self):
        if self.funding_raised < 0:
            raise InvariantViolation(
                "funding_raised", f"must be >= 0 (got {self.funding_raised})"
            )
        missing = [q for q in QUESTION_IDS if q not in self.ratings]
        if missing:
            raise InvariantViolation("ratings", f"missing ratings for {missing}")
        extra = [q for q in self.ratings if q not in _QID_TO_INDEX]
        if extra:
            raise InvariantViolation("ratings", f"unknown question ids {extra}")
        # Normalize to Q-order so downstream iteration is deterministic.
        object.__setattr__(
            self, "ratings", {q: self.ratings[q] for q in QUESTION_IDS}
        )


@dataclass(frozen=True)
class Dataset:
    """Immutable collection of campaign records."""

    records: tuple[CampaignRecord, ...]
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        seen: set[str] = set()
        for r in self.records:
            if r.id in seen:
                raise InvariantViolation("id", f"duplicate record id {r.id!r}")
            seen.add(r.id)

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class DesignRow:
    """One regression row: log response plus an ordered term -> value map."""

    response: float
    regressors: Mapping[str, float]


def encode_response(record: CampaignRecord) -> float:
    """ln of funding raised, floored at 1 so a zero raise encodes to 0."""
    return math.log(max(record.funding_raised, 1.0))


def encode_controls(
    controls: ControlVector, platform: Platform, category: Category
) -> dict[str, float]:
    """Control terms in the fixed CONTROL_TERMS order (dummies included)."""
    if controls.characters < 1:
        raise InvalidControl(f"characters must be >= 1 (got {controls.characters})")
    if controls.goal < 1:
        raise InvalidControl(f"goal must be >= 1 (got {controls.goal})")
    return {
        "category": float(category.value),
        "platform": float(platform.value),
        "figures": float(controls.figures),
        "tables": float(controls.tables),
        "videos": float(controls.videos),
        "rewards": float(controls.rewards),
        "team_intro": 1.0 if controls.team_intro else 0.0,
        "timeline": 1.0 if controls.timeline else 0.0,
        "ln_goal": math.log(controls.goal),
        "ln_chars": math.log(controls.characters),
    }


def encode_factors(
    ratings: Mapping[str, Rating], included: Sequence[str]
) -> dict[str, float]:
    """Numeric factor scores, emitted in the order of `included`."""
    out: dict[str, float] = {}
    for qid in included:
        if qid not in ratings:
            raise UnknownQuestionId(f"no rating for {qid!r}")
        out[qid] = ratings[qid].score
    return out


def encode_record(
    record: CampaignRecord, included_factors: Sequence[str] = ()
) -> DesignRow:
    """Full design row for a record: controls first, then requested factors."""
    regressors = encode_controls(record.controls, record.platform, record.category)
    regressors.update(encode_factors(record.ratings, included_factors))
    return DesignRow(response=encode_response(record), regressors=regressors)


def funded_percent(record: CampaignRecord) -> float:
    """Funding raised over goal, in percent."""
    return 100.0 * record.funding_raised / record.controls.goal


def factor_means(dataset: Dataset) -> dict[str, float]:
    """Mean score per question over all records."""
    if not dataset.records:
        raise EmptyDataset("cannot compute factor means of an empty dataset")
    n = len(dataset.records)
    return {
        q: sum(r.ratings[q].score for r in dataset.records) / n for q in QUESTION_IDS
    }


def factor_prevalence_filter(
    dataset: Dataset, threshold: float = 0.03
) -> tuple[list[str], list[str]]:
    """Partition questions into (kept, dropped) by mean score.

    A question is dropped when its mean score over all records is strictly
    below `threshold`; too little evidence ever appears for it to carry
    signal. Both lists preserve Q-order.
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must be in (0, 1), got {threshold}")
    means = factor_means(dataset)
    kept = [q for q in QUESTION_IDS if means[q] >= threshold]
    dropped = [q for q in QUESTION_IDS if means[q] < threshold]
    return kept, dropped
