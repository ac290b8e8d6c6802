"""Shared builders for campaign fixtures used across the test modules."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from rwwfund.domain import (
    QUESTION_IDS,
    CampaignRecord,
    Category,
    ControlVector,
    Dataset,
    Platform,
    Rating,
)


def make_ratings(default: Rating = Rating.NONE, **overrides: Rating) -> dict[str, Rating]:
    ratings = {qid: default for qid in QUESTION_IDS}
    for qid, rating in overrides.items():
        ratings[qid] = rating
    return ratings


def make_controls(**overrides) -> ControlVector:
    values = dict(
        characters=5000,
        figures=10,
        tables=1,
        videos=2,
        rewards=8,
        team_intro=True,
        timeline=False,
        goal=50_000.0,
    )
    values.update(overrides)
    return ControlVector(**values)


def make_record(
    record_id: str = "c-001",
    platform: Platform = Platform.KICKSTARTER,
    category: Category = Category.THREE_D_PRINTER,
    funding_raised: float = 25_000.0,
    controls: ControlVector | None = None,
    ratings: dict[str, Rating] | None = None,
) -> CampaignRecord:
    return CampaignRecord(
        id=record_id,
        title=f"campaign {record_id}",
        platform=platform,
        category=category,
        funding_raised=funding_raised,
        controls=controls or make_controls(),
        ratings=ratings or make_ratings(),
    )


@pytest.fixture
def record() -> CampaignRecord:
    return make_record()


@pytest.fixture
def tiny_dataset() -> Dataset:
    """Four records covering both platforms and both categories."""
    combos = [
        (Platform.KICKSTARTER, Category.THREE_D_PRINTER),
        (Platform.KICKSTARTER, Category.SMART_WATCH),
        (Platform.INDIEGOGO, Category.THREE_D_PRINTER),
        (Platform.INDIEGOGO, Category.SMART_WATCH),
    ]
    records = [
        make_record(
            record_id=f"c-{i:03d}",
            platform=p,
            category=c,
            funding_raised=10_000.0 * (i + 1),
            ratings=make_ratings(Rating.PARTIAL),
        )
        for i, (p, c) in enumerate(combos)
    ]
    return Dataset(records=tuple(records))


def dot_product_campaign() -> dict:
    """Smart watch on Kickstarter, unit goal/chars, five factors at Full.

    Every coefficient of the bundled baseline model either multiplies 0 or
    1 on this input, so the expected log prediction is a plain sum of the
    active coefficients.
    """
    ratings = {qid: 0.0 for qid in QUESTION_IDS}
    for qid in ("Q01", "Q08", "Q12", "Q16", "Q25"):
        ratings[qid] = 1.0
    return {
        "id": "fixture-allones",
        "title": "dot product fixture",
        "platform": "KS",
        "category": "SW",
        "funding_raised": 0,
        "controls": {
            "characters": 1,
            "figures": 0,
            "tables": 0,
            "videos": 0,
            "rewards": 0,
            "team_intro": False,
            "timeline": False,
            "goal": 1,
        },
        "ratings": ratings,
    }


@pytest.fixture
def dot_product_campaign_doc() -> dict:
    return dot_product_campaign()


@pytest.fixture
def dot_product_campaign_file(tmp_path: Path) -> Path:
    path = tmp_path / "allones.json"
    path.write_text(json.dumps(dot_product_campaign()), encoding="utf-8")
    return path
