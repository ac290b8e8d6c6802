"""Domain types, rating alphabet, and campaign encoding."""

from __future__ import annotations

import math
import random

import pytest

from rwwfund.domain import (
    CONTROL_TERMS,
    QUESTION_IDS,
    CampaignRecord,
    Category,
    ControlVector,
    Dataset,
    Platform,
    Rating,
    encode_controls,
    encode_factors,
    encode_record,
    encode_response,
    factor_means,
    factor_prevalence_filter,
    funded_percent,
    question_index,
)
from rwwfund.errors import (
    EmptyDataset,
    InvalidControl,
    InvariantViolation,
    UnknownQuestionId,
)
from rwwfund.io import load_rubric

from .conftest import make_controls, make_ratings, make_record


class TestRating:
    def test_score_mapping_is_bijective(self):
        for rating in Rating:
            assert Rating.from_score(rating.score) is rating
        assert sorted(r.score for r in Rating) == [0.0, 0.5, 1.0]

    def test_from_score_rejects_off_alphabet_values(self):
        for bad in (0.7, -0.5, 2, 0.499999):
            with pytest.raises(InvariantViolation):
                Rating.from_score(bad)

    def test_label_round_trip(self):
        assert Rating.NONE.label == "None"
        assert Rating.PARTIAL.label == "Partial"
        assert Rating.FULL.label == "Full"
        for rating in Rating:
            assert Rating.from_label(rating.label) is rating
        assert Rating.from_label(" full ") is Rating.FULL
        with pytest.raises(InvariantViolation):
            Rating.from_label("Mostly")

    def test_one_step_up_chain(self):
        assert Rating.NONE.one_step_up() is Rating.PARTIAL
        assert Rating.PARTIAL.one_step_up() is Rating.FULL
        assert Rating.FULL.one_step_up() is None


class TestEnums:
    def test_dummy_codings(self):
        assert Platform.INDIEGOGO.value == 0
        assert Platform.KICKSTARTER.value == 1
        assert Category.THREE_D_PRINTER.value == 0
        assert Category.SMART_WATCH.value == 1

    def test_code_round_trip(self):
        assert Platform.from_code("KS") is Platform.KICKSTARTER
        assert Platform.from_code("igg") is Platform.INDIEGOGO
        assert Category.from_code("3DP") is Category.THREE_D_PRINTER
        assert Category.from_code("sw") is Category.SMART_WATCH
        for enum in (Platform, Category):
            for member in enum:
                assert enum.from_code(member.code) is member

    def test_unknown_codes_rejected(self):
        with pytest.raises(InvariantViolation):
            Platform.from_code("GoFundMe")
        with pytest.raises(InvariantViolation):
            Category.from_code("Drone")


class TestQuestionIndex:
    def test_ids_are_q01_through_q26(self):
        assert len(QUESTION_IDS) == 26
        assert QUESTION_IDS[0] == "Q01"
        assert QUESTION_IDS[-1] == "Q26"
        assert [question_index(q) for q in QUESTION_IDS] == list(range(1, 27))

    def test_unknown_id_rejected(self):
        for bad in ("Q27", "Q00", "q01", "ln_goal"):
            with pytest.raises(UnknownQuestionId):
                question_index(bad)


class TestRubric:
    def test_bundled_rubric_structure(self):
        rubric = load_rubric()
        assert len(rubric.questions) == 26
        assert [q.id for q in rubric.questions] == list(QUESTION_IDS)
        for q in rubric.questions:
            idx = question_index(q.id)
            if idx <= 11:
                assert q.main_category == "Real"
            elif idx <= 21:
                assert q.main_category == "Win"
            else:
                assert q.main_category == "Worth"
            assert q.text
            assert q.criteria_full and q.criteria_partial and q.criteria_none

    def test_subcategory_boundaries(self):
        rubric = load_rubric()
        expected = {
            "Q01": "MarketAttractiveness",
            "Q05": "MarketAttractiveness",
            "Q06": "ProductFeasibility",
            "Q11": "ProductFeasibility",
            "Q12": "ProductAdvantage",
            "Q17": "ProductAdvantage",
            "Q18": "TeamCompetency",
            "Q21": "TeamCompetency",
            "Q22": "ExpectedReturn",
            "Q24": "ExpectedReturn",
            "Q25": "StrategicFit",
            "Q26": "StrategicFit",
        }
        for qid, sub in expected.items():
            assert rubric.question(qid).subcategory == sub


class TestControlVector:
    def test_rejects_empty_text(self):
        with pytest.raises(InvalidControl):
            make_controls(characters=0)

    def test_rejects_sub_unit_goal(self):
        with pytest.raises(InvalidControl):
            make_controls(goal=0.5)

    def test_rejects_negative_counts(self):
        for name in ("figures", "tables", "videos", "rewards"):
            with pytest.raises(InvalidControl):
                make_controls(**{name: -1})


class TestCampaignRecord:
    def test_rejects_negative_funding(self):
        with pytest.raises(InvariantViolation):
            make_record(funding_raised=-1.0)

    def test_requires_all_26_ratings(self):
        ratings = make_ratings()
        del ratings["Q13"]
        with pytest.raises(InvariantViolation):
            make_record(ratings=ratings)

    def test_rejects_unknown_rating_keys(self):
        ratings = make_ratings()
        ratings["Q99"] = Rating.FULL
        with pytest.raises(InvariantViolation):
            make_record(ratings=ratings)

    def test_ratings_normalized_to_question_order(self):
        shuffled = dict(reversed(list(make_ratings().items())))
        record = make_record(ratings=shuffled)
        assert list(record.ratings) == list(QUESTION_IDS)


class TestDataset:
    def test_duplicate_ids_rejected(self):
        with pytest.raises(InvariantViolation):
            Dataset(records=(make_record("a"), make_record("a")))

    def test_len(self, tiny_dataset):
        assert len(tiny_dataset) == 4


class TestEncodeResponse:
    def test_large_raise_matches_log_oracle(self):
        record = make_record(funding_raised=2_945_885)
        assert encode_response(record) == pytest.approx(math.log(2_945_885), abs=1e-12)
        assert encode_response(record) == pytest.approx(14.896, abs=1e-3)

    def test_unit_raise_is_zero(self):
        assert encode_response(make_record(funding_raised=1)) == 0.0

    def test_zero_raise_floors_to_zero(self):
        assert encode_response(make_record(funding_raised=0)) == 0.0

    def test_monotone_in_funding(self):
        rng = random.Random(7)
        amounts = sorted(rng.uniform(0, 1e7) for _ in range(50))
        encoded = [encode_response(make_record(funding_raised=a)) for a in amounts]
        assert all(lo <= hi for lo, hi in zip(encoded, encoded[1:]))


class TestEncodeControls:
    def test_term_order_is_fixed(self):
        out = encode_controls(
            make_controls(), Platform.KICKSTARTER, Category.SMART_WATCH
        )
        assert tuple(out) == CONTROL_TERMS

    def test_log_terms_match_oracle(self):
        out = encode_controls(
            make_controls(characters=10_000, goal=100_000.0),
            Platform.INDIEGOGO,
            Category.THREE_D_PRINTER,
        )
        assert out["ln_chars"] == pytest.approx(9.2103, abs=1e-4)
        assert out["ln_goal"] == pytest.approx(11.5129, abs=1e-4)
        assert out["ln_chars"] == pytest.approx(math.log(10_000), abs=1e-12)
        assert out["ln_goal"] == pytest.approx(math.log(100_000), abs=1e-12)

    def test_binary_codings(self):
        out = encode_controls(
            make_controls(team_intro=True, timeline=False),
            Platform.KICKSTARTER,
            Category.SMART_WATCH,
        )
        assert out["team_intro"] == 1.0
        assert out["timeline"] == 0.0
        assert out["platform"] == 1.0
        assert out["category"] == 1.0
        igg = encode_controls(
            make_controls(), Platform.INDIEGOGO, Category.THREE_D_PRINTER
        )
        assert igg["platform"] == 0.0
        assert igg["category"] == 0.0

    def test_deterministic_and_order_stable(self):
        controls = make_controls()
        first = encode_controls(controls, Platform.KICKSTARTER, Category.SMART_WATCH)
        second = encode_controls(controls, Platform.KICKSTARTER, Category.SMART_WATCH)
        assert list(first.items()) == list(second.items())


class TestEncodeFactors:
    def test_scores_in_included_order(self):
        ratings = make_ratings(Q01=Rating.PARTIAL, Q12=Rating.FULL)
        out = encode_factors(ratings, ["Q12", "Q01"])
        assert list(out.items()) == [("Q12", 1.0), ("Q01", 0.5)]

    def test_empty_included_yields_empty_map(self):
        assert encode_factors(make_ratings(), []) == {}

    def test_unknown_id_rejected(self):
        with pytest.raises(UnknownQuestionId):
            encode_factors({"Q01": Rating.FULL}, ["Q02"])


class TestEncodeRecord:
    def test_controls_then_factors(self, record):
        row = encode_record(record, included_factors=("Q03", "Q07"))
        assert tuple(row.regressors) == CONTROL_TERMS + ("Q03", "Q07")
        assert row.response == encode_response(record)


class TestFundedPercent:
    def test_under_goal(self):
        record = make_record(
            funding_raised=12_814_216, controls=make_controls(goal=32_000_000.0)
        )
        assert funded_percent(record) == pytest.approx(40.0, abs=0.1)

    def test_at_goal(self):
        record = make_record(funding_raised=50_000, controls=make_controls(goal=50_000.0))
        assert funded_percent(record) == 100.0

    def test_over_goal(self):
        record = make_record(
            funding_raised=144_403, controls=make_controls(goal=125_000.0)
        )
        assert funded_percent(record) == pytest.approx(116.0, abs=1.0)

    def test_invariant_under_joint_scaling(self):
        rng = random.Random(3)
        for _ in range(25):
            raised = rng.uniform(0, 1e6)
            goal = rng.uniform(1, 1e6)
            c = rng.uniform(0.1, 100)
            base = funded_percent(
                make_record(funding_raised=raised, controls=make_controls(goal=goal))
            )
            scaled = funded_percent(
                make_record(
                    funding_raised=c * raised, controls=make_controls(goal=c * goal)
                )
            )
            assert scaled == pytest.approx(base, rel=1e-12)


class TestPrevalenceFilter:
    def test_all_full_keeps_everything(self):
        dataset = Dataset(records=(make_record(ratings=make_ratings(Rating.FULL)),))
        kept, dropped = factor_prevalence_filter(dataset)
        assert kept == list(QUESTION_IDS)
        assert dropped == []

    def test_all_none_drops_everything(self):
        dataset = Dataset(records=(make_record(ratings=make_ratings(Rating.NONE)),))
        kept, dropped = factor_prevalence_filter(dataset)
        assert kept == []
        assert dropped == list(QUESTION_IDS)

    def test_partitions_in_question_order(self):
        ratings_a = make_ratings(Rating.NONE, Q01=Rating.FULL, Q20=Rating.FULL)
        ratings_b = make_ratings(Rating.NONE, Q05=Rating.PARTIAL, Q20=Rating.FULL)
        dataset = Dataset(
            records=(
                make_record("a", ratings=ratings_a),
                make_record("b", ratings=ratings_b),
            )
        )
        kept, dropped = factor_prevalence_filter(dataset, threshold=0.2)
        assert set(kept) | set(dropped) == set(QUESTION_IDS)
        assert set(kept) & set(dropped) == set()
        assert kept == sorted(kept, key=question_index)
        assert dropped == sorted(dropped, key=question_index)
        assert kept == ["Q01", "Q05", "Q20"]

    def test_threshold_comparison_is_strict(self):
        # one Partial over two records: mean exactly 0.25
        dataset = Dataset(
            records=(
                make_record("a", ratings=make_ratings(Q09=Rating.PARTIAL)),
                make_record("b"),
            )
        )
        assert factor_means(dataset)["Q09"] == 0.25
        kept, _ = factor_prevalence_filter(dataset, threshold=0.25)
        assert "Q09" in kept
        _, dropped = factor_prevalence_filter(dataset, threshold=0.2500001)
        assert "Q09" in dropped

    def test_empty_dataset_rejected(self):
        with pytest.raises(EmptyDataset):
            factor_prevalence_filter(Dataset(records=()))

    def test_threshold_must_be_a_fraction(self):
        dataset = Dataset(records=(make_record(),))
        for bad in (0.0, 1.0, -0.3, 2.0):
            with pytest.raises(ValueError):
                factor_prevalence_filter(dataset, threshold=bad)
