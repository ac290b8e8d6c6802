"""Cohen's kappa, agreement matrices, and the rater-agreement gate."""

from __future__ import annotations

import random

import pytest

from rwwfund.domain import Rating
from rwwfund.errors import EmptyMatrix, InvariantViolation
from rwwfund.stats import (
    AGREEMENT_GATE,
    AgreementMatrix,
    cohen_kappa,
    meets_agreement_gate,
)


def kappa_oracle(counts, weights) -> float:
    """Direct Po/Pe arithmetic, independent of the implementation."""
    total = sum(sum(row) for row in counts)
    obs = [[c / total for c in row] for row in counts]
    row_m = [sum(row) for row in obs]
    col_m = [sum(obs[i][j] for i in range(3)) for j in range(3)]
    po = sum(weights[i][j] * obs[i][j] for i in range(3) for j in range(3))
    pe = sum(weights[i][j] * row_m[i] * col_m[j] for i in range(3) for j in range(3))
    return (po - pe) / (1.0 - pe)


LINEAR_W = [[1.0, 0.5, 0.0], [0.5, 1.0, 0.5], [0.0, 0.5, 1.0]]
IDENTITY_W = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]


class TestAgreementMatrix:
    def test_from_ratings_tabulates(self):
        m = AgreementMatrix.from_ratings(
            [Rating.NONE, Rating.PARTIAL, Rating.FULL, Rating.FULL],
            [Rating.NONE, Rating.PARTIAL, Rating.FULL, Rating.PARTIAL],
        )
        assert m.counts == ((1, 0, 0), (0, 1, 0), (0, 1, 1))
        assert m.total == 4

    def test_from_ratings_accepts_raw_scores(self):
        m = AgreementMatrix.from_ratings([0, 0.5, 1, 1], [0, 0.5, 1, 0.5])
        assert m.counts == ((1, 0, 0), (0, 1, 0), (0, 1, 1))

    def test_length_mismatch_rejected(self):
        with pytest.raises(InvariantViolation):
            AgreementMatrix.from_ratings([0, 1], [0])

    def test_shape_validated(self):
        with pytest.raises(InvariantViolation):
            AgreementMatrix(counts=((1, 0), (0, 1)))

    def test_negative_counts_rejected(self):
        with pytest.raises(InvariantViolation):
            AgreementMatrix(counts=((1, 0, 0), (0, -1, 0), (0, 0, 1)))

    def test_empty_matrix_rejected(self):
        with pytest.raises(EmptyMatrix):
            AgreementMatrix(counts=((0, 0, 0), (0, 0, 0), (0, 0, 0)))


class TestCohenKappa:
    def test_linear_weighted_fixture(self):
        m = AgreementMatrix.from_ratings([0, 0.5, 1, 1], [0, 0.5, 1, 0.5])
        value = cohen_kappa(m, weighting="linear")
        assert value == pytest.approx(0.7143, abs=1e-4)
        assert value == pytest.approx(kappa_oracle(m.counts, LINEAR_W), abs=1e-12)
        # Po = 0.875, Pe = 0.5625 by hand
        assert value == pytest.approx((0.875 - 0.5625) / (1 - 0.5625), abs=1e-12)

    def test_unweighted_fixture(self):
        m = AgreementMatrix.from_ratings([0, 0.5, 1, 1], [0, 0.5, 1, 0.5])
        value = cohen_kappa(m, weighting="unweighted")
        assert value == pytest.approx(7.0 / 11.0, abs=1e-12)
        assert value == pytest.approx(kappa_oracle(m.counts, IDENTITY_W), abs=1e-12)

    def test_perfect_agreement_spanning_levels(self):
        m = AgreementMatrix(counts=((2, 0, 0), (0, 3, 0), (0, 0, 4)))
        assert cohen_kappa(m, weighting="linear") == pytest.approx(1.0, abs=1e-12)
        assert cohen_kappa(m, weighting="unweighted") == pytest.approx(1.0, abs=1e-12)

    def test_single_agreeing_cell_defined_as_one(self):
        m = AgreementMatrix(counts=((0, 0, 0), (0, 5, 0), (0, 0, 0)))
        assert cohen_kappa(m, weighting="linear") == 1.0
        assert cohen_kappa(m, weighting="unweighted") == 1.0

    def test_independent_marginals_give_zero(self):
        # counts[i][j] = rows[i] * cols[j] / total, chosen to stay integral
        rows, cols, total = (10, 20, 20), (10, 15, 25), 50
        counts = tuple(
            tuple(r * c // total for c in cols) for r in rows
        )
        assert sum(sum(row) for row in counts) == total
        m = AgreementMatrix(counts=counts)
        assert cohen_kappa(m, weighting="linear") == pytest.approx(0.0, abs=1e-9)
        assert cohen_kappa(m, weighting="unweighted") == pytest.approx(0.0, abs=1e-9)

    def test_never_exceeds_one(self):
        rng = random.Random(11)
        for _ in range(200):
            counts = tuple(
                tuple(rng.randint(0, 9) for _ in range(3)) for _ in range(3)
            )
            if sum(sum(row) for row in counts) == 0:
                continue
            m = AgreementMatrix(counts=counts)
            for weighting in ("linear", "unweighted"):
                assert cohen_kappa(m, weighting=weighting) <= 1.0 + 1e-12

    def test_one_iff_no_weighted_disagreement(self):
        # off-diagonal mass with zero linear weight still costs agreement
        m = AgreementMatrix(counts=((3, 0, 1), (0, 3, 0), (1, 0, 3)))
        assert cohen_kappa(m, weighting="linear") < 1.0
        rng = random.Random(5)
        for _ in range(100):
            counts = tuple(
                tuple(rng.randint(0, 6) for _ in range(3)) for _ in range(3)
            )
            if sum(sum(row) for row in counts) == 0:
                continue
            m = AgreementMatrix(counts=counts)
            value = cohen_kappa(m, weighting="linear")
            disagreement = sum(
                (1.0 - LINEAR_W[i][j]) * counts[i][j]
                for i in range(3)
                for j in range(3)
            )
            if value == pytest.approx(1.0, abs=1e-12):
                assert disagreement == 0
            if disagreement == 0:
                assert value == pytest.approx(1.0, abs=1e-12)

    def test_matches_oracle_on_random_matrices(self):
        rng = random.Random(23)
        for _ in range(100):
            counts = tuple(
                tuple(rng.randint(0, 12) for _ in range(3)) for _ in range(3)
            )
            total = sum(sum(row) for row in counts)
            if total == 0:
                continue
            m = AgreementMatrix(counts=counts)
            for weighting, w in (("linear", LINEAR_W), ("unweighted", IDENTITY_W)):
                obs = [[c / total for c in row] for row in counts]
                row_m = [sum(row) for row in obs]
                col_m = [sum(obs[i][j] for i in range(3)) for j in range(3)]
                pe = sum(
                    w[i][j] * row_m[i] * col_m[j] for i in range(3) for j in range(3)
                )
                if pe >= 1.0:
                    continue
                assert cohen_kappa(m, weighting=weighting) == pytest.approx(
                    kappa_oracle(counts, w), abs=1e-12
                )

    def test_unknown_weighting_rejected(self):
        m = AgreementMatrix(counts=((1, 0, 0), (0, 1, 0), (0, 0, 1)))
        with pytest.raises(ValueError):
            cohen_kappa(m, weighting="quadratic")


class TestAgreementGate:
    def test_gate_value(self):
        assert AGREEMENT_GATE == 0.80

    def test_boundary(self):
        assert meets_agreement_gate(0.80)
        assert meets_agreement_gate(0.92)
        assert not meets_agreement_gate(0.7999)
        assert not meets_agreement_gate(0.5)

    def test_custom_gate(self):
        assert meets_agreement_gate(0.71, gate=0.7)
        assert not meets_agreement_gate(0.69, gate=0.7)
