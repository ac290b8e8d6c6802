"""Greedy stepwise factor selection scored by K-fold cross-validation.

Control terms are forced into every candidate model; only question factors
enter or leave. An exhaustive enumerator over small candidate pools serves as
a verification oracle for the greedy path.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .domain import DesignRow, question_index
from .errors import (
    BadK,
    InvariantViolation,
    RankDeficient,
    TooManyCandidates,
    Underdetermined,
)
from .stats import FittedModel, ols_fit

IMPROVEMENT_TOLERANCE = 1e-6

_DIRECTIONS = ("forward", "backward", "bidirectional")
_SCORES = ("cv_r2", "in_sample_adj_r2")


@dataclass(frozen=True)
class SelectionSpec:
    """Search configuration: what is forced, what is eligible, how to score."""

    forced_terms: tuple[str, ...]
    candidate_terms: tuple[str, ...]
    k_folds: int = 5
    seed: int = 0
    direction: str = "bidirectional"
    score: str = "cv_r2"
    max_steps: int | None = None

    def __post_init__(self) -> None:
        if self.k_folds < 2:
            raise BadK(f"k_folds must be at least 2, got {self.k_folds}")
        if self.direction not in _DIRECTIONS:
            raise InvariantViolation("direction", f"unknown mode {self.direction!r}")
        if self.score not in _SCORES:
            raise InvariantViolation("score", f"unknown score {self.score!r}")
        overlap = set(self.forced_terms) & set(self.candidate_terms)
        if overlap:
            raise InvariantViolation(
                "candidate_terms", f"terms also forced: {sorted(overlap)}"
            )
        for term in self.candidate_terms:
            question_index(term)


@dataclass(frozen=True)
class SelectionStep:
    step: int
    action: str
    term: str
    score_before: float
    score_after: float


@dataclass(frozen=True)
class SelectionResult:
    selected: tuple[str, ...]
    trace: tuple[SelectionStep, ...]
    fold_scores: tuple[float, ...]
    final_score: float
    final_model: FittedModel


def kfold_split(n: int, k: int, seed: int) -> list[tuple[int, ...]]:
    """Shuffle 0..n-1 with the seed and cut into k near-equal folds."""
    if not 2 <= k <= n:
        raise BadK(f"need 2 <= k <= n, got k={k}, n={n}")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    base, extra = divmod(n, k)
    folds = []
    start = 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        folds.append(tuple(sorted(int(j) for j in perm[start : start + size])))
        start += size
    return folds


def _restrict(
    rows: Sequence[DesignRow], terms: Sequence[str]
) -> list[DesignRow]:
    return [
        DesignRow(
            response=row.response,
            regressors={t: row.regressors[t] for t in terms},
        )
        for row in rows
    ]


def _subset_terms(
    forced_terms: Sequence[str], factor_subset: Sequence[str]
) -> tuple[str, ...]:
    ordered = sorted(factor_subset, key=question_index)
    return tuple(forced_terms) + tuple(ordered)


def _design(
    rows: Sequence[DesignRow], terms: Sequence[str]
) -> tuple[np.ndarray, np.ndarray]:
    x = np.empty((len(rows), len(terms) + 1))
    x[:, 0] = 1.0
    for j, term in enumerate(terms):
        x[:, j + 1] = [row.regressors[term] for row in rows]
    y = np.array([row.response for row in rows], dtype=float)
    return x, y


def _split_indices(
    n: int, folds: Sequence[Sequence[int]]
) -> list[tuple[np.ndarray, np.ndarray]]:
    pairs = []
    for fold in folds:
        mask = np.ones(n, dtype=bool)
        mask[list(fold)] = False
        pairs.append((np.flatnonzero(mask), np.asarray(fold, dtype=int)))
    return pairs


def _fold_scores_from_design(
    x: np.ndarray,
    y: np.ndarray,
    splits: Sequence[tuple[np.ndarray, np.ndarray]],
) -> list[float]:
    """Out-of-fold R² per fold; -inf everywhere if any training fit is singular.

    Fitting here skips the inference ols_fit carries (no standard errors are
    needed to score a fold) but keeps its preconditions: too few training
    rows raise, rank-deficient training designs disqualify the subset.
    """
    n_cols = x.shape[1]
    scores = []
    for train_idx, test_idx in splits:
        if len(train_idx) <= n_cols:
            raise Underdetermined(
                f"{len(train_idx)} training rows cannot identify {n_cols - 1} regressors"
            )
        beta, _, rank, _ = np.linalg.lstsq(x[train_idx], y[train_idx], rcond=None)
        if rank < n_cols:
            return [-math.inf] * len(splits)
        y_test = y[test_idx]
        resid = y_test - x[test_idx] @ beta
        sse = float(resid @ resid)
        centered = y_test - y_test.mean()
        sst = float(centered @ centered)
        if sst == 0.0:
            scores.append(1.0 if sse <= 1e-12 else 0.0)
        else:
            scores.append(1.0 - sse / sst)
    return scores


def fold_r2_scores(
    rows: Sequence[DesignRow],
    forced_terms: Sequence[str],
    factor_subset: Sequence[str],
    folds: Sequence[Sequence[int]],
) -> list[float]:
    """Out-of-fold R² per fold for forced terms plus the factor subset."""
    x, y = _design(rows, _subset_terms(forced_terms, factor_subset))
    return _fold_scores_from_design(x, y, _split_indices(len(rows), folds))


def cv_score(
    rows: Sequence[DesignRow],
    forced_terms: Sequence[str],
    factor_subset: Sequence[str],
    folds: Sequence[Sequence[int]],
) -> float:
    """Mean out-of-fold R² of forced terms plus the given factor subset."""
    scores = fold_r2_scores(rows, forced_terms, factor_subset, folds)
    return sum(scores) / len(scores)


def _in_sample_score(
    rows: Sequence[DesignRow],
    forced_terms: Sequence[str],
    factor_subset: Sequence[str],
) -> float:
    restricted = _restrict(rows, _subset_terms(forced_terms, factor_subset))
    try:
        return ols_fit(restricted).adj_r2
    except RankDeficient:
        return -math.inf


def _move_key(score: float, size: int, term: str) -> tuple:
    return (-score, size, question_index(term))


def stepwise_select(rows: Sequence[DesignRow], spec: SelectionSpec) -> SelectionResult:
    """Greedy add/remove search over candidate factors, forced terms fixed.

    A move is taken only when it beats the current score by more than
    IMPROVEMENT_TOLERANCE; ties prefer fewer terms, then the lowest question
    index, so the outcome is independent of candidate list order.
    """
    folds = kfold_split(len(rows), spec.k_folds, spec.seed)
    candidates = tuple(sorted(spec.candidate_terms, key=question_index))

    # One design matrix over every term the search can touch; candidate
    # evaluations slice columns out of it instead of re-encoding rows.
    all_terms = tuple(spec.forced_terms) + candidates
    x_all, y_all = _design(rows, all_terms)
    column = {term: j + 1 for j, term in enumerate(all_terms)}
    forced_cols = [0] + [column[t] for t in spec.forced_terms]
    splits = _split_indices(len(rows), folds)
    cache: dict[tuple[str, ...], float] = {}

    def scorer(subset: tuple[str, ...]) -> float:
        key = tuple(sorted(subset))
        if key in cache:
            return cache[key]
        if spec.score == "in_sample_adj_r2":
            score = _in_sample_score(rows, spec.forced_terms, subset)
        else:
            cols = forced_cols + [column[t] for t in sorted(subset, key=question_index)]
            fold_scores = _fold_scores_from_design(x_all[:, cols], y_all, splits)
            score = sum(fold_scores) / len(fold_scores)
        cache[key] = score
        return score

    if spec.direction == "backward":
        selected: tuple[str, ...] = candidates
    else:
        selected = ()
    current = scorer(selected)
    max_steps = (
        spec.max_steps if spec.max_steps is not None else 2 * len(candidates) + 1
    )

    trace: list[SelectionStep] = []
    for step in range(max_steps):
        moves: list[tuple[tuple, str, str, tuple[str, ...], float]] = []
        if spec.direction in ("forward", "bidirectional"):
            for term in candidates:
                if term in selected:
                    continue
                subset = _subset_terms((), (*selected, term))
                score = scorer(subset)
                moves.append((_move_key(score, len(subset), term), "add", term, subset, score))
        if spec.direction in ("backward", "bidirectional"):
            for term in selected:
                subset = tuple(t for t in selected if t != term)
                score = scorer(subset)
                moves.append((_move_key(score, len(subset), term), "remove", term, subset, score))
        if not moves:
            break
        moves.sort(key=lambda m: m[0])
        _, action, term, subset, score = moves[0]
        if score <= current + IMPROVEMENT_TOLERANCE:
            break
        trace.append(
            SelectionStep(
                step=step,
                action=action,
                term=term,
                score_before=current,
                score_after=score,
            )
        )
        selected = subset
        current = score

    fold_scores = tuple(fold_r2_scores(rows, spec.forced_terms, selected, folds))
    final_rows = _restrict(rows, _subset_terms(spec.forced_terms, selected))
    final_model = ols_fit(final_rows, name="stepwise")
    return SelectionResult(
        selected=selected,
        trace=tuple(trace),
        fold_scores=fold_scores,
        final_score=current,
        final_model=final_model,
    )


def best_subset(
    rows: Sequence[DesignRow],
    forced_terms: Sequence[str],
    candidates: Sequence[str],
    folds: Sequence[Sequence[int]],
) -> tuple[tuple[str, ...], float]:
    """Exhaustive argmax of cv_score over every candidate subset."""
    if len(candidates) > 15:
        raise TooManyCandidates(
            f"{len(candidates)} candidates; exhaustive search capped at 15"
        )
    ordered = sorted(candidates, key=question_index)
    best: tuple[tuple[str, ...], float] | None = None
    best_key: tuple | None = None
    for size in range(len(ordered) + 1):
        for combo in itertools.combinations(ordered, size):
            score = cv_score(rows, forced_terms, combo, folds)
            key = (-score, len(combo), tuple(question_index(q) for q in combo))
            if best_key is None or key < best_key:
                best_key = key
                best = (combo, score)
    assert best is not None
    return best
