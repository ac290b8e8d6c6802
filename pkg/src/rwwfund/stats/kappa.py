"""Cohen's kappa for two raters over the three-level rating alphabet."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..domain import Rating
from ..errors import EmptyMatrix, InvariantViolation

#: Agreement threshold the rating process must reach before a rubric is
#: considered rater-independent.
AGREEMENT_GATE = 0.80

_LEVELS = (Rating.NONE, Rating.PARTIAL, Rating.FULL)
_LEVEL_INDEX = {r: i for i, r in enumerate(_LEVELS)}


@dataclass(frozen=True)
class AgreementMatrix:
    """3x3 cross-tabulation of two raters' ordinal ratings.

    counts[i][j] is the number of items rater 1 put in level i and rater 2
    in level j, levels ordered None, Partial, Full.
    """

    counts: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(c) for c in row) for row in self.counts)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise InvariantViolation("counts", "agreement matrix must be 3x3")
        if any(c < 0 for row in rows for c in row):
            raise InvariantViolation("counts", "counts must be non-negative")
        if sum(c for row in rows for c in row) < 1:
            raise EmptyMatrix("agreement matrix has zero total count")
        object.__setattr__(self, "counts", rows)

    @property
    def total(self) -> int:
        return sum(c for row in self.counts for c in row)

    @classmethod
    def from_ratings(
        cls, rater1: Sequence[Rating | float], rater2: Sequence[Rating | float]
    ) -> "AgreementMatrix":
        """Tabulate two equal-length rating sequences (Rating or raw scores)."""
        if len(rater1) != len(rater2):
            raise InvariantViolation(
                "ratings", f"rater lengths differ ({len(rater1)} vs {len(rater2)})"
            )
        counts = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
        for a, b in zip(rater1, rater2):
            ra = a if isinstance(a, Rating) else Rating.from_score(a)
            rb = b if isinstance(b, Rating) else Rating.from_score(b)
            counts[_LEVEL_INDEX[ra]][_LEVEL_INDEX[rb]] += 1
        return cls(tuple(tuple(row) for row in counts))


def _weights(weighting: str) -> list[list[float]]:
    k = 3
    if weighting == "linear":
        return [[1.0 - abs(i - j) / (k - 1) for j in range(k)] for i in range(k)]
    if weighting == "unweighted":
        return [[1.0 if i == j else 0.0 for j in range(k)] for i in range(k)]
    raise ValueError(f"weighting must be 'linear' or 'unweighted' (got {weighting!r})")


def cohen_kappa(matrix: AgreementMatrix, weighting: str = "linear") -> float:
    """Chance-corrected agreement (Po - Pe) / (1 - Pe).

    Linear weights credit near-misses: w_ij = 1 - |i - j| / 2 on the
    three-level scale. Unweighted kappa is the identity-weight special case.
    When both raters are concentrated on a single agreeing level, expected
    and observed agreement are both 1 and kappa is defined as 1.
    """
    total = matrix.total
    if total < 1:
        raise EmptyMatrix("agreement matrix has zero total count")
    w = _weights(weighting)
    obs = [[c / total for c in row] for row in matrix.counts]
    row_marg = [sum(row) for row in obs]
    col_marg = [sum(obs[i][j] for i in range(3)) for j in range(3)]
    po = sum(w[i][j] * obs[i][j] for i in range(3) for j in range(3))
    pe = sum(w[i][j] * row_marg[i] * col_marg[j] for i in range(3) for j in range(3))
    if pe >= 1.0:
        return 1.0
    return (po - pe) / (1.0 - pe)


def meets_agreement_gate(kappa: float, gate: float = AGREEMENT_GATE) -> bool:
    """True when inter-rater agreement is acceptable for production rating."""
    return kappa >= gate
