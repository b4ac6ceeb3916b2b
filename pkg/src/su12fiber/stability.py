"""Numerical stability of vanishing-locus partitions.

Fix a genus g >= 2 and a degree d.  The fiber data lives over N = 4g - 4
marked points, each labeled by which Higgs-field component vanishes there:
the beta component, the gamma component, or neither.  Writing d_beta,
d_gamma, d_r for the three part sizes (d_beta + d_gamma + d_r = N), the
classification is a pair of linear inequalities:

    stable                d_gamma < 2(g-1+d)  and  d_beta < 2(g-1-d)
    strictly polystable   d_gamma = 2(g-1+d)  and  d_beta = 2(g-1-d)
    semistable, not polystable   both weak inequalities hold, neither
                                 of the two cases above applies
    unstable              some weak inequality fails

Stable objects can exist only in the strict Milnor-Wood range |d| < g - 1;
at |d| = g - 1 one of the strict bounds collapses to d_* < 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .errors import InvalidGenusError, LengthMismatchError


class Label(Enum):
    """Which Higgs component vanishes at a marked point."""

    BETA = "beta"
    GAMMA = "gamma"
    REST = "rest"


class StabilityClass(Enum):
    STABLE = "Stable"
    STRICTLY_POLYSTABLE = "StrictlyPolystable"
    SEMISTABLE_NOT_POLYSTABLE = "SemistableNotPolystable"
    UNSTABLE = "Unstable"


@dataclass(frozen=True)
class ModuliParams:
    """Genus and degree, with the derived slot count and torus weight.

    N = 4g - 4 marked points; n = 2(g-1+d) is the weight budget entering
    both the stability inequalities and the torus linearization.  In the
    strict Milnor-Wood range |d| < g - 1 we automatically get 0 < n < N.
    """

    g: int
    d: int

    def __post_init__(self) -> None:
        if not isinstance(self.g, int) or self.g < 2:
            raise InvalidGenusError(f"genus must be an integer >= 2, got {self.g!r}")
        if not isinstance(self.d, int):
            raise ValueError(f"degree must be an integer, got {self.d!r}")

    @property
    def N(self) -> int:
        return 4 * self.g - 4

    @property
    def n(self) -> int:
        return 2 * (self.g - 1 + self.d)

    @property
    def gamma_bound(self) -> int:
        """Strict upper bound for d_gamma in the stable range, 2(g-1+d)."""
        return self.n

    @property
    def beta_bound(self) -> int:
        """Strict upper bound for d_beta in the stable range, 2(g-1-d)."""
        return 2 * (self.g - 1 - self.d)


def milnor_wood_admits_stable(g: int, d: int) -> bool:
    """Whether stable objects can exist at all: |d| < g - 1.

    Semistable objects survive up to |d| <= g - 1; the strict inequality
    is what every structural statement in this package assumes.
    """
    if not isinstance(g, int) or g < 2:
        raise InvalidGenusError(f"genus must be an integer >= 2, got {g!r}")
    return abs(d) < g - 1


@dataclass(frozen=True)
class LabeledPartition:
    """Per-slot labels of the N marked points."""

    labels: tuple[Label, ...]

    @staticmethod
    def of(labels: Iterable[Label]) -> "LabeledPartition":
        return LabeledPartition(tuple(labels))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def d_beta(self) -> int:
        return sum(1 for v in self.labels if v is Label.BETA)

    @property
    def d_gamma(self) -> int:
        return sum(1 for v in self.labels if v is Label.GAMMA)

    @property
    def d_r(self) -> int:
        return sum(1 for v in self.labels if v is Label.REST)


def classify_counts(p: ModuliParams, d_beta: int, d_gamma: int) -> StabilityClass:
    """Classification from the part sizes alone (labels never matter)."""
    if d_beta < 0 or d_gamma < 0 or d_beta + d_gamma > p.N:
        raise ValueError(
            f"part sizes ({d_beta}, {d_gamma}) do not fit into N = {p.N} slots"
        )
    if d_gamma < p.gamma_bound and d_beta < p.beta_bound:
        return StabilityClass.STABLE
    if d_gamma == p.gamma_bound and d_beta == p.beta_bound:
        return StabilityClass.STRICTLY_POLYSTABLE
    if d_gamma <= p.gamma_bound and d_beta <= p.beta_bound:
        return StabilityClass.SEMISTABLE_NOT_POLYSTABLE
    return StabilityClass.UNSTABLE


def classify_partition(p: ModuliParams, part: LabeledPartition) -> StabilityClass:
    if part.size != p.N:
        raise LengthMismatchError(
            f"partition has {part.size} slots, expected N = {p.N}"
        )
    return classify_counts(p, part.d_beta, part.d_gamma)


def stratum_dimension(p: ModuliParams, part: LabeledPartition) -> int:
    """Dimension g + d_r of the stable stratum containing the partition.

    Only stable partitions lie in a stratum of the fiber; anything else
    is a domain error.
    """
    if classify_partition(p, part) is not StabilityClass.STABLE:
        raise ValueError("stratum dimension is defined for stable partitions only")
    return p.g + part.d_r


def polystable_split_degrees(p: ModuliParams) -> tuple[int, int]:
    """Degrees of the two line summands of a strictly polystable object.

    The polystable locus forces d_beta = 2(g-1-d) and the underlying bundle
    splits into line bundles of degrees d + d_beta - (2g-2) and
    -2d - d_beta + (2g-2); the degrees sum to -d.
    """
    if abs(p.d) > p.g - 1:
        raise ValueError(
            "strictly polystable objects exist only for |d| <= g - 1"
        )
    d_beta = p.beta_bound
    two_g_minus_2 = 2 * p.g - 2
    deg1 = p.d + d_beta - two_g_minus_2
    deg2 = -2 * p.d - d_beta + two_g_minus_2
    return deg1, deg2


@dataclass(frozen=True)
class CensusRow:
    d_beta: int
    d_gamma: int
    d_r: int
    stability: StabilityClass
    labeled_count: int
    stratum_dim: int | None


@dataclass(frozen=True)
class CensusResult:
    params: ModuliParams
    rows: tuple[CensusRow, ...]

    def class_total(self, cls: StabilityClass) -> int:
        return sum(r.labeled_count for r in self.rows if r.stability is cls)

    @property
    def stable_total(self) -> int:
        return self.class_total(StabilityClass.STABLE)

    @property
    def grand_total(self) -> int:
        return sum(r.labeled_count for r in self.rows)


def census(p: ModuliParams) -> CensusResult:
    """Exhaustive classification of all (d_beta, d_gamma) cells.

    Each cell carries the number of labeled partitions realizing it,
    the multinomial N! / (d_beta! d_gamma! d_r!), so the grand total is
    3^N.  Stable cells also carry the stratum dimension g + d_r.
    """
    N = p.N
    rows = []
    for d_beta in range(N + 1):
        for d_gamma in range(N + 1 - d_beta):
            d_r = N - d_beta - d_gamma
            cls = classify_counts(p, d_beta, d_gamma)
            count = math.comb(N, d_beta) * math.comb(N - d_beta, d_gamma)
            dim = p.g + d_r if cls is StabilityClass.STABLE else None
            rows.append(CensusRow(d_beta, d_gamma, d_r, cls, count, dim))
    return CensusResult(p, tuple(rows))
