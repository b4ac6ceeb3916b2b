"""Point configurations on (P^1)^N over a fixed determinant line.

A configuration is a base-line label (which line bundle of degree d the
fiber sits over; the toolkit treats it as opaque) together with one point
of P^1 per marked slot.  The three point shapes are [0:1], [1:0], and a
finite point [t:1] with t != 0, stored by its affine coordinate t.

The multiplicative torus acts slotwise by [x0:x1] -> [c*x0:x1], so finite
coordinates scale by c while [0:1] and [1:0] stay put.  Slots at [0:1] and
[1:0] are the marks; their counts (n_zero, n_inf) drive every stability
question, and the correspondence with vanishing loci is

    slot at [0:1]   the gamma component vanishes there
    slot at [1:0]   the beta component vanishes there

so stratum_of turns a configuration into a labeled partition directly.
All slot indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Optional, Union

from .errors import (
    InvalidScaleError,
    LengthMismatchError,
    NoChartError,
    NotOnBoundaryError,
)
from .exact import Scalar
from .stability import Label, LabeledPartition, ModuliParams


class PointKind(Enum):
    ZERO = "zero"  # [0:1]
    INFINITY = "inf"  # [1:0]
    FINITE = "finite"  # [t:1], t != 0


@dataclass(frozen=True)
class FiberPoint:
    kind: PointKind
    t: Optional[Scalar] = None

    def __post_init__(self) -> None:
        if self.kind is PointKind.FINITE:
            if self.t is None or self.t.is_zero():
                raise ValueError("finite points carry a nonzero affine coordinate")
        elif self.t is not None:
            raise ValueError(f"{self.kind.value} points carry no coordinate")

    @staticmethod
    def zero() -> "FiberPoint":
        return _ZERO_POINT

    @staticmethod
    def infinity() -> "FiberPoint":
        return _INF_POINT

    @staticmethod
    def finite(t) -> "FiberPoint":
        return FiberPoint(PointKind.FINITE, Scalar.of(t))

    def is_zero(self) -> bool:
        return self.kind is PointKind.ZERO

    def is_infinity(self) -> bool:
        return self.kind is PointKind.INFINITY

    def is_finite(self) -> bool:
        return self.kind is PointKind.FINITE

    def __str__(self) -> str:
        if self.kind is PointKind.ZERO:
            return "[0:1]"
        if self.kind is PointKind.INFINITY:
            return "[1:0]"
        return f"[{self.t}:1]"


_ZERO_POINT = FiberPoint(PointKind.ZERO)
_INF_POINT = FiberPoint(PointKind.INFINITY)


@dataclass(frozen=True)
class Configuration:
    """Base-line label plus one fiber point per marked slot."""

    base: str
    points: tuple[FiberPoint, ...]

    @staticmethod
    def of(base: str, points: Iterable[FiberPoint]) -> "Configuration":
        return Configuration(base, tuple(points))

    @property
    def size(self) -> int:
        return len(self.points)

    def __str__(self) -> str:
        return f"{self.base}: ({', '.join(str(p) for p in self.points)})"


@dataclass(frozen=True)
class MarkData:
    """Index sets of the fully degenerate slots."""

    zero_slots: frozenset[int]
    infinity_slots: frozenset[int]

    @property
    def n_zero(self) -> int:
        return len(self.zero_slots)

    @property
    def n_inf(self) -> int:
        return len(self.infinity_slots)


def mark_data(c: Configuration) -> MarkData:
    zeros = frozenset(j for j, p in enumerate(c.points) if p.is_zero())
    infs = frozenset(j for j, p in enumerate(c.points) if p.is_infinity())
    return MarkData(zeros, infs)


def _check_length(c: Configuration, p: ModuliParams) -> None:
    if c.size != p.N:
        raise LengthMismatchError(
            f"configuration has {c.size} slots, expected N = {p.N}"
        )


def in_stable_locus(c: Configuration, p: ModuliParams) -> bool:
    """Both mark counts strictly below their budgets: n_zero < n, n_inf < N - n."""
    _check_length(c, p)
    marks = mark_data(c)
    return marks.n_zero < p.n and marks.n_inf < p.N - p.n


def stratum_of(c: Configuration) -> LabeledPartition:
    """Labeled partition recording, slot by slot, which component vanishes."""
    labels = []
    for point in c.points:
        if point.is_zero():
            labels.append(Label.GAMMA)
        elif point.is_infinity():
            labels.append(Label.BETA)
        else:
            labels.append(Label.REST)
    return LabeledPartition.of(labels)


def act(scale, c: Configuration) -> Configuration:
    """Torus action: every finite coordinate is multiplied by scale."""
    s = Scalar.of(scale)
    if s.is_zero():
        raise InvalidScaleError("the torus acts by nonzero scalars")
    points = tuple(
        FiberPoint.finite(s * p.t) if p.is_finite() else p for p in c.points
    )
    return Configuration(c.base, points)


def orbit_equivalent(x: Configuration, y: Configuration) -> Optional[Scalar]:
    """The unique scale c with act(c, x) == y, or None.

    Orbit membership needs the same base label, the same per-slot mark
    pattern, and one common ratio across all finite slots.  Two equal
    fully-marked configurations give c = 1.
    """
    if x.base != y.base or x.size != y.size:
        return None
    ratio: Optional[Scalar] = None
    for px, py in zip(x.points, y.points):
        if px.kind is not py.kind:
            return None
        if px.is_finite():
            r = py.t / px.t
            if ratio is None:
                ratio = r
            elif ratio != r:
                return None
    return ratio if ratio is not None else Scalar.one()


def saturate_limit(c: Configuration, n: int, N: int) -> Configuration:
    """Fixed-point limit of a boundary configuration for given bounds (n, N).

    With n_zero = n every non-[0:1] slot flows to [1:0] (the scale going
    to infinity sends finite coordinates there); with n_inf = N - n every
    non-[1:0] slot flows to [0:1].  Slots keep their positions.  A fully
    marked boundary point is its own limit.
    """
    if c.size != N:
        raise LengthMismatchError(f"configuration has {c.size} slots, expected {N}")
    marks = mark_data(c)
    if marks.n_zero == n:
        points = tuple(
            p if p.is_zero() else FiberPoint.infinity() for p in c.points
        )
        return Configuration(c.base, points)
    if marks.n_inf == N - n:
        points = tuple(
            p if p.is_infinity() else FiberPoint.zero() for p in c.points
        )
        return Configuration(c.base, points)
    raise NotOnBoundaryError(
        "fixed-point limits exist only when a mark count saturates its bound"
    )


def limit_point(c: Configuration, p: ModuliParams) -> Configuration:
    _check_length(c, p)
    return saturate_limit(c, p.n, p.N)


def affine_chart(
    c: Configuration, p: ModuliParams
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Deterministic chart partition (I1, I2, I3) around a stable-locus point.

    Sizes are |I1| = n - 1, |I2| = N - n - 1, |I3| = 2 with membership
    constraints: no [1:0] slot in I1, no [0:1] slot in I2, only finite
    slots in I3.  Greedy, lowest indices first: I3 takes the two lowest
    finite slots; I1 takes every [0:1] slot (nothing else can absorb them)
    then fills up with the lowest remaining finite slots; I2 gets the rest.
    A stable-locus point always has enough room in each part.
    """
    if not in_stable_locus(c, p):
        raise NoChartError("affine charts exist only over the stable locus")
    n, N = p.n, p.N
    finite = [j for j, pt in enumerate(c.points) if pt.is_finite()]
    zeros = [j for j, pt in enumerate(c.points) if pt.is_zero()]

    i3 = finite[:2]
    pool = [j for j in finite[2:]]
    i1 = list(zeros)
    for j in pool:
        if len(i1) >= n - 1:
            break
        i1.append(j)
    i1.sort()
    used = set(i3) | set(i1)
    i2 = [j for j in range(N) if j not in used]
    return tuple(i1), tuple(i2), tuple(i3)


def finite_parameters(c: Configuration) -> dict[int, Scalar]:
    """Affine coordinates of the finite slots, keyed by slot index.

    Equivariance: finite_parameters(act(s, c)) multiplies every value by s.
    """
    return {j: p.t for j, p in enumerate(c.points) if p.is_finite()}


# serialization

PointJson = Union[str, Mapping[str, str]]


def point_to_json(p: FiberPoint) -> PointJson:
    if p.is_zero():
        return "zero"
    if p.is_infinity():
        return "inf"
    return {"t": str(p.t)}


def point_from_json(data: PointJson) -> FiberPoint:
    if data == "zero":
        return FiberPoint.zero()
    if data == "inf":
        return FiberPoint.infinity()
    if isinstance(data, Mapping) and set(data) == {"t"}:
        return FiberPoint.finite(Scalar.parse(data["t"]))
    raise ValueError(f"malformed fiber point: {data!r}")


def config_to_json(c: Configuration) -> dict:
    return {"base": c.base, "points": [point_to_json(p) for p in c.points]}


def config_from_json(data: Mapping) -> Configuration:
    if not isinstance(data, Mapping) or set(data) != {"base", "points"}:
        raise ValueError(f"malformed configuration: {data!r}")
    base = data["base"]
    if not isinstance(base, str):
        raise ValueError("configuration base label must be a string")
    points = data["points"]
    if not isinstance(points, (list, tuple)):
        raise ValueError("configuration points must be a list")
    return Configuration(base, tuple(point_from_json(q) for q in points))
