"""Pydantic v2 data models for k-descending trees.

Defines the result containers shared across modules: child ranges, tree
slices, row tables, golden parameters, rho enclosures, indicator lines and the
various verification reports. Exact values (QuadReal) and k parameters
(KValue) are carried as arbitrary types and serialize to their string forms
in JSON mode.
"""

from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, Optional

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer

from scripts.utils.errors import InvalidParams
from scripts.utils.exactnum import ExactK, KValue, QuadReal, exact_k, golden_value

ExactReal = Annotated[QuadReal, PlainSerializer(str, return_type=str, when_used="json")]
KParam = Annotated[KValue, PlainSerializer(lambda k: k.spec, return_type=str, when_used="json")]
ExactFraction = Annotated[Fraction, PlainSerializer(str, return_type=str, when_used="json")]


class RangeClass(str, Enum):
    """Which child count an indicator predicts: floor(k) or ceil(k)."""

    FLOOR = "floor"
    CEIL = "ceil"


class ExportFormat(str, Enum):
    """Output formats understood by the CLI writers."""

    DOT = "dot"
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


# ---------------------------------------------------------------------------
# Tree
# ---------------------------------------------------------------------------

class ChildRange(BaseModel):
    """Inclusive interval [lo, hi] of the children of one node."""

    model_config = ConfigDict(frozen=True)

    lo: int
    hi: int

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, node: int) -> bool:
        return self.lo <= node <= self.hi

    def nodes(self) -> range:
        return range(self.lo, self.hi + 1)


class TreeSlice(BaseModel):
    """All nodes of depth <= max_depth, one sorted list per depth."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    k: KParam
    max_depth: int
    rows: list[list[int]]

    @property
    def row_lengths(self) -> list[int]:
        return [len(row) for row in self.rows]

    @property
    def node_count(self) -> int:
        return sum(len(row) for row in self.rows)


class Rhythm(BaseModel):
    """Child-count rhythm of a rational k = p/q tree."""

    q: int
    p: int
    counts: list[int]
    valid: bool


# ---------------------------------------------------------------------------
# Rows
# ---------------------------------------------------------------------------

class GoldenParams(BaseModel):
    """Integer pair (a, b) with k = (a + sqrt(a^2 + 4b)) / 2, i.e. k^2 = a*k + b."""

    model_config = ConfigDict(frozen=True)

    a: int
    b: int

    @property
    def discriminant(self) -> int:
        return self.a * self.a + 4 * self.b

    @property
    def value(self) -> QuadReal:
        return golden_value(self.a, self.b)

    @property
    def spec(self) -> str:
        return f"golden:{self.a},{self.b}"

    def k(self) -> ExactK:
        return exact_k(self.value, label=self.spec)

    @property
    def is_real_above_one(self) -> bool:
        return self.discriminant >= 0 and self.value > 1

    @property
    def in_recurrence_range(self) -> bool:
        """a >= 1 and 1 - a < b < 1 + a."""
        return self.a >= 1 and 1 - self.a < self.b < 1 + self.a

    @property
    def in_grandparent_range(self) -> bool:
        """a >= 1 and 1 - a <= b <= a - 1, with k > 1."""
        return self.a >= 1 and 1 - self.a <= self.b <= self.a - 1 and self.is_real_above_one

    def require_recurrence_range(self) -> "GoldenParams":
        if not self.in_recurrence_range:
            note = ""
            if self.discriminant >= 0 and self.value > 1:
                note = f" (k = {self.value} is still a valid tree parameter)"
            raise InvalidParams(
                f"(a, b) = ({self.a}, {self.b}) outside the recurrence range "
                f"a >= 1, 1 - a < b < 1 + a{note}"
            )
        return self

    def require_grandparent_range(self) -> "GoldenParams":
        if not self.in_grandparent_range:
            raise InvalidParams(
                f"(a, b) = ({self.a}, {self.b}) outside the grandparent range "
                f"a >= 1, 1 - a <= b <= a - 1 with k > 1"
            )
        return self


class RowTable(BaseModel):
    """Leftmost sequence f_0..f_D and row lengths r_0..r_D."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    k: KParam
    f: list[int]
    r: list[int]

    @property
    def depth(self) -> int:
        return len(self.r) - 1


class RecurrenceReport(BaseModel):
    """Outcome of checking r_d = a*r_{d-1} + b*r_{d-2} against enumeration."""

    a: int
    b: int
    depth: int
    holds: bool
    first_failure: Optional[int] = None
    base: tuple[int, int]
    base_ok: bool
    rows: list[int] = []
    closed_form_ok: Optional[bool] = None


class GoldenTableRow(BaseModel):
    """One entry of the table of golden-like k values."""

    a: int
    b: int
    discriminant: int
    k: Optional[str] = None
    valid_k: bool
    recurrence_range: bool
    rho: Optional[str] = None


# ---------------------------------------------------------------------------
# Rho
# ---------------------------------------------------------------------------

class RhoEnclosure(BaseModel):
    """Rigorous intervals [c_lo, c_hi] and [rho_lo, rho_hi] after n_iters steps."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    k: KParam
    n_iters: int
    c_lo: ExactReal
    c_hi: ExactReal
    rho_lo: ExactReal
    rho_hi: ExactReal

    @property
    def c_width(self) -> QuadReal:
        return self.c_hi - self.c_lo

    @property
    def rho_width(self) -> QuadReal:
        return self.rho_hi - self.rho_lo

    def contains_c(self, value: Any, strict: bool = False) -> bool:
        if strict:
            return self.c_lo < value < self.c_hi
        return self.c_lo <= value <= self.c_hi

    def contains_rho(self, value: Any, strict: bool = False) -> bool:
        if strict:
            return self.rho_lo < value < self.rho_hi
        return self.rho_lo <= value <= self.rho_hi

    def nested_in(self, other: "RhoEnclosure") -> bool:
        return other.c_lo <= self.c_lo and self.c_hi <= other.c_hi

    def rendered(self, digits: int) -> dict[str, str]:
        """Decimal endpoints rounded outward (lo down, hi up)."""
        return {
            "c_lo": self.c_lo.to_decimal(digits, "floor"),
            "c_hi": self.c_hi.to_decimal(digits, "ceil"),
            "rho_lo": self.rho_lo.to_decimal(digits, "floor"),
            "rho_hi": self.rho_hi.to_decimal(digits, "ceil"),
        }


class SweepRow(BaseModel):
    """One grid point of a rho sweep; failed points keep their error text."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    k: ExactFraction
    n_iters: int
    enclosure: Optional[RhoEnclosure] = None
    error: Optional[str] = None


class ClosedRhoPoint(BaseModel):
    """A golden k with its exact closed-form rho."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    a: int
    b: int
    k: ExactReal
    rho: ExactReal


class JosephusSample(BaseModel):
    """c-enclosure at one side of a Josephus point."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    side: str
    epsilon: ExactFraction
    k: ExactFraction
    enclosure: RhoEnclosure
    ratio_lo: ExactReal
    ratio_hi: ExactReal


class JosephusReport(BaseModel):
    """Side-by-side enclosures around k = q/(q-1)."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    q: int
    n_iters: int
    point: RhoEnclosure
    samples: list[JosephusSample]


# ---------------------------------------------------------------------------
# Indicators
# ---------------------------------------------------------------------------

class IndicatorLine(BaseModel):
    """x -> {(i - x) * b/k}: the indicator of the i-th child of a node with indicator x."""

    model_config = ConfigDict(frozen=True)

    index: int
    params: GoldenParams
    restricted: bool = False

    @property
    def slope_factor(self) -> QuadReal:
        """b/k, which equals k - a exactly."""
        return self.params.value - self.params.a

    def evaluate(self, x: Any) -> QuadReal:
        return ((self.index - x) * self.slope_factor).frac()

    def breakpoint(self) -> Optional[QuadReal]:
        """The x in (0, 1) where (i - x) * b/k crosses an integer, if any."""
        beta = self.slope_factor
        if not beta:
            return None
        at_zero = beta * self.index
        at_one = beta * (self.index - 1)
        # t runs from at_zero (x = 0) towards at_one (x -> 1)
        m = at_zero.floor() if beta > 0 else at_zero.ceil()
        if m == at_zero:
            m = m - 1 if beta > 0 else m + 1
        if not (min(at_zero, at_one) < m < max(at_zero, at_one)):
            return None
        return self.index - m / beta


class IndicatorSample(BaseModel):
    """One plotted point: line i (or first child of node) evaluated at x."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    x: ExactReal
    index: int
    value: ExactReal
    range_class: RangeClass
    node: Optional[int] = None


class GrandparentReport(BaseModel):
    """Per-sample line counts for the grandparent theorem."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    params: GoldenParams
    counted_range: RangeClass
    expected: int
    samples: list[ExactReal]
    counts: list[int]
    verdict: bool
    exceptions: list[ExactReal] = Field(default_factory=list)


# ---------------------------------------------------------------------------
# CLI reports
# ---------------------------------------------------------------------------

class CheckResult(BaseModel):
    """One named check inside a verification report."""

    name: str
    passed: bool
    detail: dict[str, Any] = Field(default_factory=dict)


class VerifyReport(BaseModel):
    """Single pass/fail verdict with per-check detail."""

    a: int
    b: int
    depth: int
    k: str
    passed: bool
    checks: list[CheckResult]
