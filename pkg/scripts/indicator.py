"""Count indicators {n*k} and the child-count indicator graph.

The indicator x = {n*k} alone decides h(n): floor(k) children when x lies in
the floor-range (0, 1 - {k}], ceil(k) children in the ceil-range
{0} u (1 - {k}, 1). For golden k the indicator of the i-th child of a node
with indicator x is {(i - x) * b/k}, a line in x, and exactly |b| of these
lines sit in the ceil-range (b >= 0) or the floor-range (b < 0).
"""

import logging
from fractions import Fraction
from typing import Iterable, Optional, Union

from scripts.utils.config import get_config
from scripts.utils.errors import ChildAbsent, InvalidParams, UnsupportedRepresentation
from scripts.utils.exactnum import ExactK, KValue, QuadReal
from scripts.utils.models import (
    GoldenParams,
    GrandparentReport,
    IndicatorLine,
    IndicatorSample,
    RangeClass,
)

logger = logging.getLogger(__name__)

Indicator = Union[QuadReal, Fraction, int]


def _require_exact(k: KValue) -> ExactK:
    if not isinstance(k, ExactK):
        raise UnsupportedRepresentation(f"indicators need an exact k, got {k.spec}")
    return k


def _require_tree_params(params: GoldenParams) -> ExactK:
    if not params.is_real_above_one:
        raise InvalidParams(f"(a, b) = ({params.a}, {params.b}) does not give a real k > 1")
    return params.k()


def _as_indicator(x: Indicator) -> QuadReal:
    value = x if isinstance(x, QuadReal) else QuadReal.from_rational(x)
    if not 0 <= value < 1:
        raise ValueError(f"indicator must lie in [0, 1), got {value}")
    return value


def count_indicator(n: int, k: KValue) -> QuadReal:
    """{n*k} for n >= 1."""
    if n < 1:
        raise ValueError(f"count indicators are defined for n >= 1, got {n}")
    return _require_exact(k).frac_scaled(n)


def classify(x: Indicator, k: KValue) -> RangeClass:
    """FLOOR iff 0 < x <= 1 - {k}; CEIL otherwise, including x = 0."""
    exact = _require_exact(k)
    value = _as_indicator(x)
    if 0 < value <= 1 - exact.value.frac():
        return RangeClass.FLOOR
    return RangeClass.CEIL


def _in_range(value: QuadReal, k: ExactK, target: RangeClass) -> bool:
    # integer k: every indicator in (0, 1) is floor, the ceil-range is empty
    if k.value.is_integer:
        return target == RangeClass.FLOOR and bool(value)
    return classify(value, k) == target


def child_indicator(i: int, x: Indicator, params: GoldenParams) -> QuadReal:
    """{(i - x) * b/k}: the indicator of the i-th child of a node with indicator x.

    x = 0 only occurs at the root for irrational k; there the literal line
    value is returned.

    Raises:
        InvalidParams: If (a, b) does not give a real k > 1.
        ChildAbsent: If i = ceil(k) > floor(k) and x lies in the floor-range.
    """
    k = _require_tree_params(params)
    if not 1 <= i <= k.ceil_k:
        raise ValueError(f"child index must be in 1..{k.ceil_k}, got {i}")
    value = _as_indicator(x)
    line = IndicatorLine(index=i, params=params, restricted=i > k.floor_k)
    if line.restricted and classify(value, k) == RangeClass.FLOOR:
        raise ChildAbsent(f"node with indicator {value} has only {k.floor_k} children")
    return line.evaluate(value)


def cci_lines(params: GoldenParams) -> list[IndicatorLine]:
    """Lines f_1..f_ceil(k); the last is restricted to the ceil-range when k is not an integer."""
    k = _require_tree_params(params)
    return [
        IndicatorLine(index=i, params=params, restricted=i > k.floor_k)
        for i in range(1, k.ceil_k + 1)
    ]


def sample_lines(params: GoldenParams, resolution: Optional[int] = None) -> list[IndicatorSample]:
    """Evaluate every cci line at x = j/resolution, j = 0..resolution-1."""
    resolution = resolution or get_config().indicators.resolution
    k = _require_tree_params(params)
    lines = cci_lines(params)
    samples: list[IndicatorSample] = []
    for j in range(resolution):
        x = QuadReal.from_rational(Fraction(j, resolution))
        x_class = classify(x, k)
        for line in lines:
            if line.restricted and x_class == RangeClass.FLOOR:
                continue
            value = line.evaluate(x)
            samples.append(
                IndicatorSample(x=x, index=line.index, value=value, range_class=classify(value, k))
            )
    return samples


def indicator_scatter(k: KValue, n_max: int) -> list[IndicatorSample]:
    """({n*k}, {c*k}) for n = 1..n_max, where c = ceil(n*k) is the first child of n."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    exact = _require_exact(k)
    points: list[IndicatorSample] = []
    for n in range(1, n_max + 1):
        child = exact.ceil_scaled(n)
        value = exact.frac_scaled(child)
        points.append(
            IndicatorSample(
                x=exact.frac_scaled(n),
                index=1,
                value=value,
                range_class=classify(value, exact),
                node=n,
            )
        )
    return points


def on_cci_line(x: Indicator, y: Indicator, params: GoldenParams) -> bool:
    """True when (x, y) lies exactly on the first cci line of params."""
    return cci_lines(params)[0].evaluate(_as_indicator(x)) == y


def _bracket(t: QuadReal, scale: int) -> list[Fraction]:
    """Rationals with denominator scale just below and just above t."""
    below, above = t.scaled_floor(scale), t.scaled_ceil(scale)
    if below == above:
        below, above = below - 1, above + 1
    return [Fraction(below, scale), Fraction(above, scale)]


def default_grid(
    params: GoldenParams,
    size: Optional[int] = None,
    boundary_digits: Optional[int] = None,
) -> list[QuadReal]:
    """Sample indicators for grandparent_count.

    Interior points j/(size+1), j = 1..size, plus rationals within
    10**-boundary_digits of 0, of 1, of the range boundary 1 - {k} (and the
    boundary itself when it is rational), and of every line's wrap point.
    """
    config = get_config().indicators
    size = size or config.grid_size
    scale = 10 ** (boundary_digits or config.boundary_digits)
    k = _require_tree_params(params)

    points: set[QuadReal] = {
        QuadReal.from_rational(Fraction(j, size + 1)) for j in range(1, size + 1)
    }
    edges = [Fraction(1, scale), 1 - Fraction(1, scale)]

    boundary = 1 - k.value.frac()
    if boundary < 1:
        edges.extend(_bracket(boundary, scale))
        if boundary.is_rational:
            points.add(boundary)
    for line in cci_lines(params):
        wrap = line.breakpoint()
        if wrap is not None:
            edges.extend(_bracket(wrap, scale))
            if wrap.is_rational:
                points.add(wrap)

    points.update(QuadReal.from_rational(e) for e in edges if 0 < e < 1)
    return sorted(points)


def grandparent_count(
    params: GoldenParams,
    x_samples: Optional[Iterable[Indicator]] = None,
) -> GrandparentReport:
    """Count, per sample x, the existing child lines landing in the counted range.

    The counted range is the ceil-range for b >= 0 and the floor-range for
    b < 0; the verdict holds when every count equals |b|. Samples whose count
    differs are listed as exceptions.

    Raises:
        InvalidParams: Unless a >= 1, 1 - a <= b <= a - 1 and k > 1.
    """
    params.require_grandparent_range()
    k = params.k()
    counted = RangeClass.CEIL if params.b >= 0 else RangeClass.FLOOR
    expected = abs(params.b)
    lines = cci_lines(params)
    samples = default_grid(params) if x_samples is None else [_as_indicator(x) for x in x_samples]

    counts: list[int] = []
    exceptions: list[QuadReal] = []
    for x in samples:
        existing = lines if classify(x, k) == RangeClass.CEIL else lines[: k.floor_k]
        count = sum(1 for line in existing if _in_range(line.evaluate(x), k, counted))
        counts.append(count)
        if count != expected:
            exceptions.append(x)

    if exceptions:
        logger.warning(
            "(%d, %d): %d of %d samples miss the expected count %d",
            params.a, params.b, len(exceptions), len(samples), expected,
        )
    return GrandparentReport(
        params=params,
        counted_range=counted,
        expected=expected,
        samples=samples,
        counts=counts,
        verdict=not exceptions,
        exceptions=exceptions,
    )
