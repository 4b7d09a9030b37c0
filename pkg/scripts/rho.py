"""Rigorous enclosures of c(k) and rho(k) = (k-1)/k * c(k).

f_n / k^n is nondecreasing in n and each step adds less than k^-(n+1), so

    f_n / k^n <= c(k) <= f_n / k^n + k^-n / (k - 1).

Every endpoint is an exact QuadReal: a field element for quadratic k, a
rational for rational k, and a rational bound built from the enclosure
[lo, hi] of an approximate k.
"""

import logging
from fractions import Fraction
from typing import Iterable, Optional, Union

from scripts.rows import DEFAULT_A_VALUES, DEFAULT_B_VALUES, leftmost_sequence
from scripts.utils.config import get_config
from scripts.utils.errors import InvalidParams, KTreeError, UnsupportedRepresentation, UsageError
from scripts.utils.exactnum import ApproxK, ExactK, KValue, QuadReal, RationalK
from scripts.utils.models import (
    ClosedRhoPoint,
    GoldenParams,
    JosephusReport,
    JosephusSample,
    RhoEnclosure,
    SweepRow,
)

logger = logging.getLogger(__name__)

KBound = Union[KValue, Fraction, int]


def enclose_c(k: KValue, n_iters: int) -> RhoEnclosure:
    """Enclose c(k) and rho(k) after n_iters steps of the leftmost sequence.

    Raises:
        PrecisionExhausted: If an approximate k cannot decide a ceiling.
    """
    if n_iters < 1:
        raise ValueError(f"n_iters must be >= 1, got {n_iters}")
    f_n = leftmost_sequence(k, n_iters)[-1]

    if isinstance(k, ExactK):
        kv = k.value
        power = kv ** n_iters
        c_lo = f_n / power
        c_hi = c_lo + 1 / (power * (kv - 1))
        factor = (kv - 1) / kv
        return RhoEnclosure(
            k=k,
            n_iters=n_iters,
            c_lo=c_lo,
            c_hi=c_hi,
            rho_lo=factor * c_lo,
            rho_hi=factor * c_hi,
        )

    if isinstance(k, ApproxK):
        lo, hi = k.enclosure()
        c_lo = Fraction(f_n) / hi ** n_iters
        low_power = lo ** n_iters
        c_hi = Fraction(f_n) / low_power + 1 / (low_power * (lo - 1))
        rho_lo = (lo - 1) / lo * c_lo
        rho_hi = (hi - 1) / hi * c_hi
        return RhoEnclosure(
            k=k,
            n_iters=n_iters,
            c_lo=QuadReal.from_rational(c_lo),
            c_hi=QuadReal.from_rational(c_hi),
            rho_lo=QuadReal.from_rational(rho_lo),
            rho_hi=QuadReal.from_rational(rho_hi),
        )

    raise UnsupportedRepresentation(f"cannot enclose c for {type(k).__name__}")


def closed_rho(params: GoldenParams) -> QuadReal:
    """Exact rho(k) for golden k.

    k / sqrt(D) for b > 0, (k - 1) / sqrt(D) for b < 0 and (a - 1) / a for
    b = 0, where D = a^2 + 4b.

    Raises:
        InvalidParams: If (a, b) lies outside the recurrence range.
    """
    params.require_recurrence_range()
    a, b = params.a, params.b
    if b == 0:
        return QuadReal.from_rational(Fraction(a - 1, a))
    root = QuadReal.sqrt(params.discriminant)
    k = params.value
    return (k if b > 0 else k - 1) / root


def closed_rho_points(
    a_values: Iterable[int] = DEFAULT_A_VALUES,
    b_values: Iterable[int] = DEFAULT_B_VALUES,
) -> list[ClosedRhoPoint]:
    """Every golden (a, b) in the grid that has a closed-form rho, sorted by k."""
    b_values = list(b_values)
    points: list[ClosedRhoPoint] = []
    for a in a_values:
        for b in b_values:
            params = GoldenParams(a=a, b=b)
            if params.in_recurrence_range:
                points.append(ClosedRhoPoint(a=a, b=b, k=params.value, rho=closed_rho(params)))
    points.sort(key=lambda p: (p.k, p.a))
    return points


def _as_fraction(bound: KBound) -> Fraction:
    """Exact rational value of a sweep endpoint."""
    if isinstance(bound, (int, Fraction)):
        return Fraction(bound)
    if isinstance(bound, RationalK):
        return bound.fraction
    if isinstance(bound, ApproxK):
        return bound.to_fraction()
    raise UnsupportedRepresentation(f"sweep endpoints must be rational, got {bound}")


def sweep_grid(k_min: KBound, k_max: KBound, num_points: int) -> list[Fraction]:
    """Evenly spaced exact rationals k_min = k_0 < ... < k_{N-1} = k_max.

    Raises:
        UsageError: Unless 1 < k_min < k_max and num_points >= 2.
    """
    lo, hi = _as_fraction(k_min), _as_fraction(k_max)
    if not 1 < lo < hi:
        raise UsageError(f"sweep needs 1 < kmin < kmax, got kmin={lo}, kmax={hi}")
    if num_points < 2:
        raise UsageError(f"sweep needs at least 2 points, got {num_points}")
    step = (hi - lo) / (num_points - 1)
    return [lo + j * step for j in range(num_points)]


def sweep(
    k_min: KBound,
    k_max: KBound,
    num_points: int,
    n_iters: Optional[int] = None,
    progress_every: Optional[int] = None,
) -> list[SweepRow]:
    """Enclosures of rho on an exact rational grid, in increasing k.

    A failing point keeps its error message in the row instead of aborting
    the sweep.
    """
    config = get_config().sweep
    n_iters = n_iters or config.n_iters
    progress_every = progress_every or config.progress_every
    grid = sweep_grid(k_min, k_max, num_points)

    rows: list[SweepRow] = []
    failures = 0
    for index, point in enumerate(grid, start=1):
        try:
            enclosure = enclose_c(RationalK(point.numerator, point.denominator), n_iters)
            rows.append(SweepRow(k=point, n_iters=n_iters, enclosure=enclosure))
        except KTreeError as exc:
            failures += 1
            logger.warning("Sweep point k=%s failed: %s", point, exc)
            rows.append(SweepRow(k=point, n_iters=n_iters, error=f"{type(exc).__name__}: {exc}"))
        if index % progress_every == 0:
            logger.info("Sweep progress: %d/%d points", index, len(grid))

    logger.info("Sweep complete: %d points, %d failed", len(rows), failures)
    return rows


def josephus_probe(q: int, epsilons: Iterable[Fraction], n_iters: int) -> JosephusReport:
    """c-enclosures at k = q/(q-1) and at k -+ epsilon on either side.

    Each sample carries the ratio range [c_lo(side) / c_hi(point),
    c_hi(side) / c_lo(point)] so the size of the jump can be read off.

    Raises:
        InvalidParams: If q < 2 or some epsilon is not positive or pushes k to <= 1.
    """
    if q < 2:
        raise InvalidParams(f"Josephus points need q >= 2, got {q}")
    center = Fraction(q, q - 1)
    point = enclose_c(RationalK(q, q - 1), n_iters)

    samples: list[JosephusSample] = []
    for epsilon in epsilons:
        epsilon = Fraction(epsilon)
        if epsilon <= 0:
            raise InvalidParams(f"epsilon must be positive, got {epsilon}")
        for side, sign in (("left", -1), ("right", 1)):
            value = center + sign * epsilon
            if value <= 1:
                raise InvalidParams(f"k = {center} - {epsilon} is not > 1")
            enclosure = enclose_c(RationalK(value.numerator, value.denominator), n_iters)
            samples.append(
                JosephusSample(
                    side=side,
                    epsilon=epsilon,
                    k=value,
                    enclosure=enclosure,
                    ratio_lo=enclosure.c_lo / point.c_hi,
                    ratio_hi=enclosure.c_hi / point.c_lo,
                )
            )
        logger.debug("Josephus q=%d epsilon=%s done", q, epsilon)

    return JosephusReport(q=q, n_iters=n_iters, point=point, samples=samples)
