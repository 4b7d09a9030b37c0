"""Row lengths of k-descending trees and the golden-k recurrence.

The leftmost node at depth i + 1 is f_i, with f_0 = 1 and
f_{i+1} = ceil(k * f_i); row d >= 1 is the interval [f_{d-1}, f_d - 1], so
r_d = f_d - f_{d-1}. For golden k (k^2 = a*k + b) the rows satisfy
r_d = a*r_{d-1} + b*r_{d-2} and have an exact closed form in Q(sqrt(a^2 + 4b)).
"""

import logging
from typing import Iterable, Optional

from scripts.tree import child_bounds
from scripts.utils.config import get_config
from scripts.utils.errors import NonIntegerResult, SizeLimit
from scripts.utils.exactnum import ExactK, KValue, QuadReal
from scripts.utils.models import GoldenParams, GoldenTableRow, RecurrenceReport, RowTable

logger = logging.getLogger(__name__)

DEFAULT_A_VALUES = range(-1, 8)
DEFAULT_B_VALUES = range(-6, 9)


def _check_depth(depth: int, minimum: int = 0) -> None:
    if depth < minimum:
        raise ValueError(f"depth must be >= {minimum}, got {depth}")


def leftmost_sequence(k: KValue, depth: int) -> list[int]:
    """[f_0, ..., f_depth] with exact ceilings."""
    _check_depth(depth)
    f = [1]
    for _ in range(depth):
        f.append(k.ceil_scaled(f[-1]))
    return f


def row_lengths(k: KValue, depth: int) -> list[int]:
    """[r_0, ..., r_depth]: r_0 = 1 and r_d = f_d - f_{d-1}."""
    f = leftmost_sequence(k, depth)
    return [1] + [f[d] - f[d - 1] for d in range(1, depth + 1)]


def build_row_table(k: KValue, depth: int) -> RowTable:
    f = leftmost_sequence(k, depth)
    r = [1] + [f[d] - f[d - 1] for d in range(1, depth + 1)]
    return RowTable(k=k, f=f, r=r)


def brute_force_row_lengths(k: KValue, depth: int, max_nodes: Optional[int] = None) -> list[int]:
    """Count nodes per depth by expanding every node's child range.

    Independent of the leftmost sequence: each row is walked node by node and
    the next row is the union of their child intervals (the root minus itself).

    Raises:
        SizeLimit: If the rows up to depth hold more than max_nodes nodes.
    """
    _check_depth(depth)
    cap = max_nodes if max_nodes is not None else get_config().limits.max_nodes
    lengths = [1]
    total = 1
    row = range(0, 1)
    for d in range(1, depth + 1):
        count = 0
        first: Optional[int] = None
        last: Optional[int] = None
        for n in row:
            lo, hi = child_bounds(n, k)
            if n == 0:
                lo = max(lo, 1)
            if hi < lo:
                continue
            count += hi - lo + 1
            if first is None:
                first = lo
            last = hi
        total += count
        if total > cap:
            raise SizeLimit(
                f"rows of k={k.spec} to depth {depth} exceed {cap} nodes at depth {d}",
                limit=cap,
            )
        lengths.append(count)
        row = range(first, last + 1) if first is not None else range(0)
        logger.debug("k=%s depth %d: %d nodes (total %d)", k.spec, d, count, total)
    return lengths


def ratio_is_monotone(k: ExactK, depth: int) -> bool:
    """Check f_i/k^i <= f_{i+1}/k^{i+1} <= k/(k-1) for i < depth, exactly."""
    bound = k.value / (k.value - 1)
    power = QuadReal.from_rational(1)
    previous: Optional[QuadReal] = None
    for f in leftmost_sequence(k, depth):
        ratio = f / power
        if ratio > bound or (previous is not None and ratio < previous):
            return False
        previous = ratio
        power = power * k.value
    return True


def verify_recurrence(params: GoldenParams, depth: int) -> RecurrenceReport:
    """Check r_d = a*r_{d-1} + b*r_{d-2} for 2 <= d <= depth and the base (1, ceil(k) - 1).

    Raises:
        InvalidParams: If (a, b) lies outside a >= 1, 1 - a < b < 1 + a.
    """
    params.require_recurrence_range()
    _check_depth(depth, minimum=2)
    k = params.k()
    r = row_lengths(k, depth)
    base = (r[0], r[1])
    base_ok = base == (1, k.ceil_k - 1)

    first_failure: Optional[int] = None
    for d in range(2, depth + 1):
        if r[d] != params.a * r[d - 1] + params.b * r[d - 2]:
            first_failure = d
            break
    if first_failure is not None:
        logger.warning("Recurrence for (%d, %d) fails at d=%d", params.a, params.b, first_failure)

    return RecurrenceReport(
        a=params.a,
        b=params.b,
        depth=depth,
        holds=first_failure is None and base_ok,
        first_failure=first_failure,
        base=base,
        base_ok=base_ok,
        rows=r,
    )


def closed_form_row(params: GoldenParams, d: int) -> int:
    """r_d from the closed form, evaluated in Q(sqrt(a^2 + 4b)).

    For b = 0 the tree is the integer a-ary tree: r_0 = 1, r_d = a^(d-1) * (a - 1).
    Otherwise, with k1, k2 = (a +- sqrt(D)) / 2 and r_1 = ceil(k1) - 1,

        r_d = ((r_1 - k2) * k1^d + (k1 - r_1) * k2^d) / sqrt(D)

    which is (k1^(d+1) - k2^(d+1)) / sqrt(D) for b > 0 and
    ((k1 - 1) * k1^d - (k2 - 1) * k2^d) / sqrt(D) for b < 0.

    Raises:
        InvalidParams: If (a, b) lies outside the recurrence range.
        NonIntegerResult: If the field element is not a rational integer.
    """
    params.require_recurrence_range()
    _check_depth(d)
    a, b = params.a, params.b
    if b == 0:
        return 1 if d == 0 else a ** (d - 1) * (a - 1)

    k1 = params.value
    k2 = a - k1
    r1 = k1.ceil() - 1
    value = ((r1 - k2) * k1 ** d + (k1 - r1) * k2 ** d) / QuadReal.sqrt(params.discriminant)
    if not value.is_integer:
        raise NonIntegerResult(f"closed form for (a, b) = ({a}, {b}) at d={d} gave {value}")
    return value.p


def golden_table(
    a_values: Iterable[int] = DEFAULT_A_VALUES,
    b_values: Iterable[int] = DEFAULT_B_VALUES,
    digits: Optional[int] = None,
) -> list[GoldenTableRow]:
    """Tabulate k = (a + sqrt(a^2 + 4b)) / 2 over a grid of (a, b)."""
    from scripts.rho import closed_rho

    digits = digits or get_config().sweep.render_digits
    b_values = list(b_values)
    table: list[GoldenTableRow] = []
    for a in a_values:
        for b in b_values:
            params = GoldenParams(a=a, b=b)
            row = GoldenTableRow(
                a=a,
                b=b,
                discriminant=params.discriminant,
                valid_k=False,
                recurrence_range=params.in_recurrence_range,
            )
            if params.discriminant >= 0:
                row.k = params.value.to_decimal(digits)
                row.valid_k = params.is_real_above_one
            if params.in_recurrence_range:
                row.rho = closed_rho(params).to_decimal(digits)
            table.append(row)
    return table


def verify_grid(a_max: int, depth: int) -> list[RecurrenceReport]:
    """verify_recurrence plus an entrywise closed-form check for every (a, b) in range, a <= a_max."""
    reports: list[RecurrenceReport] = []
    for a in range(1, a_max + 1):
        for b in range(2 - a, a + 1):
            params = GoldenParams(a=a, b=b)
            report = verify_recurrence(params, depth)
            report.closed_form_ok = all(
                closed_form_row(params, d) == r_d for d, r_d in enumerate(report.rows)
            )
            reports.append(report)
            logger.debug(
                "(%d, %d): recurrence %s, closed form %s",
                a, b, report.holds, report.closed_form_ok,
            )
    passed = sum(1 for r in reports if r.holds and r.closed_form_ok)
    logger.info("Verified %d/%d golden parameter pairs to depth %d", passed, len(reports), depth)
    return reports
