"""The k-descending tree: parent, children, child counts, depth, and slices.

Node n has parent floor(n/k); 0 is the root and its own parent, so 0 counts
among its children and h(0) = ceil(k). Trees are never materialized as
pointer structures: children(n) is the interval [ceil(n*k), ceil((n+1)*k) - 1]
and a TreeSlice keeps one sorted node list per depth.
"""

import logging
from typing import Optional

from scripts.utils.config import get_config
from scripts.utils.errors import ConsistencyError, SizeLimit, UnsupportedRepresentation
from scripts.utils.exactnum import KValue, RationalK
from scripts.utils.models import ChildRange, RangeClass, Rhythm, TreeSlice

logger = logging.getLogger(__name__)


def _check_node(n: int) -> None:
    if n < 0:
        raise ValueError(f"node ids are non-negative, got {n}")


def parent(n: int, k: KValue) -> int:
    """floor(n/k); the root is its own parent."""
    _check_node(n)
    return k.floor_div(n)


def child_bounds(n: int, k: KValue) -> tuple[int, int]:
    """(first, last) child of n, both inclusive."""
    return k.ceil_scaled(n), k.ceil_scaled(n + 1) - 1


def children(n: int, k: KValue) -> ChildRange:
    """All c with floor(c/k) == n. For n = 0 the range starts at the root itself."""
    _check_node(n)
    lo, hi = child_bounds(n, k)
    return ChildRange(lo=lo, hi=hi)


def child_count(n: int, k: KValue, cross_check: Optional[bool] = None) -> int:
    """h(n) = |children(n)|, always floor(k) or ceil(k).

    With cross_check (or verification.cross_check in config) and an exact k,
    the count is also predicted from the count indicator {n*k} and the two
    answers must agree.

    Raises:
        ConsistencyError: If the indicator prediction disagrees with the range width.
    """
    _check_node(n)
    lo, hi = child_bounds(n, k)
    width = hi - lo + 1
    if cross_check is None:
        cross_check = get_config().verification.cross_check
    if cross_check and k.is_exact:
        from scripts.indicator import classify

        predicted = k.floor_k if classify(k.frac_scaled(n), k) == RangeClass.FLOOR else k.ceil_k
        if predicted != width:
            raise ConsistencyError(
                f"h({n}) for k={k.spec}: range width {width}, indicator predicts {predicted}"
            )
    return width


def path_to_root(n: int, k: KValue) -> list[int]:
    """g_0 = n, g_{i+1} = floor(g_i/k), stopping at the root."""
    _check_node(n)
    path = [n]
    while path[-1] != 0:
        path.append(k.floor_div(path[-1]))
    return path


def depth(n: int, k: KValue) -> int:
    """Number of parent steps from n to the root; depth(0) = 0."""
    return len(path_to_root(n, k)) - 1


def child_count_sum(n_nodes: int, k: KValue) -> int:
    """Sum of h(n) over n < n_nodes; telescopes to ceil(n_nodes * k)."""
    return sum(child_count(n, k, cross_check=False) for n in range(n_nodes))


def rhythm(k: KValue) -> Rhythm:
    """The periodic child-count pattern (h(0), ..., h(q-1)) of a rational k = p/q.

    The pattern sums to p, and the tree equals the rhythmic tree with directing
    parameter (q, p). It is valid when every prefix sum of the first j + 1
    counts exceeds j + 1.

    Raises:
        UnsupportedRepresentation: If k is not rational.
    """
    if not isinstance(k, RationalK):
        raise UnsupportedRepresentation(f"rhythm needs a rational k, got {k.spec}")
    frac = k.fraction
    counts = [child_count(n, k, cross_check=False) for n in range(frac.denominator)]
    if sum(counts) != frac.numerator:
        raise ConsistencyError(f"rhythm {counts} of k={k.spec} does not sum to {frac.numerator}")
    prefix, valid = 0, True
    for j, count in enumerate(counts):
        prefix += count
        if prefix <= j + 1:
            valid = False
            break
    return Rhythm(q=frac.denominator, p=frac.numerator, counts=counts, valid=valid)


def build_slice(k: KValue, max_depth: int, max_nodes: Optional[int] = None) -> TreeSlice:
    """Enumerate every node of depth <= max_depth by breadth-first expansion.

    Args:
        k: Tree parameter.
        max_depth: Deepest row to include.
        max_nodes: Node cap; defaults to limits.max_nodes from config.

    Raises:
        SizeLimit: If the slice would hold more than max_nodes nodes.
    """
    if max_depth < 0:
        raise ValueError(f"max_depth must be >= 0, got {max_depth}")
    cap = max_nodes if max_nodes is not None else get_config().limits.max_nodes

    rows: list[list[int]] = [[0]]
    total = 1
    for d in range(1, max_depth + 1):
        previous = rows[-1]
        # children of consecutive nodes are consecutive; the root skips itself
        first = max(child_bounds(previous[0], k)[0], 1)
        last = child_bounds(previous[-1], k)[1]
        size = max(last - first + 1, 0)
        if total + size > cap:
            raise SizeLimit(
                f"slice of k={k.spec} to depth {max_depth} exceeds {cap} nodes at depth {d}",
                limit=cap,
            )
        row: list[int] = []
        for n in previous:
            lo, hi = child_bounds(n, k)
            row.extend(range(max(lo, 1), hi + 1))
        rows.append(row)
        total += len(row)
        logger.debug("k=%s depth %d: %d nodes", k.spec, d, len(row))

    logger.info("Built slice of k=%s to depth %d (%d nodes)", k.spec, max_depth, total)
    return TreeSlice(k=k, max_depth=max_depth, rows=rows)
