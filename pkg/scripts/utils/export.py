"""Renderers and writers for CLI output files.

Turns tree slices, row tables, sweeps, indicator samples and reports into
DOT, indented text, CSV or JSON, and writes them to stdout or atomically to
a file. Output is byte-identical for identical input: no timestamps, fixed
digit counts, LF line endings.
"""

import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Iterable, Optional

from pydantic import BaseModel

from scripts.tree import child_count, children
from scripts.utils.config import get_config
from scripts.utils.models import (
    ClosedRhoPoint,
    GoldenTableRow,
    IndicatorSample,
    RowTable,
    SweepRow,
    TreeSlice,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------------

def meta_header(command: str, options: dict[str, Any], prefix: str = "#") -> str:
    """Deterministic comment block naming the program, version and options."""
    project = get_config().project
    lines = [f"{prefix} {project.name} {project.version}", f"{prefix} command: {command}"]
    for key in sorted(options):
        lines.append(f"{prefix} {key}: {options[key]}")
    return "\n".join(lines) + "\n"


def write_output(text: str, path: Optional[Path] = None) -> None:
    """Write text to stdout, or to path via a .tmp file and rename.

    Args:
        text: Complete file contents.
        path: Destination file; None means stdout.
    """
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    path.parent.mkdir(parents=True, exist_ok=True)
    tmp_path = path.with_suffix(path.suffix + ".tmp")
    with open(tmp_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    tmp_path.replace(path)
    logger.info("Wrote %s (%d bytes)", path, len(text.encode("utf-8")))


def _csv_text(header: list[str], rows: Iterable[list[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def model_to_json(model: BaseModel | list[BaseModel]) -> str:
    """Pretty JSON for one model or a list of models."""
    if isinstance(model, list):
        data: Any = [m.model_dump(mode="json") for m in model]
    else:
        data = model.model_dump(mode="json")
    return json.dumps(data, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------

def tree_to_dot(tree: TreeSlice) -> str:
    """Graphviz digraph with one edge per non-root node, pointing child -> parent."""
    k = tree.k
    lines = [
        f"// k-descending tree for k = {k.spec}, depth <= {tree.max_depth}",
        "// edges point from child to parent; the root 0 is its own parent (loop omitted)",
        "digraph ktree {",
        "  rankdir=BT;",
        "  node [shape=circle];",
    ]
    for depth_index, row in enumerate(tree.rows):
        lines.append(f"  // depth {depth_index}")
        for n in row:
            lines.append(f'  {n} [label="{n}\\nh={child_count(n, k)}"];')
    for row in tree.rows[1:]:
        for n in row:
            lines.append(f"  {n} -> {k.floor_div(n)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_text(tree: TreeSlice) -> str:
    """Indented tree, two spaces per level, each node annotated with h(n)."""
    k = tree.k
    lines: list[str] = []
    stack = [(0, 0)]
    while stack:
        n, level = stack.pop()
        lines.append(f"{'  ' * level}{n} (h={child_count(n, k)})")
        if level < tree.max_depth:
            kids = [c for c in children(n, k).nodes() if c != 0]
            stack.extend((c, level + 1) for c in reversed(kids))
    return "\n".join(lines) + "\n"


def tree_to_json(tree: TreeSlice) -> str:
    return json.dumps({"k": tree.k.spec, "max_depth": tree.max_depth, "rows": tree.rows}, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------

def rows_to_csv(table: RowTable) -> str:
    return _csv_text(["d", "f_d", "r_d"], ([d, f, r] for d, (f, r) in enumerate(zip(table.f, table.r))))


def sweep_to_csv(rows: list[SweepRow], digits: int) -> str:
    """Columns k_num, k_den, n_iters, c_lo, c_hi, rho_lo, rho_hi, error.

    Endpoints are rounded outward so each printed interval contains the exact one.
    """
    out: list[list[Any]] = []
    for row in rows:
        base: list[Any] = [row.k.numerator, row.k.denominator, row.n_iters]
        if row.enclosure is None:
            out.append(base + ["", "", "", "", row.error or ""])
            continue
        rendered = row.enclosure.rendered(digits)
        out.append(
            base
            + [rendered["c_lo"], rendered["c_hi"], rendered["rho_lo"], rendered["rho_hi"], ""]
        )
    return _csv_text(
        ["k_num", "k_den", "n_iters", "c_lo", "c_hi", "rho_lo", "rho_hi", "error"], out
    )


def closed_rho_to_csv(points: list[ClosedRhoPoint], digits: int) -> str:
    return _csv_text(
        ["a", "b", "k", "rho", "rho_exact"],
        (
            [p.a, p.b, p.k.to_decimal(digits), p.rho.to_decimal(digits), str(p.rho)]
            for p in points
        ),
    )


def indicator_samples_to_csv(samples: list[IndicatorSample], digits: int) -> str:
    """Columns x, i, f_i(x), range_class; scatter samples add the node n first."""
    with_nodes = any(s.node is not None for s in samples)
    header = ["x", "i", "f_i(x)", "range_class"]
    if with_nodes:
        header = ["n"] + header
    out: list[list[Any]] = []
    for s in samples:
        row: list[Any] = [s.x.to_decimal(digits), s.index, s.value.to_decimal(digits), s.range_class.value]
        out.append([s.node] + row if with_nodes else row)
    return _csv_text(header, out)


def golden_table_to_csv(table: list[GoldenTableRow]) -> str:
    return _csv_text(
        ["a", "b", "discriminant", "k", "valid_k", "recurrence_range", "rho"],
        (
            [
                row.a,
                row.b,
                row.discriminant,
                row.k or "",
                str(row.valid_k).lower(),
                str(row.recurrence_range).lower(),
                row.rho or "",
            ]
            for row in table
        ),
    )
