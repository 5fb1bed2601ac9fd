"""Deterministic serialization: canonical JSON and trace CSV.

Reports must be byte-identical across runs, so floats are printed with 12
significant digits, keys keep their insertion order, and nothing
locale-dependent is used anywhere.
"""

from __future__ import annotations

import json
import math
from io import StringIO
from typing import Sequence

import numpy as np

from .scenarios import TraceBundle


def _fmt_float(v: float) -> str:
    if math.isnan(v) or math.isinf(v):
        raise ValueError("reports must not contain NaN or infinity")
    out = format(float(v), ".12g")
    # normalize the degenerate negative zero
    return "0" if out == "-0" else out


def canonical_json(obj) -> str:
    """Render with fixed field order and 12-significant-digit floats."""
    buf = StringIO()
    _render(obj, buf)
    return buf.getvalue()


def _render(obj, buf: StringIO) -> None:
    if isinstance(obj, (bool, np.bool_)):
        buf.write("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        buf.write(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        buf.write(_fmt_float(float(obj)))
    elif isinstance(obj, str):
        buf.write(json.dumps(obj, ensure_ascii=False))
    elif obj is None:
        buf.write("null")
    elif isinstance(obj, dict):
        buf.write("{")
        for i, (k, v) in enumerate(obj.items()):
            if not isinstance(k, str):
                raise TypeError("canonical JSON keys must be strings")
            if i:
                buf.write(",")
            buf.write(json.dumps(k, ensure_ascii=False))
            buf.write(":")
            _render(v, buf)
        buf.write("}")
    elif isinstance(obj, (list, tuple)):
        buf.write("[")
        for i, v in enumerate(obj):
            if i:
                buf.write(",")
            _render(v, buf)
        buf.write("]")
    else:
        raise TypeError(f"cannot render {type(obj).__name__} canonically")


# ---------------------------------------------------------------------------
# trace CSV


TRACE_HEADER = "j,k,s_value,in_upper_set,in_lower_set"
DENSITY_HEADER = "checkpoint,j,upper_density,lower_density"


def format_trace_csv(bundle: TraceBundle) -> str:
    """Long-format step table plus a checkpoint density table.

    One row per (map, step) with the step value and its set memberships,
    then a blank line, then the running upper/lower densities at the
    bundle's checkpoints.
    """
    ups = bundle.upper_masks()
    lows = bundle.lower_masks()
    lines = [TRACE_HEADER]
    n_maps, horizon = bundle.values.shape
    for j in range(n_maps):
        row = bundle.values[j]
        up = ups[j]
        low = lows[j]
        for k in range(horizon):
            lines.append(
                f"{j + 1},{k + 1},{_fmt_float(row[k])},{int(up[k])},{int(low[k])}"
            )
    lines.append("")
    lines.append(DENSITY_HEADER)
    for c, j, du, dl in bundle.density_rows():
        lines.append(f"{c},{j},{_fmt_float(du)},{_fmt_float(dl)}")
    lines.append("")
    return "\n".join(lines)


def parse_trace_csv(text: str) -> dict:
    """Inverse of format_trace_csv.

    Returns the value matrix, the two mask lists, the checkpoint tuple and
    the density rows, ready for re-evaluation.
    """
    lines = text.splitlines()
    if not lines or lines[0] != TRACE_HEADER:
        raise ValueError("missing trace header")
    idx = 1
    cells: dict[tuple[int, int], tuple[float, bool, bool]] = {}
    n_maps = 0
    horizon = 0
    while idx < len(lines) and lines[idx]:
        j_s, k_s, v_s, u_s, l_s = lines[idx].split(",")
        j, k = int(j_s), int(k_s)
        cells[(j, k)] = (float(v_s), u_s == "1", l_s == "1")
        n_maps = max(n_maps, j)
        horizon = max(horizon, k)
        idx += 1
    if len(cells) != n_maps * horizon:
        raise ValueError("step table is not a full grid")
    values = np.zeros((n_maps, horizon))
    upper = [np.zeros(horizon, dtype=bool) for _ in range(n_maps)]
    lower = [np.zeros(horizon, dtype=bool) for _ in range(n_maps)]
    for (j, k), (v, u, lo) in cells.items():
        values[j - 1, k - 1] = v
        upper[j - 1][k - 1] = u
        lower[j - 1][k - 1] = lo
    while idx < len(lines) and not lines[idx]:
        idx += 1
    if idx >= len(lines) or lines[idx] != DENSITY_HEADER:
        raise ValueError("missing density header")
    idx += 1
    density_rows = []
    checkpoints: list[int] = []
    while idx < len(lines) and lines[idx]:
        c_s, j_s, du_s, dl_s = lines[idx].split(",")
        c = int(c_s)
        density_rows.append((c, int(j_s), float(du_s), float(dl_s)))
        if c not in checkpoints:
            checkpoints.append(c)
        idx += 1
    return {
        "values": values,
        "upper": upper,
        "lower": lower,
        "checkpoints": tuple(checkpoints),
        "density_rows": density_rows,
    }


def plot_tables(bundle: TraceBundle) -> str:
    """Plain CSV view for plotting: step, per-map density and log height.

    Columns: k, then one upper-density and one log10(1 + value) column per
    map.  No rendering happens here; any external tool can draw it.
    """
    ups = bundle.upper_masks()
    n_maps, horizon = bundle.values.shape
    heads = ["k"]
    for j in range(1, n_maps + 1):
        heads.append(f"upper_density_{j}")
    for j in range(1, n_maps + 1):
        heads.append(f"log_height_{j}")
    lines = [",".join(heads)]
    counts = np.vstack([np.cumsum(u.astype(np.int64)) for u in ups])
    logs = np.log10(1.0 + bundle.values)
    ks = np.arange(1, horizon + 1)
    for k in ks:
        row = [str(int(k))]
        for j in range(n_maps):
            row.append(_fmt_float(counts[j, k - 1] / k))
        for j in range(n_maps):
            row.append(_fmt_float(logs[j, k - 1]))
        lines.append(",".join(row))
    lines.append("")
    return "\n".join(lines)
