"""
Table and Figure Export for the Heisenberg Spectra Pipeline
===========================================================

Every result becomes a pandas DataFrame with a fixed column order, then is
rendered as CSV (header row, comma separator, LF line endings) or as a JSON
object {"config": ..., "rows": [...]}. Floats are written in shortest
round-trip form and rationals as "num/den", so identical runs produce
byte-identical files.

The convergence chart is a standalone SVG drawn with matplotlib (no external
assets, fixed hash salt, no date stamp).
"""

import io
import json
from fractions import Fraction
from numbers import Integral
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

from src.config import REPORT  # noqa: E402
from src.spectra.forms import FormDegree  # noqa: E402
from src.spectra.heat import HeatTracePoint  # noqa: E402
from src.spectra.quotient import QuotientGeometry, dual_lattice, projected_lattice  # noqa: E402
from src.spectra.spectrum import EigenvalueRecord, SpectralCount, TypeASource  # noqa: E402
from src.spectra.weyl import ConvergenceRow, WeylConstant  # noqa: E402
from src.utils.rationals import format_float, format_rational  # noqa: E402

RECORD_COLUMNS = ["kind", "exact_value", "float_value", "multiplicity", "sources"]
COUNT_COLUMNS = ["lambda", "N_a", "N_b", "N", "ratio"]
HEAT_COLUMNS = ["t", "G", "scaled", "truncation_bound", "terms"]
CONSTANT_COLUMNS = ["d", "alpha", "formula", "value", "quadrature_error"]
VERIFY_COLUMNS = ["route", "lambda", "t", "N_a", "N_b", "N", "ratio", "target", "rel_error"]
QUOTIENT_COLUMNS = ["d", "ell", "c", "scale", "L", "volume", "lattice", "dual_lattice"]


# =============================================================================
# TABLE BUILDERS
# =============================================================================

def _describe_source(source) -> str:
    if isinstance(source, TypeASource):
        return f"n={source.n} j={source.j} m={source.multiplicity}"
    return f"norm_sq={format_rational(source.norm_sq)} m={source.multiplicity}"


def _diagonal(entries) -> str:
    return ";".join(format_rational(v) for v in entries)


def quotient_table(q: QuotientGeometry) -> pd.DataFrame:
    lattice = projected_lattice(q)
    row = {
        "d": q.d,
        "ell": ";".join(str(v) for v in q.ell),
        "c": q.c,
        "scale": q.scale,
        "L": q.L,
        "volume": q.volume,
        "lattice": _diagonal(lattice.diag),
        "dual_lattice": _diagonal(dual_lattice(lattice).diag),
    }
    return pd.DataFrame([row], columns=QUOTIENT_COLUMNS, dtype=object)


def records_table(records: Sequence[EigenvalueRecord]) -> pd.DataFrame:
    rows = [
        {
            "kind": record.kind.value,
            "exact_value": record.exact_value,
            "float_value": record.float_value,
            "multiplicity": record.multiplicity,
            "sources": ";".join(_describe_source(s) for s in record.sources),
        }
        for record in records
    ]
    return pd.DataFrame(rows, columns=RECORD_COLUMNS, dtype=object)


def counts_table(counts: Sequence[SpectralCount], deg: Optional[FormDegree] = None) -> pd.DataFrame:
    rows = []
    for count in counts:
        row = {"lambda": count.lam, "N_a": count.n_a, "N_b": count.n_b,
               "N": count.n_total, "ratio": count.normalized_ratio}
        if deg is not None:
            row.update({"p": deg.p, "q": deg.q})
        rows.append(row)
    columns = COUNT_COLUMNS + (["p", "q"] if deg is not None else [])
    return pd.DataFrame(rows, columns=columns, dtype=object)


def heat_table(points: Sequence[HeatTracePoint]) -> pd.DataFrame:
    rows = [
        {"t": p.t, "G": p.g, "scaled": p.scaled,
         "truncation_bound": p.truncation_bound, "terms": p.terms}
        for p in points
    ]
    return pd.DataFrame(rows, columns=HEAT_COLUMNS, dtype=object)


def constants_table(constants: Sequence[WeylConstant]) -> pd.DataFrame:
    rows = [
        {"d": c.d, "alpha": c.alpha, "formula": "boundary" if c.boundary else "interior",
         "value": c.value, "quadrature_error": c.quadrature_error}
        for c in constants
    ]
    return pd.DataFrame(rows, columns=CONSTANT_COLUMNS, dtype=object)


def verification_table(rows: Sequence[ConvergenceRow],
                       heat_points: Sequence[HeatTracePoint] = (),
                       heat_target: Optional[float] = None) -> pd.DataFrame:
    """
    Counting rows (route "count") followed by Karamata rows (route "heat").

    Heat rows compare t^(d+1) G(t) against ``heat_target``; their count
    columns are left empty.
    """
    table = [
        {"route": "count", "lambda": r.lam, "t": None, "N_a": r.n_a, "N_b": r.n_b,
         "N": r.n_total, "ratio": r.ratio, "target": r.target, "rel_error": r.rel_error}
        for r in rows
    ]
    for point in heat_points:
        table.append({
            "route": "heat", "lambda": None, "t": point.t, "N_a": None, "N_b": None, "N": None,
            "ratio": point.scaled, "target": heat_target,
            "rel_error": point.scaled / heat_target - 1.0,
        })
    return pd.DataFrame(table, columns=VERIFY_COLUMNS, dtype=object)


# =============================================================================
# RENDERING
# =============================================================================

def _cell_text(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float) and np.isnan(value):
        return ""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, Integral):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def _json_value(value: Any) -> Any:
    if value is None:
        return None
    if isinstance(value, float) and np.isnan(value):
        return None
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, Integral):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def render_csv(frame: pd.DataFrame) -> str:
    text_frame = frame.astype(object).map(_cell_text)
    return text_frame.to_csv(index=False, sep=REPORT.csv_separator,
                             lineterminator=REPORT.line_terminator)


def render_json(frame: pd.DataFrame, config: Optional[Dict[str, Any]] = None) -> str:
    rows = [
        {column: _json_value(value) for column, value in record.items()}
        for record in frame.astype(object).to_dict(orient="records")
    ]
    payload = {"config": config or {}, "rows": rows}
    return json.dumps(payload, indent=REPORT.json_indent) + "\n"


def render_table(frame: pd.DataFrame, fmt: str, config: Optional[Dict[str, Any]] = None) -> str:
    if fmt == "csv":
        return render_csv(frame)
    if fmt == "json":
        return render_json(frame, config)
    raise ValueError(f"tables render as csv or json, not {fmt!r}")


def write_text(text: str, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    return path


def write_table(frame: pd.DataFrame, path: Path, fmt: str = "csv",
                config: Optional[Dict[str, Any]] = None) -> Path:
    """Render ``frame`` and write it to ``path``, creating parent directories."""
    return write_text(render_table(frame, fmt, config), path)


# =============================================================================
# SVG CHART
# =============================================================================

def render_convergence_svg(rows: Sequence[ConvergenceRow], title: str = "") -> str:
    """
    Log-lambda chart of N(lambda)/lambda^(d+1) with the Weyl target as a
    horizontal asymptote. The ratio line carries gid "series-ratio", its
    markers "series-ratio-points" and the asymptote "asymptote-target"; each
    line group holds a single path. The target is labelled in place, no legend.
    """
    if len(rows) == 0:
        raise ValueError("no convergence rows to plot")
    lams = [r.lam for r in rows]
    ratios = [r.ratio for r in rows]
    colors = REPORT.colors

    rc = {"svg.hashsalt": REPORT.svg_hashsalt, "svg.fonttype": "none"}
    with plt.rc_context(rc):
        fig, ax = plt.subplots(figsize=(REPORT.figure_width_inches, REPORT.figure_height_inches))
        ax.plot(lams, ratios, color=colors[0], linewidth=1.5, gid="series-ratio")
        ax.plot(lams, ratios, linestyle="none", marker="o", color=colors[0], gid="series-ratio-points")
        ax.axhline(rows[0].target, color=colors[1], linestyle="--", linewidth=1.0, gid="asymptote-target")
        ax.text(0.99, rows[0].target, "Weyl target", transform=ax.get_yaxis_transform(),
                ha="right", va="bottom", color=colors[1], fontsize=REPORT.font_size_axis)
        ax.set_xscale("log")
        ax.set_xlabel("lambda", fontsize=REPORT.font_size_axis)
        ax.set_ylabel("N(lambda) / lambda^(d+1)", fontsize=REPORT.font_size_axis)
        if title:
            ax.set_title(title, fontsize=REPORT.font_size_title)
        plt.tight_layout()
        buffer = io.StringIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buffer.getvalue()


def write_convergence_svg(rows: Sequence[ConvergenceRow], path: Path, title: str = "") -> Path:
    return write_text(render_convergence_svg(rows, title), path)

