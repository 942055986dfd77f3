"""CSV/JSON serialization of competitiveness reports and the summary table."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

from .measures import MEASURES, CompetitivenessReport

__all__ = ["CSV_COLUMNS", "format_summary", "report_json", "report_rows", "rows_to_csv", "summary_rows",
           "write_plan_artifacts"]

CSV_COLUMNS = ("instance_id", "family", "n", "rank", "engine", "param_p", "trials", "measure", "estimate",
               "ci95", "bound", "seed")


def _num(x) -> str:
    if x is None:
        return ""
    x = float(x)
    return repr(x) if math.isfinite(x) else ("inf" if x > 0 else "-inf")


def report_rows(report: CompetitivenessReport, instance_id: str) -> list:
    """One row per measure, every value already rendered as text."""
    rows = []
    for name in MEASURES:
        m = report.measures[name]
        rows.append({"instance_id": instance_id, "family": report.family, "n": str(report.n),
                     "rank": str(report.rank), "engine": report.engine, "param_p": _num(report.param_p),
                     "trials": str(m.trials), "measure": name, "estimate": _num(m.estimate),
                     "ci95": _num(m.ci95), "bound": _num(m.bound), "seed": str(report.seed)})
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _finite(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {str(k): _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        seq = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_finite(v) for v in seq]
    return obj


def report_json(report: CompetitivenessReport, instance_id: str) -> str:
    """JSON mirror with the per-element frequencies and the ordinal curve;
    infinite ratios are written as ``null``."""
    d = report.to_dict()
    d["instance_id"] = instance_id
    return json.dumps(_finite(d), indent=1, sort_keys=True) + "\n"


def write_plan_artifacts(report: CompetitivenessReport, instance_id: str, out_dir, stem: str) -> tuple:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{stem}.csv"
    json_path = out / f"{stem}.json"
    csv_path.write_text(rows_to_csv(report_rows(report, instance_id)))
    json_path.write_text(report_json(report, instance_id))
    return csv_path, json_path


def summary_rows(report: CompetitivenessReport, slack: float = 3.0) -> list:
    """``(family, engine, measure, bound, estimate, verdict)`` for every bounded measure."""
    out = []
    for name in MEASURES:
        m = report.measures[name]
        if m.bound is None:
            continue
        ok = m.passes(slack)
        out.append((report.family, report.engine, name, m.bound, m.estimate, "pass" if ok else "FAIL"))
    if not out:
        out.append((report.family, report.engine, "-", None, report.measures["probability"].estimate, "n/a"))
    return out


def format_summary(rows) -> str:
    head = ("family", "engine", "measure", "alpha-bound", "estimate", "3*CI")
    body = [(f, e, m, "-" if b is None else f"{b:.5f}", f"{x:.5f}" if math.isfinite(x) else "inf", v)
            for f, e, m, b, x, v in rows]
    widths = [max(len(r[i]) for r in [head] + body) for i in range(len(head))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in [head] + body]
    return "\n".join(lines) + "\n"
