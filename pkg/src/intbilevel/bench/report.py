"""Report bundle: merged records, time profile, quality histogram, summary, SVGs."""
import math
from pathlib import Path

import numpy as np

from ..errors import MismatchedManifests
from ..instances import REFERENCE_QUALITY
from .cli import write_rows

RECORD_COLUMNS = ["instance_id", "q_kind", "n_y", "sense", "exact_time_s", "exact_status",
                  "approx_frv_time_s", "approx_follower_time_s", "f_exact", "f_approx",
                  "delta_f", "ex_ante_bound", "ex_post_bound", "bound_satisfied"]
PROFILE_POINTS = 40


def _float(s):
    return float(s) if s not in ("", None) else math.nan


def merge_records(exact_rows, approx_rows):
    ex = {r["instance_id"]: r for r in exact_rows}
    ap = {r["instance_id"]: r for r in approx_rows}
    if set(ex) != set(ap):
        missing = sorted(set(ex) ^ set(ap))
        raise MismatchedManifests(f"instance ids differ, e.g. {missing[:3]}")
    out = []
    for iid in sorted(ex):
        e, a = ex[iid], ap[iid]
        f_e, f_a = _float(e["f_leader"]), _float(a["f_leader"])
        delta = f_a - f_e
        post = _float(a["ex_post_bound"])
        ok = bool(delta <= post + 1e-6) if not math.isnan(delta) else False
        out.append({
            "instance_id": iid, "q_kind": e["q_kind"], "n_y": e["n_y"], "sense": e["sense"],
            "exact_time_s": e["time_s"], "exact_status": e["status"],
            "approx_frv_time_s": a["frv_time_s"], "approx_follower_time_s": a["follower_time_s"],
            "f_exact": e["f_leader"], "f_approx": a["f_leader"],
            "delta_f": "" if math.isnan(delta) else f"{delta:.12g}",
            "ex_ante_bound": a["ex_ante_bound"], "ex_post_bound": a["ex_post_bound"],
            "bound_satisfied": int(ok), "_approx_status": a["status"],
            "_approx_time": _float(a["time_s"]),
        })
    return out


def time_profile(records, budgets=None):
    """Fraction of (non-diagonal) instances each solver finished within each budget."""
    recs = [r for r in records if r["q_kind"] != "diagonal"]
    ex = [_float(r["exact_time_s"]) if r["exact_status"] == "optimal" else math.inf for r in recs]
    ap = [r["_approx_time"] if r["_approx_status"] == "optimal" else math.inf for r in recs]
    finite = [t for t in ex + ap if math.isfinite(t)]
    if budgets is None:
        hi = max(max(finite, default=1.0), 1e-3)
        budgets = np.unique(np.round(np.geomspace(1e-3, hi, PROFILE_POINTS), 3))
    n = max(len(recs), 1)
    rows = []
    for b in budgets:
        rows.append({"budget_s": f"{b:.3f}",
                     "approx_fraction": f"{sum(t <= b for t in ap) / n:.6f}",
                     "exact_fraction": f"{sum(t <= b for t in ex) / n:.6f}"})
    return rows


def delta_histogram(records):
    """Counts of integral ``delta_f`` per bin, from 0 to the largest observed value."""
    vals = [_float(r["delta_f"]) for r in records if r["delta_f"] != ""]
    bins = [int(round(v)) for v in vals]
    top = max(bins, default=0)
    lo = min(min(bins, default=0), 0)
    return [{"delta_f": k, "count": bins.count(k)} for k in range(lo, top + 1)]


def summary(records):
    opt = [r for r in records if r["exact_status"] == "optimal" and r["delta_f"] != ""]
    n = len(opt)
    d = [_float(r["delta_f"]) for r in opt]

    def frac(pred):
        return sum(pred(v) for v in d) / n if n else math.nan

    timed = [r for r in records if r["q_kind"] != "diagonal" and r["exact_status"] == "optimal"]
    faster = sum(r["_approx_time"] < _float(r["exact_time_s"]) for r in timed)
    rows = [
        ("instances", len(records), ""),
        ("exact_optimal", n, ""),
        ("delta_f_zero", frac(lambda v: abs(v) <= 1e-6), REFERENCE_QUALITY["delta_f_zero"]),
        ("delta_f_le_5", frac(lambda v: v <= 5 + 1e-6), REFERENCE_QUALITY["delta_f_le_5"]),
        ("delta_f_ge_10", frac(lambda v: v >= 10 - 1e-6), REFERENCE_QUALITY["delta_f_ge_10"]),
        ("delta_f_nonneg_integer", frac(lambda v: v >= -1e-9 and abs(v - round(v)) <= 1e-6), ""),
        ("bound_satisfaction_rate", sum(int(r["bound_satisfied"]) for r in opt) / n if n else math.nan, ""),
        ("approx_faster_fraction", faster / len(timed) if timed else math.nan, ""),
    ]
    return [{"metric": m, "value": f"{v:.6g}" if isinstance(v, float) else v,
             "reference": "" if ref == "" else f"{ref:g}"} for m, v, ref in rows]


def _plot(profile, hist, out_dir):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    plt.rcParams["svg.hashsalt"] = "intbilevel"
    paths = []

    fig, ax = plt.subplots(figsize=(6, 4))
    b = [float(r["budget_s"]) for r in profile]
    ax.step(b, [float(r["approx_fraction"]) for r in profile], where="post", label="relaxed foresight")
    ax.step(b, [float(r["exact_fraction"]) for r in profile], where="post", label="exact enumeration")
    ax.set_xscale("log")
    ax.set_xlabel("time budget (s)")
    ax.set_ylabel("fraction solved")
    ax.set_ylim(0, 1.02)
    ax.legend(loc="lower right")
    p = Path(out_dir) / "profile.svg"
    fig.savefig(p, format="svg", metadata={"Date": None})
    plt.close(fig)
    paths.append(p)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar([r["delta_f"] for r in hist], [r["count"] for r in hist], width=0.8)
    ax.set_xlabel("delta f (approx - exact)")
    ax.set_ylabel("instances")
    p = Path(out_dir) / "histogram.svg"
    fig.savefig(p, format="svg", metadata={"Date": None})
    plt.close(fig)
    paths.append(p)
    return paths


def build_report(exact_rows, approx_rows, out_dir):
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = merge_records(exact_rows, approx_rows)
    profile = time_profile(records)
    hist = delta_histogram(records)
    summ = summary(records)
    paths = [
        write_rows([{k: r[k] for k in RECORD_COLUMNS} for r in records],
                   out_dir / "records.csv", RECORD_COLUMNS),
        write_rows(profile, out_dir / "profile.csv", ["budget_s", "approx_fraction", "exact_fraction"]),
        write_rows(hist, out_dir / "histogram.csv", ["delta_f", "count"]),
        write_rows(summ, out_dir / "summary.csv", ["metric", "value", "reference"]),
    ]
    return paths + _plot(profile, hist, out_dir)
