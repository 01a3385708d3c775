"""``intbilevel`` command line: generate testbeds, solve them, report.

Exit codes: 0 success, 1 when any instance failed, 2 on usage errors.
"""
import argparse
import csv
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from ..errors import BilevelError, MismatchedManifests
from ..exact import ExactConfig, solve_exact_lin, solve_exact_quad
from ..foresight import relaxed_foresight_lin, relaxed_foresight_quad
from ..instances import DESK_PER, FULL_PER, gen_testbed, read_instance, write_instance
from ..model import QuadBilevelInstance

MANIFEST_VERSION = 1
CSV_SCHEMA_VERSION = 1
SCALES = {"paper": FULL_PER, "desk": DESK_PER}
SOLVE_COLUMNS = ["schema_version", "instance_id", "q_kind", "n_y", "sense", "mode", "status",
                 "time_s", "frv_time_s", "follower_time_s", "f_leader", "ex_ante_bound",
                 "ex_post_bound", "x", "y", "error"]


def sha256_file(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _entry(inst, path, root):
    return {"id": inst.name, "file": str(Path(path).relative_to(root)),
            "family": "quad" if isinstance(inst, QuadBilevelInstance) else "lin",
            "q_kind": inst.meta.get("q_kind", ""), "n_y": inst.n_y, "sense": inst.sense.value,
            "sha256": sha256_file(path)}


def write_manifest(instances, out_dir, extra=None):
    """Write every instance under ``out_dir/instances`` plus ``manifest.json``."""
    out_dir = Path(out_dir)
    inst_dir = out_dir / "instances"
    inst_dir.mkdir(parents=True, exist_ok=True)
    entries = []
    for inst in instances:
        path = write_instance(inst, inst_dir / f"{inst.name}.json")
        entries.append(_entry(inst, path, out_dir))
    doc = {"manifest_version": MANIFEST_VERSION, **(extra or {}), "instances": entries}
    mpath = out_dir / "manifest.json"
    mpath.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    return mpath


def read_manifest(path):
    path = Path(path)
    doc = json.loads(path.read_text(encoding="utf-8"))
    if doc.get("manifest_version") != MANIFEST_VERSION:
        raise ValueError(f"unsupported manifest_version {doc.get('manifest_version')!r}")
    return path.parent, doc["instances"]


def cmd_gen(seed, out_dir, scale="desk"):
    per = SCALES[scale]
    return write_manifest(gen_testbed(seed, per=per), out_dir, {"seed": seed, "scale": scale})


def _fmt(v, digits=12):
    if v is None or v == "":
        return ""
    return f"{float(v):.{digits}g}"


def _vec(v):
    return "" if v is None else " ".join(str(int(t)) for t in v)


def solve_one(task):
    """Solve one manifest entry; never raises, failures land in ``error``."""
    root, entry, mode, time_limit = task
    row = dict.fromkeys(SOLVE_COLUMNS, "")
    row.update(schema_version=CSV_SCHEMA_VERSION, instance_id=entry["id"],
               q_kind=entry.get("q_kind", ""), n_y=entry.get("n_y", ""),
               sense=entry.get("sense", ""), mode=mode)
    try:
        path = Path(root) / entry["file"]
        if sha256_file(path) != entry["sha256"]:
            raise ValueError("digest mismatch")
        inst = read_instance(path)
        quad = isinstance(inst, QuadBilevelInstance)
        if mode == "exact":
            cfg = ExactConfig(time_limit=time_limit)
            t0 = time.perf_counter()
            sol = (solve_exact_quad if quad else solve_exact_lin)(inst, cfg)
            row["time_s"] = f"{time.perf_counter() - t0:.3f}"
        else:
            res = (relaxed_foresight_quad if quad else relaxed_foresight_lin)(inst)
            sol = res.solution
            row["frv_time_s"] = f"{res.timings['frv']:.3f}"
            row["follower_time_s"] = f"{res.timings['follower']:.3f}"
            row["time_s"] = f"{res.total_time:.3f}"
            row["ex_ante_bound"] = _fmt(res.certificate.ex_ante)
            row["ex_post_bound"] = _fmt(res.certificate.ex_post)
        row.update(status=sol.status.value, f_leader=_fmt(sol.leader_obj), x=_vec(sol.x),
                   y=_vec(sol.y))
    except (BilevelError, OSError, ValueError, KeyError) as exc:
        row.update(status="error", error=f"{type(exc).__name__}: {exc}")
    return row


def write_rows(rows, path, columns):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return path


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def cmd_solve(manifest, mode, out, time_limit=120.0, workers=1):
    """Returns ``(csv_path, n_errors)``."""
    root, entries = read_manifest(manifest)
    tasks = [(str(root), e, mode, time_limit) for e in entries]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(solve_one, tasks))
    else:
        rows = [solve_one(t) for t in tasks]
    rows.sort(key=lambda r: r["instance_id"])
    n_err = sum(r["status"] == "error" for r in rows)
    return write_rows(rows, out, SOLVE_COLUMNS), n_err


def cmd_report(exact_csv, approx_csv, out_dir):
    from .report import build_report
    return build_report(read_rows(exact_csv), read_rows(approx_csv), out_dir)


def build_parser():
    p = argparse.ArgumentParser(prog="intbilevel",
                                description="Generate seeded testbeds, solve them, build reports.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a seeded testbed and its manifest")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--scale", choices=sorted(SCALES), default="desk")
    g.add_argument("--out", required=True, help="output directory")

    s = sub.add_parser("solve", help="solve every instance of a manifest")
    s.add_argument("manifest")
    s.add_argument("--mode", choices=["exact", "approx"], required=True)
    s.add_argument("--time-limit", type=float, default=120.0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", required=True, help="results CSV path")

    r = sub.add_parser("report", help="profile, histogram and summary from two result files")
    r.add_argument("exact_csv")
    r.add_argument("approx_csv")
    r.add_argument("--out", required=True, help="output directory")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen":
        path = cmd_gen(args.seed, args.out, args.scale)
        print(path)
        return 0
    if args.command == "solve":
        if not args.time_limit > 0 or args.workers < 1:
            parser.error("--time-limit must be > 0 and --workers >= 1")
        try:
            path, n_err = cmd_solve(args.manifest, args.mode, args.out, args.time_limit,
                                    args.workers)
        except (OSError, ValueError, KeyError) as exc:
            print(f"error: cannot read manifest: {exc}", file=sys.stderr)
            return 1
        print(path)
        if n_err:
            print(f"{n_err} instance(s) failed", file=sys.stderr)
        return 1 if n_err else 0
    try:
        paths = cmd_report(args.exact_csv, args.approx_csv, args.out)
    except (MismatchedManifests, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
