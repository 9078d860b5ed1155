"""Command-line interface: contours, responses, samples, and exhibit reproduction."""

import argparse
import csv
import json
import logging
import os
import sys
import time
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

import numpy as np

from ._numeric import ConvergenceError
from .config import ConfigError, build_model, build_response, load_document
from .contours import Contour, ds_contour, hd_contour, iform_contour, isorm_contour
from .exceedance import MARGINAL, TOTAL, ExceedanceSpec
from .joint import OutOfSupportError
from .response import (
    LongTermIntegrator,
    failure_probability_mc,
    max_response_on_contour,
)
from .sampling import sample

log = logging.getLogger("envcontours")

EXIT_OK, EXIT_TOLERANCE, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
SEED_ENV = "ENVCONTOURS_SEED"
FALLBACK_SEED = 42

METHOD_KIND = {"iform": MARGINAL, "ds": MARGINAL, "isorm": TOTAL, "hd": TOTAL}


class UsageError(ValueError):
    pass


def _tool_version():
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "0+unknown"


def default_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return FALLBACK_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


class Manifest:
    """Run record written next to the outputs; every output names it."""

    def __init__(self, path, command, argv, config_hash=None, seed=None):
        self.path = Path(path)
        self.data = {
            "command": command,
            "argv": list(argv),
            "config_hash": config_hash,
            "seed": seed,
            "tool_version": _tool_version(),
            "started": time.strftime("%Y-%m-%dT%H:%M:%S"),
            "outputs": [],
            "status": "running",
        }

    def add(self, path):
        self.data["outputs"].append(str(path))

    def write(self, status, **extra):
        self.data["status"] = status
        self.data.update(extra)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text(json.dumps(self.data, indent=2, default=_jsonable) + "\n")


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, np.generic):
        return x.item()
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def _manifest_path(out):
    out = Path(out)
    return out.with_name(out.stem + ".manifest.json")


def _spec_from_args(args, method):
    kind = args.alpha_kind or METHOD_KIND[method]
    if kind != METHOD_KIND[method]:
        need = METHOD_KIND[method]
        raise UsageError(
            f"{method.upper()} contours are defined by a {need} exceedance probability: "
            + (
                "the probability beyond a tangent half-plane (IFORM, DS)"
                if need == MARGINAL
                else "the probability of falling anywhere outside the contour (ISORM, HD)"
            )
            + f"; got --alpha-kind {kind}"
        )
    if args.alpha is not None:
        if args.return_period is not None:
            raise UsageError("give either --alpha or --return-period, not both")
        return ExceedanceSpec(kind, args.alpha)
    if args.return_period is None or args.state_duration is None:
        raise UsageError("need --alpha, or --return-period with --state-duration")
    return ExceedanceSpec.from_return_period(kind, args.return_period, args.state_duration)


def _progress(label):
    last = [0.0]

    def report(done, total):
        now = time.monotonic()
        if now - last[0] > 1.0 or done == total:
            last[0] = now
            print(f"{label}: {done}/{total}", file=sys.stderr, flush=True)

    return report


# contour I/O


def write_contour_csv(contour, path, manifest_name=None):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        fh.write("# method,alpha_kind,alpha,x1_label,x2_label\n")
        fh.write(f"# {contour.method},{contour.spec.kind},{contour.spec.alpha!r},{contour.labels[0]},{contour.labels[1]}\n")
        if manifest_name:
            fh.write(f"# manifest: {manifest_name}\n")
        w = csv.writer(fh)
        for i in range(len(contour.components)):
            if len(contour.components) > 1:
                fh.write(f"# component {i}\n")
            for x1, x2 in contour.closed_points(i):
                w.writerow((repr(float(x1)), repr(float(x2))))


def write_contour_json(contour, path, manifest_name=None):
    doc = {
        "method": contour.method,
        "spec": contour.spec.to_dict(),
        "labels": list(contour.labels),
        "components": [c.tolist() for c in contour.components],
        "meta": contour.meta,
        "manifest": manifest_name,
    }
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(json.dumps(doc, indent=1, default=_jsonable) + "\n")


def read_contour(path):
    """Load a contour written by ``write_contour_csv`` or ``write_contour_json``."""
    path = Path(path)
    if path.suffix == ".json":
        doc = json.loads(path.read_text())
        spec = ExceedanceSpec(doc["spec"]["kind"], doc["spec"]["alpha"])
        comps = tuple(np.asarray(c, dtype=float) for c in doc["components"])
        return Contour(doc["method"], comps, spec, tuple(doc["labels"]), doc.get("meta", {}))
    lines = path.read_text().splitlines()
    if len(lines) < 2 or not lines[0].startswith("# method,"):
        raise UsageError(f"{path}: not a contour CSV")
    method, kind, alpha, l1, l2 = lines[1][2:].split(",")
    comps, cur = [], []
    for line in lines[2:]:
        if line.startswith("# component"):
            if cur:
                comps.append(cur)
            cur = []
        elif line and not line.startswith("#"):
            cur.append([float(v) for v in line.split(",")])
    if cur:
        comps.append(cur)
    arrays = []
    for c in comps:
        a = np.asarray(c, dtype=float)
        if len(a) > 1 and np.allclose(a[0], a[-1]):
            a = a[:-1]
        arrays.append(a)
    return Contour(method, tuple(arrays), ExceedanceSpec(kind, float(alpha)), (l1, l2), {})


# commands


def cmd_contour(args, argv):
    data, digest = load_document(args.config)
    model = build_model(data)
    method = args.method
    spec = _spec_from_args(args, method)
    seed = args.seed if args.seed is not None else default_seed()
    out = Path(args.out)
    manifest = Manifest(_manifest_path(out), "contour", argv, digest, seed if method == "ds" else None)
    try:
        if method == "iform":
            contour = iform_contour(model, spec, args.order, args.points)
        elif method == "isorm":
            contour = isorm_contour(model, spec, args.order, args.points)
        elif method == "ds":
            s = sample(model, args.samples, seed, progress=_progress("sampling"))
            contour = ds_contour(s, spec, args.angles, labels=model.labels)
        else:
            contour = hd_contour(model, spec, grid=args.grid)
    except KeyboardInterrupt:
        manifest.write("interrupted")
        raise
    writer = write_contour_json if out.suffix == ".json" else write_contour_csv
    writer(contour, out, manifest.path.name)
    manifest.add(out)
    manifest.write("ok", spec=spec.to_dict(), method=contour.method)
    print(json.dumps({"out": str(out), "n_points": int(len(contour.vertices)),
                      "upper": contour.vertices.max(axis=0).tolist()}))
    return EXIT_OK


def _describe_state(state, labels):
    out = {labels[0]: float(state[0]), labels[1]: float(state[1])}
    if tuple(labels) == ("hx", "hy"):
        out["hs"] = float(np.hypot(*state))
        out["direction_deg"] = float(np.degrees(np.arctan2(state[1], state[0])) % 360.0)
    return out


def cmd_response(args, argv):
    data, digest = load_document(args.config)
    model = build_model(data)
    rdata, _ = load_document(args.response)
    fn = build_response(rdata)
    result = {}
    if args.contour:
        contour = read_contour(args.contour)
        best = max_response_on_contour(fn, contour)
        result["max_response"] = best.value
        result["argmax"] = _describe_state(best.state, contour.labels)
    need_integral = args.all_states or args.capacity is not None
    if need_integral:
        integ = LongTermIntegrator(model, fn, n=args.quad_grid)
        if args.all_states:
            if args.alpha is None and args.return_period is None:
                raise UsageError("--all-states needs --alpha or --return-period with --state-duration")
            args.alpha_kind = TOTAL
            spec = _spec_from_args(args, "isorm")
            result["return_response"] = integ.quantile_exceedance(spec.alpha)
            result["alpha"] = spec.alpha
        if args.capacity is not None:
            if args.capacity <= 0:
                raise UsageError("capacity must be positive")
            result["capacity"] = args.capacity
            result["failure_probability"] = integ.sf(args.capacity)
            if args.mc_samples:
                seed = args.seed if args.seed is not None else default_seed()
                p, se = failure_probability_mc(model, fn, args.capacity, args.mc_samples, seed)
                result.update(failure_probability_mc=p, failure_probability_mc_se=se, seed=seed)
    if not result:
        raise UsageError("nothing to do: give --contour, --all-states or --capacity")
    text = json.dumps(result, indent=2, default=_jsonable)
    if args.out:
        out = Path(args.out)
        manifest = Manifest(_manifest_path(out), "response", argv, digest, result.get("seed"))
        result["manifest"] = manifest.path.name
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(json.dumps(result, indent=2, default=_jsonable) + "\n")
        manifest.add(out)
        manifest.write("ok")
    print(text)
    return EXIT_OK


def cmd_sample(args, argv):
    data, digest = load_document(args.config)
    model = build_model(data)
    seed = args.seed if args.seed is not None else default_seed()
    out = Path(args.out)
    manifest = Manifest(_manifest_path(out), "sample", argv, digest, seed)
    try:
        s = sample(model, args.count, seed, progress=_progress("sampling"))
    except KeyboardInterrupt:
        manifest.write("interrupted")
        raise
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w") as fh:
        fh.write(f"# model={s.model_id} seed={seed} count={s.count} manifest={manifest.path.name}\n")
        fh.write(f"{model.labels[0]},{model.labels[1]}\n")
        np.savetxt(fh, s.points, delimiter=",", fmt="%.10g")
    manifest.add(out)
    manifest.write("ok", count=s.count)
    return EXIT_OK


def write_report(report, out_dir, manifest_name):
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = out_dir / f"{report.target}.csv"
    with rows.open("w", newline="") as fh:
        fh.write(f"# target={report.target} manifest={manifest_name}\n")
        w = csv.writer(fh)
        w.writerow(report.columns)
        for r in report.rows:
            w.writerow([f"{v:.10g}" if isinstance(v, (float, np.floating)) else v for v in r])
    checks = out_dir / f"{report.target}_checks.csv"
    with checks.open("w", newline="") as fh:
        fh.write(f"# target={report.target} manifest={manifest_name} source=published\n")
        w = csv.writer(fh)
        w.writerow(("check", "value", "expected", "tolerance", "mode", "passed"))
        for c in report.checks:
            w.writerow((c.name, c.value, c.expected, c.tolerance, c.mode, c.passed))
    return rows, checks


def cmd_reproduce(args, argv):
    from .reproduce import TARGETS, Context, run_target

    targets = sorted(TARGETS) if args.target == "all" else [args.target]
    if args.target != "all" and args.target not in TARGETS:
        raise UsageError(f"unknown target {args.target!r}; choose from {sorted(TARGETS)} or 'all'")
    seed = args.seed if args.seed is not None else default_seed()
    ctx = Context(samples=args.samples, seed=seed)
    out_dir = Path(args.out)
    manifest = Manifest(out_dir / "reproduce.manifest.json", "reproduce", argv, None, seed)
    ok = True
    try:
        for t in targets:
            rep = run_target(t, ctx)
            for p in write_report(rep, out_dir, manifest.path.name):
                manifest.add(p)
            print(f"[{t}]")
            for c in rep.checks:
                print("  " + c.line())
            ok &= rep.passed
    except KeyboardInterrupt:
        manifest.write("interrupted")
        raise
    manifest.write("ok" if ok else "tolerance-failure", samples=ctx.samples)
    return EXIT_OK if ok else EXIT_TOLERANCE


def _add_spec_args(p):
    p.add_argument("--alpha", type=float, help="exceedance probability per state")
    p.add_argument("--alpha-kind", choices=(MARGINAL, TOTAL), help="defaults to the kind the method needs")
    p.add_argument("--return-period", type=float, help="years")
    p.add_argument("--state-duration", type=float, help="hours per state")


def build_parser():
    p = argparse.ArgumentParser(prog="envcontours", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("contour", help="compute a contour")
    c.add_argument("config")
    c.add_argument("--method", required=True, choices=sorted(METHOD_KIND))
    _add_spec_args(c)
    c.add_argument("--order", default="x1-first", help="x1-first or x2-first (Rosenblatt conditioning order)")
    c.add_argument("--points", type=int, default=360)
    c.add_argument("--angles", type=int, default=360)
    c.add_argument("--grid", type=int, default=1000)
    c.add_argument("--samples", type=int, default=10_000_000)
    c.add_argument("--seed", type=int)
    c.add_argument("--out", required=True, help=".csv or .json")
    c.set_defaults(func=cmd_contour)

    r = sub.add_parser("response", help="maximum response on a contour, all-states return response, or P_f")
    r.add_argument("config")
    r.add_argument("--response", required=True, help="response config (YAML)")
    r.add_argument("--contour", help="contour file from the contour command")
    r.add_argument("--all-states", action="store_true")
    _add_spec_args(r)
    r.add_argument("--capacity", type=float)
    r.add_argument("--mc-samples", type=int, default=0)
    r.add_argument("--quad-grid", type=int, default=2000)
    r.add_argument("--seed", type=int)
    r.add_argument("--out")
    r.set_defaults(func=cmd_response)

    s = sub.add_parser("sample", help="draw a reproducible sample")
    s.add_argument("config")
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--seed", type=int)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sample)

    q = sub.add_parser("reproduce", help="recompute a published exhibit and compare")
    q.add_argument("target")
    q.add_argument("--out", default="reproduce-out")
    q.add_argument("--samples", type=int, default=10_000_000, help="DS / sample-based checks (1e8 for full scale)")
    q.add_argument("--seed", type=int)
    q.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args, argv)
    except (ConvergenceError, OutOfSupportError) as exc:
        print(f"error: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, ConfigError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        print("interrupted; partial manifest written", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
